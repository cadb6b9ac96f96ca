import itertools

import pytest
from hypothesis import given, settings, strategies as st

from mubkit.galois import (
    ContextMismatchError,
    FieldContext,
    FieldError,
    ZpPolynomial,
    find_irreducible,
    frobenius_roots,
    gf_inv,
    gf_mul,
    is_irreducible,
    quadratic_inverse,
    quadratic_nonresidue,
    trace,
)

SMALL_FIELDS = [(p, n) for p in (2, 3, 5) for n in (1, 2, 3)]


def brute_force_irreducible(f: ZpPolynomial) -> bool:
    """Oracle: no monic factor of degree 1..n//2 divides f (trial division by enumeration)."""
    p, n = f.p, f.degree
    for k in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            g = list(low) + [1]
            # long division of f by g
            rem = list(f.coeffs)
            for shift in range(n - k, -1, -1):
                c = rem[shift + k]
                for i, gi in enumerate(g):
                    rem[shift + i] = (rem[shift + i] - c * gi) % p
            if not any(rem[:k]):
                return False
    return True


def test_find_irreducible_reference_polynomials():
    assert find_irreducible(2, 2).coeffs == (1, 1, 1)
    assert find_irreducible(2, 3).coeffs == (1, 1, 0, 1)
    assert find_irreducible(3, 1).coeffs == (1, 1)


def test_find_irreducible_is_smallest_by_encoding():
    for p, n in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)]:
        f = find_irreducible(p, n)
        code = sum(c * p**k for k, c in enumerate(f.coeffs[:-1]))
        for smaller in range(code):
            low = [(smaller // p**k) % p for k in range(n)]
            if low[0] == 0:
                continue
            assert not brute_force_irreducible(ZpPolynomial(p, tuple(low) + (1,)))


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducibility_matches_trial_division(p, n):
    for low in itertools.product(range(p), repeat=n):
        f = ZpPolynomial(p, tuple(low) + (1,))
        assert is_irreducible(f) == brute_force_irreducible(f)


def test_rejects_composite_and_bad_polynomials():
    with pytest.raises(FieldError, match="4 is not prime"):
        find_irreducible(4, 1)
    with pytest.raises(FieldError, match="reducible"):
        FieldContext(2, 2, poly=[1, 0, 1])  # (x+1)^2
    with pytest.raises(FieldError, match="monic"):
        FieldContext(3, 2, poly=[1, 0, 2])


def test_gf_mul_examples():
    gf4 = FieldContext(2, 2)
    assert gf4.lam * gf4.lam == gf4.element([1, 1])
    gf9 = FieldContext.from_nonresidue(3, 2)
    assert gf9.lam * gf9.lam == gf9.scalar(2)
    a = gf9.element([2, 1])
    assert a * gf9.one == a


def test_gf_inv_examples():
    gf9 = FieldContext.from_nonresidue(3, 2)
    assert gf_inv(gf9.lam) == gf9.element([0, 2])
    assert gf_inv(gf9.one) == gf9.one
    gf8 = FieldContext(2, 3)
    assert gf_inv(gf8.element([1, 0, 1])) == gf8.lam
    with pytest.raises(ZeroDivisionError):
        gf_inv(gf8.zero)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_closed_form_quadratic_inverse_agrees(p):
    ctx = FieldContext.from_nonresidue(p)
    for a in ctx.elements():
        if not a.is_zero():
            assert quadratic_inverse(a) == gf_inv(a)


def test_context_mismatch_is_an_error():
    a = FieldContext(2, 2).lam
    b = FieldContext(2, 3).lam
    with pytest.raises(ContextMismatchError):
        gf_mul(a, b)
    with pytest.raises(ContextMismatchError):
        a + b


def test_frobenius_roots_examples():
    gf8 = FieldContext(2, 3)
    assert set(gf8.roots) == {gf8.lam, gf8.element([0, 0, 1]), gf8.element([0, 1, 1])}
    gf9 = FieldContext.from_nonresidue(3, 2)
    assert list(gf9.roots) == [gf9.lam, gf9.element([0, 2])]
    gf5 = FieldContext(5, 1, poly=[3, 1])
    assert list(frobenius_roots(gf5)) == [gf5.scalar(-3)]


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_roots_reexpand_to_f(p, n):
    ctx = FieldContext(p, n)
    # multiply out prod (x - root) with coefficients in GF(p^n)
    poly = [ctx.one]
    for root in ctx.roots:
        shifted = [ctx.zero] + poly
        scaled = [gf_mul(c, root) for c in poly] + [ctx.zero]
        poly = [s - t for s, t in zip(shifted, scaled)]
    assert [c.coeffs for c in poly] == [ctx.scalar(c).coeffs for c in ctx.f.coeffs]
    for root in ctx.roots:
        assert ctx.poly_at(ctx.f.coeffs, root).is_zero()


def test_trace_examples():
    gf4 = FieldContext(2, 2)
    assert trace(gf4.one) == 0
    assert trace(gf4.lam) == 1
    assert trace(gf4.element([1, 1])) == 1
    gf9 = FieldContext.from_nonresidue(3, 2)
    assert trace(gf9.lam) == 0
    assert trace(gf9.zero) == 0


@pytest.mark.parametrize("p,n", [(p, n) for p, n in SMALL_FIELDS if p**n <= 27])
def test_trace_is_linear_exhaustively(p, n):
    ctx = FieldContext(p, n)
    elems = list(ctx.elements())
    tr = {a: trace(a) for a in elems}
    for a in elems:
        for c in range(p):
            assert tr[a * c] == c * tr[a] % p
        for b in elems:
            assert tr[a + b] == (tr[a] + tr[b]) % p


def test_quotient_coeffs_examples():
    gf9 = FieldContext.from_nonresidue(3, 2)
    assert list(gf9.quotient_coeffs) == [gf9.lam, gf9.one]
    gf4 = FieldContext(2, 2)
    assert list(gf4.quotient_coeffs) == [gf4.lam * gf4.lam, gf4.one]
    gf8 = FieldContext(2, 3)
    assert list(gf8.quotient_coeffs) == [gf8.element([1, 0, 1]), gf8.lam, gf8.one]


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_quotient_coeffs_match_synthetic_division(p, n):
    ctx = FieldContext(p, n)
    # synthetic division of f by (x - lam): d_{n-1} = 1, d_{k-1} = c_k + lam d_k
    c = [ctx.scalar(x) for x in ctx.f.coeffs]
    d = [None] * n
    d[n - 1] = c[n]
    for k in range(n - 1, 0, -1):
        d[k - 1] = c[k] + ctx.lam * d[k]
    assert list(ctx.quotient_coeffs) == d


def test_dual_basis_examples():
    gf4 = FieldContext(2, 2)
    assert list(gf4.dual_coeffs) == [gf4.lam * gf4.lam, gf4.one]
    gf8 = FieldContext(2, 3)
    assert list(gf8.dual_coeffs) == [gf8.one, gf8.lam * gf8.lam, gf8.lam]
    for D in (2,):
        gf9 = FieldContext.from_nonresidue(3, D)
        assert gf9.dual_coeffs[0] == gf_inv(gf9.scalar(2))
        assert gf9.dual_coeffs[1] == gf9.lam * gf_inv(gf9.scalar(2 * D))


@pytest.mark.parametrize("p,n", SMALL_FIELDS + [(2, 4), (3, 4), (7, 2)])
def test_dual_basis_property(p, n):
    ctx = FieldContext(p, n)
    for j, g in enumerate(ctx.dual_coeffs):
        for k in range(n):
            assert trace(g * ctx.lam_power(k)) == (1 if j == k else 0)


@pytest.mark.parametrize("p,expected", [(3, 2), (5, 2), (7, 3), (11, 2), (13, 2), (17, 3)])
def test_quadratic_nonresidue(p, expected):
    D = quadratic_nonresidue(p)
    assert D == expected
    assert all(k * k % p != D for k in range(p))


def test_quadratic_nonresidue_rejects_two():
    with pytest.raises(FieldError):
        quadratic_nonresidue(2)


def test_nonresidue_populated_for_odd_quadratic_fields():
    assert FieldContext(3, 2).nonresidue == 2
    assert FieldContext(5, 2).nonresidue == 3  # default f = x^2 + 2 = x^2 - 3
    assert FieldContext(2, 2).nonresidue is None
    with pytest.raises(FieldError, match="residue"):
        FieldContext.from_nonresidue(5, 4)


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_field_size_and_inverses(p, n):
    ctx = FieldContext(p, n)
    elems = list(ctx.elements())
    assert len(set(elems)) == p**n
    for a in elems[1:]:
        assert a * gf_inv(a) == ctx.one


@st.composite
def field_triples(draw):
    p, n = draw(st.sampled_from(SMALL_FIELDS))
    ctx = FieldContext(p, n)
    idx = st.integers(0, p**n - 1)
    return tuple(ctx.element_from_index(draw(idx)) for _ in range(3))


@settings(max_examples=200, deadline=None)
@given(field_triples())
def test_field_axioms(triple):
    a, b, c = triple
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == a.ctx.zero

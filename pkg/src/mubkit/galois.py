"""Exact arithmetic in Z_p and GF(p^n).

Field elements are coefficient vectors ``(a_0, ..., a_{n-1})`` in the power
basis ``1, lam, ..., lam^(n-1)`` where ``lam`` is a root of a monic
irreducible polynomial ``f``.  Everything here is integer arithmetic; no
floating point is involved.

A :class:`FieldContext` bundles the modulus, the defining polynomial and the
derived data needed downstream: the conjugate roots of ``f``, the quotient
coefficients of ``f(x)/(x - lam)``, ``f'(lam)^-1`` and the trace-dual basis
``g_j`` with ``Tr(g_j lam^k) = delta(j, k)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

__all__ = [
    "FieldError",
    "ContextMismatchError",
    "ZpPolynomial",
    "GFElement",
    "FieldContext",
    "is_prime",
    "is_irreducible",
    "find_irreducible",
    "quadratic_nonresidue",
    "gf_add",
    "gf_neg",
    "gf_sub",
    "gf_mul",
    "gf_pow",
    "gf_inv",
    "quadratic_inverse",
    "frobenius_roots",
    "trace",
    "quotient_coeffs",
    "dual_basis",
]

MAX_DEGREE = 6


class FieldError(ValueError):
    """Invalid field parameters or an undefined field operation."""


class ContextMismatchError(FieldError):
    """Elements from different fields were combined."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"{p} is not prime")


# ---------------------------------------------------------------------------
# Polynomials over Z_p, stored low degree first.
# ---------------------------------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return q, a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_divmod(out, f, p)[1]


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, _poly_divmod(a, b, p)[1]
    return a


@dataclass(frozen=True)
class ZpPolynomial:
    """Polynomial over Z_p with coefficients ``(c_0, ..., c_deg)``."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        _require_prime(self.p)
        coeffs = tuple(int(c) % self.p for c in self.coeffs)
        # keep the stored tuple free of trailing zeros
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        if self.coeffs == (0,) or not self.coeffs:
            return -1
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.degree >= 0 and self.coeffs[-1] == 1

    def derivative(self) -> "ZpPolynomial":
        if self.degree <= 0:
            return ZpPolynomial(self.p, (0,))
        return ZpPolynomial(self.p, tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if k == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms) if terms else "0"

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def is_irreducible(f: ZpPolynomial) -> bool:
    """Irreducibility over Z_p.

    ``f`` of degree n is irreducible iff ``gcd(x^(p^k) - x, f) = 1`` for every
    ``k <= n // 2`` (no irreducible factor of degree at most n/2).
    """
    n, p = f.degree, f.p
    if n < 1:
        return False
    if n == 1:
        return True
    fc = list(f.coeffs)
    x = [0, 1]
    h = x
    for _ in range(n // 2):
        # h <- h^p mod f
        acc = [1]
        base = h
        e = p
        while e:
            if e & 1:
                acc = _poly_mulmod(acc, base, fc, p)
            base = _poly_mulmod(base, base, fc, p)
            e >>= 1
        h = acc
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(diff, fc, p)) > 1:
            return False
    return True


def find_irreducible(p: int, n: int) -> ZpPolynomial:
    """Smallest monic irreducible degree-``n`` polynomial with nonzero constant term.

    Candidates are ordered by reading ``(c_{n-1}, ..., c_0)`` as a base-``p``
    integer.

    >>> str(find_irreducible(2, 3))
    'x^3 + x + 1'
    """
    _require_prime(p)
    if not 1 <= n <= MAX_DEGREE:
        raise FieldError(f"degree must lie in [1, {MAX_DEGREE}], got {n}")
    for code in range(p**n):
        low = [(code // p**k) % p for k in range(n)]
        if low[0] == 0:
            continue
        f = ZpPolynomial(p, tuple(low) + (1,))
        if is_irreducible(f):
            return f
    raise FieldError(f"no irreducible polynomial of degree {n} over Z_{p}")  # pragma: no cover


def quadratic_nonresidue(p: int) -> int:
    """Smallest ``D`` in ``[2, p)`` that is not a square mod ``p``."""
    _require_prime(p)
    if p == 2:
        raise FieldError("p = 2 has no quadratic nonresidue")
    squares = {k * k % p for k in range(p)}
    for D in range(2, p):
        if D not in squares:
            return D
    raise FieldError(f"no nonresidue found for {p}")  # pragma: no cover


# ---------------------------------------------------------------------------
# Field elements
# ---------------------------------------------------------------------------


class GFElement:
    """Element of GF(p^n) in the power basis of the context's root."""

    __slots__ = ("coeffs", "ctx")

    def __init__(self, coeffs: Sequence[int], ctx: "FieldContext"):
        if len(coeffs) != ctx.n:
            raise FieldError(f"expected {ctx.n} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", tuple(int(c) % ctx.p for c in coeffs))
        object.__setattr__(self, "ctx", ctx)

    def __setattr__(self, name, value):
        raise AttributeError("GFElement is immutable")

    def __eq__(self, other):
        if not isinstance(other, GFElement):
            return NotImplemented
        return self.ctx.key == other.ctx.key and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx.key, self.coeffs))

    def __repr__(self):
        return f"GFElement({list(self.coeffs)}, p={self.ctx.p}, n={self.ctx.n})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("lam" if k == 1 else f"lam^{k}")
            if k == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    @property
    def index(self) -> int:
        """Integer ``sum a_k p^k``; enumerates the field with ``a_0`` fastest."""
        return sum(c * self.ctx.p**k for k, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        return gf_add(self, other)

    def __sub__(self, other):
        return gf_sub(self, other)

    def __neg__(self):
        return gf_neg(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.ctx.element([c * other for c in self.coeffs])
        return gf_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.ctx.element([c * other for c in self.coeffs])
        return NotImplemented

    def __truediv__(self, other):
        return gf_mul(self, gf_inv(other))

    def __pow__(self, e: int):
        return gf_pow(self, e)


def _check_same(a: GFElement, b: GFElement) -> None:
    if a.ctx.key != b.ctx.key:
        raise ContextMismatchError("elements belong to different fields")


def gf_add(a: GFElement, b: GFElement) -> GFElement:
    _check_same(a, b)
    return GFElement([x + y for x, y in zip(a.coeffs, b.coeffs)], a.ctx)


def gf_neg(a: GFElement) -> GFElement:
    return GFElement([-x for x in a.coeffs], a.ctx)


def gf_sub(a: GFElement, b: GFElement) -> GFElement:
    _check_same(a, b)
    return GFElement([x - y for x, y in zip(a.coeffs, b.coeffs)], a.ctx)


def gf_mul(a: GFElement, b: GFElement) -> GFElement:
    """Product, reduced with ``lam^n = -(c_0 + ... + c_{n-1} lam^(n-1))``."""
    _check_same(a, b)
    ctx = a.ctx
    p, n = ctx.p, ctx.n
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                prod[i + j] += x * y
    c = ctx.f.coeffs
    for k in range(2 * n - 2, n - 1, -1):
        top = prod[k] % p
        if top:
            for i in range(n):
                prod[k - n + i] -= top * c[i]
        prod[k] = 0
    return GFElement(prod[:n], ctx)


def gf_pow(a: GFElement, e: int) -> GFElement:
    if e < 0:
        return gf_pow(gf_inv(a), -e)
    result = a.ctx.one
    base = a
    while e:
        if e & 1:
            result = gf_mul(result, base)
        base = gf_mul(base, base)
        e >>= 1
    return result


def gf_inv(a: GFElement) -> GFElement:
    """Multiplicative inverse as ``a^(p^n - 2)``."""
    if a.is_zero():
        raise ZeroDivisionError("zero has no inverse in GF(p^n)")
    return gf_pow(a, a.ctx.order - 2)


def quadratic_inverse(a: GFElement) -> GFElement:
    """Closed-form inverse ``(j - k lam)(j^2 - D k^2)^-1`` for ``f = x^2 - D``."""
    ctx = a.ctx
    c = ctx.f.coeffs
    if ctx.n != 2 or c[1] != 0:
        raise FieldError("closed-form inverse needs f(x) = x^2 - D")
    if a.is_zero():
        raise ZeroDivisionError("zero has no inverse in GF(p^n)")
    p = ctx.p
    D = (-c[0]) % p
    j, k = a.coeffs
    norm = (j * j - D * k * k) % p
    s = pow(norm, p - 2, p)
    return ctx.element([j * s, -k * s])


# ---------------------------------------------------------------------------
# Field context
# ---------------------------------------------------------------------------


class FieldContext:
    """GF(p^n) built as Z_p[lam]/f(lam).

    Parameters
    ----------
    p : int
        Prime characteristic.
    n : int, optional
        Extension degree.  Taken from ``poly`` when that is given.
    poly : ZpPolynomial or sequence of int, optional
        Monic irreducible defining polynomial ``[c_0, ..., c_n]``.  Defaults to
        :func:`find_irreducible`.
    nonresidue : int, optional
        Quadratic nonresidue ``D``; only meaningful for odd ``p`` and ``n = 2``.
        Defaults to the value implied by ``f = x^2 - D`` if ``f`` has that
        form, else :func:`quadratic_nonresidue`.
    """

    def __init__(self, p: int, n: int | None = None, poly=None, nonresidue: int | None = None):
        _require_prime(p)
        if poly is None:
            if n is None:
                raise FieldError("need either n or poly")
            f = find_irreducible(p, n)
        else:
            f = poly if isinstance(poly, ZpPolynomial) else ZpPolynomial(p, tuple(poly))
            if f.p != p:
                raise FieldError("polynomial modulus does not match p")
            if n is not None and f.degree != n:
                raise FieldError(f"polynomial has degree {f.degree}, expected {n}")
            if not f.is_monic:
                raise FieldError(f"polynomial {f} is not monic")
            if not 1 <= f.degree <= MAX_DEGREE:
                raise FieldError(f"degree must lie in [1, {MAX_DEGREE}]")
            if not is_irreducible(f):
                raise FieldError(f"polynomial {f} is reducible over Z_{p}")
        self.p = p
        self.n = f.degree
        self.f = f
        self.key = (p, f.coeffs)
        self.order = p**self.n

        self.zero = GFElement([0] * self.n, self)
        self.one = self.element_from_index(1)
        if self.n == 1:
            # the power basis is {1}; the root itself is the scalar -c_0
            self.lam = self.element([-f.coeffs[0]])
        else:
            self.lam = self.element([0, 1] + [0] * (self.n - 2))

        self.roots = tuple(frobenius_roots(self))
        dprime = self.poly_at(self.f.derivative().coeffs, self.lam)
        if dprime.is_zero():
            raise FieldError("f'(lam) = 0: polynomial has repeated roots")
        self.dprime_inv = gf_inv(dprime)
        self.quotient_coeffs = tuple(quotient_coeffs(self))
        self.dual_coeffs = tuple(dual_basis(self))

        self.nonresidue = None
        if p != 2 and self.n == 2:
            c = f.coeffs
            if nonresidue is not None:
                squares = {k * k % p for k in range(p)}
                if nonresidue % p in squares:
                    raise FieldError(f"D = {nonresidue} is a quadratic residue mod {p}")
                self.nonresidue = nonresidue % p
            elif c[1] == 0:
                self.nonresidue = (-c[0]) % p
            else:
                self.nonresidue = quadratic_nonresidue(p)

    @classmethod
    def from_nonresidue(cls, p: int, D: int | None = None) -> "FieldContext":
        """GF(p^2) defined by ``f(x) = x^2 - D`` for odd ``p``."""
        _require_prime(p)
        if p == 2:
            raise FieldError("x^2 - D construction needs an odd prime")
        if D is None:
            D = quadratic_nonresidue(p)
        if D % p in {k * k % p for k in range(p)}:
            raise FieldError(f"D = {D} is a quadratic residue mod {p}")
        return cls(p, 2, poly=(-D, 0, 1), nonresidue=D)

    def __repr__(self):
        return f"FieldContext(p={self.p}, n={self.n}, f={self.f})"

    def element(self, coeffs: Sequence[int]) -> GFElement:
        return GFElement(coeffs, self)

    def scalar(self, c: int) -> GFElement:
        return GFElement([c] + [0] * (self.n - 1), self)

    def element_from_index(self, i: int) -> GFElement:
        return GFElement([(i // self.p**k) % self.p for k in range(self.n)], self)

    def elements(self) -> Iterator[GFElement]:
        """All ``p^n`` elements ordered by :attr:`GFElement.index`."""
        for digits in product(range(self.p), repeat=self.n):
            yield GFElement(digits[::-1], self)

    def lam_power(self, k: int) -> GFElement:
        return gf_pow(self.lam, k)

    def poly_at(self, coeffs: Sequence[int], x: GFElement) -> GFElement:
        """Evaluate an integer-coefficient polynomial at a field element (Horner)."""
        acc = self.zero
        for c in reversed(coeffs):
            acc = gf_mul(acc, x) + self.scalar(c)
        return acc

    def substitute(self, a: GFElement, root: GFElement) -> GFElement:
        """``a(root)``: replace the basis root ``lam`` by another root."""
        acc = self.zero
        power = self.one
        for c in a.coeffs:
            if c:
                acc = acc + power * c
            power = gf_mul(power, root)
        return acc


def frobenius_roots(ctx: FieldContext) -> list[GFElement]:
    """The conjugates ``lam^(p^t)``, ``0 <= t < n``, each checked against ``f``."""
    roots = []
    r = ctx.lam
    for _ in range(ctx.n):
        if not ctx.poly_at(ctx.f.coeffs, r).is_zero():
            raise FieldError(f"{r} is not a root of {ctx.f}")
        if r in roots:
            raise FieldError(f"repeated root {r}: polynomial is not separable")
        roots.append(r)
        r = gf_pow(r, ctx.p)
    return roots


def trace(a: GFElement) -> int:
    """Field trace ``sum_r a(lam_r)``, returned as an integer in ``[0, p)``."""
    ctx = a.ctx
    total = ctx.zero
    for root in ctx.roots:
        total = total + ctx.substitute(a, root)
    if any(total.coeffs[1:]):
        raise FieldError(f"trace {total} does not lie in Z_{ctx.p}")  # pragma: no cover
    return total.coeffs[0]


def quotient_coeffs(ctx: FieldContext) -> list[GFElement]:
    """Coefficients ``d_0, ..., d_{n-1}`` of ``f(x) / (x - lam)``.

    Uses ``d_{n-r} = sum_{j<r} lam^j c_{n+j+1-r}`` with ``c_n = 1``.
    """
    n = ctx.n
    c = ctx.f.coeffs
    d = [ctx.zero] * n
    for r in range(1, n + 1):
        acc = ctx.zero
        for j in range(r):
            acc = acc + ctx.lam_power(j) * c[n + j + 1 - r]
        d[n - r] = acc
    return d


def dual_basis(ctx: FieldContext) -> list[GFElement]:
    """Trace-dual ``g_j = d_j / f'(lam)`` of the power basis."""
    return [gf_mul(dj, ctx.dprime_inv) for dj in ctx.quotient_coeffs]

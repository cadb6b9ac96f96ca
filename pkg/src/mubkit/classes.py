"""Commuting classes of spin-matrix indices.

A class is a ``p^n``-element subspace of ``Z_p^(2n)`` whose vectors have
pairwise vanishing symplectic product, so the corresponding tensor spin
matrices commute.  ``p^n + 1`` such classes meeting only at the origin give a
complete set of mutually unbiased bases.

Index vectors are interleaved, ``(x_0, y_0, x_1, y_1, ...)``, with pair ``t``
naming the factor ``S_{x_t, y_t}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .galois import FieldContext, FieldError, GFElement, gf_mul, is_prime, trace
from .spin import TensorSpinIndex, tensor_spin_matrix

__all__ = [
    "ClassLabel",
    "INFINITY",
    "CommutingClass",
    "MubFamily",
    "PartitionReport",
    "symplectic2",
    "symplectic2_gf",
    "symplectic2n",
    "symplectic_form",
    "m_map",
    "m_map_inverse",
    "span",
    "classes_prime",
    "classes_prime_squared",
    "classes_general",
    "build_family",
    "verify_partition",
    "class_grid",
]


@dataclass(frozen=True)
class ClassLabel:
    """Digits ``(a_0, ..., a_{n-1})`` of ``alpha`` in the power basis, or infinity."""

    digits: tuple[int, ...] | None

    @property
    def is_infinity(self) -> bool:
        return self.digits is None

    def __str__(self) -> str:
        if self.digits is None:
            return "inf"
        sep = "" if max(self.digits, default=0) < 10 else "."
        return sep.join(str(a) for a in self.digits)

    @classmethod
    def parse(cls, text: str) -> "ClassLabel":
        if text == "inf":
            return INFINITY
        if "." in text:
            return cls(tuple(int(a) for a in text.split(".")))
        return cls(tuple(int(a) for a in text))


INFINITY = ClassLabel(None)


def symplectic2(u: Sequence[int], v: Sequence[int], modulus: int) -> int:
    """``(j, k) o (j', k') = k j' - j k'`` mod ``modulus``."""
    j, k = u
    jp, kp = v
    return (k * jp - j * kp) % modulus


def symplectic2_gf(u: Sequence[GFElement], v: Sequence[GFElement]) -> GFElement:
    """``(a, b) o (a', b') = b a' - a b'`` over GF(p^n)."""
    a, b = u
    ap, bp = v
    return gf_mul(b, ap) - gf_mul(a, bp)


def symplectic2n(w1, w2, p: int | None = None) -> int:
    """Sum of the pairwise symplectic products over all tensor factors."""
    if isinstance(w1, TensorSpinIndex):
        p = w1.p if p is None else p
        w1 = w1.w
    if isinstance(w2, TensorSpinIndex):
        if p is not None and w2.p != p:
            raise ValueError("modulus mismatch")
        p = w2.p if p is None else p
        w2 = w2.w
    if p is None:
        raise ValueError("modulus p is required for plain vectors")
    if len(w1) != len(w2) or len(w1) % 2:
        raise ValueError(f"shape mismatch: {len(w1)} vs {len(w2)}")
    return sum(
        symplectic2(w1[2 * t : 2 * t + 2], w2[2 * t : 2 * t + 2], p) for t in range(len(w1) // 2)
    ) % p


def symplectic_form(n: int) -> np.ndarray:
    """Matrix ``J`` with ``w1 @ J @ w2 = w1 o w2`` (before reduction mod p)."""
    J = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for t in range(n):
        J[2 * t, 2 * t + 1] = -1
        J[2 * t + 1, 2 * t] = 1
    return J


# ---------------------------------------------------------------------------
# GF(p^n)^2 <-> Z_p^(2n)
# ---------------------------------------------------------------------------


def m_map(z: Sequence[GFElement], ctx: FieldContext) -> tuple[int, ...]:
    """Coordinates of ``z = (A, B)`` in the basis ``e_j = g_j(1,0)``, ``f_k = lam^k(0,1)``.

    ``A = sum x_j g_j`` gives ``x_j = Tr(A lam^j)`` by trace duality and
    ``y_k`` are the power-basis coefficients of ``B``.
    """
    A, B = z
    out = []
    power = ctx.one
    for t in range(ctx.n):
        out.append(trace(gf_mul(A, power)))
        out.append(B.coeffs[t])
        power = gf_mul(power, ctx.lam)
    return tuple(out)


def m_map_inverse(w: Sequence[int], ctx: FieldContext) -> tuple[GFElement, GFElement]:
    A = ctx.zero
    for j in range(ctx.n):
        A = A + ctx.dual_coeffs[j] * int(w[2 * j])
    B = ctx.element([w[2 * k + 1] for k in range(ctx.n)])
    return A, B


def span(generators: Sequence[Sequence[int]], p: int) -> np.ndarray:
    """All ``Z_p`` combinations of ``generators``; row order has the first coefficient fastest."""
    G = np.asarray(generators, dtype=np.int64)
    r = G.shape[0]
    coeffs = np.array([c[::-1] for c in product(range(p), repeat=r)], dtype=np.int64).reshape(-1, r)
    return (coeffs @ G) % p


# ---------------------------------------------------------------------------
# Classes and families
# ---------------------------------------------------------------------------


class CommutingClass:
    """One commuting class: its label, ``n`` generators and all ``p^n`` members."""

    def __init__(self, label: ClassLabel, p: int, generators: Iterable[Sequence[int]], members=None):
        self.label = label
        self.p = p
        self.generators = tuple(tuple(int(x) % p for x in g) for g in generators)
        self.n = len(self.generators[0]) // 2
        if members is None:
            members = span(self.generators, p)
        self.members = np.asarray(members, dtype=np.int64) % p
        self._member_set = None

    def __repr__(self):
        return f"CommutingClass({self.label}, generators={self.generators})"

    @property
    def member_set(self) -> frozenset:
        if self._member_set is None:
            self._member_set = frozenset(tuple(int(x) for x in row) for row in self.members)
        return self._member_set

    def __contains__(self, w) -> bool:
        return tuple(int(x) % self.p for x in w) in self.member_set

    def generator_indices(self) -> list[TensorSpinIndex]:
        return [TensorSpinIndex(self.p, g) for g in self.generators]

    def operators(self, alpha: bool = False) -> list[np.ndarray]:
        """Dense tensor spin matrices of every member."""
        return [tensor_spin_matrix(TensorSpinIndex(self.p, tuple(w)), alpha=alpha) for w in self.members]

    def to_dict(self, members: bool = True) -> dict:
        out = {"label": str(self.label), "generators": [list(g) for g in self.generators]}
        if members:
            out["members"] = self.members.tolist()
        return out


@dataclass
class MubFamily:
    """The ``p^n + 1`` commuting classes for dimension ``d = p^n``."""

    p: int
    n: int
    ctx: FieldContext | None
    classes: list[CommutingClass]
    _lookup: dict | None = field(default=None, repr=False)

    @property
    def d(self) -> int:
        return self.p**self.n

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    def __getitem__(self, label) -> CommutingClass:
        if isinstance(label, str):
            label = ClassLabel.parse(label)
        elif isinstance(label, tuple):
            label = ClassLabel(label)
        for cls in self.classes:
            if cls.label == label:
                return cls
        raise KeyError(str(label))

    @property
    def labels(self) -> list[ClassLabel]:
        return [c.label for c in self.classes]

    def lookup(self, w: Sequence[int]) -> ClassLabel | None:
        """Label of the class containing the nonzero vector ``w`` (``None`` for the origin)."""
        if self._lookup is None:
            table = {}
            for cls in self.classes:
                for row in cls.members:
                    key = tuple(int(x) for x in row)
                    if any(key):
                        table[key] = cls.label
            self._lookup = table
        key = tuple(int(x) % self.p for x in w)
        if not any(key):
            return None
        return self._lookup[key]

    def to_dict(self, members: bool = True) -> dict:
        out = {"p": self.p, "n": self.n, "d": self.d}
        if self.ctx is not None:
            out["poly"] = self.ctx.f.to_list()
            if self.ctx.nonresidue is not None:
                out["D"] = self.ctx.nonresidue
        out["classes"] = [c.to_dict(members=members) for c in self.classes]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "MubFamily":
        """Rebuild from a JSON dump; stored members are kept as given (not re-derived)."""
        p, n = int(data["p"]), int(data["n"])
        ctx = None
        if "poly" in data:
            ctx = FieldContext(p, n, poly=data["poly"], nonresidue=data.get("D"))
        classes = [
            CommutingClass(ClassLabel.parse(c["label"]), p, c["generators"], c.get("members"))
            for c in data["classes"]
        ]
        return cls(p, n, ctx, classes)


def classes_prime(p: int) -> MubFamily:
    """``C_a = {b(1, a)}`` and ``C_inf = {b(0, 1)}`` for prime ``p``."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    classes = [CommutingClass(ClassLabel((a,)), p, [(1, a)]) for a in range(p)]
    classes.append(CommutingClass(INFINITY, p, [(0, 1)]))
    return MubFamily(p, 1, FieldContext(p, 1), classes)


def classes_prime_squared(p: int, D: int | None = None) -> MubFamily:
    """Explicit two-factor classes for odd ``p`` and a nonresidue ``D``.

    ``C_{a0,a1}`` is spanned by ``(2, a0, 0, a1)`` and ``(0, a1 D, 2D, a0)``;
    ``C_inf`` by ``(0, 1, 0, 0)`` and ``(0, 0, 0, 1)``.
    """
    ctx = FieldContext.from_nonresidue(p, D)
    D = ctx.nonresidue
    classes = []
    for a1 in range(p):
        for a0 in range(p):
            gens = [(2, a0, 0, a1), (0, a1 * D, 2 * D, a0)]
            classes.append(CommutingClass(ClassLabel((a0, a1)), p, gens))
    classes.append(CommutingClass(INFINITY, p, [(0, 1, 0, 0), (0, 0, 0, 1)]))
    return MubFamily(p, 2, ctx, classes)


def classes_general(ctx: FieldContext) -> MubFamily:
    """Classes for ``d = p^n`` from the lines ``C_alpha = {beta(1, alpha)}`` over GF(p^n).

    Each ``C_alpha`` is carried to ``Z_p^(2n)`` by :func:`m_map`.  Generators
    come from ``beta = g_j`` so generator ``j`` has ``x_j = 1`` and the other
    ``x`` coordinates zero; ``C_inf`` is spanned by the unit ``y`` vectors.
    """
    if ctx is None or not ctx.dual_coeffs:
        raise FieldError("field context is not populated")
    p, n = ctx.p, ctx.n
    classes = []
    for alpha in ctx.elements():
        gens = [m_map((g, gf_mul(g, alpha)), ctx) for g in ctx.dual_coeffs]
        classes.append(CommutingClass(ClassLabel(alpha.coeffs), p, gens))
    inf_gens = []
    for j in range(n):
        w = [0] * (2 * n)
        w[2 * j + 1] = 1
        inf_gens.append(tuple(w))
    classes.append(CommutingClass(INFINITY, p, inf_gens))
    return MubFamily(p, n, ctx, classes)


def build_family(p: int, n: int, poly=None, D: int | None = None) -> MubFamily:
    """Family for ``d = p^n``; ``D`` selects ``f = x^2 - D`` (odd ``p``, ``n = 2``)."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if D is not None:
        if poly is not None:
            raise FieldError("give either a polynomial or D, not both")
        if n != 2:
            raise FieldError("D is only meaningful for n = 2")
        return classes_general(FieldContext.from_nonresidue(p, D))
    if n == 1 and poly is None:
        return classes_prime(p)
    return classes_general(FieldContext(p, n, poly=poly))


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass
class PartitionReport:
    passed: bool
    n_classes: int
    class_sizes: list[int]
    nonzero_covered: int
    failures: list[str]
    missing: list[tuple] = field(default_factory=list)
    duplicates: list[tuple] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "n_classes": self.n_classes,
            "class_sizes": self.class_sizes,
            "nonzero_covered": self.nonzero_covered,
            "failures": self.failures,
            "missing": [list(w) for w in self.missing],
            "duplicates": [list(w) for w in self.duplicates],
        }


def verify_partition(fam: MubFamily, max_listed: int = 10) -> PartitionReport:
    """Check that the classes are commuting subspaces partitioning the nonzero vectors."""
    p, n = fam.p, fam.n
    d = p**n
    J = symplectic_form(n)
    failures = []
    seen: dict[tuple, ClassLabel] = {}
    duplicates = []
    if len(fam.classes) != d + 1:
        failures.append(f"expected {d + 1} classes, found {len(fam.classes)}")
    sizes = []
    for cls in fam.classes:
        M = cls.members
        distinct = cls.member_set
        sizes.append(len(distinct))
        if len(distinct) != d or M.shape[0] != d:
            failures.append(f"class {cls.label}: {len(distinct)} distinct members, expected {d}")
        if (0,) * (2 * n) not in distinct:
            failures.append(f"class {cls.label}: origin missing")
        if M.shape[1] != 2 * n:
            failures.append(f"class {cls.label}: vectors of length {M.shape[1]}")
            continue
        sym = (M @ J @ M.T) % p
        if np.any(sym):
            a, b = np.argwhere(sym)[0]
            failures.append(
                f"class {cls.label}: {tuple(M[a])} o {tuple(M[b])} = {sym[a, b]} (not commuting)"
            )
        if set(map(tuple, span(cls.generators, p).tolist())) != distinct:
            failures.append(f"class {cls.label}: members are not the span of the generators")
        for w in distinct:
            if not any(w):
                continue
            if w in seen and seen[w] != cls.label:
                if len(duplicates) < max_listed:
                    duplicates.append(w)
                failures.append(f"vector {w} lies in classes {seen[w]} and {cls.label}")
            seen[w] = cls.label
    missing = []
    total = p ** (2 * n) - 1
    if len(seen) != total:
        for w in product(range(p), repeat=2 * n):
            if any(w) and w not in seen:
                missing.append(w)
                if len(missing) >= max_listed:
                    break
        failures.append(f"{total - len(seen)} nonzero vectors not covered, e.g. {missing[:3]}")
    return PartitionReport(not failures, len(fam.classes), sizes, len(seen), failures, missing, duplicates)


def class_grid(fam: MubFamily) -> tuple[list[str], list[str], list[list[str]]]:
    """Grid of class labels: rows by ``(x_0..x_{n-1})``, columns by ``(y_0..y_{n-1})``.

    The origin cell is empty.  Returns ``(row_labels, col_labels, cells)``.
    """
    p, n = fam.p, fam.n
    idx = list(product(range(p), repeat=n))
    names = ["".join(map(str, t)) if p <= 10 else ".".join(map(str, t)) for t in idx]
    cells = []
    for js in idx:
        row = []
        for ks in idx:
            w = [v for pair in zip(js, ks) for v in pair]
            lab = fam.lookup(w)
            row.append("" if lab is None else str(lab))
        cells.append(row)
    return names, names, cells

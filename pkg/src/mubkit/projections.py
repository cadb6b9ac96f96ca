"""Rank-one projectors and basis vectors for each commuting class.

For prime ``d`` and ``u != 0``::

    P_u(r) = (1/d) sum_m (alpha_u eta^r S_u)^m

For a class in ``Z_p^(2n)`` with generators ``w_0, ..., w_{n-1}`` the family
is the product of the per-generator families,
``P(r) = Q_0(r_0) Q_1(r_1) ... Q_{n-1}(r_{n-1})``, where ``Q_t`` is built from
the tensor operator of ``w_t`` with each ``p x p`` factor carrying its own
``alpha``.  The per-factor correction makes every generator operator satisfy
``A^p = I`` (it only matters for ``p = 2``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from typing import Sequence

import numpy as np

from .classes import ClassLabel, CommutingClass, MubFamily, symplectic2n
from .galois import is_prime
from .spin import (
    PhasedSpinOp,
    SpinIndex,
    TensorSpinIndex,
    alpha_exponent,
    binom2,
    spin_pow,
    zeta_power,
)

__all__ = [
    "ProjectionFamily",
    "MUBasis",
    "MubReport",
    "projections_prime",
    "reduce_multiple",
    "generator_projectors",
    "projections_tensor",
    "family_projections",
    "extract_basis",
    "spin_from_projections",
    "check_mub",
]


@dataclass
class ProjectionFamily:
    """The ``d`` projectors of one class.

    ``projections[i]`` is the projector for level ``levels[i]``; levels are
    ``(r,)`` for a single factor and ``(r_0, ..., r_{n-1})`` (one entry per
    generator, ``r_0`` slowest) otherwise.
    """

    label: ClassLabel | None
    d: int
    projections: np.ndarray
    levels: list[tuple[int, ...]] = field(default_factory=list)

    def __len__(self):
        return len(self.projections)

    def __getitem__(self, r) -> np.ndarray:
        if isinstance(r, (int, np.integer)):
            r = (int(r),)
        return self.projections[self.levels.index(tuple(r))]


@dataclass
class MUBasis:
    label: ClassLabel | None
    vectors: np.ndarray  # row i spans the range of projection i


def projections_prime(u: SpinIndex) -> ProjectionFamily:
    """``{P_u(r) : 0 <= r < d}`` for prime ``d`` with exact phase bookkeeping."""
    d = u.d
    if not is_prime(d):
        raise ValueError(f"dimension {d} is not prime")
    if u.is_zero():
        raise ValueError("u = (0, 0) does not define a projector family")
    a = alpha_exponent(u)
    powers = [spin_pow(PhasedSpinOp(u, a), m) for m in range(d)]
    dense = np.stack([op.to_dense() for op in powers])
    out = np.empty((d, d, d), dtype=complex)
    for r in range(d):
        weights = np.array([zeta_power(2 * r * m, d) for m in range(d)])
        out[r] = np.tensordot(weights, dense, axes=1) / d
    return ProjectionFamily(None, d, out, [(r,) for r in range(d)])


def reduce_multiple(u_t: SpinIndex, b: int, r: int) -> tuple[SpinIndex, int]:
    """Level ``s`` with ``P_{b u_t}(r) = P_{u_t}(s)`` for an odd prime ``d``.

    ``s = b^-1 (r - j_t k_t C(b, 2))`` mod ``d``.
    """
    d = u_t.d
    if d == 2 or not is_prime(d):
        raise ValueError("reduce_multiple needs an odd prime dimension")
    b %= d
    if b == 0:
        raise ValueError("b = 0 is not invertible")
    b_inv = pow(b, d - 2, d)
    s = b_inv * (r - u_t.j * u_t.k * binom2(b)) % d
    return u_t, s


def _phased_tensor_power(w: TensorSpinIndex, m: int) -> np.ndarray:
    # (alpha-corrected tensor operator)^m, factorwise with exact phases
    factors = [spin_pow(PhasedSpinOp(u, alpha_exponent(u)), m).to_dense() for u in w.pairs]
    return reduce(np.kron, factors)


def generator_projectors(w: TensorSpinIndex) -> np.ndarray:
    """``Q(s) = (1/p) sum_m (eta^s A)^m`` for ``s`` in ``Z_p``; shape ``(p, D, D)``."""
    p = w.p
    powers = np.stack([_phased_tensor_power(w, m) for m in range(p)])
    out = np.empty((p,) + powers.shape[1:], dtype=complex)
    for s in range(p):
        weights = np.array([zeta_power(2 * s * m, p) for m in range(p)])
        out[s] = np.tensordot(weights, powers, axes=1) / p
    return out


def projections_tensor(cls: CommutingClass) -> ProjectionFamily:
    """Joint eigenprojectors of a commuting class, one per level vector ``r``."""
    p, n = cls.p, cls.n
    gens = cls.generator_indices()
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            if symplectic2n(gens[a], gens[b]) != 0:
                raise ValueError(
                    f"generators {gens[a].w} and {gens[b].w} do not commute"
                )
    Q = [generator_projectors(g) for g in gens]
    D = p**n
    levels = list(product(range(p), repeat=len(gens)))
    out = np.empty((len(levels), D, D), dtype=complex)
    for i, r in enumerate(levels):
        out[i] = reduce(np.matmul, [Q[t][r[t]] for t in range(len(gens))])
    return ProjectionFamily(cls.label, D, out, levels)


def family_projections(fam: MubFamily) -> list[ProjectionFamily]:
    """Projector families for every class of ``fam``, in class order."""
    out = []
    for cls in fam.classes:
        if fam.n == 1:
            j, k = cls.generators[0]
            pf = projections_prime(SpinIndex(fam.p, j, k))
            pf.label = cls.label
        else:
            pf = projections_tensor(cls)
        out.append(pf)
    return out


def extract_basis(fam: ProjectionFamily, tol: float = 1e-10) -> MUBasis:
    """Unit vector spanning each projector, first nonzero entry real positive."""
    vecs = np.empty((len(fam.projections), fam.d), dtype=complex)
    for i, P in enumerate(fam.projections):
        tr1 = np.trace(P).real
        tr2 = np.trace(P @ P).real
        if abs(tr1 - 1) > tol or abs(tr2 - 1) > tol:
            raise ValueError(
                f"projection {fam.levels[i] if fam.levels else i} is not rank one "
                f"(tr P = {tr1:.3g}, tr P^2 = {tr2:.3g})"
            )
        col = P[:, np.argmax(np.linalg.norm(P, axis=0))]
        v = col / np.linalg.norm(col)
        lead = v[np.flatnonzero(np.abs(v) > tol)[0]]
        vecs[i] = v * (abs(lead) / lead)
    return MUBasis(fam.label, vecs)


def spin_from_projections(fam: ProjectionFamily, t: int, r: int = 0) -> np.ndarray:
    """``sum_m eta^(-m t) P(m + r)``, which equals ``(alpha_u eta^r S_u)^t``."""
    d = fam.d
    out = np.zeros((d, d), dtype=complex)
    for m in range(d):
        out += zeta_power(-2 * m * t, d) * fam[(m + r) % d]
    return out


@dataclass
class MubReport:
    passed: bool
    tol: float
    within_max: float
    completeness_max: float
    hermitian_max: float
    cross_max: float
    vector_max: float
    orthonormal_max: float
    worst_pair: tuple | None = None

    def to_dict(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if k != "worst_pair"}
        out["worst_pair"] = None if self.worst_pair is None else [str(x) for x in self.worst_pair]
        return out


def check_mub(
    families: Sequence[ProjectionFamily],
    tol: float = 1e-9,
    bases: Sequence[MUBasis] | None = None,
) -> MubReport:
    """Within-family orthogonality and completeness plus cross-family unbiasedness.

    All families are treated as distinct measurement settings, so passing the
    same family twice is reported as a violation.
    """
    d = families[0].d
    K = len(families)
    P = np.stack([f.projections for f in families])  # (K, d, d, d)
    flat = P.reshape(K * d, d * d)
    # Tr(P Q) = sum_ij P_ij Q_ji; for Hermitian P this is vdot(P, Q)
    gram = (flat.conj() @ flat.T).real.reshape(K, d, K, d)

    eye = np.eye(d)
    within = max(float(np.max(np.abs(gram[a, :, a, :] - eye))) for a in range(K))
    completeness = max(float(np.max(np.abs(P[a].sum(axis=0) - eye))) for a in range(K))
    herm = float(np.max(np.abs(P - np.conj(np.swapaxes(P, -1, -2)))))

    cross = 0.0
    worst = None
    for a in range(K):
        for b in range(a + 1, K):
            dev = float(np.max(np.abs(gram[a, :, b, :] - 1.0 / d)))
            if dev > cross:
                cross, worst = dev, (families[a].label, families[b].label)

    if bases is None:
        bases = [extract_basis(f, tol=max(tol, 1e-8)) for f in families]
    V = np.stack([b.vectors for b in bases])  # (K, d, d)
    ov = np.abs(np.einsum("aik,bjk->aibj", V.conj(), V)) ** 2
    ortho = max(float(np.max(np.abs(ov[a, :, a, :] - eye))) for a in range(K))
    vec = 0.0
    for a in range(K):
        for b in range(a + 1, K):
            vec = max(vec, float(np.max(np.abs(ov[a, :, b, :] - 1.0 / d))))

    passed = all(x < tol for x in (within, completeness, herm, cross, vec, ortho))
    return MubReport(passed, tol, within, completeness, herm, cross, vec, ortho, worst)

"""Simulated MUB measurements and density-matrix reconstruction.

Two reconstruction routes:

* prime ``d``: recover every spin coefficient ``s_u = Tr(S_u^dagger rho)``
  from the outcome probabilities of ``u``'s class and resum
  ``rho = (1/d) sum_u s_u S_u``;
* any ``d = p^n``: the projector identity
  ``sum_b sum_r p_b(r) P_b(r) = rho + I`` over a complete MUB set.

The second route is checked against a direct spin-basis expansion before it
is first used.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .classes import MubFamily, build_family
from .projections import ProjectionFamily, check_mub, family_projections, reduce_multiple
from .spin import (
    SpinIndex,
    alpha_exponent,
    spin_matrix,
    tensor_spin_matrix,
    zeta_power,
)

__all__ = [
    "MeasurementRecord",
    "TomographyError",
    "random_density_matrix",
    "random_pure_state",
    "validate_density",
    "measure_probs",
    "spin_coefficient",
    "spin_basis_expansion",
    "reconstruct_prime",
    "reconstruct_general",
    "general_route_gate",
]

RNG_NAME = "numpy.random.Generator(PCG64)"


class TomographyError(ValueError):
    pass


def random_density_matrix(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """``A A^dagger / tr`` with ``A`` a complex Gaussian ``d x rank`` matrix."""
    rank = d if rank is None else rank
    A = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = A @ A.conj().T
    return rho / np.trace(rho).real


def random_pure_state(d: int, rng: np.random.Generator) -> np.ndarray:
    return random_density_matrix(d, rng, rank=1)


def validate_density(rho: np.ndarray, tol: float = 1e-10) -> None:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise TomographyError(f"density matrix must be square, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise TomographyError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise TomographyError(f"density matrix has trace {np.trace(rho).real:.6g}")
    if np.linalg.eigvalsh((rho + rho.conj().T) / 2).min() < -tol:
        raise TomographyError("density matrix is not positive semidefinite")


@dataclass
class MeasurementRecord:
    """Outcome distributions per class label (``str``), exact or sampled."""

    probs: dict[str, np.ndarray]
    exact: bool = True
    shots: int | None = None
    seed: int | None = None
    rng: str | None = None

    def to_dict(self) -> dict:
        out = {"exact": self.exact}
        if not self.exact:
            out.update(shots=self.shots, seed=self.seed, rng=self.rng)
        out["probs"] = {k: [float(x) for x in v] for k, v in self.probs.items()}
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "MeasurementRecord":
        probs = {k: np.asarray(v, dtype=float) for k, v in data["probs"].items()}
        return cls(probs, data.get("exact", True), data.get("shots"), data.get("seed"), data.get("rng"))


def _projection_list(fam, projections):
    if projections is not None:
        return projections
    if isinstance(fam, MubFamily):
        return family_projections(fam)
    return list(fam)


def measure_probs(
    rho: np.ndarray,
    fam: MubFamily | Sequence[ProjectionFamily],
    shots: int | None = None,
    seed: int | None = None,
    projections: Sequence[ProjectionFamily] | None = None,
) -> MeasurementRecord:
    """Born probabilities ``Tr(P_b(r) rho)`` for every class; multinomial samples if ``shots``."""
    rho = np.asarray(rho, dtype=complex)
    projs = _projection_list(fam, projections)
    if rho.shape != (projs[0].d, projs[0].d):
        raise TomographyError(f"rho has shape {rho.shape}, family dimension is {projs[0].d}")
    validate_density(rho)
    probs = {}
    for pf in projs:
        pr = np.einsum("rij,ji->r", pf.projections, rho).real
        probs[str(pf.label)] = np.clip(pr, 0.0, None)
    if shots is None:
        return MeasurementRecord(probs)
    rng = np.random.default_rng(seed)
    sampled = {}
    for label, pr in probs.items():
        counts = rng.multinomial(shots, pr / pr.sum())
        sampled[label] = counts / shots
    return MeasurementRecord(sampled, exact=False, shots=shots, seed=seed, rng=RNG_NAME)


def _class_of(u: SpinIndex, fam: MubFamily):
    label = fam.lookup((u.j, u.k))
    cls = fam[label]
    jt, kt = cls.generators[0]
    p = u.d
    if jt:
        b = u.j * pow(jt, p - 2, p) % p
    else:
        b = u.k * pow(kt, p - 2, p) % p
    return cls, SpinIndex(p, jt, kt), b


def spin_coefficient(source, u: SpinIndex, fam: MubFamily | None = None) -> complex:
    """``s_u = Tr(S_u^dagger rho)``.

    ``source`` is either a density matrix (direct trace) or a
    :class:`MeasurementRecord` over the classes of the prime-dimension family
    ``fam``, in which case ``s_u = alpha_u sum_m eta^m p_u(m)``.
    """
    if u.is_zero():
        raise TomographyError("s_(0,0) is fixed to 1 by normalization")
    d = u.d
    if not isinstance(source, MeasurementRecord):
        rho = np.asarray(source)
        return complex(np.trace(spin_matrix(u).conj().T @ rho))
    if fam is None or fam.n != 1:
        raise TomographyError("record route needs the prime-dimension family")
    cls, u_t, b = _class_of(u, fam)
    label = str(cls.label)
    if label not in source.probs:
        raise TomographyError(f"record has no data for class {label}")
    pr = source.probs[label]
    if b == 1:
        p_u = pr
    else:
        p_u = np.array([pr[reduce_multiple(u_t, b, m)[1]] for m in range(d)])
    total = sum(zeta_power(2 * m, d) * p_u[m] for m in range(d))
    return complex(zeta_power(alpha_exponent(u), d) * total)


def reconstruct_prime(record: MeasurementRecord, fam: MubFamily) -> np.ndarray:
    """``rho = (1/p) [I + sum_{u != 0} s_u S_u]`` from a full record."""
    p = fam.p
    if fam.n != 1:
        raise TomographyError("prime route needs n = 1")
    missing = [str(c.label) for c in fam.classes if str(c.label) not in record.probs]
    if missing:
        raise TomographyError(f"incomplete record: missing classes {missing}")
    rho = np.eye(p, dtype=complex)
    for j, k in product(range(p), repeat=2):
        if j == 0 and k == 0:
            continue
        u = SpinIndex(p, j, k)
        rho += spin_coefficient(record, u, fam) * spin_matrix(u)
    return rho / p


def spin_basis_expansion(rho: np.ndarray, p: int, n: int) -> np.ndarray:
    """``(1/d) sum_w Tr(S_w^dagger rho) S_w`` over all ``d^2`` tensor spin matrices."""
    d = p**n
    out = np.zeros((d, d), dtype=complex)
    for w in product(range(p), repeat=2 * n):
        S = tensor_spin_matrix(w, p=p)
        out += np.trace(S.conj().T @ rho) * S
    return out / d


def _projector_expansion(probs: dict[str, np.ndarray], projs: Sequence[ProjectionFamily]) -> np.ndarray:
    d = projs[0].d
    out = -np.eye(d, dtype=complex)
    for pf in projs:
        out += np.tensordot(probs[str(pf.label)], pf.projections, axes=1)
    return out


@lru_cache(maxsize=None)
def general_route_gate(n_states: int = 20, seed: int = 0, tol: float = 1e-9) -> float:
    """Compare the projector identity with the spin-basis expansion at ``d = 4``.

    Returns the worst discrepancy; raises if it exceeds ``tol``.
    """
    fam = build_family(2, 2)
    projs = family_projections(fam)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_states):
        rho = random_density_matrix(4, rng)
        direct = spin_basis_expansion(rho, 2, 2)
        probs = {str(pf.label): np.einsum("rij,ji->r", pf.projections, rho).real for pf in projs}
        via = _projector_expansion(probs, projs)
        worst = max(worst, float(np.max(np.abs(direct - rho))), float(np.max(np.abs(via - direct))))
    if worst > tol:
        raise RuntimeError(f"projector-expansion check failed (deviation {worst:.3g})")
    return worst


def reconstruct_general(
    record: MeasurementRecord,
    fam: MubFamily,
    projections: Sequence[ProjectionFamily] | None = None,
    tol: float = 1e-9,
) -> np.ndarray:
    """``rho = sum_b sum_r p_b(r) P_b(r) - I`` for any prime-power ``d``."""
    general_route_gate()
    projs = _projection_list(fam, projections)
    missing = [str(pf.label) for pf in projs if str(pf.label) not in record.probs]
    if missing or len(projs) != fam.d + 1:
        raise TomographyError(f"incomplete record: missing classes {missing}")
    report = check_mub(projs, tol=tol)
    if not report.passed:
        raise TomographyError("projector families do not form a complete MUB set")
    return _projector_expansion(record.probs, projs)

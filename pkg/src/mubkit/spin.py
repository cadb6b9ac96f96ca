"""Generalized spin matrices ``S_{j,k} = sum_m eta^(m j) |m><m+k|``.

Scalars produced by the spin algebra are all powers of ``zeta = exp(i pi/d)``
(``eta = zeta^2``), so phases are carried as integer exponents mod ``2d`` and
only turned into complex numbers when a matrix is materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SpinIndex",
    "PhasedSpinOp",
    "TensorSpinIndex",
    "zeta_power",
    "spin_matrix",
    "spin_mul",
    "spin_pow",
    "spin_adjoint",
    "alpha_exponent",
    "tensor_spin_matrix",
    "trace_inner",
    "binom2",
]

DEFAULT_TOL = 1e-10


def binom2(m: int) -> int:
    """``C(m, 2)``, zero for ``m`` in {0, 1}."""
    return m * (m - 1) // 2


def zeta_power(e: int, d: int) -> complex:
    """``exp(i pi e / d)``."""
    e %= 2 * d
    # exact values on the axes keep materialized Pauli matrices clean
    quarter, rem = divmod(4 * e, 2 * d)
    if rem == 0:
        return (1, 1j, -1, -1j)[quarter % 4]
    return complex(np.exp(1j * np.pi * e / d))


@dataclass(frozen=True)
class SpinIndex:
    d: int
    j: int
    k: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"dimension must be positive, got {self.d}")
        object.__setattr__(self, "j", self.j % self.d)
        object.__setattr__(self, "k", self.k % self.d)

    def __iter__(self):
        return iter((self.j, self.k))

    def __neg__(self):
        return SpinIndex(self.d, -self.j, -self.k)

    def is_zero(self) -> bool:
        return self.j == 0 and self.k == 0

    def scaled(self, b: int) -> "SpinIndex":
        return SpinIndex(self.d, b * self.j, b * self.k)


@dataclass(frozen=True)
class PhasedSpinOp:
    """The operator ``zeta^phase_exp * S_index``."""

    index: SpinIndex
    phase_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "phase_exp", self.phase_exp % (2 * self.index.d))

    @property
    def d(self) -> int:
        return self.index.d

    @property
    def scalar(self) -> complex:
        return zeta_power(self.phase_exp, self.d)

    def to_dense(self) -> np.ndarray:
        return self.scalar * spin_matrix(self.index)

    def to_dict(self) -> dict:
        return {"d": self.d, "j": self.index.j, "k": self.index.k, "phase_exp": self.phase_exp}

    @classmethod
    def from_dict(cls, data: dict) -> "PhasedSpinOp":
        return cls(SpinIndex(data["d"], data["j"], data["k"]), data["phase_exp"])


def _as_op(a) -> PhasedSpinOp:
    if isinstance(a, PhasedSpinOp):
        return a
    if isinstance(a, SpinIndex):
        return PhasedSpinOp(a, 0)
    raise TypeError(f"expected SpinIndex or PhasedSpinOp, got {type(a).__name__}")


def spin_matrix(u: SpinIndex) -> np.ndarray:
    """Dense ``d x d`` matrix with entry ``(m, m+k) = eta^(m j)``."""
    d = u.d
    out = np.zeros((d, d), dtype=complex)
    for m in range(d):
        out[m, (m + u.k) % d] = zeta_power(2 * m * u.j, d)
    return out


def spin_mul(a, b) -> PhasedSpinOp:
    """``S_{j,k} S_{a,b} = eta^(k a) S_{j+a, k+b}``, input phases included."""
    a, b = _as_op(a), _as_op(b)
    if a.d != b.d:
        raise ValueError(f"dimension mismatch: {a.d} vs {b.d}")
    d = a.d
    u, v = a.index, b.index
    phase = a.phase_exp + b.phase_exp + 2 * u.k * v.j
    return PhasedSpinOp(SpinIndex(d, u.j + v.j, u.k + v.k), phase)


def spin_pow(u, m: int) -> PhasedSpinOp:
    """``(zeta^phi S_{j,k})^m = zeta^(m phi) eta^(j k C(m,2)) S_{mj, mk}``."""
    if m < 0:
        raise ValueError("exponent must be non-negative")
    op = _as_op(u)
    idx = op.index
    phase = m * op.phase_exp + 2 * idx.j * idx.k * binom2(m)
    return PhasedSpinOp(idx.scaled(m), phase)


def spin_adjoint(a) -> PhasedSpinOp:
    """``(zeta^phi S_{j,k})^dagger = zeta^(-phi) eta^(j k) S_{-j,-k}``."""
    op = _as_op(a)
    idx = op.index
    return PhasedSpinOp(-idx, 2 * idx.j * idx.k - op.phase_exp)


def alpha_exponent(u: SpinIndex) -> int:
    """Exponent of ``zeta`` for the correction factor ``alpha_u``.

    ``alpha_u = -zeta = zeta^(d+1)`` when ``d`` is even and both indices are
    odd, otherwise 1.
    """
    if u.d % 2 == 0 and u.j % 2 == 1 and u.k % 2 == 1:
        return (u.d + 1) % (2 * u.d)
    return 0


@dataclass(frozen=True)
class TensorSpinIndex:
    """Index vector ``w = (x_0, y_0, ..., x_{n-1}, y_{n-1})`` over Z_p.

    Factor ``t`` is ``S_{x_t, y_t}``; factor 0 is the leftmost in the
    Kronecker product.
    """

    p: int
    w: tuple[int, ...]

    def __post_init__(self):
        if len(self.w) % 2:
            raise ValueError("index vector must have even length")
        object.__setattr__(self, "w", tuple(int(x) % self.p for x in self.w))

    @classmethod
    def from_pairs(cls, p: int, pairs: Iterable[Sequence[int]]) -> "TensorSpinIndex":
        return cls(p, tuple(x for pair in pairs for x in pair))

    @property
    def n(self) -> int:
        return len(self.w) // 2

    @property
    def pairs(self) -> tuple[SpinIndex, ...]:
        return tuple(SpinIndex(self.p, self.w[2 * t], self.w[2 * t + 1]) for t in range(self.n))

    def __iter__(self):
        return iter(self.w)


def tensor_spin_matrix(w, alpha: bool = False, p: int | None = None) -> np.ndarray:
    """Kronecker product ``S_{x_0,y_0} (x) ... (x) S_{x_{n-1},y_{n-1}}``.

    With ``alpha=True`` each factor is multiplied by its own ``alpha_u``.
    ``w`` may be a :class:`TensorSpinIndex` or a plain sequence with ``p``.
    """
    if not isinstance(w, TensorSpinIndex):
        if p is None:
            raise ValueError("p is required for a plain index vector")
        w = TensorSpinIndex(p, tuple(w))
    factors = []
    for u in w.pairs:
        op = PhasedSpinOp(u, alpha_exponent(u) if alpha else 0)
        factors.append(op.to_dense())
    if not factors:
        return np.ones((1, 1), dtype=complex)
    return reduce(np.kron, factors)


def trace_inner(A: np.ndarray, B: np.ndarray) -> complex:
    """Frobenius inner product ``tr(A^dagger B)``."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch: {A.shape} vs {B.shape}")
    return complex(np.vdot(A, B))

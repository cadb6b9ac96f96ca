"""Tensor-factorization structure of commuting classes.

A class ``C`` splits along a partition ``(I_1, ..., I_m)`` of the subsystems
when it is the direct sum of its pieces supported on each block, i.e. when
``sum_k dim(C & V(I_k)) = n``.  The projectors of such a class factor as a
tensor product over the blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterator, Sequence

import numpy as np

from .classes import ClassLabel, CommutingClass, MubFamily, span, symplectic_form
from .projections import projections_tensor

__all__ = [
    "SeparabilityReport",
    "FactorizationReport",
    "set_partitions",
    "zp_rank",
    "zp_nullspace",
    "block_subspace",
    "decompose_class",
    "factored_projections",
    "permute_subsystems",
    "classify_family",
]

COMPLETELY_SEPARABLE = "completely-separable"
PARTIALLY_SEPARABLE = "partially-separable"
COMPLETELY_INSEPARABLE = "completely-inseparable"


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """All set partitions of ``items`` (blocks keep the input order)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def _row_reduce(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
    return A, pivots


def zp_rank(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(_row_reduce(A, p)[1])


def zp_nullspace(A, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : A x = 0 mod p}``."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = _row_reduce(A, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fcol in free:
        x = np.zeros(cols, dtype=np.int64)
        x[fcol] = 1
        for i, pc in enumerate(pivots):
            x[pc] = (-R[i, fcol]) % p
        basis.append(x)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def _coords(block: Sequence[int]) -> list[int]:
    # 1-based subsystem labels -> interleaved coordinate positions
    return [c for s in block for c in (2 * (s - 1), 2 * (s - 1) + 1)]


def block_subspace(cls: CommutingClass, block: Sequence[int]) -> np.ndarray:
    """Basis of ``C & V(block)`` as full-length vectors (rows)."""
    p, n = cls.p, cls.n
    G = np.array(cls.generators, dtype=np.int64)  # (n, 2n)
    inside = set(_coords(block))
    outside = [c for c in range(2 * n) if c not in inside]
    coeffs = zp_nullspace(G[:, outside].T, p)
    return (coeffs @ G) % p


def _block_dim(cls: CommutingClass, block: Sequence[int]) -> int:
    G = np.array(cls.generators, dtype=np.int64)
    inside = set(_coords(block))
    outside = [c for c in range(2 * cls.n) if c not in inside]
    return len(cls.generators) - zp_rank(G[:, outside].T, cls.p)


def _partition_str(partition: Sequence[Sequence[int]]) -> str:
    return "".join("(" + "".join(str(i) for i in block) + ")" for block in partition)


@dataclass
class SeparabilityReport:
    label: ClassLabel
    partition: list[list[int]]
    tag: str
    ambiguous: bool = False
    alternatives: list[list[list[int]]] = field(default_factory=list)

    @property
    def notation(self) -> str:
        return _partition_str(self.partition)

    def to_dict(self) -> dict:
        out = {"label": str(self.label), "partition": self.partition, "tag": self.tag}
        if self.ambiguous:
            out["ambiguous"] = True
            out["alternatives"] = self.alternatives
        return out


def decompose_class(cls: CommutingClass) -> SeparabilityReport:
    """Finest partition of the subsystems along which ``cls`` splits.

    Every set partition of ``{1..n}`` is tried; the valid one with the most
    blocks wins, ties broken by the sorted block lists.
    """
    n = cls.n
    if n > 6:
        raise ValueError("partition enumeration is limited to n <= 6")
    valid = []
    for part in set_partitions(range(1, n + 1)):
        part = sorted(sorted(b) for b in part)
        if sum(_block_dim(cls, b) for b in part) == n:
            valid.append(part)
    most = max(len(p) for p in valid)
    best = sorted(p for p in valid if len(p) == most)
    chosen = best[0]
    if len(chosen) == n:
        tag = COMPLETELY_SEPARABLE
    elif len(chosen) == 1:
        tag = COMPLETELY_INSEPARABLE
    else:
        tag = PARTIALLY_SEPARABLE
    return SeparabilityReport(cls.label, chosen, tag, len(best) > 1, best[1:])


def permute_subsystems(M: np.ndarray, order: Sequence[int], p: int) -> np.ndarray:
    """Reorder tensor factors: ``M`` acts on subsystems in ``order`` (0-based);
    the result acts on ``0, 1, ..., n-1`` left to right."""
    n = len(order)
    inv = list(np.argsort(order))
    T = M.reshape([p] * (2 * n))
    T = T.transpose(inv + [n + i for i in inv])
    return T.reshape(p**n, p**n)


@dataclass
class FactorizationReport:
    label: ClassLabel
    partition: list[list[int]]
    passed: bool
    max_error: float
    block_symplectic_ok: bool
    mismatched_levels: list[tuple] = field(default_factory=list)
    block_generators: list[list[tuple]] = field(default_factory=list)


def factored_projections(cls: CommutingClass, partition, tol: float = 1e-10) -> FactorizationReport:
    """Check that the projectors of ``cls`` are tensor products over ``partition``.

    Block-local families are built from ``C & V(I_k)`` restricted to the
    block's coordinates; the Kronecker products of block projectors must
    reproduce the full family entrywise.
    """
    p, n = cls.p, cls.n
    partition = [sorted(b) for b in partition]
    J = symplectic_form(n)
    sym_ok = True
    block_fams = []
    block_gens = []
    dims = 0
    for block in partition:
        sub = block_subspace(cls, block)
        dims += len(sub)
        members = span(sub, p) if len(sub) else np.zeros((1, 2 * n), dtype=np.int64)
        if np.any((members @ J @ members.T) % p):
            sym_ok = False
        local = [tuple(int(x) for x in row[_coords(block)]) for row in sub]
        block_gens.append(local)
        if len(local) != len(block):
            break
        block_fams.append(projections_tensor(CommutingClass(None, p, local)))
    if dims != n or len(block_fams) != len(partition):
        return FactorizationReport(cls.label, partition, False, float("inf"), sym_ok, [], block_gens)

    order = [s - 1 for block in partition for s in block]
    products = []
    for combo in np.ndindex(*[len(bf.projections) for bf in block_fams]):
        M = reduce(np.kron, [bf.projections[i] for bf, i in zip(block_fams, combo)])
        products.append(permute_subsystems(M, order, p))
    products = np.stack(products)

    full = projections_tensor(cls)
    overlap = np.einsum("aij,bji->ab", full.projections, products).real
    worst = 0.0
    bad = []
    used = set()
    for a, r in enumerate(full.levels):
        b = int(np.argmax(overlap[a]))
        err = float(np.max(np.abs(full.projections[a] - products[b])))
        worst = max(worst, err)
        if err >= tol or b in used:
            bad.append(r)
        used.add(b)
    passed = sym_ok and not bad and worst < tol
    return FactorizationReport(cls.label, partition, passed, worst, sym_ok, bad, block_gens)


def classify_family(fam: MubFamily) -> list[SeparabilityReport]:
    return [decompose_class(c) for c in fam.classes]

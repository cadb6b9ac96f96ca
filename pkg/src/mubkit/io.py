"""JSON helpers shared by the command-line tools."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

from .classes import MubFamily
from .projections import MUBasis, ProjectionFamily

SCHEMA_VERSION = "1.0"


def matrix_to_json(M: np.ndarray) -> list:
    """Row-major nested lists of ``[re, im]`` pairs (works for vectors too)."""
    M = np.asarray(M, dtype=complex)
    pairs = np.stack([M.real, M.imag], axis=-1)
    # normalize -0.0 so dumps are byte-stable
    return (pairs + 0.0).tolist()


def matrix_from_json(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def projections_to_json(pf: ProjectionFamily, basis: MUBasis | None, matrices: bool = True) -> dict:
    out = {"label": str(pf.label), "levels": [list(r) for r in pf.levels]}
    if matrices:
        out["projections"] = [matrix_to_json(P) for P in pf.projections]
    if basis is not None:
        out["basis"] = matrix_to_json(basis.vectors)
    return out


def family_dump(
    fam: MubFamily,
    projections: list[ProjectionFamily] | None = None,
    bases: list[MUBasis] | None = None,
    matrices: bool = True,
) -> dict:
    out = {"schema_version": SCHEMA_VERSION}
    out.update(fam.to_dict())
    if projections is not None:
        bases = bases or [None] * len(projections)
        out["projections"] = [projections_to_json(pf, b, matrices) for pf, b in zip(projections, bases)]
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)

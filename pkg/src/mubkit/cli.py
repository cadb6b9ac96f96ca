"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or configuration.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import io
from .classes import MubFamily, build_family, class_grid, verify_partition
from .galois import FieldError, is_prime
from .projections import MUBasis, check_mub, extract_basis, family_projections
from .separability import decompose_class, factored_projections
from .spin import tensor_spin_matrix
from .tomography import (
    TomographyError,
    measure_probs,
    random_density_matrix,
    reconstruct_general,
    reconstruct_prime,
    validate_density,
)

MAX_DIM = 4096


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    n: int = 1
    poly: list[int] | None = None
    D: int | None = None
    tol: float = 1e-9
    format: str = "json"
    out: str | None = None
    seed: int = 0
    shots: int | None = None
    matrices: bool = True
    dump: str | None = None
    rho: str | None = None

    def validate(self) -> None:
        if self.tol <= 0:
            raise ConfigError("--tol must be positive")
        if self.dump is not None:
            return
        if self.p is None:
            raise ConfigError("--p is required")
        if not is_prime(self.p):
            raise ConfigError(f"{self.p} is not prime")
        if self.n < 1:
            raise ConfigError("--n must be at least 1")
        if self.p**self.n > MAX_DIM:
            raise ConfigError(f"p^n = {self.p ** self.n} exceeds the limit {MAX_DIM}")
        if self.shots is not None and self.shots < 1:
            raise ConfigError("--shots must be positive")


def _parse_poly(text: str) -> list[int]:
    try:
        return [int(c) for c in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad polynomial {text!r}; expected c0,c1,...,cn") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="prime characteristic")
    common.add_argument("--n", type=int, default=1, help="number of p-level factors")
    common.add_argument("--poly", type=_parse_poly, help="defining polynomial c0,c1,...,cn (monic)")
    common.add_argument("--D", type=int, help="quadratic nonresidue; uses f = x^2 - D (odd p, n = 2)")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--shots", type=int)
    common.add_argument("--no-matrices", dest="matrices", action="store_false",
                        help="omit projector matrices, keep basis vectors")

    parser = argparse.ArgumentParser(prog="mubkit", description="Mutually unbiased bases for d = p^n.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("generate", parents=[common], help="classes with their projectors and bases")
    v = sub.add_parser("verify", parents=[common], help="check the class partition and the MUB properties")
    v.add_argument("--in", dest="dump", help="verify a JSON dump instead of constructing")
    sub.add_parser("separability", parents=[common], help="tensor factorization of every class")
    t = sub.add_parser("tomo", parents=[common], help="measure and reconstruct a random state")
    t.add_argument("--rho", help="JSON density matrix ([re, im] pairs) instead of a random state")
    return parser


def _family(cfg: RunConfig) -> MubFamily:
    return build_family(cfg.p, cfg.n, poly=cfg.poly, D=cfg.D)


def _csv(rows) -> str:
    buf = _io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def cmd_generate(cfg: RunConfig) -> int:
    fam = _family(cfg)
    if cfg.format == "csv":
        rows_, cols, cells = class_grid(fam)
        io.write_output(_csv([[""] + cols] + [[r] + row for r, row in zip(rows_, cells)]), cfg.out)
        return 0
    projs = family_projections(fam)
    bases = [extract_basis(pf) for pf in projs]
    dump = io.family_dump(fam, projs, bases, matrices=cfg.matrices)
    io.write_output(io.dumps(dump), cfg.out)
    return 0


def _verify_family(fam: MubFamily, tol: float, dumped_bases=None) -> dict:
    failures = []
    part = verify_partition(fam)
    failures += part.failures

    comm = 0.0
    for cls in fam.classes:
        ops = [tensor_spin_matrix(g, alpha=True, p=fam.p) for g in cls.generators]
        for a in range(len(ops)):
            for b in range(a + 1, len(ops)):
                comm = max(comm, float(np.max(np.abs(ops[a] @ ops[b] - ops[b] @ ops[a]))))
    if comm >= tol:
        failures.append(f"generator commutator norm {comm:.3g}")

    mub = None
    try:
        projs = family_projections(fam)
        bases = dumped_bases or [extract_basis(pf) for pf in projs]
        rep = check_mub(projs, tol=tol, bases=bases)
        mub = rep.to_dict()
        if not rep.passed:
            failures.append("MUB check failed")
    except ValueError as exc:
        failures.append(f"projector construction failed: {exc}")

    return {
        "schema_version": io.SCHEMA_VERSION,
        "p": fam.p,
        "n": fam.n,
        "d": fam.d,
        "tol": tol,
        "passed": not failures,
        "partition": part.to_dict(),
        "commutation": {"max_commutator": comm},
        "mub": mub,
        "failures": failures,
    }


def cmd_verify(cfg: RunConfig) -> int:
    dumped_bases = None
    if cfg.dump is not None:
        try:
            with open(cfg.dump) as fh:
                data = json.load(fh)
            fam = MubFamily.from_dict(data)
        except (OSError, KeyError, ValueError) as exc:
            raise ConfigError(f"cannot load dump {cfg.dump}: {exc}") from exc
        if "projections" in data and all("basis" in e for e in data["projections"]):
            dumped_bases = [
                MUBasis(e["label"], io.matrix_from_json(e["basis"])) for e in data["projections"]
            ]
    else:
        fam = _family(cfg)
    report = _verify_family(fam, cfg.tol, dumped_bases)
    io.write_output(io.dumps(report), cfg.out)
    return 0 if report["passed"] else 1


def cmd_separability(cfg: RunConfig) -> int:
    fam = _family(cfg)
    rows = []
    ok = True
    for cls in fam.classes:
        rep = decompose_class(cls)
        fac = factored_projections(cls, rep.partition)
        ok &= fac.passed
        entry = rep.to_dict()
        entry["notation"] = rep.notation
        entry["factorization_verified"] = fac.passed
        entry["max_error"] = fac.max_error
        rows.append(entry)
    if cfg.format == "csv":
        text = _csv([["label", "partition", "tag", "verified"]]
                    + [[r["label"], r["notation"], r["tag"], r["factorization_verified"]] for r in rows])
    else:
        text = io.dumps({"schema_version": io.SCHEMA_VERSION, "p": fam.p, "n": fam.n, "classes": rows})
    io.write_output(text, cfg.out)
    return 0 if ok else 1


def cmd_tomo(cfg: RunConfig) -> int:
    fam = _family(cfg)
    d = fam.d
    rng = np.random.default_rng(cfg.seed)
    if cfg.rho is not None:
        with open(cfg.rho) as fh:
            rho = io.matrix_from_json(json.load(fh))
        validate_density(rho)
    else:
        rho = random_density_matrix(d, rng)
    projs = family_projections(fam)
    route = "prime" if fam.n == 1 else "general"

    def reconstruct(record):
        if route == "prime":
            return reconstruct_prime(record, fam)
        return reconstruct_general(record, fam, projs, tol=cfg.tol)

    exact = measure_probs(rho, fam, projections=projs)
    est = reconstruct(exact)
    exact_err = float(np.linalg.norm(est - rho))
    report = {
        "schema_version": io.SCHEMA_VERSION,
        "p": fam.p,
        "n": fam.n,
        "d": d,
        "seed": cfg.seed,
        "route": route,
        "exact": {"frobenius_error": exact_err, "record": exact.to_dict()},
    }
    if cfg.shots is not None:
        sampled = measure_probs(rho, fam, shots=cfg.shots, seed=cfg.seed, projections=projs)
        report["sampled"] = {
            "frobenius_error": float(np.linalg.norm(reconstruct(sampled) - rho)),
            "record": sampled.to_dict(),
        }
    report["passed"] = exact_err < cfg.tol
    io.write_output(io.dumps(report), cfg.out)
    return 0 if report["passed"] else 1


COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "separability": cmd_separability,
    "tomo": cmd_tomo,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        p=args.p,
        n=args.n,
        poly=args.poly,
        D=args.D,
        tol=args.tol,
        format=args.format,
        out=args.out,
        seed=args.seed,
        shots=args.shots,
        matrices=args.matrices,
        dump=getattr(args, "dump", None),
        rho=getattr(args, "rho", None),
    )
    try:
        cfg.validate()
        return COMMANDS[cfg.command](cfg)
    except (ConfigError, FieldError, TomographyError, OSError) as exc:
        print(f"mubkit {cfg.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

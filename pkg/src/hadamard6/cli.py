"""Command-line front end: seed embedding, matrix verification, batch
scanning, root dumps and emission of the known reference matrices.

Exit codes: 0 success/found, 1 verification failure, 2 nothing found,
3 degenerate family, 64 usage error.  Matrix files are JSON with phases
stored in turns as decimal strings, which round-trip bit-exactly.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .classify import classify_matrix, fingerprint, fourier6, is_hadamard, tao_s6
from .core import DEFAULT_TOL, Tolerances, unit_from_turns, turns_from_unit
from .dilation import DilationReport, Quadruple, dilate, example_quadruple
from .oracle import poly_roots
from .dilation import circle_roots
from .core import DegenerateFamilyError

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_NONE_FOUND = 2
EXIT_DEGENERATE = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


def _tolerances(args) -> Tolerances:
    kwargs = {}
    if getattr(args, "tol", None) is not None:
        kwargs["tau_orth"] = args.tol
    if getattr(args, "grid", None) is not None:
        kwargs["grid_m"] = args.grid
    return Tolerances(**kwargs) if kwargs else DEFAULT_TOL


def _parse_quad(text: str) -> Quadruple:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError(f"--quad expects 4 comma-separated turns, got {text!r}")
    try:
        turns = [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"unparseable phase in --quad: {exc}") from None
    return Quadruple.from_turns(*turns)


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


@dataclass
class MatrixFile:
    """In-memory form of a matrix file.

    For the phases representation entries hold turn floats (the canonical
    interchange form); serialization renders them with repr, so
    load(save(x)) == x bitwise.  The cartesian representation keeps re/im
    pairs for matrices that are not entrywise unimodular.
    """

    n: int
    representation: str  # "phases" | "cartesian"
    entries: list
    metadata: dict

    @classmethod
    def from_matrix(cls, h: np.ndarray, *, representation: str = "phases",
                    metadata: dict | None = None) -> "MatrixFile":
        m = np.asarray(h, dtype=np.complex128)
        n = int(m.shape[0])
        if representation == "phases":
            entries = [[turns_from_unit(m[i, j]) for j in range(n)] for i in range(n)]
        elif representation == "cartesian":
            entries = [[_complex_pair(m[i, j]) for j in range(n)] for i in range(n)]
        else:
            raise ValueError(f"unknown representation {representation!r}")
        return cls(n, representation, entries, metadata or {})

    def to_matrix(self) -> np.ndarray:
        h = np.empty((self.n, self.n), dtype=np.complex128)
        for i in range(self.n):
            for j in range(self.n):
                cell = self.entries[i][j]
                if self.representation == "phases":
                    h[i, j] = unit_from_turns(cell)
                else:
                    h[i, j] = complex(cell[0], cell[1])
        return h

    def to_json(self) -> str:
        doc = {
            "n": self.n,
            "representation": self.representation,
            "entries": (
                [[repr(t) for t in row] for row in self.entries]
                if self.representation == "phases"
                else self.entries
            ),
            "metadata": self.metadata,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "MatrixFile":
        doc = json.loads(text)
        rep = doc["representation"]
        if rep == "phases":
            entries = [[float(t) for t in row] for row in doc["entries"]]
        elif rep == "cartesian":
            entries = [[list(map(float, cell)) for cell in row] for row in doc["entries"]]
        else:
            raise ValueError(f"unknown representation {rep!r}")
        return cls(int(doc["n"]), rep, entries, doc.get("metadata", {}))

    def save(self, path: Path) -> None:
        path.write_text(self.to_json())


def write_matrix_file(path: Path, h: np.ndarray, *, representation: str = "phases",
                      metadata: dict | None = None) -> None:
    MatrixFile.from_matrix(h, representation=representation, metadata=metadata).save(path)


def read_matrix_file(path: Path) -> tuple[np.ndarray, dict]:
    mf = MatrixFile.from_json(path.read_text())
    return mf.to_matrix(), mf.metadata


def fingerprint_hash(h: np.ndarray) -> str:
    fp = np.round(fingerprint(h), 6) + 0.0  # normalize -0.0
    return hashlib.sha256(fp.tobytes()).hexdigest()[:16]


def _seed_meta(quad: Quadruple, tol: Tolerances) -> dict:
    return {
        "seed_turns": [repr(turns_from_unit(z)) for z in quad.values],
        "tool_version": __version__,
        "tolerances": {
            "tau_u": tol.tau_u,
            "tau_u_verify": tol.tau_u_verify,
            "tau_orth": tol.tau_orth,
            "tau_root": tol.tau_root,
            "grid_m": tol.grid_m,
        },
    }


def _phase_file(h: np.ndarray, metadata: dict) -> MatrixFile:
    """Snap a matrix to the unit circle via its turn phases and record the
    residual of the snapped matrix, so verify reproduces it exactly."""
    mf = MatrixFile.from_matrix(h, metadata=metadata)
    snapped = mf.to_matrix()
    mf.metadata["hadamard_residual"] = is_hadamard(snapped)[1]
    mf.metadata["fingerprint_hash"] = fingerprint_hash(snapped)
    return mf


def report_dict(report: DilationReport, tol: Tolerances) -> dict:
    def sext(s):
        return {k: _complex_pair(v) for k, v in zip(
            ("e", "s1", "s2", "f", "s3", "s4"), s.values)}

    return {
        "seed": _seed_meta(report.seed, tol),
        "degenerate": report.degenerate,
        "sol_b": [sext(s) for s in report.sol_b],
        "sol_c": [sext(s) for s in report.sol_c],
        "n_matrices": len(report.matrices),
        "classifications": [
            {
                "is_hadamard": c.is_hadamard,
                "residual": c.residual,
                "k63_core_minus_one": c.k63_core_minus_one,
                "k63_vanishing_pair": c.k63_vanishing_pair,
                "k63_vanishing_quad": c.k63_vanishing_quad,
                "vanishing_minor": c.vanishing_minor,
                "s6_equivalent": c.s6_equivalent,
                "max_eig_estar_e": c.max_eig_estar_e,
            }
            for c in report.classifications
        ],
        "rejections": [
            {"reason": r.reason, "detail": r.detail} for r in report.rejections
        ],
        "diagnostics": [
            {"step": d.step, "message": d.message} for d in report.diagnostics
        ],
    }


def cmd_embed(args) -> int:
    tol = _tolerances(args)
    quad = _parse_quad(args.quad)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = dilate(quad, tol)
    (out_dir / "report.json").write_text(
        json.dumps(report_dict(report, tol), indent=2, sort_keys=True) + "\n"
    )
    for idx, h in enumerate(report.matrices):
        _phase_file(h, _seed_meta(quad, tol)).save(out_dir / f"matrix_{idx}.json")
    if report.degenerate:
        print("degenerate family: fundamental expression vanishes identically")
        return EXIT_DEGENERATE
    print(f"matrices found: {len(report.matrices)} "
          f"(|SOL_B| = {len(report.sol_b)}, |SOL_C| = {len(report.sol_c)})")
    for d in report.diagnostics:
        print(f"  [{d.step}] {d.message}")
    return EXIT_OK if report.matrices else EXIT_NONE_FOUND


def cmd_verify(args) -> int:
    tol = _tolerances(args)
    h, meta = read_matrix_file(Path(args.path))
    rep = classify_matrix(h, tol)
    doc = {
        "is_hadamard": rep.is_hadamard,
        "residual": rep.residual,
        "k63_core_minus_one": rep.k63_core_minus_one,
        "k63_vanishing_pair": rep.k63_vanishing_pair,
        "k63_vanishing_quad": rep.k63_vanishing_quad,
        "vanishing_minor": rep.vanishing_minor,
        "s6_equivalent": rep.s6_equivalent,
        "max_eig_estar_e": rep.max_eig_estar_e,
        "fingerprint_hash": fingerprint_hash(h),
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_OK if rep.is_hadamard else EXIT_VERIFY_FAIL


_SCAN_FIELDS = (
    "index", "p1", "p2", "p3", "p4", "canonical_ok", "contraction_ok",
    "degenerate", "n_sol_b", "n_sol_c", "n_found", "max_residual",
)


def _scan_row(index: int, turns: np.ndarray, tol: Tolerances) -> dict:
    quad = Quadruple.from_turns(*turns)
    report = dilate(quad, tol)
    steps = {d.step for d in report.diagnostics}
    residuals = [is_hadamard(h, tol)[1] for h in report.matrices]
    return {
        "index": index,
        "p1": repr(float(turns[0])),
        "p2": repr(float(turns[1])),
        "p3": repr(float(turns[2])),
        "p4": repr(float(turns[3])),
        "canonical_ok": int("canonical_condition" not in steps),
        "contraction_ok": int("contraction_precheck" not in steps),
        "degenerate": int(report.degenerate),
        "n_sol_b": len(report.sol_b),
        "n_sol_c": len(report.sol_c),
        "n_found": len(report.matrices),
        "max_residual": repr(max(residuals)) if residuals else "",
    }


def scan_rows(count: int, seed: int, tol: Tolerances | None = None) -> list[dict]:
    """Deterministic seed sweep; parallel across seeds, ordered output."""
    tol = tol or DEFAULT_TOL
    rng = np.random.default_rng(seed)
    turns = rng.random((count, 4))
    workers = os.environ.get("HADAMARD6_THREADS")
    max_workers = max(1, int(workers) if workers else (os.cpu_count() or 1))
    if count == 0:
        return []
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        rows = list(pool.map(
            lambda i: _scan_row(i, turns[i], tol), range(count)))
    return rows


def scan_csv(count: int, seed: int, tol: Tolerances | None = None) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_SCAN_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in scan_rows(count, seed, tol):
        writer.writerow(row)
    return buf.getvalue()


def cmd_scan(args) -> int:
    tol = _tolerances(args)
    text = scan_csv(args.count, args.seed, tol)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_roots(args) -> int:
    tol = _tolerances(args)
    quad = _parse_quad(args.quad)
    try:
        grid = [turns_from_unit(z) for z in circle_roots(quad, tol)]
        comp = [turns_from_unit(z) for z in poly_roots(quad, tol)]
    except DegenerateFamilyError:
        print("degenerate family: fundamental expression vanishes identically")
        return EXIT_DEGENERATE
    if args.format == "csv":
        print("method,turns")
        for t in grid:
            print(f"circle,{repr(t)}")
        for t in comp:
            print(f"poly,{repr(t)}")
    else:
        print(json.dumps({
            "circle_roots_turns": [repr(t) for t in grid],
            "poly_roots_turns": [repr(t) for t in comp],
        }, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_known(args) -> int:
    tol = _tolerances(args)
    if args.name == "F6":
        h = fourier6()
        meta: dict = {"name": "F6", "tool_version": __version__}
    elif args.name == "S6":
        h = tao_s6()
        meta = {"name": "S6", "tool_version": __version__}
    elif args.name == "example":
        report = dilate(example_quadruple(), tol)
        if not report.matrices:
            print("example seed unexpectedly produced no matrix", file=sys.stderr)
            return EXIT_NONE_FOUND
        h = report.matrices[0]
        meta = _seed_meta(report.seed, tol)
        meta["name"] = "example"
    else:
        raise UsageError(f"unknown matrix name {args.name!r}")
    mf = _phase_file(h, meta)
    if args.out:
        mf.save(Path(args.out))
    else:
        sys.stdout.write(mf.to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hadamard6",
        description="Order-6 complex Hadamard matrices from 3x3 unimodular seeds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--tol", type=float, default=None,
                       help="orthogonality tolerance (default 1e-8)")
        p.add_argument("--grid", type=int, default=None,
                       help="circle grid size for root isolation (default 4096)")

    p_embed = sub.add_parser("embed", help="run the dilation pipeline on a seed")
    p_embed.add_argument("--quad", required=True,
                         help="four seed phases in turns, comma separated")
    p_embed.add_argument("--out", default=".", help="output directory")
    add_common(p_embed)
    p_embed.set_defaults(func=cmd_embed)

    p_verify = sub.add_parser("verify", help="classify a matrix file")
    p_verify.add_argument("path")
    add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_scan = sub.add_parser("scan", help="deterministic random-seed sweep")
    p_scan.add_argument("--count", type=int, required=True)
    p_scan.add_argument("--seed", type=int, default=0)
    p_scan.add_argument("--out", default=None, help="CSV output path (default stdout)")
    add_common(p_scan)
    p_scan.set_defaults(func=cmd_scan)

    p_roots = sub.add_parser("roots", help="dump circle and polynomial roots")
    p_roots.add_argument("--quad", required=True)
    p_roots.add_argument("--format", choices=("json", "csv"), default="json")
    add_common(p_roots)
    p_roots.set_defaults(func=cmd_roots)

    p_known = sub.add_parser("known", help="emit a reference matrix")
    p_known.add_argument("name", choices=("F6", "S6", "example"))
    p_known.add_argument("--out", default=None, help="matrix file path (default stdout)")
    add_common(p_known)
    p_known.set_defaults(func=cmd_known)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems; the documented code is 64
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

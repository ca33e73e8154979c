"""Command-line front end.

Exit codes: 0 success, 1 input or parse error, 2 verification mismatch,
3 refused by a resource bound.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .errors import InputError, NotASphereWedge, ResourceLimitError, RewriteBudgetExceeded, UnsupportedRewrite
from .expr import parse, to_text
from .fibre import FibreInput, fibre_closed_form, fibre_recursive, theorem_counts
from .homology import reduced_cohomology, reduced_homology
from .oracle import betti_vector, format_poincare, poincare_series, subset_bound, zk_cohomology
from .rewrite import WedgeNormalForm, betti_of, normalize
from .simplicial import disjoint_points, read_facet_file

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MISMATCH = 2
EXIT_RESOURCE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _trim(v: Sequence[int]) -> list[int]:
    v = list(v)
    while len(v) > 1 and v[-1] == 0:
        v.pop()
    return v


# ------------------------------------------------------------------ reports


def decompose_report(n: int, loops: Sequence[str] | None = None, ledger: bool = False) -> dict:
    return fibre_closed_form(FibreInput.from_strings(n, loops), with_ledger=ledger).to_json()


def betti_report(K) -> dict:
    def rows(groups):
        return [{"degree": d, **g.to_json()} for d, g in enumerate(groups, start=-1)]

    return {"m": K.m, "homology": rows(reduced_homology(K)), "cohomology": rows(reduced_cohomology(K))}


def zk_report(K, bound: int, parallelism: int) -> dict:
    return zk_cohomology(K, bound=bound, parallelism=parallelism).to_json()


def verify_report(n: int, bound: int, parallelism: int = 1) -> dict:
    """Four-way comparison for the codimension-two arrangement in C^n."""
    inp = FibreInput.circles(n)
    closed = fibre_closed_form(inp).normal_form
    recursive = fibre_recursive(inp).normal_form
    theorem = WedgeNormalForm.from_counts({d: m for d, m in theorem_counts(n).values()})
    zk = zk_cohomology(disjoint_points(n), bound=bound, parallelism=parallelism)
    betti = {
        "theorem": betti_of(theorem),
        "closed_form": betti_of(closed),
        "recursion": betti_of(recursive),
        "oracle": _trim(betti_vector(zk)),
    }
    # a wedge of simply-connected spheres is torsion-free, so any torsion summand fails
    torsion = [[list(s.sigma), s.reduced_degree, t] for s in zk.summands for t in s.group.torsion]
    checks = {
        "closed_form_matches_theorem": closed == theorem,
        "recursion_matches_closed_form": recursive == closed,
        "oracle_betti_matches_closed_form": betti["oracle"] == betti["closed_form"],
        "oracle_torsion_free": not torsion,
    }
    diff = []
    if not checks["closed_form_matches_theorem"]:
        diff.append(f"closed form {closed} != theorem {theorem}")
    if not checks["recursion_matches_closed_form"]:
        diff.append(f"recursion {recursive} != closed form {closed}")
    if not checks["oracle_betti_matches_closed_form"]:
        diff.append(f"oracle betti {betti['oracle']} != closed-form betti {betti['closed_form']}")
    if torsion:
        diff.append(f"oracle found torsion {torsion}")
    return {
        "n": n,
        "agree": all(checks.values()),
        "spheres": theorem.to_json()["spheres"],
        "checks": checks,
        "betti": betti,
        "diff": diff,
    }


def normalize_report(text: str) -> dict:
    e = parse(text)
    nf = normalize(e)
    return {"expr": to_text(e), "normal_form": str(nf), **nf.to_json()}


# ------------------------------------------------------------------- tables


def _sphere_lines(report: dict) -> list[str]:
    lines = [f"S^{s['dim']} x{s['multiplicity']}" for s in report["spheres"]]
    for r in report.get("residual", []):
        mono = " ^ ".join(([f"S^{r['suspension']}"] if r["suspension"] else []) + r["generators"])
        lines.append(f"({mono}) x{r['multiplicity']}")
    return lines or ["pt"]


def _table_decompose(rep: dict, verbose: bool) -> str:
    lines = _sphere_lines(rep)
    for r in rep.get("ledger", []):
        subset = "{" + ",".join(map(str, r["subset"])) + "}"
        lines.append(f"  {subset:<14} x{r['multiplicity']:<4} {r['summand']}  [{r['origin']}]")
    return "\n".join(lines)


def _table_betti(rep: dict) -> str:
    from .homology import AbelianGroup

    lines = [f"{'degree':>6}  {'homology':<16}  cohomology"]
    for h, c in zip(rep["homology"], rep["cohomology"]):
        lines.append(f"{h['degree']:>6}  {str(AbelianGroup.from_json(h)):<16}  {AbelianGroup.from_json(c)}")
    return "\n".join(lines)


def _table_zk(rep: dict, verbose: bool) -> str:
    from .oracle import ZkCohomology

    Z = ZkCohomology.from_json(rep)
    lines = [f"H^{d}(Z_K) = {g}" for d, g in enumerate(Z.groups) if not g.is_trivial()]
    lines.append(f"betti: {' '.join(map(str, _trim(betti_vector(Z))))}")
    lines.append(f"poincare: {format_poincare(poincare_series(Z))}")
    if verbose:
        for s in Z.summands:
            sigma = "{" + ",".join(map(str, s.sigma)) + "}"
            lines.append(f"  sigma={sigma:<14} H~^{s.reduced_degree} = {s.group}  -> H^{s.total_degree}")
    return "\n".join(lines)


def _table_verify(rep: dict) -> str:
    lines = [f"n = {rep['n']}"]
    lines += _sphere_lines(rep)
    for name, ok in rep["checks"].items():
        lines.append(f"{'ok  ' if ok else 'FAIL'} {name}")
    lines += [f"diff: {d}" for d in rep["diff"]]
    lines.append("agree" if rep["agree"] else "MISMATCH")
    return "\n".join(lines)


# ---------------------------------------------------------------- argparse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--verbose", "-v", action="store_true", help="include per-summand ledgers")
    common.add_argument("--subset-bound", type=int, default=None, help="max m for the 2^m subset oracle (default 16, or MAK_SUBSET_BOUND)")
    common.add_argument("--parallelism", type=int, default=1, help="worker processes for the subset oracle")

    p = _Parser(prog="mak", description="Wedge decompositions of coordinate subspace arrangement complements.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decompose", parents=[common], help="closed-form sphere decomposition of the fibre F_n")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--loops", nargs="+", metavar="EXPR", help="loop-space values Omega X_i (default: S^1 for every i)")
    d.add_argument("--ledger", action="store_true", help="list every subset summand (n <= 20)")

    b = sub.add_parser("betti", parents=[common], help="reduced (co)homology of a simplicial complex")
    b.add_argument("--facets", required=True, metavar="FILE")

    z = sub.add_parser("zk", parents=[common], help="cohomology of the moment-angle complex Z_K")
    z.add_argument("--facets", required=True, metavar="FILE")

    v = sub.add_parser("verify", parents=[common], help="cross-check closed form, recursion, formula and oracle")
    v.add_argument("--n", type=int, required=True)

    nm = sub.add_parser("normalize", parents=[common], help="normalize a space expression")
    nm.add_argument("--expr", required=True)
    return p


def _emit(report: dict, fmt: str, table: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        print(table)


def run(args: argparse.Namespace) -> int:
    bound = args.subset_bound if args.subset_bound is not None else subset_bound()
    if args.parallelism < 1:
        raise InputError("--parallelism must be at least 1")
    if args.command == "decompose":
        rep = decompose_report(args.n, args.loops, ledger=args.ledger or args.verbose)
        _emit(rep, args.format, _table_decompose(rep, args.verbose))
    elif args.command == "betti":
        rep = betti_report(read_facet_file(args.facets))
        _emit(rep, args.format, _table_betti(rep))
    elif args.command == "zk":
        rep = zk_report(read_facet_file(args.facets), bound, args.parallelism)
        _emit(rep, args.format, _table_zk(rep, args.verbose))
    elif args.command == "verify":
        rep = verify_report(args.n, bound, args.parallelism)
        _emit(rep, args.format, _table_verify(rep))
        if not rep["agree"]:
            for line in rep["diff"]:
                print(f"mismatch: {line}", file=sys.stderr)
            return EXIT_MISMATCH
    elif args.command == "normalize":
        rep = normalize_report(args.expr)
        _emit(rep, args.format, rep["normal_form"])
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(args)
    except (ResourceLimitError, RewriteBudgetExceeded) as exc:
        print(f"mak: refused: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, UnsupportedRewrite, NotASphereWedge) as exc:
        print(f"mak: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

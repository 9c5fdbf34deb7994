"""Command-line interface: ``balres <command> GRAPH.json [options]``.

Exit status is 0 when every check passes, 1 when a check fails, and 2 for
bad input (unreadable file, malformed graph, violated hypotheses).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis, special
from .errors import BalresError, InputError
from .graph import UndirectedGraph, WeightedDigraph, random_balanced_digraph
from .io import dump_graph, matrix_to_json, parse_any, parse_graph
from .laplacian import build_laplacian, check_structure
from .matrix import RMatrix, format_rational, invert, rational
from .report import VerificationReport
from .resistance import (
    ResistanceParams,
    build_resistance,
    inverse_closed_form,
    verify_lemma_identities,
    verify_untransposed_forms,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Outcome:
    """Named results (matrices or scalars) plus a verification report."""

    def __init__(self, command: str):
        self.command = command
        self.results: dict = {}
        self.report = VerificationReport()
        self.notes = VerificationReport()  # informational checks; never affect the exit code

    def put(self, name: str, value) -> None:
        self.results[name] = value

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "passed": self.report.passed,
            "results": {k: _jsonable(v) for k, v in self.results.items()},
            "checks": self.report.to_dict()["checks"],
        }
        if self.notes.checks:
            out["observations"] = self.notes.to_dict()["checks"]
        return out

    def format_text(self) -> str:
        parts = []
        for k, v in self.results.items():
            if isinstance(v, RMatrix):
                parts.append(f"{k} =\n{v.pretty()}")
            else:
                parts.append(f"{k} = {_text_value(v)}")
        if self.report.checks:
            parts.append(self.report.format_text())
        if self.notes.checks:
            parts.append("observations (informational):\n" + self.notes.format_text())
        parts.append("all checks passed" if self.report.passed else f"{len(self.report.failures())} check(s) FAILED")
        return "\n".join(parts)


def _jsonable(v):
    if isinstance(v, RMatrix):
        return matrix_to_json(v)
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return format_rational(v)


def _text_value(v) -> str:
    if isinstance(v, dict):
        return json.dumps(_jsonable(v))
    if isinstance(v, (list, tuple)):
        return json.dumps(_jsonable(v))
    return str(_jsonable(v))


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _params(args) -> ResistanceParams:
    try:
        return ResistanceParams(rational(args.a), rational(args.b))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad resistance parameters: {exc}") from None


# -- commands --------------------------------------------------------------------


def cmd_check(args, out: Outcome) -> None:
    lap = build_laplacian(parse_graph(_read(args.graph)))
    out.put("n", lap.n)
    out.put("s", lap.s)
    out.report.extend(check_structure(lap))


def cmd_laplacian(args, out: Outcome) -> None:
    lap = build_laplacian(parse_graph(_read(args.graph)))
    out.put("L", lap.L)
    out.report.extend(check_structure(lap))


def cmd_pinv(args, out: Outcome) -> None:
    lap = build_laplacian(parse_graph(_read(args.graph)))
    out.put("L_pinv", lap.Ldag)
    out.report.extend(check_structure(lap))


def cmd_resistance(args, out: Outcome) -> None:
    b = build_resistance(parse_graph(_read(args.graph)), _params(args))
    out.put("R", b.R)


def cmd_tau(args, out: Outcome) -> None:
    b = build_resistance(parse_graph(_read(args.graph)), _params(args))
    out.put("tau", b.tau)
    out.put("tau_R_tau", b.tauRtau)
    ids = verify_lemma_identities(b)
    for name in ("identity.tau_closed_form", "identity.tau_column_sum", "identity.quadratic_pd"):
        out.report.checks.append(ids[name])


def cmd_inverse(args, out: Outcome) -> None:
    b = build_resistance(parse_graph(_read(args.graph)), _params(args))
    q = inverse_closed_form(b, check=False)
    out.put("R_inv", q)
    eye = RMatrix.identity(q.rows)
    out.report.add_equal("inverse.right", "Q R = I", q @ b.R, eye)
    out.report.add_equal("inverse.left", "R Q = I", b.R @ q, eye)
    out.report.add_equal("inverse.elimination", "Q = inverse of R by elimination", q, invert(b.R))


def cmd_identities(args, out: Outcome) -> None:
    b = build_resistance(parse_graph(_read(args.graph)), _params(args))
    out.report.extend(check_structure(b.lap))
    out.report.extend(verify_lemma_identities(b))
    if args.untransposed:
        out.notes.extend(verify_untransposed_forms(b))


def cmd_special(args, out: Outcome) -> None:
    obj = parse_any(_read(args.graph))
    if args.kind == "digraph" and not isinstance(obj, WeightedDigraph):
        raise InputError("kind 'digraph' needs a directed graph file")
    if args.kind != "digraph" and not isinstance(obj, UndirectedGraph):
        raise InputError(f"kind {args.kind!r} needs an undirected graph file")
    if args.kind in ("tree", "wtree", "mwtree"):
        obj = special.WeightedTree.from_graph(obj)
    out.put("M", special.special_target(args.kind, obj))
    out.put("M_inv", special.specialized_inverse(args.kind, obj))
    out.report.extend(special.verify_special_case(args.kind, obj))
    if args.kind in ("tree", "wtree", "mwtree"):
        out.report.extend(special.check_tree_identities(obj))


def cmd_nonneg(args, out: Outcome) -> None:
    res = analysis.scalar_resistance_nonneg(parse_graph(_read(args.graph)), _params(args))
    out.put("min_resistance", res.minimum)
    out.put("location", [res.location[0] + 1, res.location[1] + 1])
    out.report.extend(res.report)


def cmd_perturb(args, out: Outcome) -> None:
    h = parse_any(_read(args.undirected))
    if not isinstance(h, UndirectedGraph):
        raise InputError("the first file must be an undirected graph")
    g = parse_graph(_read(args.graph))
    try:
        alpha = rational(args.alpha)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad alpha: {args.alpha!r}") from None
    if alpha < 0:
        raise InputError("alpha must be non-negative")
    res = analysis.perturbation(h, g, alpha)
    if res.matrix is not None:
        out.put("perturbed_inverse", res.matrix)
        out.put("min_entry", res.min_entry)
    out.report.extend(res.report)


def cmd_probe(args, out: Outcome) -> None:
    res = analysis.psd_conjecture_probe(parse_graph(_read(args.graph)), _params(args))
    out.put("probe", res.to_dict())


def cmd_gen(args, out: Outcome) -> None:
    try:
        g = random_balanced_digraph(args.n, args.s, args.cycles, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out.put("graph", g)


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="balres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, graph=True, params=False):
        p = sub.add_parser(name, help=help_text)
        if graph:
            p.add_argument("graph", help="graph file, or - for stdin")
        if params:
            p.add_argument("--a", default="1", help="rational parameter a > 0 (default 1)")
            p.add_argument("--b", default="1", help="rational parameter b > 0 (default 1)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "structural checks of the Laplacian and its pseudoinverse")
    add("laplacian", cmd_laplacian, "print the block Laplacian")
    add("pinv", cmd_pinv, "print the Moore-Penrose inverse of the Laplacian")
    add("resistance", cmd_resistance, "print the resistance matrix", params=True)
    add("tau", cmd_tau, "print tau and tau' R tau", params=True)
    add("inverse", cmd_inverse, "closed-form inverse of the resistance matrix", params=True)
    p = add("identities", cmd_identities, "check every identity behind the closed form", params=True)
    p.add_argument("--untransposed", action="store_true",
                   help="also report the variants without D' (informational)")
    p = add("special", cmd_special, "specialized inverse formulas")
    p.add_argument("--kind", required=True, choices=special.KINDS)
    add("nonneg", cmd_nonneg, "non-negativity of scalar resistances", params=True)
    p = sub.add_parser("perturb", help="entrywise sign of (R^-1 - alpha L)^-1")
    p.add_argument("undirected", help="undirected graph file H")
    p.add_argument("graph", help="balanced scalar digraph file")
    p.add_argument("--alpha", default="1")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_perturb)
    add("probe", cmd_probe, "test each block R_ij for a PSD symmetric part (experimental)", params=True)
    p = add("gen", cmd_gen, "emit a random balanced strongly connected graph file", graph=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--cycles", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    return parser


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    args = build_parser().parse_args(argv)
    out = Outcome(args.command)
    try:
        args.func(args, out)
    except (InputError, BalresError) as exc:
        code = EXIT_INPUT if isinstance(exc, InputError) else EXIT_FAIL
        kind = type(exc).__name__
        if args.json:
            json.dump({"command": args.command, "passed": False,
                       "error": {"type": kind, "message": str(exc)}}, stdout, indent=1)
            stdout.write("\n")
        print(f"error: {kind}: {exc}", file=stderr)
        return code

    if args.command == "gen":
        stdout.write(dump_graph(out.results["graph"]) + "\n")
        return EXIT_OK
    if args.json:
        json.dump(out.to_dict(), stdout, indent=1)
        stdout.write("\n")
    else:
        stdout.write(out.format_text() + "\n")
    return EXIT_OK if out.report.passed else EXIT_FAIL


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()

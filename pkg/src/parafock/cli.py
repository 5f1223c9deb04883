"""Command-line front end.

Exit codes: 0 success / all suites pass, 1 usage error, 2 verification
failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .carrier import (
    BasisIndex,
    Tag,
    canonical_basis,
    check_order,
    check_truncation,
    format_rational,
    parse_ket,
    parse_rational,
    sector_basis,
    sectors,
    subspace_dim,
)
from .gram import completeness_residual, orthonormal_change, orthonormality_residual, sector_gram
from .ladder import GENERATORS, Fault, Generator, SparseOperator, act_generator, matrix_of
from .parser import ParseError, parse_element
from .report import encode_value
from .verify import ns_sector_matrix, run_all
from .words import evaluate

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_IO = 0, 1, 2, 3

DEFAULT_MAX_M = {"build": 4, "verify": 8, "gram": 4, "spectrum": 4, "eval": 0, "diagram": 3}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _label(idx: BasisIndex) -> str:
    return f"({idx.m},{idx.n},{idx.tag})"


def _parse_label(text: str) -> BasisIndex:
    m, n, tag = text.strip("()").split(",")
    return BasisIndex(int(m), int(n), Tag.parse(tag))


def _dump(doc: Any, out: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    _write(text, out)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")


# build

def build_document(p: int, max_m: int) -> dict[str, Any]:
    ops = {g.value: matrix_of(p, max_m, g) for g in GENERATORS}
    order = {idx: i for i, idx in enumerate(canonical_basis(p, max_m))}
    return {
        "p": p,
        "max_m": max_m,
        "basis": [{"m": i.m, "n": i.n, "tag": str(i.tag)} for i in canonical_basis(p, max_m)],
        "operators": {
            name: [
                {"row": _label(r), "col": _label(c), "val": format_rational(v)}
                for (r, c), v in sorted(op.entries.items(), key=lambda e: (order[e[0][1]], order[e[0][0]]))
            ]
            for name, op in ops.items()
        },
        "boundary_exact": {name: op.boundary_exact for name, op in ops.items()},
    }


def load_operators(path: str | Path) -> dict[str, SparseOperator]:
    """Read a ``build`` document back into sparse operators."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    p, max_m = doc["p"], doc["max_m"]
    out = {}
    for name, triplets in doc["operators"].items():
        entries = {
            (_parse_label(t["row"]), _parse_label(t["col"])): parse_rational(t["val"]) for t in triplets
        }
        out[name] = SparseOperator(p, max_m, entries, doc["boundary_exact"][name], name)
    return out


def cmd_build(args) -> int:
    _dump(build_document(args.p, args.max_m), args.out)
    return EXIT_OK


# verify

def cmd_verify(args) -> int:
    if args.max_m < 3:
        raise UsageError("verify needs --max-m >= 3")
    fault = Fault.parse(args.inject_fault) if args.inject_fault else None
    reports = run_all(args.p, args.max_m, fault=fault, threads=args.threads)
    for r in reports:
        print(r.summary(), file=sys.stderr)
    passed = all(r.passed for r in reports)
    doc = {
        "p": args.p,
        "max_m": args.max_m,
        "passed": passed,
        "fault": fault.name if fault else None,
        "suites": [r.to_dict() for r in reports],
    }
    _dump(doc, args.out)
    return EXIT_OK if passed else EXIT_FAILED


# gram / spectrum

def _matrix_strings(rows) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in rows]


def gram_document(p: int, max_m: int, ortho: bool = False) -> dict[str, Any]:
    items = []
    for m, n in sectors(p, max_m):
        g = sector_gram(p, m, n)
        entry: dict[str, Any] = {"m": m, "n": n, "dim": g.size, "gram": _matrix_strings(g.entries), "det": format_rational(g.det)}
        if ortho:
            ob = orthonormal_change(p, m, n)
            entry["ortho"] = {
                "c_plus_sq": format_rational(ob.c_plus_sq),
                "c_minus_sq": None if ob.c_minus_sq is None else format_rational(ob.c_minus_sq),
                "labels": ob.labels,
                "coordinates": ob.coordinates().tolist(),
            }
        items.append(entry)
    doc: dict[str, Any] = {"p": p, "max_m": max_m, "sectors": items}
    if ortho:
        doc["orthonormality_residual"] = orthonormality_residual(p, max_m)
        doc["completeness_residual"] = completeness_residual(p, max_m)
    return doc


def cmd_gram(args) -> int:
    doc = gram_document(args.p, args.max_m, args.ortho)
    if args.format == "text":
        lines = []
        for s in doc["sectors"]:
            lines.append(f"V({s['m']},{s['n']}) dim={s['dim']} gram={s['gram']} det={s['det']}")
        _write("\n".join(lines) + "\n", args.out)
    else:
        _dump(doc, args.out)
    return EXIT_OK


def _sqrt_rational(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def sector_eigenvalues(mat: list[list[Fraction]]) -> list[str]:
    if len(mat) == 1:
        return [format_rational(mat[0][0])]
    half_trace = (mat[0][0] + mat[1][1]) / 2
    disc = half_trace**2 - (mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0])
    root = _sqrt_rational(disc)
    if root is not None:
        return [format_rational(half_trace + root), format_rational(half_trace - root)]
    r = math.sqrt(float(disc))
    return [repr(float(half_trace) + r), repr(float(half_trace) - r)]


def spectrum_document(p: int, max_m: int) -> dict[str, Any]:
    return {
        "p": p,
        "max_m": max_m,
        "sectors": [
            {"m": m, "n": n, "N_b": m, "N_f": n, "N_s": sector_eigenvalues(ns_sector_matrix(p, m, n))}
            for m, n in sectors(p, max_m)
        ],
    }


def cmd_spectrum(args) -> int:
    doc = spectrum_document(args.p, args.max_m)
    if args.format == "text":
        lines = [f"V({s['m']},{s['n']}) N_b={s['N_b']} N_f={s['N_f']} N_s={', '.join(s['N_s'])}" for s in doc["sectors"]]
        _write("\n".join(lines) + "\n", args.out)
    else:
        _dump(doc, args.out)
    return EXIT_OK


# eval

def cmd_eval(args) -> int:
    if args.expr is None:
        raise UsageError("eval needs --expr")
    element = parse_element(args.expr, args.p)
    ket = parse_ket(args.ket, args.p)
    result = evaluate(args.p, element, ket)
    if args.format == "json":
        _dump({"p": args.p, "expr": args.expr, "ket": args.ket, "result": encode_value(result)}, args.out)
    else:
        _write(f"{result}\n", args.out)
    return EXIT_OK


# diagram

def sector_edges(p: int, max_m: int) -> list[tuple[tuple[int, int], tuple[int, int], Generator]]:
    """Edges (source sector, target sector, generator) where the action is nonzero."""
    edges = set()
    for m, n in sectors(p, max_m):
        for g in GENERATORS:
            for idx in sector_basis(p, m, n):
                for out in act_generator(p, g, idx):
                    if out.m <= max_m:
                        edges.add(((m, n), out.sector, g))
    order = {g: i for i, g in enumerate(GENERATORS)}
    return sorted(edges, key=lambda e: (e[0], order[e[2]], e[1]))


def diagram_dot(p: int, max_m: int) -> str:
    lines = [f'digraph ladder_p{p} {{', "  node [shape=box];"]
    for m, n in sectors(p, max_m):
        lines.append(f'  "V{m}_{n}" [label="V({m},{n})\\ndim {subspace_dim(p, m, n)}"];')
    for src, dst, g in sector_edges(p, max_m):
        lines.append(f'  "V{src[0]}_{src[1]}" -> "V{dst[0]}_{dst[1]}" [label="{g}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def diagram_text(p: int, max_m: int) -> str:
    lines = [f"V({m},{n}) dim {subspace_dim(p, m, n)}" for m, n in sectors(p, max_m)]
    lines += [
        f"V({src[0]},{src[1]}) -[{g}]-> V({dst[0]},{dst[1]})" for src, dst, g in sector_edges(p, max_m)
    ]
    return "\n".join(lines) + "\n"


def cmd_diagram(args) -> int:
    if args.format == "json":
        doc = {
            "p": args.p,
            "max_m": args.max_m,
            "nodes": [{"m": m, "n": n, "dim": subspace_dim(args.p, m, n)} for m, n in sectors(args.p, args.max_m)],
            "edges": [{"from": list(s), "to": list(d), "label": g.value} for s, d, g in sector_edges(args.p, args.max_m)],
        }
        _dump(doc, args.out)
    elif args.format == "text":
        _write(diagram_text(args.p, args.max_m), args.out)
    else:
        _write(diagram_dot(args.p, args.max_m), args.out)
    return EXIT_OK


COMMANDS = {
    "build": (cmd_build, "export truncated generator matrices as JSON"),
    "verify": (cmd_verify, "run every verification suite"),
    "gram": (cmd_gram, "print sector Gram matrices (--ortho adds the orthonormal basis)"),
    "spectrum": (cmd_spectrum, "print N_b, N_f, N_s eigenvalues per sector"),
    "eval": (cmd_eval, "apply a DSL expression to a ket"),
    "diagram": (cmd_diagram, "emit the two-dimensional ladder of sectors"),
}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=1, help="parastatistics order (>= 1)")
    common.add_argument("--max-m", type=int, default=None, help="largest paraboson level in the window")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=["json", "dot", "text"], default=None)
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--inject-fault", default=None, help=argparse.SUPPRESS)

    parser = _Parser(prog="parafock", description="Fock-like modules of the relative parabose set P_BF^(1,1)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        cmd = sub.add_parser(name, parents=[common], help=help_text)
        if name == "gram":
            cmd.add_argument("--ortho", action="store_true", help="include orthonormal basis data (floats)")
        if name == "eval":
            cmd.add_argument("--expr", default=None, help='expression, e.g. "b- b+" or "{b+,f+}"')
            cmd.add_argument("--ket", default="|0>", help='ket, e.g. "|0>" or "|1,1,beta>"')
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.max_m is None:
        args.max_m = DEFAULT_MAX_M[args.command]
    if args.format is None:
        args.format = {"diagram": "dot", "eval": "text"}.get(args.command, "json")
    try:
        check_order(args.p)
        check_truncation(args.max_m)
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        return COMMANDS[args.command][0](args)
    except (UsageError, ParseError, ValueError) as exc:
        print(f"parafock: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"parafock: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

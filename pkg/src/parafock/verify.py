"""Exact verification suites for the Fock-like modules.

Every suite evaluates operators with the dynamic evaluator, which is exact at
any m; the window only limits which input vectors are reported on.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .carrier import (
    ALPHA,
    BETA,
    VACUUM,
    BasisIndex,
    VectorExpr,
    canonical_basis,
    check_order,
    check_truncation,
    grade_of,
    sector_basis,
    sectors,
)
from .gram import adjointness_check, inner_product, sector_gram, zero_norm
from .ladder import B_MINUS, B_PLUS, F_MINUS, F_PLUS, GENERATORS, Fault, act_generator
from .report import Report
from .words import (
    AlgebraElement,
    Builtin,
    Relation,
    basis_defining_word,
    beta_expansion,
    builtin_element,
    commutator,
    enumerate_relations,
    evaluate,
    vacuum,
)

RELATION_MARGIN = 3
CSCO_MARGIN = 2


def _require_window(max_m: int, minimum: int, suite: str) -> None:
    check_truncation(max_m)
    if max_m < minimum:
        raise ValueError(f"{suite} needs max_m >= {minimum}, got {max_m}")


def _check_relation(p: int, rel: Relation, basis: list[BasisIndex], fault: Fault | None) -> Report:
    part = Report("relations", p, None)
    residual = rel.residual
    for idx in basis:
        out = evaluate(p, residual, VectorExpr.basis(idx), fault)
        part.check(not out, f"{rel.id} on {idx}", VectorExpr(), out)
    return part


def verify_relations(p: int, max_m: int, fault: Fault | None = None, threads: int = 1) -> Report:
    """All 32 trilinear relations, as exact zero residuals on m <= max_m - 3."""
    check_order(p)
    _require_window(max_m, RELATION_MARGIN, "verify_relations")
    report = Report("relations", p, max_m)
    basis = [idx for idx in canonical_basis(p, max_m) if idx.m <= max_m - RELATION_MARGIN]
    relations = enumerate_relations()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda rel: _check_relation(p, rel, basis, fault), relations))
    else:
        parts = [_check_relation(p, rel, basis, fault) for rel in relations]
    # relation order, not completion order
    for part in parts:
        report.merge(part)
    return report


def verify_vacuum(p: int, fault: Fault | None = None) -> Report:
    check_order(p)
    report = Report("vacuum", p, None)
    vac = vacuum()
    annihilators = [(B_MINUS,), (F_MINUS,), (B_MINUS, F_PLUS), (F_MINUS, B_PLUS)]
    for word in annihilators:
        out = evaluate(p, AlgebraElement.word(*word), vac, fault)
        report.check(not out, f"{' '.join(map(str, word))} |0>", VectorExpr(), out)
    for word in [(B_MINUS, B_PLUS), (F_MINUS, F_PLUS)]:
        out = evaluate(p, AlgebraElement.word(*word), vac, fault)
        expected = p * vac
        report.check(out == expected, f"{' '.join(map(str, word))} |0>", expected, out)
    return report


def _sector_matrix(p: int, op, m: int, n: int, fault: Fault | None = None):
    """Matrix of ``op`` restricted to sector (m, n), plus any leakage out of it."""
    basis = sector_basis(p, m, n)
    cols = [evaluate(p, op, VectorExpr.basis(idx), fault) for idx in basis]
    mat = [[col.coeff(row) for col in cols] for row in basis]
    leak = [VectorExpr({k: c for k, c in col.items() if k.sector != (m, n)}) for col in cols]
    return mat, leak


def ns_sector_matrix(p: int, m: int, n: int) -> list[list[Fraction]]:
    """Exact matrix of N_s on sector (m, n) in the alpha/beta basis."""
    mat, _ = _sector_matrix(p, builtin_element(Builtin.N_S, p), m, n)
    return mat


def verify_csco(p: int, max_m: int, fault: Fault | None = None) -> Report:
    check_order(p)
    _require_window(max_m, 3, "verify_csco")
    report = Report("csco", p, max_m)
    n_b = builtin_element(Builtin.N_B, p)
    n_f = builtin_element(Builtin.N_F, p)
    n_s = builtin_element(Builtin.N_S, p)
    pairs = [("N_b", n_b, "N_f", n_f), ("N_b", n_b, "N_s", n_s), ("N_f", n_f, "N_s", n_s)]
    basis = canonical_basis(p, max_m)
    for idx in basis:
        if idx.m > max_m - CSCO_MARGIN:
            continue
        for name_x, x, name_y, y in pairs:
            out = evaluate(p, commutator(x, y), VectorExpr.basis(idx), fault)
            report.check(not out, f"[{name_x},{name_y}] on {idx}", VectorExpr(), out)
    for idx in basis:
        v = VectorExpr.basis(idx)
        for name, op, eig in (("N_b", n_b, idx.m), ("N_f", n_f, idx.n)):
            out = evaluate(p, op, v, fault)
            report.check(out == eig * v, f"{name} on {idx}", eig * v, out)
    for m, n in sectors(p, max_m):
        mat, leak = _sector_matrix(p, n_s, m, n, fault)
        report.check(not any(leak), f"N_s leaves sector ({m},{n})", VectorExpr(), sum(leak, VectorExpr()))
        if len(mat) == 2:
            trace = mat[0][0] + mat[1][1]
            det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
            report.check(trace == 0, f"tr N_s on ({m},{n})", Fraction(0), trace)
            report.check(det == Fraction(-1, 4), f"det N_s on ({m},{n})", Fraction(-1, 4), det)
        else:
            report.check(mat[0][0] == Fraction(1, 2), f"N_s eigenvalue on ({m},{n})", Fraction(1, 2), mat[0][0])
    return report


def verify_grading(p: int, max_m: int, fault: Fault | None = None) -> Report:
    check_order(p)
    check_truncation(max_m)
    report = Report("grading", p, max_m)
    for idx in canonical_basis(p, max_m):
        for g in GENERATORS:
            want = grade_of(idx) + g.grade
            for out in act_generator(p, g, idx, fault):
                got = grade_of(out)
                report.check(got == want, f"deg({g} {idx}) has term {out}", str(want), str(got))
    return report


def action_graph(p: int, max_m: int, fault: Fault | None = None) -> dict[BasisIndex, set[BasisIndex]]:
    graph: dict[BasisIndex, set[BasisIndex]] = {}
    for idx in canonical_basis(p, max_m):
        graph[idx] = {
            out for g in GENERATORS for out in act_generator(p, g, idx, fault) if out.m <= max_m
        }
    return graph


def _reachable(graph: dict[BasisIndex, set[BasisIndex]], start: BasisIndex) -> set[BasisIndex]:
    seen = {start}
    queue = deque([start])
    while queue:
        for nxt in graph[queue.popleft()]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def verify_irreducible(p: int, max_m: int, fault: Fault | None = None) -> Report:
    """Strong connectivity of the action graph on the inner window m <= max_m - 1.

    This is finite-window evidence only; paths may pass through m = max_m.
    """
    check_order(p)
    _require_window(max_m, 2, "verify_irreducible")
    report = Report(
        "irreducibility",
        p,
        max_m,
        note=f"finite-window evidence: strong connectivity for m <= {max_m - 1}, paths within m <= {max_m}",
    )
    graph = action_graph(p, max_m, fault)
    inner = [idx for idx in graph if idx.m <= max_m - 1]
    for start in inner:
        reach = _reachable(graph, start)
        missing = [idx for idx in inner if idx not in reach]
        report.check(not missing, f"from {start}", "all inner vertices", ", ".join(map(str, missing)))
    return report


def verify_sector_geometry(p: int, max_m: int, fault: Fault | None = None) -> Report:
    check_order(p)
    _require_window(max_m, 1, "verify_sector_geometry")
    report = Report("sector_geometry", p, max_m)
    vac = vacuum()
    for m in range(1, max_m):
        out = evaluate(p, basis_defining_word(m, p, BETA), vac, fault)
        expected = Fraction(1, p) * VectorExpr.basis(BasisIndex(m, p, ALPHA))
        report.check(out == expected, f"beta word at ({m},{p})", expected, out)
    for m, n in sectors(p, max_m):
        gram = sector_gram(p, m, n)
        if gram.size == 2:
            aa, ab = gram.entries[0][0], gram.entries[0][1]
            report.check(aa == p * ab, f"<a|a> = p<a|b> on ({m},{n})", p * ab, aa)
            out = beta_expansion(p, m, n, fault)
            expected = VectorExpr.basis(BasisIndex(m, n, BETA))
            report.check(out == expected, f"two-word expansion of beta at ({m},{n})", expected, out)
    for n in range(p + 1):
        v = VectorExpr.basis(BasisIndex(0, n, ALPHA))
        norm = inner_product(p, v, v)
        want = Fraction(zero_norm(n, p))
        report.check(norm == want, f"norm of (0,{n},alpha)", want, norm)
    return report


def definitional_consistency(p: int, max_m: int, fault: Fault | None = None) -> Report:
    """Defining words of alpha and beta reproduce the basis vectors exactly."""
    check_order(p)
    check_truncation(max_m)
    report = Report("definitions", p, max_m)
    vac = vacuum()
    for idx in canonical_basis(p, max_m):
        if idx == VACUUM:
            continue
        out = evaluate(p, basis_defining_word(*idx), vac, fault)
        expected = VectorExpr.basis(idx)
        report.check(out == expected, f"defining word of {idx}", expected, out)
    return report


def run_all(p: int, max_m: int, fault: Fault | None = None, threads: int = 1) -> list[Report]:
    """Every suite at one (p, max_m); Gram-based suites ignore ``fault``."""
    _require_window(max_m, RELATION_MARGIN, "run_all")
    return [
        verify_relations(p, max_m, fault, threads),
        verify_vacuum(p, fault),
        definitional_consistency(p, max_m, fault),
        verify_csco(p, max_m, fault),
        verify_grading(p, max_m, fault),
        verify_irreducible(p, max_m, fault),
        verify_sector_geometry(p, max_m, fault),
        adjointness_check(p, max_m),
    ]

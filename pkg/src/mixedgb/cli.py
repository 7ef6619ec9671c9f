"""Command-line front end: ``mixedgb {sgb,m3h,solve,bench,oracle-check}``.

Every subcommand writes JSON and CSV files into ``--output-dir`` and prints a
stats table. Outputs are a pure function of the input, flags and ``--seed``
(bench wall times aside, see ``--no-timing``).
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
import time
from math import comb

from . import oracle
from .fglm import MAX_ROOT_SEARCH_PRIME, FGLMError, find_roots, lex_gb
from .field import FieldError, PrimeField, field_to_dict
from .instances import random_multihom_system, random_sparse_instance
from .m2 import m2_sgb
from .macaulay import matmul, rref
from .multihom import (
    M3H,
    MultihomError,
    MultihomSolver,
    SolutionsAtInfinityError,
    change_coords,
    eval_at_matrices,
    macaulay_bound,
)
from .orders import DEGREE_ORDER, BaseOrder, SparseOrder
from .schema import InputError, MultihomProblem, NonPrimeError, SparseProblem, dumps, load_input

log = logging.getLogger("mixedgb")

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2

SGB_COLUMNS = ["step", "degree", "rows", "cols", "rank", "zero_rows", "criterion_rows", "f5_rows", "new_elements"]
BENCH_COLUMNS = ["instance", "step", "degree", "rows", "cols", "rank", "zero_rows",
                 "dense_rows", "dense_cols", "wall_time_s"]


class CommandError(RuntimeError):
    """An invariant failed while running a command."""


# -- helpers --


def _int_tuple(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _write(outdir: str, name: str, text: str) -> str:
    os.makedirs(outdir, exist_ok=True)
    path = os.path.join(outdir, name)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _table(header, rows) -> str:
    cells = [[str(h) for h in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[j]) for r in cells) for j in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


def _terms_json(p, mono=list):
    return [[mono(m), p.field.to_str(c)] for m, c in sorted(p.terms.items())]


def _matrix_json(A, field):
    rows, cols = A.shape
    entries = [[i, j, field.to_str(A[i, j])] for i in range(rows) for j in range(cols) if A[i, j]]
    return {"rows": rows, "cols": cols, "entries": entries}


def _load(args, model):
    problem = load_input(args.input, args.field_p)
    want = SparseProblem if model == "sparse" else MultihomProblem
    if not isinstance(problem, want):
        raise InputError(f"this command needs a {model} document", "$.model")
    return problem


# -- sgb --


def cmd_sgb(args) -> int:
    problem = _load(args, "sparse")
    ctx = problem.single
    order = SparseOrder(ctx, BaseOrder(args.order))
    witness = list(args.witness) if args.witness else None
    if witness is not None and len(witness) != len(problem.polys):
        raise InputError(f"--witness needs {len(problem.polys)} values, got {len(witness)}", "--witness")
    G = m2_sgb(problem.polys, witness, order, max_degree=args.max_degree)
    certified = G.certify()
    doc = {
        "field": field_to_dict(problem.field),
        "order": {"base": args.order, "degree_order": DEGREE_ORDER},
        "witness_degrees": G.witness_degrees,
        "witness_mode": "auto-heuristic" if G.heuristic else "supplied",
        "certified": certified,
        "elements": [
            {"leading_monomial": list(g.leading_monomial(order)), "terms": _terms_json(g)}
            for g in G.elements
        ],
        "stats": [dict(zip(SGB_COLUMNS, s.as_row())) for s in G.stats],
    }
    rows = [s.as_row() for s in G.stats]
    _write(args.output_dir, "sgb.json", dumps(doc))
    _write(args.output_dir, "sgb_stats.csv", _csv_text(SGB_COLUMNS, rows))
    print(_table(SGB_COLUMNS, rows))
    print(f"elements: {len(G.elements)}  witness degrees: {G.witness_degrees}  certified: {certified}")
    if not certified:
        raise CommandError("an input generator does not reduce to zero modulo the computed basis")
    return EXIT_OK


# -- m3h --


def _m3h_rows(engine, ring, K, d):
    out = []
    for k in range(1, K + 1):
        M = engine.matrix(k, d)
        R = rref(M)
        out.append([k, ",".join(map(str, d)), M.nrows, M.ncols, R.rank, R.zero_rows, ring.count(d) - R.rank])
    return out


M3H_COLUMNS = ["k", "degree", "rows", "cols", "rank", "zero_rows", "corank"]


def cmd_m3h(args) -> int:
    problem = _load(args, "multihomogeneous")
    system = problem.system
    ring = system.ring
    d = tuple(args.degree) if args.degree else macaulay_bound(system.degrees, ring.blocks)
    if len(d) != ring.r:
        raise InputError(f"--degree needs {ring.r} components", "--degree")
    engine = M3H(ring, system.polys, BaseOrder(args.order))
    K = len(system.polys)
    M = engine.matrix(K, d)
    rows = _m3h_rows(engine, ring, K, d)
    R = rref(M)
    doc = {
        "field": field_to_dict(problem.field),
        "order": args.order,
        "degree": list(d),
        "macaulay_bound": list(macaulay_bound(system.degrees, ring.blocks)),
        "matrix": M.to_json(),
        "stats": {"rows": M.nrows, "cols": M.ncols, "rank": R.rank, "zero_rows": R.zero_rows,
                  "full_rank": R.zero_rows == 0},
    }
    _write(args.output_dir, "m3h.json", dumps(doc))
    _write(args.output_dir, "m3h_stats.csv", _csv_text(M3H_COLUMNS, rows))
    print(_table(M3H_COLUMNS, rows))
    return EXIT_OK


# -- solve --


def _solve_system(system, order, seed, attempts=5):
    """Solver for ``system``, changing coordinates (seeded) if it has solutions at infinity."""
    solver = MultihomSolver(system, order)
    if solver.check_no_infinity():
        return solver, None, None
    for a in range(attempts):
        s = seed + a
        log.info("solutions at infinity; changing coordinates with seed %d", s)
        new, mats = change_coords(system, s)
        solver = MultihomSolver(new, order)
        if solver.check_no_infinity():
            return solver, s, mats
    raise SolutionsAtInfinityError(f"solutions at infinity persist after {attempts} coordinate changes")


def cmd_solve(args) -> int:
    problem = _load(args, "multihomogeneous")
    system = problem.system
    F = problem.field
    order = BaseOrder(args.order)
    solver, used_seed, coord_mats = _solve_system(system, order, args.seed)
    ring = solver.ring
    basis = solver.basis
    mats = solver.variable_matrices()
    unit = solver.unit_vector()
    names = [f"x{i + 1}_{j}" for i, j in ring.affine_variables()]

    commuting = all(
        not (eval_commutator(mats[a], mats[b], F)).any()
        for a in range(len(mats)) for b in range(a + 1, len(mats))
    )
    annihilated = all(not eval_at_matrices(f, mats, F).any() for f in solver.system.dehomogenized())
    gb = lex_gb(mats, unit, F, ring.affine.ambient)
    roots = None
    if isinstance(F, PrimeField) and F.p <= MAX_ROOT_SEARCH_PRIME:
        roots = [list(r) for r in find_roots(gb)]
    doc = {
        "field": field_to_dict(F),
        "order": args.order,
        "variables": names,
        "macaulay_bound": list(solver.D_N),
        "bezout_count": oracle.bezout_count(system.degrees, ring.blocks),
        "coordinate_change": None if used_seed is None else {
            "seed": used_seed, "matrices": [[[F.to_str(x) for x in row] for row in A] for A in coord_mats]},
        "basis": {"monomials": [list(m) for m in basis.monomials],
                  "dehomogenized": [list(m) for m in basis.dehomogenized]},
        "unit_vector": [F.to_str(x) for x in unit],
        "multiplication_matrices": {n: _matrix_json(M, F) for n, M in zip(names, mats)},
        "lex_gb": {"polynomials": [_terms_json(p) for p in gb.polys],
                   "staircase": [list(m) for m in gb.staircase],
                   "shape_position": gb.shape_position},
        "roots": roots,
        "checks": {"matrices_commute": commuting, "generators_vanish": annihilated},
    }
    stats = _m3h_rows(solver.engine, ring, len(system.polys), solver.D_N)
    stats += _m3h_rows(solver.engine, ring, len(system.polys), solver.D_N1)
    _write(args.output_dir, "solve.json", dumps(doc))
    _write(args.output_dir, "solve_stats.csv", _csv_text(M3H_COLUMNS, stats))
    print(_table(M3H_COLUMNS, stats))
    print(f"basis size: {len(basis)}  lex GB: {len(gb.polys)} polynomials  roots in F_p: "
          f"{'n/a' if roots is None else len(roots)}")
    if not (commuting and annihilated):
        raise CommandError("multiplication matrices failed the commutation/annihilation checks")
    return EXIT_OK


def eval_commutator(A, B, F):
    return F.reduce(matmul(A, B, F) - matmul(B, A, F))


# -- bench --


def dense_sizes(polys, ctx, d):
    """Rows and columns of the dense Macaulay matrix at the total degree that
    contains ``d`` times the polytope (``None`` for points with negative entries)."""
    if any(min(p) < 0 for p in ctx.points):
        return None, None
    n = ctx.ambient_dim
    t = max(sum(p) for p in ctx.points)
    D = d * t
    cols = comb(n + D, n)
    rows = 0
    for f in polys:
        tf = max(sum(m) for m in f.terms)
        if D >= tf:
            rows += comb(n + D - tf, n)
    return rows, cols


def bench_rows(instances, degree, order_kind="grevlex", timing=True):
    out = []
    for name, polys in instances:
        ctx = polys[0].ambient.ctx
        order = SparseOrder(ctx, BaseOrder(order_kind))
        k = len(polys)
        G = m2_sgb(polys, [degree + k - 1 - i for i in range(k)], order)
        for s in G.stats:
            if s.degree > degree:
                continue
            dr, dc = dense_sizes(polys[: s.step + 1], ctx, s.degree)
            out.append([name, s.step, s.degree, s.rows, s.cols, s.rank, s.zero_rows,
                        "" if dr is None else dr, "" if dc is None else dc,
                        f"{s.seconds:.6f}" if timing else "0"])
    return out


def cmd_bench(args) -> int:
    if args.input:
        problem = _load(args, "sparse")
        instances = [(os.path.basename(args.input), problem.polys)]
    else:
        F = PrimeField(args.field_p) if args.field_p else PrimeField()
        instances = [(f"seed{s}", random_sparse_instance(s, F).polys)
                     for s in range(args.seed, args.seed + args.count)]
    degree = args.degree[0] if args.degree else 3
    rows = bench_rows(instances, degree, args.order, timing=not args.no_timing)
    _write(args.output_dir, "bench.csv", _csv_text(BENCH_COLUMNS, rows))
    print(_table(BENCH_COLUMNS, rows))
    smaller = all(r[8] == "" or r[4] < r[8] for r in rows)
    print(f"sparse columns strictly below dense columns on every row: {smaller}")
    return EXIT_OK


# -- oracle-check --


def oracle_suite(seed: int, count: int, field=None):
    """Cross-validation of the optimized paths against the brute-force oracles.

    Yields ``(check, instance, passed)``.
    """
    F = field or PrimeField()
    for s in range(seed, seed + count):
        inst = random_sparse_instance(s, F, max_vars=2)
        ctx = inst.context
        ok = all(ctx.affine_degree(p) == oracle.delta_bruteforce(p, ctx.points, 4) for p in ctx.level(3))
        yield "affine_degree", f"sparse{s}", ok
        G = m2_sgb(inst.polys, inst.staggered_witness(3), keep_records=True)
        oh = G.order.graded()
        ok = all(
            oracle.rowspace_equal(
                r.matrix.polys(),
                oracle.full_macaulay_rowspace(r.previous_basis + [r.generator], r.degree, oh, ctx, F).polys(),
                F)
            for r in G.records if r.degree <= 3
        )
        yield "f5_rowspace", f"sparse{s}", ok
        yield "zero_rows", f"sparse{s}", all(st.zero_rows == 0 for st in G.stats)
        yield "sgb_certify", f"sparse{s}", G.certify()
    shapes = [((1, 1), [(1, 1), (1, 1)]), ((2, 1), [(1, 1), (1, 1), (1, 0)]), ((1, 1, 1), [(1, 1, 0), (0, 1, 1), (1, 0, 1)])]
    for s in range(seed, seed + count):
        blocks, degs = shapes[(s - seed) % len(shapes)]
        system = random_multihom_system(blocks, degs, s, F)
        ring = system.ring
        name = f"multihom{s}:{'x'.join(f'P{b}' for b in blocks)}"
        solver = MultihomSolver(system)
        D = solver.D_N
        eng = solver.engine
        ok = all(rref(eng.matrix(len(degs), d)).rank == oracle.multihom_ideal_dim(system.polys, ring, d)
                 for d in (D, solver.D_N1))
        yield "m3h_rank", name, ok
        yield "bezout", name, len(solver.basis) == oracle.bezout_count(degs, blocks)
        mats = solver.variable_matrices()
        gb = lex_gb(mats, solver.unit_vector(), F, ring.affine.ambient)
        gens_ok = all(oracle.lex_remainder(f, gb.polys).is_zero() for f in system.dehomogenized())
        yield "lex_gb", name, oracle.is_lex_groebner(gb.polys) and gens_ok


def cmd_oracle_check(args) -> int:
    F = PrimeField(args.field_p) if args.field_p else PrimeField()
    rows = [[c, i, "pass" if ok else "FAIL"] for c, i, ok in oracle_suite(args.seed, args.count, F)]
    _write(args.output_dir, "oracle_check.csv", _csv_text(["check", "instance", "result"], rows))
    print(_table(["check", "instance", "result"], rows))
    failed = sum(r[2] == "FAIL" for r in rows)
    print(f"{len(rows) - failed}/{len(rows)} checks passed")
    return EXIT_INVARIANT if failed else EXIT_OK


# -- entry point --


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input document (JSON, schema v1)")
    common.add_argument("--order", choices=["grevlex", "lex"], default="grevlex", help="base monomial order")
    common.add_argument("--degree-order", choices=[DEGREE_ORDER], default=DEGREE_ORDER,
                        help="order on degree vectors (fixed)")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--field-p", type=int, default=None, help="override the field with F_p")
    common.add_argument("--output-dir", default="out", help="directory for JSON/CSV outputs")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="mixedgb", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sgb", parents=[common], help="sparse Groebner basis of a sparse system")
    s.add_argument("--witness", type=_int_tuple, help="witness degrees, e.g. 3,4 (default: heuristic)")
    s.add_argument("--max-degree", type=int, default=30)
    s.set_defaults(func=cmd_sgb, needs_input=True)

    s = sub.add_parser("m3h", parents=[common], help="multihomogeneous Macaulay matrix")
    s.add_argument("--degree", type=_int_tuple, help="multidegree, e.g. 2,1 (default: Macaulay bound)")
    s.set_defaults(func=cmd_m3h, needs_input=True)

    s = sub.add_parser("solve", parents=[common], help="solve a square multihomogeneous system")
    s.set_defaults(func=cmd_solve, needs_input=True)

    s = sub.add_parser("bench", parents=[common], help="sparse vs dense matrix sizes")
    s.add_argument("--degree", type=_int_tuple, help="largest degree to run (default 3)")
    s.add_argument("--count", type=int, default=5, help="random instances when no --input")
    s.add_argument("--no-timing", action="store_true", help="write 0 for wall times")
    s.set_defaults(func=cmd_bench, needs_input=False)

    s = sub.add_parser("oracle-check", parents=[common], help="cross-check against brute-force oracles")
    s.add_argument("--count", type=int, default=3)
    s.set_defaults(func=cmd_oracle_check, needs_input=False)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if args.needs_input and not args.input:
        parser.error(f"{args.command} requires --input")
    start = time.perf_counter()
    try:
        code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except FieldError as exc:
        print(f"error: E_PRIME: {exc}", file=sys.stderr)
        return NonPrimeError.exit_code
    except (CommandError, MultihomError, FGLMError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    log.info("%s finished in %.3f s", args.command, time.perf_counter() - start)
    return code


if __name__ == "__main__":
    sys.exit(main())

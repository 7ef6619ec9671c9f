"""Mixed sparse matrix-F5: iterative sparse Groebner bases over ``K[S_M]``.

The generators are added one at a time. For generator ``i`` and each degree
``d`` the Macaulay matrix is assembled from

* one shifted basis element per monomial divisible by a leading monomial of
  the previous (homogenized) basis, and
* the shifts ``X^(s, d - deg f_i) * f_i`` whose multiplier is *not* divisible by
  any of those leading monomials,

then reduced. Rows whose leading monomial is new are kept, dehomogenized.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field as dc_field

from .macaulay import MacaulayMatrix, build_matrix, rref
from .orders import BaseOrder, GradedSparseOrder, SparseOrder
from .poly import Poly, dehomogenize, divide, homogenize
from .semigroup import SemigroupContext

log = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 30


@dataclass
class DegreeStats:
    step: int
    degree: int
    rows: int
    cols: int
    rank: int
    zero_rows: int
    criterion_rows: int
    f5_rows: int
    new_elements: int
    seconds: float = 0.0

    def as_row(self):
        return [self.step, self.degree, self.rows, self.cols, self.rank, self.zero_rows,
                self.criterion_rows, self.f5_rows, self.new_elements]


@dataclass
class StepRecord:
    """What one (generator, degree) iteration saw; kept only on request."""

    step: int
    degree: int
    previous_basis: list[Poly]
    generator: Poly
    matrix: MacaulayMatrix
    reduced: MacaulayMatrix


@dataclass
class SGB:
    elements: list[Poly]
    order: SparseOrder
    inputs: list[Poly]
    witness_degrees: list[int]
    stats: list[DegreeStats] = dc_field(default_factory=list)
    heuristic: bool = False
    records: list[StepRecord] = dc_field(default_factory=list)

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.elements]

    def reduce(self, f: Poly) -> Poly:
        return divide(f, self.elements, self.order)[1]

    def certify(self) -> bool:
        """Every input generator reduces to zero modulo the basis."""
        return all(self.reduce(f).is_zero() for f in self.inputs)

    def contains(self, f: Poly) -> bool:
        return self.reduce(f).is_zero()


def _lm_quotient_choice(lms, m, order_h):
    """Basis index whose leading monomial divides ``m`` with the smallest quotient."""
    best = None
    for j, lm in enumerate(lms):
        t = order_h.divides(lm, m)
        if t is None:
            continue
        k = order_h.key(t)
        if best is None or k < best[0]:
            best = (k, j, t)
    return best


def criterion_rows(Gh: list[Poly], d: int, order_h: GradedSparseOrder):
    """Rows ``(m / LM(g)) * g``, one per degree-``d`` monomial ``m`` divisible by some ``LM(g)``.

    ``g`` is chosen with the smallest quotient, ties going to the lower index.
    """
    if not Gh:
        return []
    ctx = order_h.ctx
    lms = [g.leading_monomial(order_h) for g in Gh]
    rows = []
    for m in sorted(ctx.monomials_of_degree(d), key=order_h.key, reverse=True):
        best = _lm_quotient_choice(lms, m, order_h)
        if best is None:
            continue
        _, j, t = best
        rows.append((("G", j, t), Gh[j].shift(t)))
    return rows


def f5_new_rows(Gh: list[Poly], fh: Poly, d: int, order_h: GradedSparseOrder, index: int = 0):
    """Shifts of ``fh`` into degree ``d`` whose multiplier no ``LM(g)`` divides."""
    ctx = order_h.ctx
    df = ctx.degree(next(iter(fh.terms)))
    if d < df:
        return []
    lms = [g.leading_monomial(order_h) for g in Gh]
    rows = []
    for t in sorted(ctx.monomials_of_degree(d - df), key=order_h.key, reverse=True):
        if any(order_h.divides(lm, t) is not None for lm in lms):
            continue
        rows.append((("f", index, t), fh.shift(t)))
    return rows


def minimalize(G: list[Poly], order: SparseOrder) -> list[Poly]:
    """Drop elements whose leading monomial another element's leading monomial divides."""
    ranked = sorted(
        ((g.leading_monomial(order), i, g) for i, g in enumerate(G)),
        key=lambda x: (order.key(x[0]), x[1]),
    )
    kept: list[tuple] = []
    for lm, _, g in ranked:
        if any(order.divides(lm2, lm) is not None for lm2, _ in kept):
            continue
        kept.append((lm, g.monic(order)))
    return [g for _, g in kept]


def m2_sgb(
    polys: list[Poly],
    witness_degrees: list[int] | None = None,
    order: SparseOrder | None = None,
    *,
    window: int | None = None,
    max_degree: int = DEFAULT_MAX_DEGREE,
    keep_records: bool = False,
) -> SGB:
    """Sparse Groebner basis of ``<polys>`` in ``K[S_M]``.

    ``polys`` are affine polynomials over a single-polytope context. With
    ``witness_degrees`` the degree loop for generator ``i`` runs ``1..witness_degrees[i]``
    exactly. Without them the loop stops once ``window`` consecutive degrees
    (default: the largest affine degree of an input) produced no new leading
    monomial; that stopping rule is a heuristic, flagged on the result.
    """
    if not polys:
        raise ValueError("empty input")
    if any(f.is_zero() for f in polys):
        raise ValueError("zero polynomial in input")
    ctx: SemigroupContext = polys[0].ambient.ctx
    if ctx.k != 1:
        raise ValueError("m2_sgb works in the single-polytope view; use ctx.single_view()")
    order = order or SparseOrder(ctx, BaseOrder())
    order_h = order.graded()
    if witness_degrees is not None and len(witness_degrees) != len(polys):
        raise ValueError("one witness degree per polynomial is required")
    degs = [ctx.poly_affine_degree(f.support()) for f in polys]
    if window is None:
        window = max(max(degs), 1)

    result = SGB([], order, list(polys), [], heuristic=witness_degrees is None)
    G_prev: list[Poly] = []
    for i, fbar in enumerate(polys):
        Gh = [homogenize(g, ctx) for g in G_prev]
        fh = homogenize(fbar, ctx)
        floor = max([degs[i]] + [ctx.degree(next(iter(g.terms))) for g in Gh])
        G_i: list[Poly] = []
        G_i_lms: list = []
        last_new = 0
        d = 0
        while True:
            d += 1
            if witness_degrees is not None:
                if d > witness_degrees[i]:
                    break
            elif d > floor and d - last_new > window:
                break
            if d > max_degree and witness_degrees is None:
                log.warning("step %d: reached max_degree %d without stabilising", i, max_degree)
                break
            t0 = time.perf_counter()
            crit = criterion_rows(Gh, d, order_h)
            new = f5_new_rows(Gh, fh, d, order_h, index=i)
            columns = sorted(ctx.monomials_of_degree(d), key=order_h.key, reverse=True)
            M = build_matrix(crit + new, order_h, columns=columns, field=fbar.field)
            M.ambient = fh.ambient
            R = rref(M)
            added = 0
            before = list(G_i_lms)
            for h in R.polys():
                hbar = dehomogenize(h, ctx)
                lm = hbar.leading_monomial(order)
                if any(order.divides(g_lm, lm) is not None for g_lm in before):
                    continue
                G_i.append(hbar)
                G_i_lms.append(lm)
                added += 1
            if added:
                last_new = d
            result.stats.append(
                DegreeStats(i, d, M.nrows, M.ncols, R.rank, R.zero_rows, len(crit), len(new), added,
                            time.perf_counter() - t0)
            )
            if R.zero_rows:
                log.info("step %d degree %d: %d reductions to zero", i, d, R.zero_rows)
            if keep_records:
                result.records.append(StepRecord(i, d, Gh, fh, M, R))
        result.witness_degrees.append(d - 1)
        G_prev = minimalize(G_i, order)
    result.elements = G_prev
    return result

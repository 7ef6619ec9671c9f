"""Brute-force references for cross-checking the optimized paths.

Nothing here touches the numpy elimination kernel in :mod:`mixedgb.macaulay`:
ranks are computed with a dictionary-based elimination over F_p and with
fraction-free (Bareiss) elimination over Q. Everything is exponential in the
instance size and meant for desk-scale inputs only.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from itertools import combinations_with_replacement
from math import lcm

from .field import Field
from .macaulay import MacaulayMatrix, build_matrix
from .poly import Poly
from .semigroup import Point, SemigroupContext


class OracleError(ValueError):
    pass


class Membership(enum.Enum):
    MEMBER = "member"
    UNKNOWN = "unknown<=cap"

    def __bool__(self):
        return self is Membership.MEMBER


# -- affine degree --


def delta_bruteforce(s: Point, M, cap: int = 8) -> int:
    """Smallest k such that ``s`` is a sum of k points of ``M`` (exhaustive)."""
    s = tuple(s)
    pts = sorted({tuple(p) for p in M})
    zero = (0,) * len(s)
    if s == zero:
        return 0
    nonzero = [p for p in pts if p != zero]
    for k in range(1, cap + 1):
        for combo in combinations_with_replacement(nonzero, k):
            if tuple(map(sum, zip(*combo))) == s:
                return k
    raise OracleError(f"{s} is not a sum of at most {cap} points")


# -- exact rank without the optimized kernel --


class _Echelon:
    """Incremental echelon basis of sparse rows; the pivot of a row is its
    largest column under ``key``."""

    def __init__(self, field: Field, key=None):
        self.field = field
        self.key = key or (lambda c: c)
        self.rows: dict = {}

    def insert(self, row: dict) -> dict | None:
        F = self.field
        row = {c: v for c, v in row.items() if not F.is_zero(v)}
        while row:
            piv = max(row, key=self.key)
            basis_row = self.rows.get(piv)
            if basis_row is None:
                inv = F.inv(row[piv])
                row = {c: F.mul(v, inv) for c, v in row.items()}
                self.rows[piv] = row
                return row
            factor = row[piv]
            for c, v in basis_row.items():
                nv = F.sub(row.get(c, F.zero), F.mul(factor, v))
                if F.is_zero(nv):
                    row.pop(c, None)
                else:
                    row[c] = nv
        return None

    def __len__(self):
        return len(self.rows)


def _bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    A = [list(r) for r in rows if any(r)]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    prev = 1
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        if r == m:
            break
    return r


def rank_of_rows(rows: list[dict], field: Field) -> int:
    """Rank of sparse rows ``{column: coefficient}``."""
    if field.kind == "rational":
        cols = sorted({c for r in rows for c in r})
        index = {c: j for j, c in enumerate(cols)}
        dense = []
        for r in rows:
            den = lcm(*(Fraction(v).denominator for v in r.values())) if r else 1
            vec = [0] * len(cols)
            for c, v in r.items():
                vec[index[c]] = int(Fraction(v) * den)
            dense.append(vec)
        return _bareiss_rank(dense)
    ech = _Echelon(field)
    for r in rows:
        ech.insert(dict(r))
    return len(ech)


def poly_rank(polys: list[Poly], field: Field) -> int:
    return rank_of_rows([p.terms for p in polys], field)


def matrix_rank(M: MacaulayMatrix) -> int:
    rows = []
    for i in range(M.nrows):
        rows.append({j: (M.data[i, j] if M.field.kind == "rational" else int(M.data[i, j]))
                     for j in range(M.ncols) if M.data[i, j]})
    return rank_of_rows(rows, M.field)


def rowspace_equal(A: list[Poly], B: list[Poly], field: Field) -> bool:
    ra = poly_rank(A, field)
    rb = poly_rank(B, field)
    return ra == rb == poly_rank(list(A) + list(B), field)


# -- sparse (semigroup) side --


def full_macaulay_rowspace(gens: list[Poly], d: int, order_h, ctx: SemigroupContext | None = None,
                           field: Field | None = None) -> MacaulayMatrix:
    """Unpruned degree-``d`` Macaulay matrix: every shift of every generator."""
    if not gens:
        return build_matrix([], order_h, columns=[], field=field)
    ctx = ctx or order_h.ctx
    field = field or gens[0].field
    rows = []
    for j, g in enumerate(gens):
        dg = ctx.degree(next(iter(g.terms)))
        for s in sorted(ctx.level(d - dg)):
            t = s + (d - dg,)
            rows.append((("gen", j, t), g.shift(t)))
    columns = sorted(ctx.monomials_of_degree(d), key=order_h.key, reverse=True)
    return build_matrix(rows, order_h, columns=columns, field=field)


def _affine_shifts(gens: list[Poly], ctx: SemigroupContext, cap: int) -> list[Poly]:
    rows = []
    for g in gens:
        dg = ctx.poly_affine_degree(g.support())
        for s in sorted(ctx.level(cap - dg)):
            rows.append(g.shift(s))
    return rows


def ideal_membership_bruteforce(f: Poly, gens: list[Poly], degree_cap: int) -> Membership:
    """Is ``f`` in the span of ``X^s g`` with ``delta(s) + delta(g) <= degree_cap``?"""
    ctx = f.ambient.ctx
    if f.is_zero():
        return Membership.MEMBER
    if degree_cap < ctx.poly_affine_degree(f.support()):
        raise OracleError("degree cap below the affine degree of f")
    rows = _affine_shifts(gens, ctx, degree_cap)
    r = poly_rank(rows, f.field)
    return Membership.MEMBER if poly_rank(rows + [f], f.field) == r else Membership.UNKNOWN


def ideal_slice(gens: list[Poly], D: int, cap: int) -> list[Poly]:
    """Basis of ``span{X^s g : deg <= cap}`` intersected with ``K[S]_{<=D}``."""
    if not gens:
        return []
    ctx = gens[0].ambient.ctx
    F = gens[0].field
    ech = _Echelon(F, key=lambda c: (ctx.affine_degree(c), c))
    for p in _affine_shifts(gens, ctx, cap):
        ech.insert(dict(p.terms))
    return [Poly(r, F, gens[0].ambient) for piv, r in ech.rows.items() if ctx.affine_degree(piv) <= D]


def nonzerodivisor_check(gens: list[Poly], i: int, max_degree: int, slack: int = 2) -> bool:
    """Does multiplication by ``gens[i]`` act injectively on ``K[S]/<gens[:i]>``,
    checked degree by degree up to ``max_degree``?

    Ideal slices are computed with shifts up to ``degree + slack``, so the
    answer is exact only when that cap already sees every degree fall.
    """
    if i == 0:
        return True
    f = gens[i]
    ctx = f.ambient.ctx
    F = f.field
    df = ctx.poly_affine_degree(f.support())
    prev = gens[:i]
    for D in range(df, max_degree + 1):
        low = D - df
        a_low = len(ideal_slice(prev, low, low + slack))
        slice_D = ideal_slice(prev, D, D + slack)
        shifts = [f.shift(s) for s in sorted(ctx.level(low))]
        image = poly_rank(slice_D + shifts, F) - len(slice_D)
        if image != len(ctx.level(low)) - a_low:
            return False
    return True


# -- multihomogeneous side --


def bezout_count(degs, blocks) -> int:
    """Coefficient of ``prod z_i^{n_i}`` in ``prod_j (sum_i deg(f_j)_i z_i)``."""
    blocks = tuple(blocks)
    r = len(blocks)
    poly = {(0,) * r: 1}
    for d in degs:
        nxt: dict = {}
        for e, c in poly.items():
            for i in range(r):
                if d[i] == 0:
                    continue
                e2 = e[:i] + (e[i] + 1,) + e[i + 1:]
                if e2[i] > blocks[i]:
                    continue
                nxt[e2] = nxt.get(e2, 0) + c * d[i]
        poly = nxt
    return poly.get(blocks, 0)


def multihom_ideal_dim(polys: list[Poly], ring, d) -> int:
    """``dim [<polys>]_d`` from every product ``x^beta * f_j``."""
    rows = []
    for f in polys:
        df = ring.degree(next(iter(f.terms)))
        shift = tuple(x - y for x, y in zip(d, df))
        for beta in ring.monomials_of_degree(shift):
            rows.append(f.shift(beta))
    if not rows:
        return 0
    return poly_rank(rows, polys[0].field)


# -- textbook Groebner basis check for ordinary polynomials --


def _lex_lead(p: Poly):
    m = max(p.terms)
    return m, p.terms[m]


def _textbook_remainder(f: Poly, G: list[Poly]) -> Poly:
    F = f.field
    p = dict(f.terms)
    rem = {}
    leads = [_lex_lead(g) for g in G]
    while p:
        m = max(p)
        c = p[m]
        for g, (lm, lc) in zip(G, leads):
            if all(a <= b for a, b in zip(lm, m)):
                t = tuple(b - a for a, b in zip(lm, m))
                factor = F.div(c, lc)
                for gm, gc in g.terms.items():
                    mm = tuple(a + b for a, b in zip(gm, t))
                    v = F.sub(p.get(mm, F.zero), F.mul(factor, gc))
                    if F.is_zero(v):
                        p.pop(mm, None)
                    else:
                        p[mm] = v
                break
        else:
            rem[m] = c
            del p[m]
    return Poly(rem, F, f.ambient)


def lex_remainder(f: Poly, G: list[Poly]) -> Poly:
    """Remainder of ordinary division under lex (exponent tuples compared as tuples)."""
    return _textbook_remainder(f, G)


def is_lex_groebner(G: list[Poly]) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero under lex."""
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            ga, gb = G[a], G[b]
            (ma, ca), (mb, cb) = _lex_lead(ga), _lex_lead(gb)
            lcm_m = tuple(max(x, y) for x, y in zip(ma, mb))
            ta = tuple(x - y for x, y in zip(lcm_m, ma))
            tb = tuple(x - y for x, y in zip(lcm_m, mb))
            F = ga.field
            s = ga.shift(ta, F.inv(ca)) - gb.shift(tb, F.inv(cb))
            if not _textbook_remainder(s, G).is_zero():
                return False
    return True

"""Monomial orders.

Every order exposes ``key(m)``: a tuple that sorts ascending in the order, so
``max(support, key=order.key)`` is the leading monomial. Orders also carry the
divisibility relation used for reduction, because the sparse orders come with
their own restricted notion of division.
"""

from __future__ import annotations

from .semigroup import Point, SemigroupContext, sub

DEGREE_ORDER = "totlex"


class BaseOrder:
    """A group order on exponent points in Z^n.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"weight"`` (weights first, grevlex
    to break ties). All three are compatible with adding exponents.
    Divisibility is the componentwise one of ordinary polynomial rings.
    """

    def __init__(self, kind: str = "grevlex", weights=None):
        if kind not in ("grevlex", "lex", "weight"):
            raise ValueError(f"unknown base order {kind!r}")
        if kind == "weight" and weights is None:
            raise ValueError("weight order needs a weight vector")
        self.kind = kind
        self.weights = tuple(weights) if weights is not None else None

    def __repr__(self):
        return f"BaseOrder({self.kind!r})"

    def key(self, s: Point):
        if self.kind == "lex":
            return tuple(s)
        rev = tuple(-x for x in reversed(s))
        if self.kind == "grevlex":
            return (sum(s),) + rev
        return (sum(w * x for w, x in zip(self.weights, s)), sum(s)) + rev

    def cmp(self, a: Point, b: Point) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def divides(self, a: Point, b: Point) -> Point | None:
        t = sub(b, a)
        return t if min(t, default=0) >= 0 else None


class SparseOrder:
    """Affine degree first, then the base order."""

    def __init__(self, ctx: SemigroupContext, base: BaseOrder | None = None):
        self.ctx = ctx
        self.base = base or BaseOrder()

    def __repr__(self):
        return f"SparseOrder({self.base!r})"

    def key(self, s: Point):
        return (self.ctx.affine_degree(s), self.base.key(s))

    def cmp(self, a: Point, b: Point) -> int:
        return cmp_sparse(a, b, self)

    def divides(self, a: Point, b: Point) -> Point | None:
        return self.ctx.divides_affine(a, b)

    def graded(self) -> GradedSparseOrder:
        return GradedSparseOrder(self)


def degree_key(d):
    """Total order on degree vectors: total degree, then lexicographic."""
    if isinstance(d, int):
        return (d,)
    return (sum(d),) + tuple(d)


class GradedSparseOrder:
    """The grading of a sparse order on ``K[S^h]``: degree first, then ``SparseOrder``."""

    def __init__(self, underlying: SparseOrder):
        self.underlying = underlying
        self.ctx = underlying.ctx

    def __repr__(self):
        return f"GradedSparseOrder({self.underlying!r})"

    def key(self, m: Point):
        s, d = self.ctx.split(m)
        return (degree_key(d), self.underlying.key(s))

    def cmp(self, a: Point, b: Point) -> int:
        return cmp_graded_sparse(a, b, self)

    def divides(self, a: Point, b: Point) -> Point | None:
        return self.ctx.divides(a, b)


def cmp_sparse(a: Point, b: Point, o: SparseOrder) -> int:
    """-1, 0 or 1 as ``X^a`` is below, equal to or above ``X^b``."""
    ka, kb = o.key(a), o.key(b)
    return (ka > kb) - (ka < kb)


def cmp_graded_sparse(a: Point, b: Point, o: GradedSparseOrder) -> int:
    ka, kb = o.key(a), o.key(b)
    return (ka > kb) - (ka < kb)

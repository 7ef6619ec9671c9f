"""Sparse polynomials over semigroup and multigraded algebras."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .field import Field
from .semigroup import Point, SemigroupContext, SemigroupError


class AmbientError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Ambient:
    """Where a polynomial lives: ``affine`` / ``homogeneous`` over a semigroup
    context, or ``multigraded`` / ``plain`` over a polynomial ring."""

    kind: str
    ctx: Any = None

    def __eq__(self, other):
        return (
            isinstance(other, Ambient) and self.kind == other.kind and self.ctx is other.ctx
        )

    def __hash__(self):
        return hash((self.kind, id(self.ctx)))


class Poly:
    """Immutable sparse polynomial: a map from monomial tuples to nonzero coefficients."""

    __slots__ = ("terms", "field", "ambient")

    def __init__(self, terms, field: Field, ambient: Ambient | None = None):
        clean = {}
        for m, c in dict(terms).items():
            c = field.canon(c)
            if not field.is_zero(c):
                clean[tuple(m)] = c
        self.terms: dict[Point, Any] = clean
        self.field = field
        self.ambient = ambient

    @classmethod
    def _raw(cls, terms, field, ambient):
        p = cls.__new__(cls)
        p.terms = terms
        p.field = field
        p.ambient = ambient
        return p

    @classmethod
    def monomial(cls, m, field, ambient=None, coeff=1):
        return cls({tuple(m): coeff}, field, ambient)

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        body = " + ".join(f"{self.field.to_str(c)}*X^{m}" for m, c in sorted(self.terms.items()))
        return f"Poly({body})"

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms and self.ambient == other.ambient

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return self.terms.keys()

    def coeff(self, m):
        return self.terms.get(tuple(m), self.field.zero)

    def _check(self, other: Poly):
        if self.ambient != other.ambient:
            raise AmbientError(f"ambient mismatch: {self.ambient} vs {other.ambient}")
        if self.field != other.field:
            raise AmbientError("field mismatch")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = F.add(out.get(m, F.zero), c)
            if F.is_zero(v):
                out.pop(m, None)
            else:
                out[m] = v
        return Poly._raw(out, F, self.ambient)

    def __neg__(self) -> Poly:
        F = self.field
        return Poly._raw({m: F.neg(c) for m, c in self.terms.items()}, F, self.ambient)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def scale(self, c) -> Poly:
        F = self.field
        c = F.canon(c)
        if F.is_zero(c):
            return Poly._raw({}, F, self.ambient)
        return Poly._raw({m: F.mul(v, c) for m, v in self.terms.items()}, F, self.ambient)

    def shift(self, t: Point, c=None) -> Poly:
        """``c * X^t * self``."""
        F = self.field
        if c is None:
            terms = {tuple(a + b for a, b in zip(m, t)): v for m, v in self.terms.items()}
            return Poly._raw(terms, F, self.ambient)
        c = F.canon(c)
        if F.is_zero(c):
            return Poly._raw({}, F, self.ambient)
        terms = {tuple(a + b for a, b in zip(m, t)): F.mul(v, c) for m, v in self.terms.items()}
        return Poly._raw(terms, F, self.ambient)

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        F = self.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = F.add(out.get(m, F.zero), F.mul(c1, c2))
        return Poly._raw({m: c for m, c in out.items() if not F.is_zero(c)}, F, self.ambient)

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative power")
        nvars = len(next(iter(self.terms))) if self.terms else 0
        result = Poly._raw({(0,) * nvars: self.field.one}, self.field, self.ambient)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def leading_term(self, order):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order):
        return self.leading_term(order)[0]

    def monic(self, order) -> Poly:
        _, c = self.leading_term(order)
        return self.scale(self.field.inv(c))

    def map_monomials(self, fn, ambient=None) -> Poly:
        """Apply ``fn`` to every monomial, summing colliding terms."""
        F = self.field
        out: dict = {}
        for m, c in self.terms.items():
            m2 = fn(m)
            out[m2] = F.add(out.get(m2, F.zero), c)
        amb = self.ambient if ambient is None else ambient
        return Poly._raw({m: c for m, c in out.items() if not F.is_zero(c)}, F, amb)

    def evaluate(self, point):
        """Value at a point (ordinary exponents, no negative entries)."""
        F = self.field
        total = F.zero
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = F.mul(v, _fpow(F, x, e))
            total = F.add(total, v)
        return total


def _fpow(F, x, e):
    if hasattr(F, "p"):
        return pow(int(x), e, F.p)
    return x**e


def leading_monomial(f: Poly, order):
    """(monomial, coefficient) of the order-maximal term of ``f``."""
    return f.leading_term(order)


def affine_ambient(ctx: SemigroupContext) -> Ambient:
    return Ambient("affine", ctx)


def homogeneous_ambient(ctx: SemigroupContext) -> Ambient:
    return Ambient("homogeneous", ctx)


def homogenize(f: Poly, ctx: SemigroupContext | None = None, degree: int | None = None) -> Poly:
    """Lift every term ``X^s`` to ``X^(s, delta^A(f))``.

    ``degree`` pads to a larger degree instead (multiplying by a power of
    ``X^(0,1)``); it must be at least ``delta^A(f)``.
    """
    ctx = ctx or f.ambient.ctx
    if f.is_zero():
        raise ValueError("cannot homogenize the zero polynomial")
    df = ctx.poly_affine_degree(f.support())
    if degree is None:
        degree = df
    elif degree < df:
        raise SemigroupError(f"degree {degree} below affine degree {df}")
    terms = {s + (degree,): c for s, c in f.terms.items()}
    return Poly._raw(terms, f.field, homogeneous_ambient(ctx))


def dehomogenize(f: Poly, ctx: SemigroupContext | None = None) -> Poly:
    """Drop the degree coordinates: ``X^(s,d) -> X^s``."""
    ctx = ctx or f.ambient.ctx
    n = ctx.ambient_dim
    return f.map_monomials(lambda m: m[:n], ambient=affine_ambient(ctx))


def hom_degree(f: Poly, ctx: SemigroupContext | None = None):
    """Common degree of a homogeneous polynomial; error if terms disagree."""
    ctx = ctx or f.ambient.ctx
    n = ctx.ambient_dim
    degs = {m[n:] for m in f.terms}
    if len(degs) != 1:
        raise ValueError(f"polynomial is not homogeneous: degrees {sorted(degs)}")
    d = degs.pop()
    return d[0] if len(d) == 1 else d


def divide(f: Poly, G: list[Poly], order, trace: list | None = None):
    """Multivariate division of ``f`` by ``G`` under ``order``.

    A term is reduced only when some ``LM(g)`` divides it in the order's own
    division relation; among several candidates the lowest index wins.
    Returns ``(quotients, remainder)`` with ``f = sum(q_i g_i) + remainder``.
    If ``trace`` is a list, the leading monomial of every reduction step is
    appended to it.
    """
    F = f.field
    if not G:
        raise ValueError("empty divisor list")
    leads = []
    for g in G:
        if g.is_zero():
            raise ValueError("zero divisor polynomial")
        m, c = g.leading_term(order)
        leads.append((m, F.inv(c)))
    quotients: list[dict] = [{} for _ in G]
    rem: dict = {}
    p = dict(f.terms)
    while p:
        m = max(p, key=order.key)
        c = p[m]
        for i, (lm, lc_inv) in enumerate(leads):
            t = order.divides(lm, m)
            if t is None:
                continue
            if trace is not None:
                trace.append(m)
            factor = F.mul(c, lc_inv)
            quotients[i][t] = F.add(quotients[i].get(t, F.zero), factor)
            for gm, gc in G[i].terms.items():
                mm = tuple(a + b for a, b in zip(gm, t))
                v = F.sub(p.get(mm, F.zero), F.mul(factor, gc))
                if F.is_zero(v):
                    p.pop(mm, None)
                else:
                    p[mm] = v
            if m in p:
                raise ArithmeticError(f"reduction did not cancel the leading term {m}")
            break
        else:
            rem[m] = c
            del p[m]
    qs = [Poly(q, F, f.ambient) for q in quotients]
    return qs, Poly._raw(rem, F, f.ambient)

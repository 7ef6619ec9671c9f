"""Affine semigroups generated by the lattice points of polytopes.

Monomials are plain integer tuples. An affine monomial ``X^s`` of ``K[S]`` is
the point ``s`` itself; a homogeneous monomial ``X^(s,d)`` is the flattened
tuple ``s + d`` where ``d`` has one entry per polytope. Multiplying monomials
is adding tuples.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import lcm

import numpy as np
from scipy.optimize import linprog

Point = tuple[int, ...]


class SemigroupError(ValueError):
    pass


class NotPointedError(SemigroupError):
    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


def add(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def _rationalize(values, max_den=10**6):
    return [Fraction(float(v)).limit_denominator(max_den) for v in values]


def _positive_functional(gens: list[Point], dim: int) -> tuple[int, ...] | None:
    """Integer vector w with w.g >= 1 for every generator g, or None."""
    if not gens:
        return (0,) * dim
    A = -np.array(gens, dtype=float)
    res = linprog(
        c=np.zeros(dim),
        A_ub=A,
        b_ub=-np.ones(len(gens)),
        bounds=[(None, None)] * dim,
        method="highs",
    )
    if res.status != 0:
        return None
    for den in (10**3, 10**6, 10**9):
        w = _rationalize(res.x, den)
        scale = lcm(*(f.denominator for f in w))
        wi = tuple(int(f * scale) for f in w)
        if all(sum(a * b for a, b in zip(wi, g)) >= 1 for g in gens):
            return wi
    # rounding lost strict positivity; fall back to a slack-maximising LP
    res = linprog(
        c=np.zeros(dim),
        A_ub=A,
        b_ub=-np.full(len(gens), 100.0),
        bounds=[(None, None)] * dim,
        method="highs",
    )
    if res.status == 0:
        wi = tuple(int(round(x)) for x in res.x)
        if all(sum(a * b for a, b in zip(wi, g)) >= 1 for g in gens):
            return wi
    raise SemigroupError("could not certify pointedness exactly")


def _cancellation_witness(gens: list[Point], dim: int) -> dict[Point, int]:
    """Nonnegative integer multiplicities of generators summing to zero."""
    m = len(gens)
    A_eq = np.vstack([np.array(gens, dtype=float).T, np.ones((1, m))])
    b_eq = np.concatenate([np.zeros(dim), [1.0]])
    res = linprog(np.zeros(m), A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * m, method="highs")
    if res.status == 0:
        lam = _rationalize(res.x, 10**4)
        scale = lcm(*(f.denominator for f in lam))
        mult = [int(f * scale) for f in lam]
        total = [sum(k * g[i] for k, g in zip(mult, gens)) for i in range(dim)]
        if any(mult) and not any(total):
            return {g: k for g, k in zip(gens, mult) if k}
    return {}


class SemigroupContext:
    """The semigroups ``S`` and ``S^h`` attached to polytopes ``M_1..M_k``.

    Each polytope is given by its lattice points and must contain the origin.
    Construction fails if the generated semigroup is not pointed.
    Affine degree queries (:meth:`affine_degree`) use the single-polytope view,
    which for ``k > 1`` is the union of all the point sets.
    """

    def __init__(self, polytopes):
        polys = [sorted({tuple(int(c) for c in p) for p in M}) for M in polytopes]
        if not polys:
            raise SemigroupError("at least one polytope is required")
        dims = {len(p) for M in polys for p in M}
        if len(dims) != 1:
            raise SemigroupError(f"points of mixed dimensions {sorted(dims)}")
        self.ambient_dim = dims.pop()
        zero = (0,) * self.ambient_dim
        for i, M in enumerate(polys):
            if zero not in M:
                raise SemigroupError(f"polytope {i} does not contain the origin")
        self.polytopes: list[tuple[Point, ...]] = [tuple(M) for M in polys]
        self.k = len(polys)
        self.zero = zero
        self.points: tuple[Point, ...] = tuple(sorted({p for M in polys for p in M}))
        self.generators = [p for p in self.points if p != zero]
        w = _positive_functional(self.generators, self.ambient_dim)
        if w is None:
            witness = _cancellation_witness(self.generators, self.ambient_dim)
            raise NotPointedError(
                f"semigroup is not pointed; generators summing to zero: {witness}", witness
            )
        self.functional = w
        self._levels: list[frozenset[Point]] = [frozenset([zero])]
        self._delta: dict[Point, int] = {zero: 0}
        self._lock = threading.RLock()
        self._hom_levels: dict[tuple[int, ...], frozenset[Point]] = {}

    def __repr__(self):
        return f"SemigroupContext(n={self.ambient_dim}, polytopes={[list(M) for M in self.polytopes]})"

    def single_view(self) -> SemigroupContext:
        """Context over the single point set ``M_1 u ... u M_k``."""
        if self.k == 1:
            return self
        return SemigroupContext([self.points])

    # -- levels and affine degree --

    def _extend_levels(self, d: int) -> None:
        with self._lock:
            while len(self._levels) <= d:
                prev = self._levels[-1]
                new = frozenset(add(a, b) for a in prev for b in self.points)
                level = len(self._levels)
                for s in new:
                    if s not in self._delta:
                        self._delta[s] = level
                self._levels.append(new)

    def level(self, d: int) -> frozenset[Point]:
        """Points ``s`` with affine degree at most ``d`` (the d-fold sumset)."""
        if d < 0:
            return frozenset()
        self._extend_levels(d)
        return self._levels[d]

    def weight(self, s: Point) -> int:
        return sum(a * b for a, b in zip(self.functional, s))

    def degree_bound(self, s: Point) -> int:
        """No decomposition of ``s`` uses more nonzero generators than this."""
        return self.weight(s)

    def affine_degree(self, s: Point) -> int:
        """Minimal number of polytope points summing to ``s``.

        Raises :class:`SemigroupError` if ``s`` is not in the semigroup.
        """
        s = tuple(s)
        got = self._delta.get(s)
        if got is not None:
            return got
        if len(s) != self.ambient_dim:
            raise SemigroupError(f"point {s} has wrong dimension")
        cap = self.degree_bound(s)
        if cap >= 0 and self.generators:
            self._extend_levels(cap)
            got = self._delta.get(s)
            if got is not None:
                return got
        raise SemigroupError(f"point {s} is not in the semigroup")

    def try_affine_degree(self, s: Point) -> int | None:
        try:
            return self.affine_degree(s)
        except SemigroupError:
            return None

    def contains(self, s: Point) -> bool:
        return self.try_affine_degree(s) is not None

    def poly_affine_degree(self, support) -> int:
        return max(self.affine_degree(s) for s in support)

    # -- homogeneous side --

    def split(self, m: Point) -> tuple[Point, Point]:
        n = self.ambient_dim
        return m[:n], m[n:]

    def degree(self, m: Point):
        d = m[self.ambient_dim:]
        return d[0] if len(d) == 1 else d

    def hom(self, s: Point, d) -> Point:
        if isinstance(d, int):
            d = (d,)
        return tuple(s) + tuple(d)

    def hom_level(self, d: tuple[int, ...]) -> frozenset[Point]:
        """Points ``s`` with ``(s, d)`` in ``S^h`` for the multigraded semigroup."""
        d = tuple(d)
        if len(d) != self.k:
            raise SemigroupError(f"degree {d} does not have {self.k} entries")
        if any(x < 0 for x in d):
            return frozenset()
        with self._lock:
            got = self._hom_levels.get(d)
            if got is None:
                acc = {self.zero}
                for M, reps in zip(self.polytopes, d):
                    for _ in range(reps):
                        acc = {add(a, b) for a in acc for b in M}
                got = frozenset(acc)
                self._hom_levels[d] = got
            return got

    def in_hom(self, m: Point) -> bool:
        s, d = self.split(m)
        return s in self.hom_level(d)

    def sparse_degree(self, m: Point) -> int:
        """delta(X^(s,d)) = affine degree of the dehomogenized monomial."""
        return self.affine_degree(self.split(m)[0])

    def monomials_of_degree(self, d: int) -> list[Point]:
        """All monomials of ``K[S^h]_d`` in the single-polytope view."""
        return [s + (d,) for s in self.level(d)]

    # -- restricted division --

    def divides_affine(self, a: Point, b: Point) -> Point | None:
        """Quotient ``t`` with ``a + t = b`` and ``delta(a) + delta(t) = delta(b)``."""
        t = sub(b, a)
        dt = self.try_affine_degree(t)
        if dt is None:
            return None
        if self.affine_degree(a) + dt != self.affine_degree(b):
            return None
        return t

    def divides(self, a: Point, b: Point) -> Point | None:
        """Restricted division for homogeneous monomials (single-polytope view).

        Returns the homogeneous quotient, or ``None``.
        """
        sa, (da,) = self.split(a)
        sb, (db,) = self.split(b)
        t = sub(sb, sa)
        dt = self.try_affine_degree(t)
        if dt is None or dt > db - da:
            return None
        if self.affine_degree(sa) + dt != self.affine_degree(sb):
            return None
        return t + (db - da,)


def build_context(polytopes) -> SemigroupContext:
    return SemigroupContext(polytopes)

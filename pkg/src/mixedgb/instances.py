"""Seeded random instances shared by the CLI, the bench and the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .field import Field, PrimeField
from .multihom import MultigradedRing, MultihomSystem
from .poly import Poly, affine_ambient
from .semigroup import SemigroupContext, build_context


@dataclass
class SparseInstance:
    seed: int
    polytopes: list[list[tuple[int, ...]]]
    context: SemigroupContext
    polys: list[Poly]

    def staggered_witness(self, top: int) -> list[int]:
        """Witness degrees ``top + k - 1 - i``: every step runs one degree past
        the next, so each partial basis is complete where it is used."""
        k = len(self.polys)
        return [top + k - 1 - i for i in range(k)]


def random_polytope(rng: random.Random, n: int, max_points: int = 6, box: int = 2):
    size = rng.randint(3, max_points)
    pts = {(0,) * n}
    while len(pts) < size:
        pts.add(tuple(rng.randint(0, box) for _ in range(n)))
    return sorted(pts)


def random_sparse_instance(seed: int, field: Field | None = None, max_vars: int = 3,
                           max_points: int = 6) -> SparseInstance:
    """2 or 3 random polytopes in ``Z^n`` (``n <= max_vars``) and one random
    polynomial supported on each, in the single-polytope view."""
    F = field or PrimeField()
    rng = random.Random(seed)
    n = rng.choice(list(range(2, max_vars + 1)) + [2])
    k = rng.choice([2, 3])
    polytopes = [random_polytope(rng, n, max_points) for _ in range(k)]
    ctx = build_context(polytopes).single_view()
    amb = affine_ambient(ctx)
    polys = [Poly({p: F.random_nonzero(rng) for p in M}, F, amb) for M in polytopes]
    return SparseInstance(seed, polytopes, ctx, polys)


def random_poly_on(ring: MultigradedRing, degree, field: Field, rng: random.Random) -> Poly:
    """Dense random multihomogeneous polynomial of the given multidegree."""
    return ring.poly({m: field.random_element(rng) for m in ring.monomials_of_degree(degree)}, field)


def random_multihom_system(blocks, degrees, seed: int, field: Field | None = None) -> MultihomSystem:
    F = field or PrimeField()
    rng = random.Random(seed)
    ring = MultigradedRing(blocks)
    polys = []
    for d in degrees:
        f = random_poly_on(ring, d, F, rng)
        while f.is_zero():
            f = random_poly_on(ring, d, F, rng)
        polys.append(f)
    return MultihomSystem(ring, polys, [tuple(d) for d in degrees])

import random

import pytest
import sympy

from conftest import SQUARE, affine_poly, random_affine_poly
from mixedgb import oracle
from mixedgb.instances import random_sparse_instance
from mixedgb.m2 import criterion_rows, f5_new_rows, m2_sgb, minimalize
from mixedgb.orders import BaseOrder, SparseOrder
from mixedgb.poly import Poly, homogenize, homogeneous_ambient
from mixedgb.semigroup import build_context


def generic(ctx, F, rng, pts=None):
    pts = pts or ctx.level(1)
    return affine_poly(ctx, {p: F.random_nonzero(rng) for p in pts}, F)


@pytest.fixture
def square_system(square_ctx, F):
    rng = random.Random(1)
    return [generic(square_ctx, F, rng), generic(square_ctx, F, rng)]


def test_criterion_rows_empty(square_ctx):
    oh = SparseOrder(square_ctx).graded()
    assert criterion_rows([], 3, oh) == []


def test_criterion_rows_single_monomial(square_ctx, F):
    oh = SparseOrder(square_ctx).graded()
    m = (1, 0, 1)
    g = Poly({m: 1}, F, homogeneous_ambient(square_ctx))
    for d in range(1, 4):
        got = {next(iter(p.terms)) for _, p in criterion_rows([g], d, oh)}
        want = set()
        for b in square_ctx.monomials_of_degree(d):
            t = tuple(y - x for x, y in zip(m[:2], b[:2]))
            if min(t) < 0:
                continue
            dt = oracle.delta_bruteforce(t, SQUARE)
            if dt <= d - 1 and 1 + dt == oracle.delta_bruteforce(b[:2], SQUARE):
                want.add(b)
        assert got == want


def test_criterion_rows_span_the_full_ideal_slice(square_system, square_ctx, F):
    G = m2_sgb(square_system, [6, 6])
    oh = G.order.graded()
    Gh = [homogenize(g) for g in G.elements]
    for d in range(1, 5):
        crit = [p for _, p in criterion_rows(Gh, d, oh)]
        full = oracle.full_macaulay_rowspace(Gh, d, oh).polys()
        assert oracle.rowspace_equal(crit, full, F)


def test_f5_rows_trivial_cases(square_ctx, F, square_system):
    oh = SparseOrder(square_ctx).graded()
    fh = homogenize(square_system[0])
    assert f5_new_rows([fh], fh, 0, oh) == []
    rows = f5_new_rows([], fh, 3, oh)
    assert len(rows) == len(square_ctx.monomials_of_degree(2))


def test_single_polynomial(square_ctx, F, square_system):
    f = square_system[0]
    G = m2_sgb([f], [4])
    order = G.order
    assert G.elements == [f.monic(order)]
    for s in G.stats:
        assert s.rows == len(square_ctx.monomials_of_degree(s.degree - 1))
        assert s.zero_rows == 0


def test_square_example(square_system, square_ctx, F):
    G = m2_sgb(square_system, [4, 4])
    assert G.certify()
    assert all(s.zero_rows == 0 for s in G.stats)
    lms = G.leading_monomials()
    # the staircase of monomials no leading monomial divides is finite
    def staircase(D):
        return [s for s in square_ctx.level(D)
                if not any(G.order.divides(lm, s) is not None for lm in lms)]
    assert len(staircase(6)) == len(staircase(8)) > 0


def test_membership_matches_bruteforce(square_system, square_ctx, F):
    rng = random.Random(7)
    G = m2_sgb(square_system, [4, 4])
    f1, f2 = square_system
    for _ in range(5):
        h1, h2 = (random_affine_poly(square_ctx, F, rng, 1, 3) for _ in range(2))
        member = h1 * f1 + h2 * f2
        assert G.contains(member)
        assert oracle.ideal_membership_bruteforce(member, square_system, 3) is oracle.Membership.MEMBER
        other = random_affine_poly(square_ctx, F, rng, 2, 5)
        assert G.contains(other) is False
        assert oracle.ideal_membership_bruteforce(other, square_system, 4) is oracle.Membership.UNKNOWN


def test_ideal_elements_have_divisible_leading_monomials(square_system, square_ctx, F):
    rng = random.Random(9)
    G = m2_sgb(square_system, [5, 5])
    lms = G.leading_monomials()
    for _ in range(30):
        h1, h2 = (random_affine_poly(square_ctx, F, rng, rng.randint(1, 2), 3) for _ in range(2))
        f = h1 * square_system[0] + h2 * square_system[1]
        if f.is_zero():
            continue
        lm = f.leading_monomial(G.order)
        assert any(G.order.divides(g, lm) is not None for g in lms)


def test_dense_simplex_matches_textbook_basis(F):
    # on the standard simplex the affine degree is the total degree, so the
    # sparse order is grevlex and restricted division is ordinary division
    simplex = build_context([[(0, 0), (1, 0), (0, 1)]])
    rng = random.Random(4)
    polys = [generic(simplex, F, rng, simplex.level(2)) for _ in range(2)]
    G = m2_sgb(polys, [5, 4])
    x, y = sympy.symbols("x y")
    exprs = [sum(int(c) * x**m[0] * y**m[1] for m, c in f.terms.items()) for f in polys]
    ref = sympy.groebner(exprs, x, y, order="grevlex", modulus=F.p)
    ref_lms = {sympy.Poly(g, x, y).monoms(order="grevlex")[0] for g in ref.exprs}
    assert set(G.leading_monomials()) == ref_lms


def test_witness_degrees_are_honoured(square_system):
    G = m2_sgb(square_system, [3, 4])
    assert G.witness_degrees == [3, 4]
    assert not G.heuristic
    assert max(s.degree for s in G.stats if s.step == 1) == 4
    auto = m2_sgb(square_system)
    assert auto.heuristic and auto.certify()


def test_random_instances_soundness():
    for seed in range(3):
        inst = random_sparse_instance(seed, max_vars=2)
        G = m2_sgb(inst.polys, inst.staggered_witness(3), keep_records=True)
        oh = G.order.graded()
        for rec in G.records:
            if rec.degree > 3:
                continue
            full = oracle.full_macaulay_rowspace(rec.previous_basis + [rec.generator], rec.degree, oh)
            assert oracle.rowspace_equal(rec.matrix.polys(), full.polys(), rec.generator.field)
        assert G.certify()


def test_minimalize_drops_divisible(square_ctx, F):
    order = SparseOrder(square_ctx)
    a = affine_poly(square_ctx, {(1, 1): 2}, F)
    b = affine_poly(square_ctx, {(2, 1): 1, (0, 0): 1}, F)
    out = minimalize([b, a], order)
    assert out == [a.monic(order)]


def test_errors(square_ctx, F):
    with pytest.raises(ValueError):
        m2_sgb([])
    with pytest.raises(ValueError):
        m2_sgb([affine_poly(square_ctx, {}, F)])
    multi = build_context([[(0, 0), (1, 0)], [(0, 0), (0, 1)]])
    with pytest.raises(ValueError):
        m2_sgb([affine_poly(multi, {(1, 0): 1}, F)])
    f = affine_poly(square_ctx, {(1, 0): 1}, F)
    with pytest.raises(ValueError):
        m2_sgb([f], [1, 2])

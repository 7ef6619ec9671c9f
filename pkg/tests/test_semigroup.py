import itertools

import pytest

from conftest import SQUARE
from mixedgb.oracle import delta_bruteforce
from mixedgb.semigroup import NotPointedError, SemigroupError, build_context


def test_square_context_is_valid(square_ctx):
    assert square_ctx.k == 1
    assert all(square_ctx.weight(g) > 0 for g in square_ctx.generators)


def test_only_origin_is_trivial():
    ctx = build_context([[(0,)]])
    assert ctx.generators == []
    assert ctx.affine_degree((0,)) == 0
    assert not ctx.contains((1,))


def test_not_pointed_has_witness():
    with pytest.raises(NotPointedError) as info:
        build_context([[(0,), (1,), (-1,)]])
    w = info.value.witness
    total = [0]
    for g, c in w.items():
        total[0] += g[0] * c
    assert total == [0] and w


def test_missing_origin():
    with pytest.raises(SemigroupError):
        build_context([[(1, 0), (0, 1)]])


def test_square_affine_degrees(square_ctx):
    # values stated in the running example
    assert square_ctx.affine_degree((2, 0)) == 2
    assert square_ctx.affine_degree((1, 1)) == 1
    assert square_ctx.affine_degree((0, 0)) == 0


def test_affine_degree_matches_bruteforce():
    for M in (SQUARE, [(0, 0), (2, 0), (1, 1), (0, 3)], [(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 0)]):
        ctx = build_context([M])
        for s in ctx.level(3):
            assert ctx.affine_degree(s) == delta_bruteforce(s, M, 3)


def test_unreachable_point(square_ctx):
    with pytest.raises(SemigroupError):
        square_ctx.affine_degree((-1, 0))
    ctx = build_context([[(0, 0), (2, 0), (0, 1)]])
    assert not ctx.contains((1, 0))


def test_sparse_degree_examples(square_ctx):
    assert square_ctx.sparse_degree((1, 1, 2)) == 1
    assert square_ctx.sparse_degree((2, 0, 2)) == 2
    for d in range(4):
        assert square_ctx.sparse_degree((0, 0, d)) == 0


def test_sparse_degree_bounded_by_degree(square_ctx):
    for d in range(4):
        for m in square_ctx.monomials_of_degree(d):
            assert square_ctx.sparse_degree(m) <= d


def test_triangle_inequality():
    M = [(0, 0), (2, 0), (1, 1), (0, 3), (1, 0)]
    ctx = build_context([M])
    pts = sorted(ctx.level(3))
    for a, b in itertools.product(pts, repeat=2):
        s = (a[0] + b[0], a[1] + b[1])
        assert ctx.affine_degree(s) <= ctx.affine_degree(a) + ctx.affine_degree(b)


def test_divides_examples(square_ctx):
    assert square_ctx.divides((1, 1, 1), (2, 1, 2)) == (1, 0, 1)
    # delta(1,1) = 1 but delta(1,0) + delta(0,1) = 2
    assert square_ctx.divides((1, 0, 1), (1, 1, 1)) is None
    assert square_ctx.divides((1, 1, 2), (1, 1, 2)) == (0, 0, 0)


def test_divides_is_exact_on_positive_answers(square_ctx):
    mons = [m for d in range(4) for m in square_ctx.monomials_of_degree(d)]
    for a, b in itertools.product(mons, repeat=2):
        t = square_ctx.divides(a, b)
        if t is None:
            continue
        assert tuple(x + y for x, y in zip(a, t)) == b
        sa, sb, st = (square_ctx.sparse_degree(x) for x in (a, b, t))
        assert sa + st == sb


def test_hom_levels_multi_polytope():
    ctx = build_context([[(0, 0), (1, 0)], [(0, 0), (0, 1)]])
    assert ctx.k == 2
    assert ctx.in_hom((1, 1, 1, 1))
    assert not ctx.in_hom((2, 0, 1, 1))
    assert ctx.degree((1, 1, 1, 1)) == (1, 1)
    single = ctx.single_view()
    assert single.k == 1 and single.points == ctx.points

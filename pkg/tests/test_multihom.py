import random

import numpy as np
import pytest
import sympy

from mixedgb import oracle
from mixedgb.field import PrimeField
from mixedgb.instances import random_multihom_system, random_poly_on
from mixedgb.macaulay import identity, matmul, rref
from mixedgb.multihom import (
    InfiniteSolutionsError,
    MultigradedRing,
    MultihomError,
    MultihomSolver,
    MultihomSystem,
    SolutionsAtInfinityError,
    blocked_matrix,
    change_coords,
    check_no_infinity,
    eval_at_matrices,
    m3h,
    macaulay_bound,
    monomial_basis,
    mul_matrix,
    substitute,
)
from mixedgb.orders import BaseOrder


@pytest.fixture
def bilinear():
    return random_multihom_system((1, 1), [(1, 1), (1, 1)], seed=1)


def test_macaulay_bound_examples():
    assert macaulay_bound([(1, 1), (1, 1)], (1, 1)) == (1, 1)
    assert macaulay_bound([(2,), (3,)], (2,)) == (3,)
    assert macaulay_bound([(2,), (3,), (1,)], (2,)) == (4,)
    assert macaulay_bound([(1, 1, 1)] * 4, (2, 1, 1)) == (2, 3, 3)


def test_ring_counts():
    ring = MultigradedRing((2, 1))
    assert ring.count((2, 1)) == 6 * 2
    assert ring.monomials_of_degree((-1, 0)) == []
    with pytest.raises(MultihomError):
        MultigradedRing((-1,))


def test_system_validation(F):
    ring = MultigradedRing((1, 1))
    f = ring.poly({(1, 0, 1, 0): 1, (2, 0, 0, 0): 1}, F)
    with pytest.raises(MultihomError):
        MultihomSystem(ring, [f])


def test_m3h_first_polynomial_single_row(bilinear):
    M = m3h(bilinear, (1, 1), k=1)
    assert M.nrows == 1 and M.row_poly(0) == bilinear.polys[0]


def test_m3h_bilinear_counts(bilinear):
    R = rref(m3h(bilinear, (1, 1)))
    assert R.ncols == 4 and R.rank == 2
    assert R.ncols - R.rank == oracle.bezout_count(bilinear.degrees, (1, 1)) == 2


@pytest.mark.parametrize("blocks,degs", [((1, 1), [(1, 1), (2, 1)]), ((2, 1), [(1, 1), (1, 0), (1, 1)]),
                                         ((1, 1, 1), [(1, 1, 0), (0, 1, 1), (1, 0, 1)])])
def test_m3h_rank_matches_full_matrix(blocks, degs):
    system = random_multihom_system(blocks, degs, seed=3)
    D = macaulay_bound(degs, blocks)
    for shift in [(0,) * len(blocks), (1,) * len(blocks)]:
        d = tuple(max(a + b, 0) for a, b in zip(D, shift))
        for k in range(1, len(degs) + 1):
            R = rref(m3h(system, d, k=k))
            assert R.rank == oracle.multihom_ideal_dim(system.polys[:k], system.ring, d)


def test_negative_shift_contributes_no_rows(bilinear):
    M = m3h(bilinear, (0, 1))
    assert M.nrows == 0


def test_monomial_basis_bilinear(bilinear):
    b = monomial_basis(bilinear)
    assert len(b) == 2
    ring = bilinear.ring
    D = b.degree
    assert not set(b.monomials) & b.leading
    assert len(b.monomials) + len(b.leading) == ring.count(D)


def test_monomial_basis_classical_bezout(F):
    # degrees (2, 3) on P^2: the basis size is the degree of the eliminant
    system = random_multihom_system((2,), [(2,), (3,)], seed=5)
    b = monomial_basis(system)
    x, y = sympy.symbols("x y")
    exprs = []
    for f in system.dehomogenized():
        exprs.append(sum(int(c) * x**m[0] * y**m[1] for m, c in f.terms.items()))
    res = sympy.Poly(sympy.resultant(exprs[0], exprs[1], x), y, modulus=F.p)
    assert len(b) == res.degree() == 6


def test_basis_size_independent_of_order():
    system = random_multihom_system((2, 1), [(1, 1), (2, 0), (1, 1)], seed=8)
    assert len(monomial_basis(system, BaseOrder("grevlex"))) == len(monomial_basis(system, BaseOrder("lex")))


def test_hilbert_function_stabilizes():
    system = random_multihom_system((1, 1), [(2, 1), (1, 2)], seed=2)
    S = MultihomSolver(system)
    h = S.hilbert(S.D_N)
    assert h == oracle.bezout_count(system.degrees, (1, 1))
    for e in [(1, 0), (0, 1), (1, 1), (2, 1)]:
        assert S.hilbert(tuple(a + b for a, b in zip(S.D_N, e))) == h


def test_blocked_matrix_structure(bilinear, F):
    ring = bilinear.ring
    S = MultihomSolver(bilinear)
    B = S.blocked_matrix(ring.x_h(F))
    assert not B.M21.any()
    assert (B.M22 == identity(len(S.basis), F)).all()
    rng = random.Random(0)
    f0 = random_poly_on(ring, (1, 1), F, rng)
    B = blocked_matrix(bilinear, f0)
    full = B.full()
    assert full.shape == (9, 9)
    assert rref(_as_matrix(full, F)).rank == 9
    # the top block is M3H of the input system, columns permuted
    top = m3h(bilinear, S.D_N1)
    assert B.n_top == top.nrows
    assert sorted(B.columns) == sorted(top.columns)


def _as_matrix(A, F):
    from mixedgb.macaulay import MacaulayMatrix
    return MacaulayMatrix(list(range(A.shape[1])), [None] * A.shape[0], A.copy(), F)


def test_mul_matrices(bilinear, F):
    S = MultihomSolver(bilinear)
    ring = bilinear.ring
    n = len(S.basis)
    assert (S.mul_matrix(ring.x_h(F)) == identity(n, F)).all()
    mats = S.variable_matrices()
    assert not F.reduce(matmul(mats[0], mats[1], F) - matmul(mats[1], mats[0], F)).any()
    for f in bilinear.dehomogenized():
        assert not eval_at_matrices(f, mats, F).any()
    rng = random.Random(4)
    f0, g0 = (random_poly_on(ring, (1, 1), F, rng) for _ in range(2))
    lhs = mul_matrix(bilinear, f0 + g0)
    assert (lhs == F.reduce(S.mul_matrix(f0) + S.mul_matrix(g0))).all()


def test_unit_vector_maps_like_one(bilinear, F):
    S = MultihomSolver(bilinear)
    u = S.unit_vector()
    x = S.variable_matrices()[0]
    # x * 1 computed from the unit vector equals the coordinates of the variable
    e = [0] * bilinear.ring.nvars
    e[1] = 1
    e[2] = S.D_N1[1]
    e[0] = S.D_N1[0] - 1
    direct = S.coords([bilinear.ring.monomial(e, F)])[0]
    assert (matmul(u.reshape(1, -1), x, F)[0] == direct).all()


def test_check_no_infinity_cases(bilinear, F):
    assert check_no_infinity(bilinear)
    ring = bilinear.ring
    rng = random.Random(2)
    # x_{1,0} * (linear form in y) vanishes on the point at infinity of the first factor
    ylin = ring.poly({(0, 0, 1, 0): 3, (0, 0, 0, 1): 5}, F)
    f1 = ring.poly({(1, 0, 0, 0): 1}, F) * ylin
    bad = MultihomSystem(ring, [f1, random_poly_on(ring, (1, 1), F, rng)])
    assert not check_no_infinity(bad)
    with pytest.raises(SolutionsAtInfinityError):
        MultihomSolver(bad).variable_matrices()
    p1 = MultigradedRing((1,))
    assert not check_no_infinity(MultihomSystem(p1, [p1.poly({(1, 1): 1}, F)]))


def test_infinite_solution_set_detected(F):
    ring = MultigradedRing((1, 1))
    f = random_poly_on(ring, (1, 1), F, random.Random(3))
    with pytest.raises(InfiniteSolutionsError):
        monomial_basis(MultihomSystem(ring, [f, f.scale(2)]))


def test_change_coords(bilinear, F):
    eye = [identity(2, F), identity(2, F)]
    same = substitute(bilinear, eye)
    assert all(a == b for a, b in zip(same.polys, bilinear.polys))
    ring = bilinear.ring
    rng = random.Random(2)
    ylin = ring.poly({(0, 0, 1, 0): 3, (0, 0, 0, 1): 5}, F)
    bad = MultihomSystem(ring, [ring.poly({(1, 0, 0, 0): 1}, F) * ylin, random_poly_on(ring, (1, 1), F, rng)])
    fixed = 0
    for seed in range(5):
        new, mats = change_coords(bad, seed)
        assert len(mats) == 2
        if check_no_infinity(new):
            fixed += 1
            assert len(monomial_basis(new)) == 2
    assert fixed >= 4
    a, _ = change_coords(bilinear, 7)
    b, _ = change_coords(bilinear, 7)
    assert a.polys == b.polys


def test_nonsquare_rejected(F):
    system = random_multihom_system((1, 1), [(1, 1)], seed=0)
    with pytest.raises(MultihomError):
        MultihomSolver(system)


def test_schur_complement_matches_explicit_inverse(bilinear, F):
    # when M11 is square the elimination reading equals M22 - M21 M11^-1 M12
    rng = random.Random(6)
    f0 = random_poly_on(bilinear.ring, (1, 1), F, rng)
    B = blocked_matrix(bilinear, f0)
    assert B.M11.shape[0] == B.M11.shape[1]
    M11 = sympy.Matrix(B.M11.tolist())
    inv = M11.inv_mod(F.p)
    schur = (sympy.Matrix(B.M22.tolist()) - sympy.Matrix(B.M21.tolist()) * inv * sympy.Matrix(B.M12.tolist()))
    schur = schur.applyfunc(lambda v: v % F.p)
    assert np.array(schur.tolist(), dtype=np.int64).tolist() == mul_matrix(bilinear, f0).tolist()

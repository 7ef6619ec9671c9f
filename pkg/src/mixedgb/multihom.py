"""Square multihomogeneous systems over P^{n_1} x ... x P^{n_r}.

Monomials of ``K[x]`` are flattened exponent tuples: block ``i`` contributes
the exponents of ``x_{i,0}, ..., x_{i,n_i}``. The homogenizing variables are
the ``x_{i,0}``; dehomogenizing sets them to 1 and leaves the ``N = sum n_i``
affine variables ``x_{i,j}`` (``j >= 1``) in block order.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations, product

import numpy as np

from .field import Field
from .macaulay import MacaulayMatrix, build_matrix, echelonize, identity, matmul, rref
from .orders import BaseOrder
from .poly import Ambient, Poly

log = logging.getLogger(__name__)


class MultihomError(ValueError):
    pass


class InfiniteSolutionsError(MultihomError):
    pass


class SolutionsAtInfinityError(MultihomError):
    pass


def compositions(total: int, parts: int):
    """Exponent vectors of length ``parts`` summing to ``total``."""
    if total < 0:
        return
    for bars in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 1 - prev - 1)
        yield tuple(out)


class MultigradedRing:
    """``K[x] = K[x_1] (x) ... (x) K[x_r]`` with block sizes ``n_i``."""

    def __init__(self, blocks):
        self.blocks = tuple(int(b) for b in blocks)
        if not self.blocks or any(b < 0 for b in self.blocks):
            raise MultihomError(f"invalid block sizes {blocks}")
        self.r = len(self.blocks)
        self.N = sum(self.blocks)
        self.nvars = self.N + self.r
        self.offsets = []
        off = 0
        for b in self.blocks:
            self.offsets.append(off)
            off += b + 1
        self.ambient = Ambient("multigraded", self)
        self.affine = AffineRing(self.N)
        self._mons: dict = {}

    def __repr__(self):
        return f"MultigradedRing({self.blocks})"

    def var(self, i: int, j: int) -> tuple[int, ...]:
        e = [0] * self.nvars
        e[self.offsets[i] + j] = 1
        return tuple(e)

    def block(self, m, i):
        o = self.offsets[i]
        return m[o:o + self.blocks[i] + 1]

    def degree(self, m) -> tuple[int, ...]:
        return tuple(sum(self.block(m, i)) for i in range(self.r))

    def monomials_of_degree(self, d) -> list[tuple[int, ...]]:
        d = tuple(d)
        got = self._mons.get(d)
        if got is None:
            if len(d) != self.r or any(x < 0 for x in d):
                got = []
            else:
                parts = [list(compositions(di, ni + 1)) for di, ni in zip(d, self.blocks)]
                got = [sum(p, ()) for p in product(*parts)]
            self._mons[d] = got
        return got

    def count(self, d) -> int:
        return len(self.monomials_of_degree(d))

    def poly(self, terms, field: Field) -> Poly:
        return Poly(terms, field, self.ambient)

    def monomial(self, m, field: Field) -> Poly:
        return Poly({tuple(m): field.one}, field, self.ambient)

    def x_h(self, field: Field) -> Poly:
        """Product of the homogenizing variables ``x_{i,0}``."""
        e = [0] * self.nvars
        for o in self.offsets:
            e[o] = 1
        return self.monomial(e, field)

    def variable_form(self, i: int, j: int, field: Field) -> Poly:
        """Multilinear form dehomogenizing to the affine variable ``x_{i,j}``."""
        e = [0] * self.nvars
        for b, o in enumerate(self.offsets):
            e[o + (j if b == i else 0)] = 1
        return self.monomial(e, field)

    def affine_variables(self):
        return [(i, j) for i, n in enumerate(self.blocks) for j in range(1, n + 1)]

    def dehomogenize_monomial(self, m):
        out = []
        for i in range(self.r):
            out.extend(self.block(m, i)[1:])
        return tuple(out)

    def dehomogenize(self, f: Poly) -> Poly:
        return f.map_monomials(self.dehomogenize_monomial, ambient=self.affine.ambient)


class AffineRing:
    """Ordinary polynomial ring ``K[x_1..x_N]`` with exponent tuples."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.ambient = Ambient("plain", self)

    def __repr__(self):
        return f"AffineRing({self.nvars})"

    def poly(self, terms, field: Field) -> Poly:
        return Poly(terms, field, self.ambient)

    def var(self, j: int, field: Field) -> Poly:
        e = [0] * self.nvars
        e[j] = 1
        return Poly({tuple(e): field.one}, field, self.ambient)


@dataclass
class MultihomSystem:
    ring: MultigradedRing
    polys: list[Poly]
    degrees: list[tuple[int, ...]] = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.degrees:
            self.degrees = [multidegree(f, self.ring) for f in self.polys]
        for i, (f, d) in enumerate(zip(self.polys, self.degrees)):
            if f.is_zero():
                raise MultihomError(f"polynomial {i} is zero")
            if f.ambient != self.ring.ambient:
                raise MultihomError(f"polynomial {i} is not in {self.ring}")
            for m in f.terms:
                if self.ring.degree(m) != tuple(d):
                    raise MultihomError(
                        f"polynomial {i}: term {m} has multidegree {self.ring.degree(m)}, expected {tuple(d)}"
                    )
        self.degrees = [tuple(d) for d in self.degrees]

    @property
    def field(self) -> Field:
        return self.polys[0].field

    @property
    def is_square(self) -> bool:
        return len(self.polys) == self.ring.N

    def dehomogenized(self) -> list[Poly]:
        return [self.ring.dehomogenize(f) for f in self.polys]


def multidegree(f: Poly, ring: MultigradedRing) -> tuple[int, ...]:
    degs = {ring.degree(m) for m in f.terms}
    if len(degs) != 1:
        raise MultihomError(f"polynomial is not multihomogeneous: degrees {sorted(degs)}")
    return degs.pop()


def macaulay_bound(degs, blocks) -> tuple[int, ...]:
    """Componentwise ``sum(deg f_i) - n``."""
    blocks = tuple(blocks)
    total = [0] * len(blocks)
    for d in degs:
        for i, x in enumerate(d):
            total[i] += x
    return tuple(t - n for t, n in zip(total, blocks))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class M3H:
    """Recursive multihomogeneous Macaulay matrices with memoized sub-results.

    ``rows(k, d)`` are the labelled rows of ``M3H({f_1..f_k}, d)``; the
    multiplier of ``f_k`` is skipped when it is a leading monomial of the
    reduced matrix ``M3H({f_1..f_{k-1}}, d - deg f_k)``.
    """

    def __init__(self, ring: MultigradedRing, polys: list[Poly], order: BaseOrder | None = None):
        self.ring = ring
        self.polys = list(polys)
        self.degrees = [multidegree(f, ring) for f in self.polys]
        self.order = order or BaseOrder()
        self.field = self.polys[0].field
        self._rows: dict = {}
        self._leads: dict = {}

    def columns(self, d):
        return sorted(self.ring.monomials_of_degree(d), key=self.order.key, reverse=True)

    def rows(self, k: int, d) -> list:
        d = tuple(d)
        key = (k, d)
        got = self._rows.get(key)
        if got is not None:
            return got
        fk = self.polys[k - 1]
        dk = _sub(d, self.degrees[k - 1])
        if k == 1:
            out = []
            leads = set()
        else:
            out = list(self.rows(k - 1, d))
            leads = self.leading_monomials(k - 1, dk)
        for beta in sorted(self.ring.monomials_of_degree(dk), key=self.order.key, reverse=True):
            if beta not in leads:
                out.append((("f", k - 1, beta), fk.shift(beta)))
        self._rows[key] = out
        return out

    def matrix(self, k: int, d) -> MacaulayMatrix:
        M = build_matrix(self.rows(k, d), self.order, columns=self.columns(d), field=self.field,
                         check_degree=False)
        M.ambient = self.ring.ambient
        M.meta["degree"] = tuple(d)
        M.meta["k"] = k
        return M

    def leading_monomials(self, k: int, d) -> set:
        d = tuple(d)
        key = (k, d)
        got = self._leads.get(key)
        if got is None:
            R = rref(self.matrix(k, d))
            got = {R.columns[j] for j in R.pivots}
            self._leads[key] = got
        return got


def m3h(system: MultihomSystem, d, order: BaseOrder | None = None, k: int | None = None) -> MacaulayMatrix:
    """``M3H({f_1..f_k}, d, <)`` for the first ``k`` polynomials (default: all)."""
    k = len(system.polys) if k is None else k
    if k < 1:
        raise MultihomError("need at least one polynomial")
    return M3H(system.ring, system.polys[:k], order).matrix(k, d)


@dataclass
class MonomialBasisB:
    monomials: list
    dehomogenized: list
    degree: tuple[int, ...]
    leading: set
    hilbert: int

    def __len__(self):
        return len(self.monomials)


@dataclass
class BlockedMatrix:
    M11: np.ndarray
    M12: np.ndarray
    M21: np.ndarray
    M22: np.ndarray
    row_labels: list
    columns: list
    n_top: int
    n_left: int

    def full(self):
        top = np.hstack([self.M11, self.M12])
        bottom = np.hstack([self.M21, self.M22])
        return np.vstack([top, bottom])


class MultihomSolver:
    """Monomial basis and multiplication maps of a square system.

    The elimination of ``M3H({f_1..f_N}, D_{N+1})`` is done once and shared by
    every multiplication map.
    """

    def __init__(self, system: MultihomSystem, order: BaseOrder | None = None):
        if not system.is_square:
            raise MultihomError(
                f"system has {len(system.polys)} polynomials for N = {system.ring.N} variables"
            )
        self.system = system
        self.ring = system.ring
        self.field = system.field
        self.order = order or BaseOrder()
        self.engine = M3H(self.ring, system.polys, self.order)
        self.N = len(system.polys)
        self.D_N = macaulay_bound(system.degrees, self.ring.blocks)
        self.D_N1 = _add(self.D_N, (1,) * self.ring.r)
        self._basis: MonomialBasisB | None = None
        self._reducer = None

    # -- dimension counts --

    def hilbert(self, d) -> int:
        """``dim K[x]_d - rank M3H(f_1..f_N, d)``."""
        n = self.ring.count(d)
        if n == 0:
            return 0
        return n - len(self.engine.leading_monomials(self.N, d))

    def check_no_infinity(self) -> bool:
        xh = self.ring.x_h(self.field)
        eng = M3H(self.ring, self.system.polys + [xh], self.order)
        M = eng.matrix(self.N + 1, self.D_N1)
        R = rref(M)
        return R.rank == self.ring.count(self.D_N1)

    # -- monomial basis --

    @property
    def basis(self) -> MonomialBasisB:
        if self._basis is None:
            self._basis = self._monomial_basis()
        return self._basis

    def _monomial_basis(self) -> MonomialBasisB:
        leads = self.engine.leading_monomials(self.N, self.D_N)
        mons = [m for m in self.ring.monomials_of_degree(self.D_N) if m not in leads]
        mons.sort(key=self.order.key)
        h_next = self.hilbert(self.D_N1)
        if len(mons) != h_next:
            raise InfiniteSolutionsError(
                f"Hilbert function changes from {len(mons)} at {self.D_N} to {h_next} at {self.D_N1}"
            )
        return MonomialBasisB(
            mons,
            [self.ring.dehomogenize_monomial(m) for m in mons],
            self.D_N,
            leads,
            len(mons),
        )

    # -- blocked matrix and Schur complements --

    def _split_columns(self):
        xh = self.ring.x_h(self.field)
        (hm,) = xh.terms
        last = [_add(hm, b) for b in self.basis.monomials]
        last_set = set(last)
        first = [c for c in self.engine.columns(self.D_N1) if c not in last_set]
        return first, last

    def blocked_matrix(self, f0: Poly) -> BlockedMatrix:
        if multidegree(f0, self.ring) != (1,) * self.ring.r:
            raise MultihomError("f0 must be multilinear")
        eng = M3H(self.ring, self.system.polys + [f0], self.order)
        rows = eng.rows(self.N + 1, self.D_N1)
        # f0 rows follow the basis order, matching the last columns
        pos = {b: i for i, b in enumerate(self.basis.monomials)}
        top = [r for r in rows if r[0][1] < self.N]
        bottom = sorted((r for r in rows if r[0][1] == self.N), key=lambda r: pos[r[0][2]])
        rows = top + bottom
        first, last = self._split_columns()
        cols = first + last
        index = {c: j for j, c in enumerate(cols)}
        A = self.field.array(len(rows), len(cols))
        for i, (_, p) in enumerate(rows):
            for m, c in p.terms.items():
                A[i, index[m]] = c
        n_top = sum(1 for lb, _ in rows if lb[1] < self.N)
        n_left = len(first)
        return BlockedMatrix(
            A[:n_top, :n_left], A[:n_top, n_left:], A[n_top:, :n_left], A[n_top:, n_left:],
            [lb for lb, _ in rows], cols, n_top, n_left,
        )

    def _reduce_setup(self):
        if self._reducer is not None:
            return self._reducer
        first, last = self._split_columns()
        cols = first + last
        index = {c: j for j, c in enumerate(cols)}
        rows = self.engine.rows(self.N, self.D_N1)
        A = self.field.array(len(rows), len(cols))
        for i, (_, p) in enumerate(rows):
            for m, c in p.terms.items():
                A[i, index[m]] = c
        pivots = echelonize(A, self.field)
        K = len(first)
        if pivots[:K] != list(range(K)):
            raise SolutionsAtInfinityError(
                "the f_1..f_N rows do not reduce every non-basis column; "
                "the system has solutions at infinity (try change_coords)"
            )
        R12 = A[:K, K:].copy()
        self._reducer = (index, K, R12)
        return self._reducer

    def coords(self, polys: list[Poly]):
        """Rows of coefficients of ``polys`` (degree ``D_{N+1}``) modulo ``f_1..f_N``
        in the basis ``x_h * b``."""
        index, K, R12 = self._reduce_setup()
        n = len(index)
        A = self.field.array(len(polys), n)
        for i, p in enumerate(polys):
            for m, c in p.terms.items():
                try:
                    A[i, index[m]] = c
                except KeyError:
                    raise MultihomError(f"monomial {m} is not of degree {self.D_N1}") from None
        left, right = A[:, :K], A[:, K:]
        return self.field.reduce(right - matmul(left, R12, self.field))

    def mul_matrix(self, f0: Poly):
        """Matrix of multiplication by the dehomogenization of ``f0`` in the basis ``b``.

        Row ``i`` holds the coordinates of ``b_i * f0``.
        """
        if multidegree(f0, self.ring) != (1,) * self.ring.r:
            raise MultihomError("f0 must be multilinear")
        rows = [f0.shift(b) for b in self.basis.monomials]
        if not rows:
            return self.field.array(0, 0)
        return self.coords(rows)

    def variable_matrices(self):
        """Multiplication matrices of the affine variables, in block order."""
        return [self.mul_matrix(self.ring.variable_form(i, j, self.field))
                for i, j in self.ring.affine_variables()]

    def unit_vector(self):
        """Coordinates of 1 in the dehomogenized basis."""
        e = [0] * self.ring.nvars
        for i, o in enumerate(self.ring.offsets):
            e[o] = self.D_N1[i]
        return self.coords([self.ring.monomial(e, self.field)])[0]


def monomial_basis(system: MultihomSystem, order: BaseOrder | None = None) -> MonomialBasisB:
    return MultihomSolver(system, order).basis


def blocked_matrix(system: MultihomSystem, f0: Poly, order: BaseOrder | None = None) -> BlockedMatrix:
    return MultihomSolver(system, order).blocked_matrix(f0)


def mul_matrix(system: MultihomSystem, f0: Poly, order: BaseOrder | None = None):
    return MultihomSolver(system, order).mul_matrix(f0)


def check_no_infinity(system: MultihomSystem, order: BaseOrder | None = None) -> bool:
    return MultihomSolver(system, order).check_no_infinity()


def _random_invertible(n: int, field: Field, rng: random.Random, retries: int = 20):
    for _ in range(retries):
        A = field.array(n, n)
        for i in range(n):
            for j in range(n):
                A[i, j] = field.random_element(rng)
        if len(echelonize(A.copy(), field)) == n:
            return A
    raise MultihomError("could not draw an invertible matrix")


def substitute(system: MultihomSystem, matrices) -> MultihomSystem:
    """Replace ``x_{i,a}`` by ``sum_b A_i[a, b] x_{i,b}`` in every polynomial."""
    ring = system.ring
    F = system.field
    forms = []
    for i, A in enumerate(matrices):
        row_forms = []
        for a in range(ring.blocks[i] + 1):
            terms = {ring.var(i, b): A[a, b] for b in range(ring.blocks[i] + 1)}
            row_forms.append(ring.poly(terms, F))
        forms.append(row_forms)
    flat = [f for row in forms for f in row]
    power_cache: dict = {}

    def power(v, e):
        key = (v, e)
        if key not in power_cache:
            power_cache[key] = flat[v] ** e
        return power_cache[key]

    new = []
    for f in system.polys:
        acc = ring.poly({}, F)
        for m, c in f.terms.items():
            term = ring.poly({(0,) * ring.nvars: c}, F)
            for v, e in enumerate(m):
                if e:
                    term = term * power(v, e)
            acc = acc + term
        new.append(acc)
    return MultihomSystem(ring, new, list(system.degrees))


def change_coords(system: MultihomSystem, seed: int):
    """Generic block-preserving linear change of coordinates.

    Returns ``(new_system, matrices)``; ``matrices[i]`` acts on block ``i``.
    """
    rng = random.Random(seed)
    F = system.field
    mats = [_random_invertible(n + 1, F, rng) for n in system.ring.blocks]
    log.info("change_coords seed=%d matrices=%s", seed, [m.tolist() for m in mats])
    return substitute(system, mats), mats


def eval_at_matrices(f: Poly, mats, field: Field):
    """``f(M_1, ..., M_N)`` for commuting matrices (ordinary exponents)."""
    if not mats:
        raise ValueError("no matrices")
    n = mats[0].shape[0]
    total = field.array(n, n)
    cache: dict = {}

    def mpow(j, e):
        if (j, e) not in cache:
            if e == 1:
                cache[(j, e)] = mats[j]
            else:
                cache[(j, e)] = matmul(mpow(j, e - 1), mats[j], field)
        return cache[(j, e)]

    for m, c in f.terms.items():
        P = identity(n, field)
        for j, e in enumerate(m):
            if e:
                P = matmul(P, mpow(j, e), field)
        total = field.reduce(total + P * c)
    return total

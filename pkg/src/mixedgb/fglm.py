"""Lexicographic Groebner bases from multiplication matrices, and F_p roots."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .field import Field, PrimeField
from .macaulay import matmul
from .poly import Poly

MAX_ROOT_SEARCH_PRIME = 2**20


class FGLMError(ValueError):
    pass


class LexOrder:
    """Lex on ordinary exponents, ``x_1 > x_2 > ... > x_N``."""

    def key(self, m):
        return tuple(m)

    def divides(self, a, b):
        t = tuple(y - x for x, y in zip(a, b))
        return t if min(t, default=0) >= 0 else None


LEX = LexOrder()


@dataclass
class LexGB:
    polys: list[Poly]
    staircase: list[tuple[int, ...]]
    nvars: int
    field: Field

    @property
    def shape_position(self) -> bool:
        """Staircase ``1, x_N, ..., x_N^(D-1)``."""
        last = self.nvars - 1
        return all(
            all(e == 0 for j, e in enumerate(m) if j != last) for m in self.staircase
        ) and sorted(m[last] for m in self.staircase) == list(range(len(self.staircase)))

    def leading_monomials(self):
        return [p.leading_monomial(LEX) for p in self.polys]


def _check_commuting(mats, field):
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            lhs = matmul(mats[a], mats[b], field)
            rhs = matmul(mats[b], mats[a], field)
            if np.any(field.reduce(lhs - rhs) != 0) if field.kind == "prime" else np.any(lhs != rhs):
                raise FGLMError(f"multiplication matrices {a} and {b} do not commute")


def lex_gb(mulmats, unit, field: Field, ambient=None) -> LexGB:
    """Reduced lex Groebner basis of the ideal whose quotient is described by
    ``mulmats`` (row convention: ``v -> v @ M_j`` multiplies by ``x_j``) and the
    coordinate vector ``unit`` of 1."""
    nvars = len(mulmats)
    if nvars == 0:
        raise FGLMError("no variables")
    dim = mulmats[0].shape[0]
    for M in mulmats:
        if M.shape != (dim, dim):
            raise FGLMError("multiplication matrices must be square of equal size")
    _check_commuting(mulmats, field)
    F = field

    # echelon entries: pivot -> (reduced vector, combination over staircase indices)
    echelon: dict[int, tuple[np.ndarray, dict[int, object]]] = {}
    staircase: list[tuple[int, ...]] = []
    vectors: list[np.ndarray] = []
    gb: list[Poly] = []
    gb_leads: list[tuple[int, ...]] = []

    def reduce(v):
        v = v.copy()
        combo: dict[int, object] = {}
        for piv in sorted(echelon):
            c = v[piv]
            if (c % F.p if F.kind == "prime" else c) == 0:
                continue
            r, rc = echelon[piv]
            v = F.reduce(v - r * c)
            for k, a in rc.items():
                combo[k] = F.add(combo.get(k, F.zero), F.mul(c, a))
        return v, combo

    zero = tuple([0] * nvars)
    heap = [(LEX.key(zero), zero, None, None)]
    seen = set()
    while heap:
        _, m, parent, var = heapq.heappop(heap)
        if m in seen:
            continue
        seen.add(m)
        if any(LEX.divides(lm, m) is not None for lm in gb_leads):
            continue
        if parent is None:
            v = np.array(unit, dtype=F.dtype)
        else:
            v = matmul(vectors[parent].reshape(1, -1), mulmats[var], F)[0]
        red, combo = reduce(v)
        nz = np.nonzero(red)[0]
        if len(nz) == 0:
            # m = sum_k combo[k] * staircase[k] in the quotient
            terms = {m: F.one}
            for k, c in combo.items():
                if not F.is_zero(c):
                    terms[staircase[k]] = F.neg(c)
            gb.append(Poly(terms, F, ambient))
            gb_leads.append(m)
            continue
        piv = int(nz[0])
        inv = F.inv(red[piv] if F.kind == "rational" else int(red[piv]))
        red = F.reduce(red * inv)
        idx = len(staircase)
        new_combo = {k: F.neg(F.mul(c, inv)) for k, c in combo.items()}
        new_combo[idx] = F.add(new_combo.get(idx, F.zero), inv)
        # keep earlier entries reduced at the new pivot
        for p2, (r2, c2) in list(echelon.items()):
            c = r2[piv]
            if (c % F.p if F.kind == "prime" else c) != 0:
                r2 = F.reduce(r2 - red * c)
                c2 = dict(c2)
                for k, a in new_combo.items():
                    c2[k] = F.sub(c2.get(k, F.zero), F.mul(c, a))
                echelon[p2] = (r2, c2)
        echelon[piv] = (red, new_combo)
        staircase.append(m)
        vectors.append(v)
        for j in range(nvars):
            nm = tuple(e + (1 if i == j else 0) for i, e in enumerate(m))
            heapq.heappush(heap, (LEX.key(nm), nm, idx, j))
    if len(staircase) != dim:
        raise FGLMError(f"staircase has {len(staircase)} monomials but the quotient has dimension {dim}")
    gb.sort(key=lambda p: LEX.key(p.leading_monomial(LEX)))
    return LexGB(gb, staircase, nvars, F)


def _univariate_roots(coeffs: dict[int, int], p: int) -> list[int]:
    """All roots in F_p of ``sum c_e x^e`` by evaluation at every residue."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    deg = max(coeffs)
    for e in range(deg, -1, -1):
        acc = (acc * xs + coeffs.get(e, 0)) % p
    return np.nonzero(acc == 0)[0].tolist()


def find_roots(gb: LexGB, field: Field | None = None) -> list[tuple[int, ...]]:
    """All F_p-rational solutions of a zero-dimensional lex basis."""
    F = field or gb.field
    if not isinstance(F, PrimeField):
        raise FGLMError("root search needs a prime field")
    if F.p > MAX_ROOT_SEARCH_PRIME:
        raise FGLMError(
            f"p = {F.p} is too large for exhaustive root search (limit {MAX_ROOT_SEARCH_PRIME}); "
            "use a small prime or another solving pipeline"
        )
    n = gb.nvars
    p = F.p

    def extend(j, partial):
        # partial: values of x_{j+1}..x_{n-1}
        if j < 0:
            return [tuple(partial)]
        univariates = []
        for g in gb.polys:
            if any(m[i] for m in g.terms for i in range(j)):
                continue
            coeffs: dict[int, int] = {}
            for m, c in g.terms.items():
                v = c
                for i in range(j + 1, n):
                    if m[i]:
                        v = v * pow(partial[i - j - 1], m[i], p) % p
                coeffs[m[j]] = (coeffs.get(m[j], 0) + v) % p
            coeffs = {e: c for e, c in coeffs.items() if c}
            if coeffs:
                univariates.append(coeffs)
        if not univariates:
            raise FGLMError(f"variable {j} is unconstrained; the ideal is not zero-dimensional")
        if any(max(c) == 0 for c in univariates):
            return []  # a nonzero constant
        base = min(univariates, key=lambda c: max(c))
        out = []
        for x in _univariate_roots(base, p):
            if all(_eval_uni(c, x, p) == 0 for c in univariates):
                out.extend(extend(j - 1, [x] + list(partial)))
        return out

    return sorted(extend(n - 1, []))


def _eval_uni(coeffs, x, p):
    return sum(c * pow(x, e, p) for e, c in coeffs.items()) % p

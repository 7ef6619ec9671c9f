"""Labelled Macaulay matrices and exact reduced row echelon form."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

import numpy as np

from .field import Field
from .poly import Poly

REDUCED = ("reduced",)


class DegreeMismatchError(ValueError):
    pass


@dataclass
class MacaulayMatrix:
    """Rows are polynomials, columns are monomials in strictly decreasing order.

    ``data`` is a dense array over the field (int64 residues or Fractions).
    ``rank``/``zero_rows``/``pivots`` are filled in by :func:`rref`.
    """

    columns: list
    labels: list
    data: Any
    field: Field
    ambient: Any = None
    rank: int | None = None
    zero_rows: int | None = None
    pivots: list[int] | None = None
    meta: dict = dc_field(default_factory=dict)

    @property
    def shape(self):
        return (len(self.labels), len(self.columns))

    @property
    def nrows(self):
        return len(self.labels)

    @property
    def ncols(self):
        return len(self.columns)

    def row_poly(self, i: int) -> Poly:
        row = self.data[i]
        nz = np.nonzero(row)[0]
        return Poly._raw({self.columns[j]: row[j] if self.field.kind == "rational" else int(row[j])
                          for j in nz}, self.field, self.ambient)

    def polys(self) -> list[Poly]:
        """Nonzero row polynomials."""
        out = []
        for i in range(self.nrows):
            p = self.row_poly(i)
            if p:
                out.append(p)
        return out

    def leading_columns(self) -> list[int]:
        """Index of the leftmost nonzero entry of each nonzero row."""
        out = []
        for i in range(self.nrows):
            nz = np.nonzero(self.data[i])[0]
            if len(nz):
                out.append(int(nz[0]))
        return out

    def stats(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "rank": self.rank,
            "zero_rows": self.zero_rows,
        }

    def to_json(self) -> dict:
        """Sparse-triplet export."""
        entries = []
        rows, cols = np.nonzero(self.data)
        for i, j in zip(rows.tolist(), cols.tolist()):
            entries.append([i, j, self.field.to_str(self.data[i, j])])
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": entries,
            "labels": [_label_json(lb) for lb in self.labels],
            "columns": [list(c) for c in self.columns],
        }


def _label_json(label):
    return [list(x) if isinstance(x, tuple) else x for x in label]


def _degree_of(poly: Poly):
    ctx = getattr(poly.ambient, "ctx", None)
    if ctx is None or not hasattr(ctx, "degree"):
        return None
    degs = {ctx.degree(m) for m in poly.terms}
    if len(degs) > 1:
        raise DegreeMismatchError(f"row polynomial mixes degrees {sorted(degs)}")
    return degs.pop() if degs else None


def build_matrix(rows, order, columns=None, field: Field | None = None, check_degree=True) -> MacaulayMatrix:
    """Macaulay matrix of ``rows`` = list of ``(label, poly)``.

    Columns default to the union of supports, sorted decreasingly by ``order``.
    Given columns must contain every support monomial and be strictly decreasing.
    """
    rows = list(rows)
    if field is None:
        if not rows:
            raise ValueError("field required for an empty row list")
        field = rows[0][1].field
    ambient = rows[0][1].ambient if rows else None
    if check_degree:
        degs = {d for d in (_degree_of(p) for _, p in rows) if d is not None}
        if len(degs) > 1:
            raise DegreeMismatchError(f"rows have different degrees: {sorted(degs)}")
    if columns is None:
        support = set()
        for _, p in rows:
            support.update(p.terms)
        columns = sorted(support, key=order.key, reverse=True)
    else:
        columns = list(columns)
        keys = [order.key(c) for c in columns]
        if any(a <= b for a, b in zip(keys, keys[1:])):
            raise ValueError("columns are not strictly decreasing")
    index = {c: j for j, c in enumerate(columns)}
    data = field.array(len(rows), len(columns))
    for i, (_, p) in enumerate(rows):
        for m, c in p.terms.items():
            try:
                data[i, index[m]] = c
            except KeyError:
                raise ValueError(f"monomial {m} of row {i} is not a column") from None
    return MacaulayMatrix(list(columns), [lb for lb, _ in rows], data, field, ambient)


def echelonize(A, field: Field, reduced: bool = True):
    """In-place exact row echelon form of the array ``A``.

    Pivots are chosen leftmost column first, first available row. With
    ``reduced`` every pivot column is cleared above the pivot as well.
    Returns the list of pivot columns; rows ``len(pivots):`` end up zero.
    """
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = field.inv(A[r, c] if field.kind == "rational" else int(A[r, c]))
        A[r, c:] = field.reduce(A[r, c:] * inv)
        if reduced:
            others = np.nonzero(A[:, c])[0]
            others = others[others != r]
        else:
            others = r + 1 + np.nonzero(A[r + 1:, c])[0]
        if len(others):
            factors = A[others, c].reshape(-1, 1)
            A[np.ix_(others, np.arange(c, n))] = field.reduce(
                A[others, c:] - factors * A[r, c:].reshape(1, -1)
            )
        pivots.append(c)
        r += 1
    return pivots


def rref(M: MacaulayMatrix) -> MacaulayMatrix:
    """Reduced row echelon form; zero rows are dropped and counted."""
    A = M.data.copy()
    pivots = echelonize(A, M.field)
    rank = len(pivots)
    out = MacaulayMatrix(
        list(M.columns),
        [REDUCED] * rank,
        A[:rank],
        M.field,
        M.ambient,
        rank=rank,
        zero_rows=M.nrows - rank,
        pivots=pivots,
        meta=dict(M.meta),
    )
    M.rank = rank
    M.zero_rows = out.zero_rows
    return out


def rank(M: MacaulayMatrix) -> int:
    if M.rank is None:
        rref(M)
    return M.rank


def matmul(A, B, field: Field):
    """Exact matrix product over ``field``."""
    if A.shape[1] == 0:
        return field.array(A.shape[0], B.shape[1])
    if field.kind == "prime":
        inner = A.shape[1]
        if (field.p - 1) ** 2 * inner < 2**63:
            return np.mod(A.astype(np.int64) @ B.astype(np.int64), field.p)
        out = A.astype(object) @ B.astype(object)
        return np.mod(out, field.p).astype(np.int64)
    return A @ B


def identity(n: int, field: Field):
    M = field.array(n, n)
    for i in range(n):
        M[i, i] = field.one
    return M

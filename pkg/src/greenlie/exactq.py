"""
Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  Matrices are immutable; rows are
kept as ``{column: value}`` dicts so that the (very sparse) coboundary and
constraint matrices stay cheap, but the public surface is that of a dense
``rows x cols`` array.  Vectors are plain tuples of Fractions.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotASubspace, ScalarParseError

ZERO = Fraction(0)
ONE = Fraction(1)

_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def Q(x) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def parse_scalar(s: str) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str):
        raise ScalarParseError(f"expected 'a/b' string, got {s!r}")
    m = _SCALAR_RE.match(s)
    if not m:
        raise ScalarParseError(f"malformed scalar {s!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ScalarParseError(f"zero denominator in {s!r}")
    return Fraction(num, den)


def format_scalar(x) -> str:
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec(values: Iterable) -> tuple:
    return tuple(Q(v) for v in values)


def zero_vec(n: int) -> tuple:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> tuple:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def is_zero_vec(v: Sequence) -> bool:
    return not any(v)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    c = Q(c)
    return tuple(c * a for a in v)


def lincomb(coeffs, vectors, n):
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] += c * a
    return tuple(out)


class Matrix:
    """Immutable ``rows x cols`` matrix over Q."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            data = tuple({} for _ in range(rows))
        if len(data) != rows:
            raise DimensionMismatch(f"expected {rows} rows, got {len(data)}")
        self._data = tuple(data)

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = []
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged matrix rows")
            data.append({j: Q(x) for j, x in enumerate(r) if x})
        return cls(len(rows), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None):
        columns = list(columns)
        if rows is None:
            if not columns:
                raise DimensionMismatch("row count needed for an empty column list")
            rows = len(columns[0])
        data = [{} for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise DimensionMismatch("column length mismatch")
            for i, x in enumerate(col):
                if x:
                    data[i][j] = Q(x)
        return cls(rows, len(columns), data)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: dict):
        """Build from ``{(i, j): value}``; zero values are dropped."""
        data = [{} for _ in range(rows)]
        for (i, j), x in entries.items():
            if x:
                data[i][j] = Q(x)
        return cls(rows, cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, [{i: ONE} for i in range(n)])

    @classmethod
    def scalar(cls, n: int, c):
        c = Q(c)
        if not c:
            return cls(n, n)
        return cls(n, n, [{i: c} for i in range(n)])

    # access -------------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._data[i].get(j, ZERO)

    def row(self, i: int) -> tuple:
        r = self._data[i]
        return tuple(r.get(j, ZERO) for j in range(self.cols))

    def row_items(self, i: int):
        return self._data[i].items()

    def column(self, j: int) -> tuple:
        return tuple(r.get(j, ZERO) for r in self._data)

    def columns(self):
        cols = [[ZERO] * self.rows for _ in range(self.cols)]
        for i, r in enumerate(self._data):
            for j, x in r.items():
                cols[j][i] = x
        return [tuple(c) for c in cols]

    def column_items(self):
        """Sparse columns: list of ``{row: value}`` dicts."""
        cols = [{} for _ in range(self.cols)]
        for i, r in enumerate(self._data):
            for j, x in r.items():
                cols[j][i] = x
        return cols

    def tolist(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def nnz(self) -> int:
        return sum(len(r) for r in self._data)

    def is_zero(self) -> bool:
        return not any(self._data)

    # algebra ------------------------------------------------------------
    @property
    def T(self):
        data = [{} for _ in range(self.cols)]
        for i, r in enumerate(self._data):
            for j, x in r.items():
                data[j][i] = x
        return Matrix(self.cols, self.rows, data)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            od = other._data
            out = []
            for r in self._data:
                acc = {}
                for k, a in r.items():
                    for j, b in od[k].items():
                        acc[j] = acc.get(j, ZERO) + a * b
                out.append({j: x for j, x in acc.items() if x})
            return Matrix(self.rows, other.cols, out)
        v = other
        if len(v) != self.cols:
            raise DimensionMismatch(f"{self.shape} @ vector of length {len(v)}")
        out = []
        for r in self._data:
            s = ZERO
            for j, a in r.items():
                x = v[j]
                if x:
                    s += a * x
            out.append(s)
        return tuple(out)

    def _combine(self, other, sign):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")
        out = []
        for r1, r2 in zip(self._data, other._data):
            acc = dict(r1)
            for j, x in r2.items():
                acc[j] = acc.get(j, ZERO) + sign * x
            out.append({j: x for j, x in acc.items() if x})
        return Matrix(self.rows, self.cols, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Matrix(self.rows, self.cols, [{j: -x for j, x in r.items()} for r in self._data])

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        c = Q(c)
        if not c:
            return Matrix.zeros(self.rows, self.cols)
        return Matrix(self.rows, self.cols, [{j: c * x for j, x in r.items()} for r in self._data])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(sorted(r.items())) for r in self._data)))

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in self.row(i)) for i in range(min(self.rows, 8)))
        more = " ..." if self.rows > 8 else ""
        return f"Matrix({self.rows}x{self.cols}: [{body}{more}])"

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        cmap = {c: k for k, c in enumerate(cols)}
        data = []
        for i in rows:
            data.append({cmap[j]: x for j, x in self._data[i].items() if j in cmap})
        return Matrix(len(rows), len(cols), data)


def hstack(mats: Sequence[Matrix], rows: int | None = None) -> Matrix:
    mats = list(mats)
    if not mats:
        return Matrix.zeros(rows or 0, 0)
    n = mats[0].rows
    if any(m.rows != n for m in mats):
        raise DimensionMismatch("hstack row mismatch")
    data = [{} for _ in range(n)]
    off = 0
    for m in mats:
        for i, r in enumerate(m._data):
            for j, x in r.items():
                data[i][off + j] = x
        off += m.cols
    return Matrix(n, off, data)


def vstack(mats: Sequence[Matrix], cols: int | None = None) -> Matrix:
    mats = list(mats)
    if not mats:
        return Matrix.zeros(0, cols or 0)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise DimensionMismatch("vstack column mismatch")
    data = []
    for m in mats:
        data.extend(dict(r) for r in m._data)
    return Matrix(len(data), c, data)


def block_diag(*mats: Matrix) -> Matrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    data = []
    off = 0
    for m in mats:
        for r in m._data:
            data.append({off + j: x for j, x in r.items()})
        off += m.cols
    return Matrix(rows, cols, data)


# elimination -------------------------------------------------------------

class _Echelon:
    """Incremental Gauss-Jordan on sparse rows.

    ``pivots`` maps pivot column -> row, every row normalised to 1 at its
    pivot and zero in every other pivot column.  The reduced row echelon
    form is unique, so insertion order never changes the result.
    """

    __slots__ = ("pivots",)

    def __init__(self, pivots=None):
        self.pivots: dict[int, dict] = pivots if pivots is not None else {}

    def reduce(self, r: dict) -> dict:
        row = {j: x for j, x in r.items() if x}
        pivots = self.pivots
        for p in [j for j in row if j in pivots]:
            c = row.get(p)
            if not c:
                continue
            for j, x in pivots[p].items():
                y = row.get(j, ZERO) - c * x
                if y:
                    row[j] = y
                else:
                    row.pop(j, None)
        return row

    def add(self, r: dict) -> bool:
        row = self.reduce(r)
        if not row:
            return False
        p = min(row)
        inv = ONE / row[p]
        if inv != 1:
            row = {j: x * inv for j, x in row.items()}
        for prow in self.pivots.values():
            c = prow.get(p)
            if c:
                for j, x in row.items():
                    y = prow.get(j, ZERO) - c * x
                    if y:
                        prow[j] = y
                    else:
                        prow.pop(j, None)
        self.pivots[p] = row
        return True


def _echelon_rows(rows: Iterable[dict]):
    ech = _Echelon()
    for r in rows:
        ech.add(r)
    return ech.pivots


def rref(m: Matrix):
    """Reduced row echelon form and the (increasing) pivot columns."""
    pivots = _echelon_rows(m._data)
    order = sorted(pivots)
    data = [pivots[p] for p in order] + [{} for _ in range(m.rows - len(order))]
    return Matrix(m.rows, m.cols, data), order


def rank(m: Matrix) -> int:
    return len(_echelon_rows(m._data))


def kernel_basis(m: Matrix) -> "Subspace":
    pivots = _echelon_rows(m._data)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for p, row in pivots.items():
            x = row.get(f)
            if x:
                v[p] = -x
        basis.append(tuple(v))
    ker = Subspace(m.cols, basis)
    assert ker.dim + len(pivots) == m.cols, "rank-nullity"
    return ker


def solve(m: Matrix, b: Sequence):
    """A solution ``x`` of ``m x = b`` with zeros in free columns, or None."""
    if len(b) != m.rows:
        raise DimensionMismatch(f"rhs length {len(b)} != {m.rows} rows")
    n = m.cols
    rows = []
    for r, bi in zip(m._data, b):
        row = dict(r)
        if bi:
            row[n] = Q(bi)
        rows.append(row)
    pivots = _echelon_rows(rows)
    if n in pivots:
        return None
    x = [ZERO] * n
    for p, row in pivots.items():
        x[p] = row.get(n, ZERO)
    return tuple(x)


def column_space(m: Matrix) -> "Subspace":
    return Subspace(m.rows, m.columns())


class Subspace:
    """A subspace of Q^n held by its reduced-echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_rows")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        self.ambient_dim = ambient_dim
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in Q^{ambient_dim}")
            rows.append({j: Q(x) for j, x in enumerate(v) if x})
        piv = _echelon_rows(rows)
        self.pivots = tuple(sorted(piv))
        self._rows = tuple(piv[p] for p in self.pivots)
        self.basis = tuple(tuple(r.get(j, ZERO) for j in range(ambient_dim)) for r in self._rows)

    @classmethod
    def full(cls, n: int):
        return cls(n, (unit_vec(n, i) for i in range(n)))

    @classmethod
    def zero(cls, n: int):
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after clearing every pivot coordinate."""
        out = list(v)
        for p, row in zip(self.pivots, self._rows):
            c = out[p]
            if c:
                for j, x in row.items():
                    out[j] -= c * x
        return tuple(out)

    def __contains__(self, v) -> bool:
        return is_zero_vec(self.reduce(v))

    def coordinates(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` in the echelon basis (``v`` must lie in here)."""
        if v not in self:
            raise NotASubspace("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(v in self for v in other.basis)

    def matrix(self) -> Matrix:
        """Basis vectors as columns."""
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def __add__(self, other: "Subspace"):
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim})"


def quotient_dim(big: Subspace, small: Subspace):
    """``dim(big/small)`` plus vectors of ``big`` completing a basis of ``small``."""
    if big.ambient_dim != small.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    for v in small.basis:
        if v not in big:
            raise NotASubspace("small is not contained in big")
    reps = []
    ech = _Echelon({p: dict(r) for p, r in zip(small.pivots, small._rows)})
    for v in big.basis:
        if ech.add({j: x for j, x in enumerate(v) if x}):
            reps.append(v)
    assert len(reps) == big.dim - small.dim
    return len(reps), reps


class QuotientMap:
    """Projection Q^n -> Q^n / W onto coordinates at the non-pivot columns of W.

    The coset representatives are the unit vectors at those columns.
    """

    def __init__(self, relations: Subspace):
        self.relations = relations
        self.ambient_dim = relations.ambient_dim
        piv = set(relations.pivots)
        self.free = tuple(j for j in range(self.ambient_dim) if j not in piv)

    @property
    def dim(self):
        return len(self.free)

    def project(self, v: Sequence) -> tuple:
        r = self.relations.reduce(v)
        return tuple(r[j] for j in self.free)

    def lift(self, coords: Sequence) -> tuple:
        out = [ZERO] * self.ambient_dim
        for j, x in zip(self.free, coords):
            out[j] = Q(x)
        return tuple(out)

    def projection_matrix(self) -> Matrix:
        cols = [self.project(unit_vec(self.ambient_dim, j)) for j in range(self.ambient_dim)]
        return Matrix.from_columns(cols, self.dim)

    def lift_matrix(self) -> Matrix:
        return Matrix.from_columns([unit_vec(self.ambient_dim, j) for j in self.free], self.ambient_dim)

    def representatives(self):
        return [unit_vec(self.ambient_dim, j) for j in self.free]

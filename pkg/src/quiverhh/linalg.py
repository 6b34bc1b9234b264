"""Exact sparse linear algebra over the session field.

Vectors are ``dict`` objects mapping a coordinate index to a nonzero field
element.  Matrices store one such dict per row.  Everything is exact; the
elimination is Gauss-Jordan with pivots taken leftmost, so echelon forms and
kernel bases are canonical.
"""

from __future__ import annotations

from .field import QQ, Field


def axpy(y: dict, a, x: dict) -> dict:
    """In place ``y += a*x``; returns ``y``."""
    for j, v in x.items():
        t = y.get(j)
        t = a * v if t is None else t + a * v
        if t:
            y[j] = t
        else:
            y.pop(j, None)
    return y


def scaled(x: dict, a) -> dict:
    if not a:
        return {}
    return {j: a * v for j, v in x.items()}


class Echelon:
    """Incrementally maintained reduced row echelon form."""

    __slots__ = ("rows",)

    def __init__(self):
        self.rows = {}  # pivot column -> row with 1 at pivot, 0 at other pivots

    def reduce(self, v: dict) -> dict:
        out = dict(v)
        for p in [p for p in v if p in self.rows]:
            c = out.get(p)
            if c:
                axpy(out, -c, self.rows[p])
        return out

    def add(self, v: dict):
        """Insert ``v``; return its new pivot column, or ``None`` if dependent."""
        w = self.reduce(v)
        if not w:
            return None
        p = min(w)
        inv = 1 / w[p]
        w = {j: inv * x for j, x in w.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c:
                axpy(row, -c, w)
        self.rows[p] = w
        return p

    def __len__(self):
        return len(self.rows)

    def basis(self) -> list:
        return [self.rows[p] for p in sorted(self.rows)]

    def pivots(self) -> list:
        return sorted(self.rows)


class Matrix:
    """Sparse ``nrows x ncols`` matrix with exact entries."""

    __slots__ = ("nrows", "ncols", "rows", "field")

    def __init__(self, nrows: int, ncols: int, rows=None, field: Field = QQ):
        self.nrows, self.ncols, self.field = nrows, ncols, field
        if rows is None:
            rows = [{} for _ in range(nrows)]
        rows = [_coerce_vector(r, field) for r in rows]
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        for r in rows:
            if r and (min(r) < 0 or max(r) >= ncols):
                raise ValueError("column index out of range")
        self.rows = rows

    @classmethod
    def from_dense(cls, data, field: Field = QQ) -> "Matrix":
        data = [list(r) for r in data]
        ncols = len(data[0]) if data else 0
        rows = [{j: field(x) for j, x in enumerate(r) if x} for r in data]
        return cls(len(data), ncols, rows, field)

    @classmethod
    def from_entries(cls, nrows, ncols, entries: dict, field: Field = QQ) -> "Matrix":
        """Build from ``{(i, j): value}``."""
        rows = [{} for _ in range(nrows)]
        for (i, j), v in entries.items():
            if v:
                rows[i][j] = v
        return cls(nrows, ncols, rows, field)

    @classmethod
    def identity(cls, n, field: Field = QQ) -> "Matrix":
        return cls(n, n, [{i: field.one} for i in range(n)], field)

    def to_dense(self) -> list:
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ncols)] for r in self.rows]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def transpose(self) -> "Matrix":
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return Matrix(self.ncols, self.nrows, cols, self.field)

    T = property(transpose)

    def apply(self, v: dict) -> dict:
        """Matrix-vector product for a sparse column vector."""
        out = {}
        for i, r in enumerate(self.rows):
            s = None
            for j, x in r.items():
                y = v.get(j)
                if y:
                    s = x * y if s is None else s + x * y
            if s:
                out[i] = s
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        rows = []
        for r in self.rows:
            acc = {}
            for k, x in r.items():
                axpy(acc, x, other.rows[k])
            rows.append(acc)
        return Matrix(self.nrows, other.ncols, rows, self.field)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def _coerce_vector(v: dict, field: Field) -> dict:
    return {j: field(x) if isinstance(x, int) else x for j, x in v.items() if x}


def rank(m: Matrix) -> int:
    ech = Echelon()
    for r in m.rows:
        if r:
            ech.add(r)
    return len(ech)


def rref(m: Matrix) -> Matrix:
    ech = Echelon()
    for r in m.rows:
        if r:
            ech.add(r)
    basis = ech.basis()
    return Matrix(len(basis), m.ncols, basis, m.field)


class Subspace:
    """Subspace of ``field^ambient`` held as a canonical RREF basis."""

    __slots__ = ("ambient", "field", "_ech")

    def __init__(self, ambient: int, vectors=(), field: Field = QQ):
        self.ambient, self.field = ambient, field
        self._ech = Echelon()
        for v in vectors:
            v = _coerce_vector(v, field)
            if v:
                if max(v) >= ambient or min(v) < 0:
                    raise ValueError("vector outside the ambient space")
                self._ech.add(v)

    @property
    def dim(self) -> int:
        return len(self._ech)

    @property
    def basis(self) -> list:
        return [dict(v) for v in self._ech.basis()]

    @property
    def pivots(self) -> list:
        return self._ech.pivots()

    def reduce(self, v: dict) -> dict:
        return self._ech.reduce(v)

    def contains(self, v: dict) -> bool:
        return not self._ech.reduce(v)

    __contains__ = contains

    def coordinates(self, v: dict) -> list:
        """Coefficients of ``v`` on :attr:`basis`; raises if ``v`` is outside."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        z = self.field.zero
        return [v.get(p, z) for p in self.pivots]

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self._ech.basis())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.dim == other.dim and self.is_subspace_of(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        return Subspace(self.ambient, self.basis + other.basis, self.field)

    def intersect(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def _check_ambient(a, b):
    if a.ambient != b.ambient:
        raise ValueError(f"ambient dimension mismatch: {a.ambient} vs {b.ambient}")


def kernel_basis(m: Matrix) -> Subspace:
    """Right null space ``{x : m x = 0}`` with one basis vector per free column."""
    ech = Echelon()
    for r in m.rows:
        if r:
            ech.add(r)
    pivots = set(ech.rows)
    one = m.field.one
    # column -> list of (pivot, coefficient) for the rows touching that column
    touch = {}
    for p, row in ech.rows.items():
        for j, x in row.items():
            if j != p:
                touch.setdefault(j, []).append((p, x))
    vecs = []
    for f in range(m.ncols):
        if f in pivots:
            continue
        v = {f: one}
        for p, x in touch.get(f, ()):
            v[p] = -x
        vecs.append(v)
    return Subspace(m.ncols, vecs, m.field)


def image(m: Matrix) -> Subspace:
    """Column space of ``m`` inside ``field^nrows``."""
    return Subspace(m.nrows, [c for c in m.transpose().rows if c], m.field)


def solve(m: Matrix, b: dict):
    """Some ``x`` with ``m x = b`` (free variables zero), or ``None``."""
    n = m.ncols
    ech = Echelon()
    for i, r in enumerate(m.rows):
        row = dict(r)
        if b.get(i):
            row[n] = b[i]
        if row:
            ech.add(row)
    if n in ech.rows:
        return None
    x = {}
    for p, row in ech.rows.items():
        c = row.get(n)
        if c:
            x[p] = c
    return x


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    abasis = a.basis
    residuals = [b.reduce(v) for v in abasis]
    # columns of the residual matrix are indexed by the a-basis
    entries = {}
    for k, r in enumerate(residuals):
        for j, x in r.items():
            entries[(j, k)] = x
    mat = Matrix.from_entries(a.ambient, len(abasis), entries, a.field)
    out = []
    for lam in kernel_basis(mat).basis:
        v = {}
        for k, c in lam.items():
            axpy(v, c, abasis[k])
        out.append(v)
    return Subspace(a.ambient, out, a.field)


def dense_vector(v: dict, n: int, field: Field = QQ) -> list:
    z = field.zero
    return [v.get(i, z) for i in range(n)]

"""Reduced Hochschild cochains ``Hom_{A0^e}(r^{⊗i}, X)`` and their cohomology.

``r`` is the radical of ``A`` with basis the normal words of positive length;
over ``A0`` its tensor powers have the composable tuples of radical words as a
basis.  A cochain of degree ``i`` is a sparse vector over pairs
``(tuple, x)`` where ``x`` runs over the basis of ``e_s X e_t`` for the
endpoints ``s, t`` of the tuple; in degree 0 the tuple is empty and ``x``
runs over ``e_v X e_v``.

The differential is

    (df)(r1..r_{i+1}) = r1 f(r2..) + Σ_j (-1)^j f(..r_j r_{j+1}..) + (-1)^{i+1} f(..r_i) r_{i+1}

so in degree 0 ``(dx)(r) = r x - x r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import QuotientAlgebra
from .errors import InvariantViolation
from .linalg import Echelon, Matrix, Subspace, image, kernel_basis, solve
from .quiver import format_combination


class CoefficientBimodule:
    """A finite-dimensional ``A``-bimodule with a graded basis.

    ``left(a, x)`` and ``right(x, a)`` take an index of an ``A`` basis word and
    an index of an ``X`` basis element and return a coordinate dict over ``X``.
    """

    def __init__(self, algebra: QuotientAlgebra, ends, left, right, tag: str, labels=None):
        self.algebra = algebra
        self.ends = tuple(ends)
        self._left, self._right = left, right
        self.tag = tag
        self.labels = tuple(labels) if labels is not None else tuple(f"x{i}" for i in range(len(self.ends)))
        self._lcache, self._rcache = {}, {}
        by = {}
        for i, e in enumerate(self.ends):
            by.setdefault(e, []).append(i)
        self._by_ends = {k: tuple(v) for k, v in by.items()}

    @property
    def dim(self) -> int:
        return len(self.ends)

    def between(self, s: int, t: int) -> tuple:
        return self._by_ends.get((s, t), ())

    def left(self, a: int, x: int) -> dict:
        key = (a, x)
        out = self._lcache.get(key)
        if out is None:
            out = self._left(a, x) if self.algebra.basis[a].target == self.ends[x][0] else {}
            self._lcache[key] = out
        return out

    def right(self, x: int, a: int) -> dict:
        key = (x, a)
        out = self._rcache.get(key)
        if out is None:
            out = self._right(x, a) if self.ends[x][1] == self.algebra.basis[a].source else {}
            self._rcache[key] = out
        return out

    def format(self, v: dict) -> str:
        return format_combination((self.labels[i], c) for i, c in sorted(v.items()))

    # -- the three bimodules used for relation extensions -------------------

    @classmethod
    def regular(cls, A: QuotientAlgebra) -> "CoefficientBimodule":
        return cls(A, [A.ends(i) for i in range(A.dim)], A.mul_basis, A.mul_basis, "self",
                   [A.label(i) for i in range(A.dim)])

    @classmethod
    def extension_ideal(cls, ext) -> "CoefficientBimodule":
        """``E`` as a sub-bimodule of ``B``."""
        B = ext.B_alg
        pos = {j: k for k, j in enumerate(ext.E_basis)}

        def restrict(v):
            try:
                return {pos[j]: c for j, c in v.items()}
            except KeyError:
                raise InvariantViolation("E is not closed under the B actions") from None

        return cls(
            B,
            [B.ends(j) for j in ext.E_basis],
            lambda a, x: restrict(B.mul_basis(a, ext.E_basis[x])),
            lambda x, a: restrict(B.mul_basis(ext.E_basis[x], a)),
            "E",
            [B.label(j) for j in ext.E_basis],
        )

    @classmethod
    def core_quotient(cls, ext) -> "CoefficientBimodule":
        """``C`` as a ``B``-bimodule through ``p``."""
        B, C = ext.B_alg, ext.C_alg
        return cls(
            B,
            [C.ends(i) for i in range(C.dim)],
            lambda a, x: ext.project(B.mul_basis(a, ext.q_map[x])),
            lambda x, a: ext.project(B.mul_basis(ext.q_map[x], a)),
            "C",
            [C.label(i) for i in range(C.dim)],
        )


def composable_tuples(A: QuotientAlgebra, i: int) -> list:
    """Composable ``i``-tuples of radical words; ``[()]`` for ``i == 0``."""
    if i == 0:
        return [()]
    out = [(r,) for r in A.radical]
    for _ in range(i - 1):
        out = [t + (r,) for t in out for r in A.radical if A.basis[t[-1]].target == A.basis[r].source]
    return out


class ComplexSlice:
    """The cochain space of one degree, with its basis and index."""

    def __init__(self, A: QuotientAlgebra, X: CoefficientBimodule, degree: int):
        if degree < 0:
            raise ValueError("degree must be >= 0")
        self.A, self.X, self.degree = A, X, degree
        basis = []
        if degree == 0:
            for v in range(A.quiver.num_vertices):
                basis.extend(((), x) for x in X.between(v, v))
        else:
            for t in composable_tuples(A, degree):
                s, e = A.basis[t[0]].source, A.basis[t[-1]].target
                basis.extend((t, x) for x in X.between(s, e))
        self.basis = tuple(basis)
        self.index = {b: k for k, b in enumerate(basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def format(self, v: dict) -> str:
        """Group a cochain by tuple: ``a1 -> a1 - a2; b1 -> 0``."""
        A, X = self.A, self.X
        grouped = {}
        for k, c in v.items():
            t, x = self.basis[k]
            grouped.setdefault(t, {})[x] = c
        parts = []
        for t in sorted(grouped, key=lambda t: [A.basis[r] for r in t]):
            head = " ⊗ ".join(A.label(r) for r in t) if t else "1"
            parts.append(f"{head} -> {X.format(grouped[t])}")
        return "; ".join(parts) if parts else "0"


def differential(source: ComplexSlice, target: ComplexSlice) -> Matrix:
    """Matrix of ``d: C^i -> C^(i+1)`` with rows indexed by ``target``."""
    A, X = source.A, source.X
    i = source.degree
    if target.degree != i + 1:
        raise ValueError("target slice must be one degree higher")
    sign_last = -1 if (i + 1) % 2 else 1
    rows = [{} for _ in range(target.dim)]
    sidx, tidx = source.index, target.index
    seen = set()
    for (T, _x) in target.basis:
        if T in seen:
            continue
        seen.add(T)
        first, last = A.basis[T[0]], A.basis[T[-1]]
        # r1 f(r2 .. r_{i+1})
        sub = T[1:]
        for x in X.between(first.target, last.target):
            col = sidx.get((sub, x))
            if col is None:
                continue
            for y, c in X.left(T[0], x).items():
                _add(rows[tidx[(T, y)]], col, c)
        # f(.. r_j r_{j+1} ..)
        for j in range(1, i + 1):
            sign = -1 if j % 2 else 1
            for w, c in A.mul_basis(T[j - 1], T[j]).items():
                sub = T[:j - 1] + (w,) + T[j + 1:]
                for x in X.between(first.source, last.target):
                    col = sidx.get((sub, x))
                    if col is not None:
                        _add(rows[tidx[(T, x)]], col, sign * c)
        # f(r1 .. r_i) r_{i+1}
        sub = T[:-1]
        for x in X.between(first.source, last.source):
            col = sidx.get((sub, x))
            if col is None:
                continue
            for y, c in X.right(x, T[-1]).items():
                _add(rows[tidx[(T, y)]], col, sign_last * c)
    return Matrix(target.dim, source.dim, rows, A.field)


def _add(row: dict, col: int, c):
    t = row.get(col)
    t = c if t is None else t + c
    if t:
        row[col] = t
    else:
        row.pop(col, None)


@dataclass(eq=False)
class CohomologyReport:
    algebra: str
    coefficients: str
    degree: int
    dim: int
    cocycle_dim: int
    coboundary_dim: int
    representatives: list
    slice: ComplexSlice = field(repr=False)
    _coords: object = field(default=None, repr=False)

    def coords(self, z: dict) -> list:
        """Coordinates of the class of the cocycle ``z`` on :attr:`representatives`."""
        return self._coords(z)

    def is_coboundary(self, z: dict) -> bool:
        return not any(self.coords(z))

    def format_representatives(self) -> list:
        return [self.slice.format(v) for v in self.representatives]

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "coefficients": self.coefficients,
            "degree": self.degree,
            "dim": self.dim,
            "cocycle_dim": self.cocycle_dim,
            "coboundary_dim": self.coboundary_dim,
            "representatives": self.format_representatives(),
        }


class CochainComplex:
    """Slices, differentials and cohomology of ``A`` with coefficients ``X``."""

    def __init__(self, A: QuotientAlgebra, X: CoefficientBimodule, name: str = "A"):
        self.A, self.X, self.name = A, X, name
        self._slices, self._diffs, self._coh = {}, {}, {}

    def slice(self, i: int) -> ComplexSlice:
        s = self._slices.get(i)
        if s is None:
            s = self._slices[i] = ComplexSlice(self.A, self.X, i)
        return s

    def differential(self, i: int) -> Matrix:
        """``d: C^i -> C^(i+1)``."""
        m = self._diffs.get(i)
        if m is None:
            m = self._diffs[i] = differential(self.slice(i), self.slice(i + 1))
        return m

    def apply(self, i: int, v: dict) -> dict:
        return self.differential(i).apply(v)

    def is_cocycle(self, i: int, v: dict) -> bool:
        return not self.apply(i, v)

    def check_square_zero(self, i: int) -> bool:
        return (self.differential(i + 1) @ self.differential(i)).is_zero()

    def cohomology(self, i: int) -> CohomologyReport:
        rep = self._coh.get(i)
        if rep is not None:
            return rep
        sl = self.slice(i)
        kernel = kernel_basis(self.differential(i))
        if i == 0:
            bounds = Subspace(sl.dim, (), self.A.field)
        else:
            bounds = image(self.differential(i - 1))
        ech = Echelon()
        for v in bounds.basis:
            ech.add(v)
        reps = []
        for v in kernel.basis:
            if ech.add(v) is not None:
                reps.append(v)
        if len(reps) != kernel.dim - bounds.dim:
            raise InvariantViolation(f"coboundaries are not inside cocycles in degree {i}")
        coords = _class_coordinates(self, i, reps, bounds)
        rep = CohomologyReport(self.name, self.X.tag, i, len(reps), kernel.dim, bounds.dim, reps, sl, coords)
        self._coh[i] = rep
        return rep


def _class_coordinates(cx: CochainComplex, i: int, reps: list, bounds: Subspace):
    sl = cx.slice(i)
    cols = reps + bounds.basis
    rows = [{} for _ in range(sl.dim)]
    for j, v in enumerate(cols):
        for k, c in v.items():
            rows[k][j] = c
    m = Matrix(sl.dim, len(cols), rows, cx.A.field)
    zero = cx.A.field.zero

    def coords(z: dict) -> list:
        if not cx.is_cocycle(i, z):
            raise ValueError("not a cocycle")
        x = solve(m, z)
        if x is None:
            raise InvariantViolation("cocycle outside representatives + coboundaries")
        return [x.get(j, zero) for j in range(len(reps))]

    return coords


def cohomology(A: QuotientAlgebra, X: CoefficientBimodule, i: int, name: str = "A") -> CohomologyReport:
    return CochainComplex(A, X, name).cohomology(i)


# -- cochain maps between the complexes of a relation extension -------------


def _tuple_map(ext, t: tuple) -> tuple:
    return tuple(ext.q_map[r] for r in t)


def transfer_maps(ext, i: int, cx_C: CochainComplex, cx_BC: CochainComplex):
    """``(p^⊗i)*: C^i(C, C) -> C^i(B, C)`` and ``(q^⊗i)*`` back, as matrices.

    ``cx_C`` is ``C`` with coefficients in itself; ``cx_BC`` is ``B`` with
    coefficients in ``C`` (through ``p``).
    """
    sc, sb = cx_C.slice(i), cx_BC.slice(i)
    p_rows = [{} for _ in range(sb.dim)]
    q_rows = [{} for _ in range(sc.dim)]
    one = ext.B_alg.field.one
    for k, (t, x) in enumerate(sc.basis):
        j = sb.index[(_tuple_map(ext, t), x)]
        p_rows[j][k] = one
        q_rows[k][j] = one
    p_star = Matrix(sb.dim, sc.dim, p_rows, ext.B_alg.field)
    q_star = Matrix(sc.dim, sb.dim, q_rows, ext.B_alg.field)
    if q_star @ p_star != Matrix.identity(sc.dim, ext.B_alg.field):
        raise InvariantViolation(f"(q*)(p*) is not the identity in degree {i}")
    return p_star, q_star


def coefficient_map(source: ComplexSlice, target: ComplexSlice, f) -> Matrix:
    """Cochain map induced by a coefficient map ``f: x index -> coordinate dict``."""
    rows = [{} for _ in range(target.dim)]
    for k, (t, x) in enumerate(source.basis):
        for y, c in f(x).items():
            rows[target.index[(t, y)]][k] = c
    return Matrix(target.dim, source.dim, rows, source.A.field)


class ExtensionComplexes:
    """The five complexes that appear in the long exact sequences of ``0 -> E -> B -> C -> 0``."""

    def __init__(self, ext):
        self.ext = ext
        B, C = ext.B_alg, ext.C_alg
        self.XB = CoefficientBimodule.regular(B)
        self.XE = CoefficientBimodule.extension_ideal(ext)
        self.XBC = CoefficientBimodule.core_quotient(ext)
        self.XC = CoefficientBimodule.regular(C)
        self.BB = CochainComplex(B, self.XB, "B")
        self.BE = CochainComplex(B, self.XE, "B")
        self.BC = CochainComplex(B, self.XBC, "B")
        self.CC = CochainComplex(C, self.XC, "C")

    def complex(self, algebra: str, coeff: str) -> CochainComplex:
        table = {("B", "self"): self.BB, ("B", "B"): self.BB, ("B", "E"): self.BE, ("B", "C"): self.BC,
                 ("C", "self"): self.CC, ("C", "C"): self.CC}
        try:
            return table[(algebra, coeff)]
        except KeyError:
            raise ValueError(f"no complex for algebra {algebra} with coefficients {coeff}") from None

    def inclusion(self, i: int) -> Matrix:
        """``i_*: C^i(B, E) -> C^i(B, B)``."""
        E = self.ext.E_basis
        one = self.ext.B_alg.field.one
        return coefficient_map(self.BE.slice(i), self.BB.slice(i), lambda x: {E[x]: one})

    def projection(self, i: int) -> Matrix:
        """``p_*: C^i(B, B) -> C^i(B, C)``."""
        ext = self.ext
        one = ext.B_alg.field.one
        return coefficient_map(self.BB.slice(i), self.BC.slice(i),
                               lambda x: {ext.p_map[x]: one} if x in ext.p_map else {})

    def phi(self, i: int) -> Matrix:
        """``δ ↦ p δ q`` at cochain level: ``C^i(B, B) -> C^i(C, C)``."""
        _, q_star = transfer_maps(self.ext, i, self.CC, self.BC)
        return q_star @ self.projection(i)


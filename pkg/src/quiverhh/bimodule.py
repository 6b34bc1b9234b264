"""Homomorphisms of ``C``-bimodules between the summands ``E_j`` of ``E``.

A map ``f: E_i -> E_j`` is an unknown matrix on the summand bases.  Left and
right multiplication by the idempotents and arrows of ``C`` must commute with
``f``; arrows generate the radical, so these constraints already give every
bimodule map.  The solution space is the kernel of the stacked constraints.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvariantViolation
from .extension import ExtensionResult, Summand
from .hochschild import ExtensionComplexes
from .linalg import Matrix, Subspace, axpy, kernel_basis, rank, solve


@dataclass(frozen=True)
class BimoduleHomSpace:
    source: str
    target: str
    dim: int
    basis: tuple  # dense matrices, rows indexed by the target basis
    constraints: int = 0

    def as_dict(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "dim": self.dim,
            "basis": [[[str(c) for c in row] for row in m] for m in self.basis],
        }


def _actions(ext: ExtensionResult) -> list:
    """``C`` generators as ``B`` elements: idempotents, then old arrows."""
    B = ext.B_alg
    gens = [{i: B.field.one} for i in B.stationary]
    gens += [B.arrow_element(ext.old_arrow_map[a.id]) for a in ext.C.quiver.arrows]
    return [g for g in gens if g]


def _hom_space(ext: ExtensionResult, src: Subspace, tgt: Subspace, names=("E", "E")) -> BimoduleHomSpace:
    B = ext.B_alg
    one = B.field.one
    sb, tb = src.basis, tgt.basis
    m, n = len(sb), len(tb)
    if not m or not n:
        return BimoduleHomSpace(names[0], names[1], 0, (), 0)

    def unknown(l, k):  # entry f(e_k)_l
        return l * m + k

    rows = []
    for g in _actions(ext):
        for side in ("left", "right"):
            act = (lambda v: B.mul(g, v)) if side == "left" else (lambda v: B.mul(v, g))
            t_images = [act(t) for t in tb]
            for k, e in enumerate(sb):
                ge = act(e)
                # f(g e) - g f(e) = 0, written in B coordinates
                eq = {}
                if ge:
                    for kk, c in enumerate(src.coordinates(ge)):
                        if c:
                            for l in range(n):
                                for pos, d in tb[l].items():
                                    eq.setdefault(pos, {})
                                    axpy(eq[pos], c * d, {unknown(l, kk): one})
                for l in range(n):
                    for pos, d in t_images[l].items():
                        eq.setdefault(pos, {})
                        axpy(eq[pos], -d, {unknown(l, k): one})
                rows.extend(r for r in eq.values() if r)
    system = Matrix(len(rows), m * n, rows, B.field)
    ker = kernel_basis(system)
    zero = B.field.zero
    basis = tuple(
        tuple(tuple(v.get(unknown(l, k), zero) for k in range(m)) for l in range(n)) for v in ker.basis
    )
    return BimoduleHomSpace(names[0], names[1], ker.dim, basis, len(rows))


def bimodule_hom(Ei: Summand, Ej: Summand, ext: ExtensionResult) -> BimoduleHomSpace:
    """``Hom_{C^e}(E_i, E_j)``."""
    return _hom_space(ext, Ei.space, Ej.space, (_tag(ext, Ei), _tag(ext, Ej)))


def _tag(ext, s: Summand) -> str:
    return "E[" + ",".join(ext.B.quiver.arrows[a].label for a in s.arrows) + "]"


def _E_space(ext: ExtensionResult) -> Subspace:
    one = ext.B_alg.field.one
    return Subspace(ext.B_alg.dim, [{j: one} for j in ext.E_basis], ext.B_alg.field)


def endomorphisms(ext: ExtensionResult) -> BimoduleHomSpace:
    """``End_{C^e}(E)`` on the word basis of ``E``."""
    return _hom_space(ext, _E_space(ext), _E_space(ext))


def end_to_h1(ext: ExtensionResult, cx: ExtensionComplexes | None = None, end=None) -> int:
    """Rank of ``End_{C^e}(E) -> H¹(B, E)``, ``f ↦ [c + e ↦ f(e)]``.

    Each image is checked to be a cocycle; the rank should equal ``dim End``.
    """
    cx = cx or ExtensionComplexes(ext)
    end = end or endomorphisms(ext)
    if not end.dim:
        return 0
    sl = cx.BE.slice(1)
    pos = {j: k for k, j in enumerate(ext.E_basis)}  # B index -> X index
    h1 = cx.BE.cohomology(1)
    cols = []
    for mat in end.basis:
        v = {}
        for k, w in enumerate(ext.E_basis):
            # E_space's basis is the unit vectors in E_basis order
            for l in range(len(ext.E_basis)):
                c = mat[l][k]
                if c:
                    v[sl.index[((w,), pos[ext.E_basis[l]])]] = c
        if not cx.BE.is_cocycle(1, v):
            raise InvariantViolation("an endomorphism of E does not give a derivation B -> E")
        cols.append(h1.coords(v))
    rows = [{j: c for j, c in enumerate(col) if c} for col in cols]
    return rank(Matrix(len(rows), h1.dim, rows, ext.B_alg.field))


@dataclass(eq=False)
class BrickReport:
    labels: list
    table: list  # dim Hom(E_i, E_j), row i, column j
    homs: dict = field(repr=False, default_factory=dict)
    n: int = 0
    dim_end: int = 0
    h1: int = 0
    end_rank_in_h1: int = 0
    identities_in_end: bool = True

    @property
    def orthogonal_bricks(self) -> bool:
        return all(d == (1 if i == j else 0) for i, row in enumerate(self.table) for j, d in enumerate(row))

    @property
    def end_is_sum(self) -> bool:
        return self.dim_end == sum(map(sum, self.table))

    @property
    def bounds_hold(self) -> bool:
        return self.n <= self.dim_end <= self.h1

    @property
    def exceeds_n(self) -> bool:
        """``dim H¹(B,E) > n``: a data point for the bricks question, not a failure."""
        return self.h1 > self.n

    def as_dict(self) -> dict:
        return {
            "summands": self.labels,
            "hom_dims": self.table,
            "orthogonal_bricks": self.orthogonal_bricks,
            "n": self.n,
            "dim_End_E": self.dim_end,
            "dim_H1_B_E": self.h1,
            "End_rank_in_H1": self.end_rank_in_h1,
            "End_is_sum_of_Homs": self.end_is_sum,
            "identities_in_End": self.identities_in_end,
            "n_le_End_le_H1": self.bounds_hold,
            "H1_exceeds_n": self.exceeds_n,
        }


def brick_report(ext: ExtensionResult, cx: ExtensionComplexes | None = None) -> BrickReport:
    cx = cx or ExtensionComplexes(ext)
    S = ext.summands
    homs = {(i, j): bimodule_hom(S[i], S[j], ext) for i in range(len(S)) for j in range(len(S))}
    table = [[homs[(i, j)].dim for j in range(len(S))] for i in range(len(S))]
    end = endomorphisms(ext)
    h1 = cx.BE.cohomology(1).dim
    return BrickReport(
        labels=[_tag(ext, s) for s in S],
        table=table,
        homs=homs,
        n=ext.n,
        dim_end=end.dim,
        h1=h1,
        end_rank_in_h1=end_to_h1(ext, cx, end),
        identities_in_end=_identities_in(ext, end),
    )


def _identities_in(ext: ExtensionResult, end: BimoduleHomSpace) -> bool:
    """The projection onto each summand lies in the span of ``End`` (word basis)."""
    B = ext.B_alg
    d = len(ext.E_basis)
    pos = {j: k for k, j in enumerate(ext.E_basis)}
    span = Subspace(d * d, [_flat(m, d) for m in end.basis], B.field)
    cols = [v for s in ext.summands for v in s.basis]
    rows = [{} for _ in range(B.dim)]
    for j, v in enumerate(cols):
        for i, c in v.items():
            rows[i][j] = c
    stacked = Matrix(B.dim, len(cols), rows, B.field)
    decomp = {w: solve(stacked, {w: B.field.one}) for w in ext.E_basis}
    off = 0
    for s in ext.summands:
        mat = {}
        for k, w in enumerate(ext.E_basis):
            img = {}
            for t, b in enumerate(s.basis):
                c = decomp[w].get(off + t)
                if c:
                    axpy(img, c, b)
            for j, c in img.items():
                mat[pos[j] * d + k] = c
        if not span.contains(mat):
            return False
        off += s.dim
    return True


def _flat(m, d) -> dict:
    return {l * d + k: c for l, row in enumerate(m) for k, c in enumerate(row) if c}

"""The sequence ``0 -> H¹(B,E) -> HH¹(B) -> HH¹(C) -> 0`` on concrete inputs.

``ι`` is induced by the inclusion ``E -> B``, ``φ`` sends the class of ``δ``
to the class of ``p δ q``, and ``p̄`` is induced by the projection ``B -> C``
on coefficients.  Surjectivity of ``φ`` is witnessed constructively: each
derivation of ``C`` is extended to ``B`` through the reduction certificate of
``δ(r)`` over the relation system.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field

from .algebra import QuotientAlgebra
from .errors import CertificateShapeError, InvariantViolation, QuiverHHError
from .extension import ExtensionResult, cyclic_derivative, cyclic_reduce
from .groebner import GroebnerBasis, complete
from .hochschild import ComplexSlice, ExtensionComplexes
from .linalg import Matrix, Subspace, kernel_basis, rank
from .quiver import Path, PathVector, Quiver


@dataclass(frozen=True)
class Derivation:
    """A ``kQ0``-bilinear derivation of ``kQ`` given by its values on arrows."""

    quiver: Quiver
    values: dict  # arrow id -> PathVector from s(arrow) to t(arrow)

    def value(self, arrow_id: int) -> PathVector:
        return self.values.get(arrow_id, PathVector())

    def apply_path(self, p: Path) -> PathVector:
        """Leibniz: ``δ(a1..an) = Σ a1..a_{k-1} δ(a_k) a_{k+1}..an``."""
        acc = PathVector()
        for k, a in enumerate(p.arrows):
            d = self.value(a)
            if not d:
                continue
            u = p.subpath(0, k, self.quiver)
            v = p.subpath(k + 1, p.length, self.quiver)
            acc = acc + PathVector.from_path(u, 1) * d * PathVector.from_path(v, 1)
        return acc

    def apply(self, x: PathVector) -> PathVector:
        acc = PathVector()
        for p, c in x.items():
            acc = acc + self.apply_path(p).scale(c)
        return acc

    @classmethod
    def from_cochain(cls, A: QuotientAlgebra, sl: ComplexSlice, v: dict) -> "Derivation":
        """Arrow values of a 1-cochain with coefficients in ``A`` itself."""
        if sl.degree != 1:
            raise ValueError("need a degree-1 slice")
        vals = {}
        for k, c in v.items():
            (r,), x = sl.basis[k]
            w = A.basis[r]
            if w.length == 1:
                a = w.arrows[0]
                vals[a] = vals.get(a, PathVector()) + PathVector.from_path(A.basis[x], c)
        return cls(A.quiver, vals)

    def to_cochain(self, A: QuotientAlgebra, sl: ComplexSlice) -> dict:
        """Values on every radical word, in normal form."""
        out = {}
        for r in A.radical:
            for x, c in A.element(self.apply_path(A.basis[r])).items():
                k = sl.index[((r,), x)]
                out[k] = c
        return out

    def preserves(self, gb: GroebnerBasis, relations) -> bool:
        return all(gb.contains(self.apply(r)) for r in relations)

    def format(self) -> str:
        q = self.quiver
        parts = [f"{q.arrows[a].label} -> {v.format(q)}" for a, v in sorted(self.values.items()) if v]
        return "; ".join(parts) if parts else "0"


def inner_derivation(A: QuotientAlgebra, x: dict) -> Derivation:
    """``[x, -]`` on arrows (``δ(a) = x a - a x``)."""
    vals = {}
    for a in A.quiver.arrows:
        ai = A.arrow_element(a.id)
        d = A.mul(x, ai)
        for k, c in A.mul(ai, x).items():
            d[k] = d.get(k, 0) - c
        d = {k: c for k, c in d.items() if c}
        vals[a.id] = A.to_path_vector(d)
    return Derivation(A.quiver, vals)


_relation_gb = weakref.WeakKeyDictionary()


@dataclass(eq=False)
class ExtendedDerivation:
    base: Derivation
    extended: Derivation
    terms: dict  # relation index i -> [(b, u, j, v)] with δ(r_i) = Σ b u r_j v
    potential_zero: bool
    derivatives_in_ideal: bool

    @property
    def ok(self) -> bool:
        return self.potential_zero and self.derivatives_in_ideal


def relation_groebner(ext: ExtensionResult) -> GroebnerBasis:
    """Gröbner basis of ``C``'s ideal whose provenance refers to the relation system."""
    gb = _relation_gb.get(ext)
    if gb is None:
        pres = ext.C.with_relations(ext.relation_system.relations)
        gb = complete(pres, max(ext.C_alg.groebner.completion_degree, pres.max_relation_length()))
        _relation_gb[ext] = gb
    return gb


def extend_derivation(delta: Derivation, ext: ExtensionResult) -> ExtendedDerivation:
    """``δ̃`` on ``B``: ``δ`` on old arrows and ``-Σ b v γ_i u`` on ``γ_j``.

    The sum runs over the terms ``b u r_j v`` of the expansions
    ``δ(r_i) = Σ b u r_{j} v`` read off reduction certificates.
    """
    R = ext.relation_system.relations
    gb = relation_groebner(ext)
    qb, qc = ext.B.quiver, ext.C.quiver
    omap = ext.old_arrow_map

    def to_B(p: Path) -> Path:
        return p if p.is_stationary else Path(p.source, p.target, tuple(omap[a] for a in p.arrows))

    terms = {}
    new_vals = {g: {} for g in ext.new_arrows}
    for i, r in enumerate(R):
        d = delta.apply(r)
        cert = gb.normal_form(d)
        if cert.normal_form:
            raise InvariantViolation(f"δ(r{i + 1}) = {d.format(qc)} is not in the ideal")
        expansion = cert.over_relations()
        check = PathVector()
        for b, u, j, v in expansion:
            check = check + (PathVector.from_path(u, b) * R[j] * PathVector.from_path(v, 1))
        if check != d:
            raise CertificateShapeError(f"expansion of δ(r{i + 1}) over the relation system does not re-expand")
        terms[i] = expansion
        gi = qb.arrow_path(ext.new_arrows[i])
        for b, u, j, v in expansion:
            p = to_B(v).compose(gi).compose(to_B(u))
            acc = new_vals[ext.new_arrows[j]]
            acc[p] = acc[p] - b if p in acc else -b
    vals = {}
    for a, val in delta.values.items():
        vals[omap[a]] = PathVector({to_B(p): c for p, c in val.items()})
    for g, acc in new_vals.items():
        vals[g] = PathVector(acc)
    ext_delta = Derivation(qb, vals)

    image_w = PathVector()
    for cyc, c in ext.potential.items():
        image_w = image_w + ext_delta.apply_path(cyc).scale(c)
    potential_zero = not cyclic_reduce(qb, image_w)
    in_ideal = all(
        ext.B_alg.groebner.contains(ext_delta.apply(cyclic_derivative(ext.potential, a.id)))
        for a in qb.arrows
    )
    return ExtendedDerivation(delta, ext_delta, terms, potential_zero, in_ideal)


# -- the verification report -------------------------------------------------


@dataclass
class Assertion:
    name: str
    passed: bool
    detail: str = ""


@dataclass(eq=False)
class SESReport:
    dims: dict
    phi: list  # rows: HH¹(C) coordinates, columns: HH¹(B) representatives
    iota: list  # rows: HH¹(B) coordinates, columns: H¹(B,E) representatives
    pbar: list  # rows: H¹(B,C) coordinates, columns: HH¹(B) representatives
    assertions: list
    witnesses: list = field(default_factory=list)
    field_name: str = "Q"

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def failed(self) -> list:
        return [a.name for a in self.assertions if not a.passed]


def _columns_matrix(cols: list, nrows: int, fld) -> Matrix:
    rows = [{} for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, c in enumerate(col):
            if c:
                rows[i][j] = c
    return Matrix(nrows, len(cols), rows, fld)


def _dense(m: Matrix) -> list:
    return [[str(x) for x in row] for row in m.to_dense()]


def verify_ses(ext: ExtensionResult, cx: ExtensionComplexes | None = None) -> SESReport:
    """Check exactness of ``0 -> H¹(B,E) -> HH¹(B) -> HH¹(C) -> 0`` and the dimension count."""
    cx = cx or ExtensionComplexes(ext)
    fld = ext.B_alg.field
    hhB, hhC = cx.BB.cohomology(1), cx.CC.cohomology(1)
    hBE, hBC = cx.BE.cohomology(1), cx.BC.cohomology(1)
    dims = {"HH1(B)": hhB.dim, "HH1(C)": hhC.dim, "H1(B,E)": hBE.dim, "H1(B,C)": hBC.dim, "n": ext.n}
    assertions = []

    for key in ("jacobian_ideal", "relation_system", "strongly_minimal"):
        if key in ext.checks:
            ok = bool(ext.checks[key])
            assertions.append(Assertion(key.replace("_", "-"), ok, "" if ok else _check_detail(key)))

    square = all(c.check_square_zero(i) for c in (cx.BB, cx.BE, cx.BC, cx.CC) for i in (0, 1))
    assertions.append(Assertion("complex", square, "" if square else "d∘d != 0"))

    phi_m = cx.phi(1)
    phi_cols = [hhC.coords(phi_m.apply(z)) for z in hhB.representatives]
    Phi = _columns_matrix(phi_cols, hhC.dim, fld)
    inc = cx.inclusion(1)
    iota_cols = [hhB.coords(inc.apply(z)) for z in hBE.representatives]
    Iota = _columns_matrix(iota_cols, hhB.dim, fld)
    proj = cx.projection(1)
    pbar_cols = [hBC.coords(proj.apply(z)) for z in hhB.representatives]
    Pbar = _columns_matrix(pbar_cols, hBC.dim, fld)

    r_iota = rank(Iota)
    assertions.append(Assertion("iota-injective", r_iota == hBE.dim, f"rank {r_iota} of {hBE.dim}"))
    ker_phi = kernel_basis(Phi)
    im_iota = Subspace(hhB.dim, [dict((i, c) for i, c in enumerate(col) if c) for col in iota_cols], fld)
    ok = im_iota == ker_phi
    assertions.append(Assertion("image-iota-equals-kernel-phi", ok, f"dim im ι = {im_iota.dim}, dim ker φ = {ker_phi.dim}"))
    ker_pbar = kernel_basis(Pbar)
    ok = ker_pbar == ker_phi
    assertions.append(Assertion("kernel-phi-equals-kernel-pbar", ok, f"dim ker p̄ = {ker_pbar.dim}"))
    r_phi = rank(Phi)
    assertions.append(Assertion("phi-surjective", r_phi == hhC.dim, f"rank {r_phi} of {hhC.dim}"))

    witnesses, wit_ok, wit_detail = _extension_witnesses(ext, cx)
    assertions.append(Assertion("extension-witnesses", wit_ok, wit_detail))

    ok = hhB.dim == hhC.dim + hBE.dim
    assertions.append(Assertion("dimension-count", ok, f"{hhB.dim} = {hhC.dim} + {hBE.dim}" if ok else
                                f"{hhB.dim} != {hhC.dim} + {hBE.dim}"))
    ok = hBE.dim >= ext.n
    assertions.append(Assertion("kernel-bound", ok, f"dim H1(B,E) = {hBE.dim}, n = {ext.n}"))

    return SESReport(dims, _dense(Phi), _dense(Iota), _dense(Pbar), assertions, witnesses, fld.name)


def _check_detail(key):
    return {
        "jacobian_ideal": "the given ideal differs from the ideal of cyclic derivatives of the recovered potential",
        "relation_system": "the attached relations are not an irredundant generating set of the core's ideal",
        "strongly_minimal": "an attached relation is not strongly minimal",
    }[key]


def _extension_witnesses(ext: ExtensionResult, cx: ExtensionComplexes):
    hhC, hhB = cx.CC.cohomology(1), cx.BB.cohomology(1)
    phi_m = cx.phi(1)
    out = []
    all_ok = True
    problems = []
    for k, z in enumerate(hhC.representatives):
        delta = Derivation.from_cochain(ext.C_alg, cx.CC.slice(1), z)
        entry = {"index": k, "delta": delta.format()}
        try:
            ed = extend_derivation(delta, ext)
        except QuiverHHError as exc:
            entry.update(ok=False, error=str(exc))
            out.append(entry)
            all_ok = False
            problems.append(f"#{k}: {exc}")
            continue
        f = ed.extended.to_cochain(ext.B_alg, cx.BB.slice(1))
        cocycle = cx.BB.is_cocycle(1, f)
        back = None
        if cocycle:
            image = phi_m.apply(f)
            back = hhC.coords(image)
            target = [ext.C_alg.field.one if j == k else ext.C_alg.field.zero for j in range(hhC.dim)]
            lifts = back == target
        else:
            lifts = False
        ok = ed.ok and cocycle and lifts
        entry.update(
            ok=ok, extended=ed.extended.format(), potential_zero=ed.potential_zero,
            derivatives_in_ideal=ed.derivatives_in_ideal, cocycle=cocycle, phi_returns_class=lifts,
            class_in_HH1B=[str(c) for c in hhB.coords(f)] if cocycle else None,
        )
        out.append(entry)
        if not ok:
            all_ok = False
            problems.append(f"#{k}")
    detail = f"{len(out)} representatives extended" if all_ok else "failed: " + ", ".join(problems)
    return out, all_ok, detail

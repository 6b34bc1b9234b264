"""Relation extensions ``B = C ⋉ E`` built from a presentation of ``C``.

Every relation ``r`` of a strongly minimal system ``R`` of ``C`` gets a new
arrow ``γ_r`` running against it, the potential is ``W = Σ r γ_r`` and the
relations of ``B`` are the cyclic derivatives of ``W``.  A presentation of
``B`` can also be given directly, with its new arrows flagged; the core ``C``
and the potential are then recovered from it and checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import QuotientAlgebra
from .errors import InvariantViolation, NotACycle, NotTriangular, QuiverHHError
from .groebner import complete
from .linalg import Subspace
from .presentation import BoundQuiverPresentation
from .quiver import NEW, OLD, Arrow, Path, PathVector, Quiver, format_combination, term_key, validate_triangular
from .relations import RelationSystem, circuits, is_relation_system, select_relation_system, strongly_minimal_check


# -- potentials --------------------------------------------------------------


def cyclic_canonical(c: Path, quiver: Quiver) -> Path:
    """The rotation of an oriented cycle with the least arrow-id sequence."""
    if not c.is_cycle:
        raise NotACycle(f"{quiver.format_path(c)} is not an oriented cycle")
    arr = c.arrows
    best = min(arr[i:] + arr[:i] for i in range(len(arr)))
    v = quiver.arrows[best[0]].source
    return Path(v, v, best)


def cyclic_reduce(quiver: Quiver, x) -> dict:
    """Sum the terms of ``x`` (cycles) by canonical rotation, dropping zeros."""
    out = {}
    items = x.items()
    for p, c in items:
        k = cyclic_canonical(p, quiver)
        t = out.get(k)
        t = c if t is None else t + c
        if t:
            out[k] = t
        else:
            out.pop(k, None)
    return out


def is_cyclically_zero(quiver: Quiver, x) -> bool:
    return not cyclic_reduce(quiver, x)


class Potential:
    """A linear combination of oriented cycles stored in canonical rotation."""

    def __init__(self, quiver: Quiver, terms=None):
        self.quiver = quiver
        self._terms = dict(sorted(cyclic_reduce(quiver, dict(terms or {})).items(), key=lambda kv: term_key(kv[0])))
        self.groups = ()

    @classmethod
    def from_relations(cls, quiver: Quiver, pairs) -> "Potential":
        """``W = Σ r γ_r`` from ``[(relation, new arrow id)]``."""
        acc = {}
        for r, g in pairs:
            gp = quiver.arrow_path(g)
            for p, c in r.items():
                cyc = p.compose(gp)
                if cyc is None:
                    raise InvariantViolation("new arrow is not antiparallel to its relation")
                acc[cyc] = acc[cyc] + c if cyc in acc else c
        w = cls(quiver, acc)
        w.groups = tuple((r, g) for r, g in pairs)
        return w

    @property
    def cycles(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Potential):
            return NotImplemented
        return self._terms == other._terms

    def derivative(self, arrow) -> PathVector:
        return cyclic_derivative(self, arrow)

    def format(self) -> str:
        q = self.quiver
        return format_combination((q.format_path(p), c) for p, c in self._terms.items())

    def format_grouped(self) -> str:
        """``(r1)*g1 + (r2)*g2`` in construction order when available."""
        if not self.groups:
            return self.format()
        q = self.quiver
        parts = []
        for r, g in self.groups:
            body = r.format(q)
            parts.append((f"({body})*{q.arrows[g].label}" if len(r) > 1 else f"{body}*{q.arrows[g].label}"))
        return " + ".join(parts)

    def __repr__(self):
        return f"Potential({self.format()})"


def cyclic_derivative(w, arrow) -> PathVector:
    """``∂_β`` of a potential or of a ``(quiver, {cycle: coef})`` pair.

    Each occurrence of ``β`` contributes the rest of the cycle read from the
    arrow after ``β`` round to the arrow before it.
    """
    if isinstance(w, Potential):
        quiver, terms = w.quiver, w.items()
    else:
        quiver, terms = w[0], w[1].items()
    b = arrow if isinstance(arrow, int) else arrow.id
    acc = {}
    for cyc, c in terms:
        arr = cyc.arrows
        for i, a in enumerate(arr):
            if a != b:
                continue
            rest = arr[i + 1:] + arr[:i]
            if not rest:
                p = Path.stationary(quiver.arrows[b].target)
            else:
                p = Path(quiver.arrows[rest[0]].source, quiver.arrows[rest[-1]].target, rest)
            acc[p] = acc[p] + c if p in acc else c
    return PathVector(acc)


# -- extension data ---------------------------------------------------------


@dataclass(frozen=True)
class Summand:
    """``E_j = C γ C`` for one class of new arrows."""

    arrows: tuple
    space: Subspace  # inside B's coordinate space
    labels: tuple  # formatted basis elements

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> list:
        return self.space.basis


@dataclass(frozen=True, eq=False)
class ExtensionResult:
    C: BoundQuiverPresentation
    B: BoundQuiverPresentation
    C_alg: QuotientAlgebra
    B_alg: QuotientAlgebra
    potential: Potential
    relation_system: RelationSystem
    new_arrows: tuple  # B arrow id attached to each relation of the system
    old_arrow_map: tuple  # C arrow id -> B arrow id
    q_map: tuple  # C basis index -> B basis index
    p_map: dict  # B basis index (old words only) -> C basis index
    E_basis: tuple  # B basis indices of words with one new arrow
    classes: tuple  # tuples of new arrow ids
    summands: tuple
    checks: dict = field(default_factory=dict)
    origin: str = "C"

    @property
    def n(self) -> int:
        return len(self.classes)

    @property
    def dim_E(self) -> int:
        return len(self.E_basis)

    @property
    def is_trivial(self) -> bool:
        return not self.new_arrows

    def derivatives(self) -> list:
        """``[(arrow, ∂_arrow W)]`` for every arrow with a nonzero derivative."""
        out = []
        for a in self.B.quiver.arrows:
            d = cyclic_derivative(self.potential, a.id)
            if d:
                out.append((a, d))
        return out

    def class_labels(self) -> list:
        q = self.B.quiver
        return [[q.arrows[a].label for a in cls] for cls in self.classes]

    def c_word_in_B(self, p: Path) -> Path:
        if p.is_stationary:
            return p
        return Path(p.source, p.target, tuple(self.old_arrow_map[a] for a in p.arrows))

    def project(self, v: dict) -> dict:
        """``p``: drop the E-part of a B element and read it in C."""
        return {self.p_map[i]: c for i, c in v.items() if i in self.p_map}

    def include(self, v: dict) -> dict:
        """``q``: a C element as a B element."""
        return {self.q_map[i]: c for i, c in v.items()}


def _fresh_labels(quiver: Quiver, names, count):
    taken = {a.label for a in quiver.arrows}
    out = []
    k = 1
    for i in range(count):
        name = names[i] if i < len(names) else None
        if name is None:
            while f"g{k}" in taken:
                k += 1
            name = f"g{k}"
        if name in taken:
            raise InvariantViolation(f"new arrow label {name} already used")
        taken.add(name)
        out.append(name)
    return out


def check_tilted_core(pres: BoundQuiverPresentation):
    tri = validate_triangular(pres.quiver, "old")
    if not tri.is_triangular:
        raise NotTriangular(
            f"oriented cycle {pres.quiver.format_path(tri.cycle)}; a tilted core must be triangular",
            tri.cycle,
        )


def build_extension(C_pres: BoundQuiverPresentation, R: RelationSystem | None = None,
                    max_degree: int | None = None) -> ExtensionResult:
    """Relation extension of ``C_pres`` by the system ``R`` (chosen if absent)."""
    if C_pres.has_new_arrows:
        raise ValueError("C presentation must not contain new arrows; use extension_from_B")
    check_tilted_core(C_pres)
    C_pres.field.warn_if_char_two("relation extension")
    C_alg = QuotientAlgebra(C_pres, max_degree=max_degree)
    if R is None:
        R = select_relation_system(C_alg)
    qc = C_pres.quiver
    labels = _fresh_labels(qc, list(R.names), len(R.relations))
    arrows = list(qc.arrows)
    new_ids = []
    for r, lab in zip(R.relations, labels):
        x, y = r.endpoints()
        new_ids.append(len(arrows))
        arrows.append(Arrow(len(arrows), lab, y, x, NEW))
    qb = Quiver(qc.vertices, tuple(arrows))
    W = Potential.from_relations(qb, list(zip(R.relations, new_ids)))
    rels, names = [], []
    for a in qb.arrows:
        d = cyclic_derivative(W, a.id)
        if d:
            rels.append(d)
            names.append(a.label if a.is_new else None)
    B_pres = BoundQuiverPresentation(qb, tuple(rels), C_pres.field, tuple(names))
    old_map = tuple(range(len(qc.arrows)))
    return _assemble(C_pres, C_alg, R, B_pres, W, tuple(new_ids), old_map, max_degree, "C")


def old_core(B_pres: BoundQuiverPresentation):
    """The presentation of ``B / <new arrows>`` on the old arrows.

    Returns ``(C presentation, old arrow map, projected relations by index)``.
    """
    qb = B_pres.quiver
    qc = qb.restricted(lambda a: not a.is_new)
    old_map = tuple(a.id for a in qb.arrows if not a.is_new)
    back = {b: c for c, b in enumerate(old_map)}
    projected = []
    for r in B_pres.relations:
        acc = {}
        for p, c in r.items():
            if all(not qb.arrows[a].is_new for a in p.arrows):
                acc[Path(p.source, p.target, tuple(back[a] for a in p.arrows))] = c
        projected.append(PathVector(acc))
    core_rels = []
    for r in projected:
        if r and r not in core_rels:
            core_rels.append(r)
    C_pres = BoundQuiverPresentation(qc, tuple(core_rels), B_pres.field)
    return C_pres, old_map, projected


def _attach_relations(B_pres, projected):
    """Pick the relation ``r_γ`` of each new arrow ``γ``: by name, else by endpoints."""
    qb = B_pres.quiver
    new = qb.new_arrows()
    named = {n: i for i, n in enumerate(B_pres.relation_names) if n is not None}
    chosen = {}
    used = set()
    for g in new:
        i = named.get(g.label)
        if i is not None:
            chosen[g.id] = i
            used.add(i)
    for g in new:
        if g.id in chosen:
            continue
        for i, r in enumerate(B_pres.relations):
            if i in used or any(qb.new_arrow_count(p) for p in r.paths()):
                continue
            if r.endpoints() == (g.target, g.source):
                chosen[g.id] = i
                used.add(i)
                break
        else:
            raise InvariantViolation(f"no relation of the old arrows can be attached to new arrow {g.label}")
    return [(chosen[g.id], g.id) for g in new]


def extension_from_B(B_pres: BoundQuiverPresentation, max_degree: int | None = None) -> ExtensionResult:
    """Read a presentation of ``B`` with flagged new arrows as ``C ⋉ E``.

    The consistency checks land in :attr:`ExtensionResult.checks`:
    ``jacobian_ideal`` (the given ideal is that of the recovered potential),
    ``relation_system`` and ``strongly_minimal`` (for the attached relations).
    """
    if not B_pres.has_new_arrows:
        raise ValueError("B presentation has no new arrows")
    B_pres.field.warn_if_char_two("relation extension")
    C_pres, old_map, projected = old_core(B_pres)
    check_tilted_core(C_pres)
    C_alg = QuotientAlgebra(C_pres, max_degree=max_degree)
    attached = _attach_relations(B_pres, projected)
    qb = B_pres.quiver
    R = RelationSystem(
        tuple(projected[i] for i, _ in attached),
        tuple(qb.arrows[g].label for _, g in attached),
        tuple(strongly_minimal_check(projected[i], C_alg)[0] for i, _ in attached),
        "given",
    )
    pairs = [(_to_B(projected[i], old_map, qb), g) for i, g in attached]
    W = Potential.from_relations(qb, pairs)
    checks = {
        "relation_system": is_relation_system(C_alg, R.relations),
        "strongly_minimal": all(R.strongly_minimal),
    }
    ext = _assemble(C_pres, C_alg, R, B_pres, W, tuple(g for _, g in attached), old_map, max_degree, "B")
    ext.checks.update(checks)
    ext.checks["jacobian_ideal"] = _same_ideal_as_jacobian(ext, max_degree)
    return ext


def _to_B(r: PathVector, old_map, qb) -> PathVector:
    return PathVector({Path(p.source, p.target, tuple(old_map[a] for a in p.arrows)): c for p, c in r.items()})


def _same_ideal_as_jacobian(ext: ExtensionResult, max_degree) -> bool:
    jac = [d for _, d in ext.derivatives()]
    if not jac:
        return not ext.B.relations
    if not all(ext.B_alg.groebner.contains(d) for d in jac):
        return False
    try:
        gb = complete(ext.B.with_relations(jac), max_degree)
    except QuiverHHError:
        return False
    return all(gb.contains(r) for r in ext.B.relations)


def _assemble(C_pres, C_alg, R, B_pres, W, new_ids, old_map, max_degree, origin) -> ExtensionResult:
    qb = B_pres.quiver
    for i, r in enumerate(B_pres.relations):
        counts = {qb.new_arrow_count(p) for p in r.paths()}
        if len(counts) > 1:
            raise InvariantViolation(f"relation {i + 1} of B mixes paths with different numbers of new arrows")
    B_alg = QuotientAlgebra(B_pres, max_degree=max_degree)

    def to_B(p: Path) -> Path:
        if p.is_stationary:
            return p
        return Path(p.source, p.target, tuple(old_map[a] for a in p.arrows))

    q_map = []
    for w in C_alg.basis:
        j = B_alg.index.get(to_B(w))
        if j is None:
            raise InvariantViolation(f"normal word {C_alg.quiver.format_path(w)} of C is not a normal word of B")
        q_map.append(j)
    p_map = {j: i for i, j in enumerate(q_map)}
    E_basis = []
    for j, w in enumerate(B_alg.basis):
        k = qb.new_arrow_count(w)
        if k == 0:
            if j not in p_map:
                raise InvariantViolation(f"old word {qb.format_path(w)} of B has no counterpart in C")
        elif k == 1:
            E_basis.append(j)
        else:
            raise InvariantViolation(f"basis word {qb.format_path(w)} of B has {k} new arrows; E^2 != 0")

    ext = ExtensionResult(
        C=C_pres, B=B_pres, C_alg=C_alg, B_alg=B_alg, potential=W, relation_system=R,
        new_arrows=tuple(new_ids), old_arrow_map=tuple(old_map), q_map=tuple(q_map), p_map=p_map,
        E_basis=tuple(E_basis), classes=(), summands=(), checks={}, origin=origin,
    )
    _check_trivial_extension(ext)
    classes = new_arrow_classes(ext)
    object.__setattr__(ext, "classes", classes)
    object.__setattr__(ext, "summands", bimodule_summands(ext))
    ext.checks["trivial_extension"] = True
    return ext


def _check_trivial_extension(ext: ExtensionResult):
    """``(c1, e1)(c2, e2) = (c1 c2, c1 e2 + e1 c2)`` on basis words, and ``dim B = dim C + dim E``."""
    B, C = ext.B_alg, ext.C_alg
    E = set(ext.E_basis)
    if B.dim != C.dim + len(E):
        raise InvariantViolation(f"dim B = {B.dim} but dim C + dim E = {C.dim + len(E)}")
    for i in range(B.dim):
        for j in range(B.dim):
            if B.basis[i].target != B.basis[j].source:
                continue
            prod = B.mul_basis(i, j)
            if i in E and j in E:
                if prod:
                    raise InvariantViolation("a product of two E words is nonzero")
            elif i in E or j in E:
                if any(k not in E for k in prod):
                    raise InvariantViolation("E is not closed under the C actions")
            else:
                expect = ext.include(C.mul_basis(ext.p_map[i], ext.p_map[j]))
                if prod != expect:
                    raise InvariantViolation("the old part of B does not multiply like C")


# -- new-arrow classes and summands -----------------------------------------


def new_arrow_classes(ext: ExtensionResult) -> tuple:
    """Classes of new arrows joined by strongly minimal relations of ``B``.

    Circuits of every graded piece of ``Ĩ`` are enumerated; those lying in
    the ideal of ``C`` (no new arrows) are skipped, and so are circuits with a
    path through two or more new arrows (such paths vanish on their own).
    """
    qb = ext.B.quiver
    new = sorted(ext.new_arrows)
    parent = {a: a for a in new}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    if not new:
        return ()
    B = ext.B_alg
    n = qb.num_vertices
    for x in range(n):
        for y in range(n):
            for c in circuits(B, x, y):
                counts = [qb.new_arrow_count(p) for p in c.paths()]
                if any(k != 1 for k in counts):
                    continue
                arrows = [a for p in c.paths() for a in p.arrows if qb.arrows[a].is_new]
                root = find(arrows[0])
                for a in arrows[1:]:
                    parent[find(a)] = root
    groups = {}
    for a in new:
        groups.setdefault(find(a), []).append(a)
    return tuple(tuple(g) for g in sorted(groups.values()))


def bimodule_summands(ext: ExtensionResult) -> tuple:
    """``E_j = C γ C`` per class, with a direct-sum certificate."""
    B = ext.B_alg
    one = B.field.one
    c_words = [ext.q_map[i] for i in range(ext.C_alg.dim)]
    e_space = Subspace(B.dim, [{j: one} for j in ext.E_basis], B.field)
    out = []
    for cls in ext.classes:
        vecs = []
        for g in cls:
            gi = B.index.get(ext.B.quiver.arrow_path(g))
            if gi is None:
                raise InvariantViolation(f"new arrow {ext.B.quiver.arrows[g].label} vanishes in B")
            for u in c_words:
                if B.basis[u].target != B.basis[gi].source:
                    continue
                ug = B.mul_basis(u, gi)
                if not ug:
                    continue
                for v in c_words:
                    if B.basis[v].source == B.basis[gi].target:
                        w = B.mul(ug, {v: one})
                        if w:
                            vecs.append(w)
        space = Subspace(B.dim, vecs, B.field)
        if not space.is_subspace_of(e_space):
            raise InvariantViolation("a generated summand leaves E")
        labels = tuple(B.format(v) for v in space.basis)
        out.append(Summand(tuple(cls), space, labels))
    total = sum(s.dim for s in out)
    if out:
        span = Subspace(B.dim, [v for s in out for v in s.basis], B.field)
        if total != len(ext.E_basis) or span.dim != total:
            raise InvariantViolation(
                f"E is not the direct sum of the class summands (dims {[s.dim for s in out]}, dim E = {len(ext.E_basis)})"
            )
    elif ext.E_basis:
        raise InvariantViolation("E is nonzero but there are no new-arrow classes")
    return tuple(out)


def extension_for(pres: BoundQuiverPresentation, max_degree: int | None = None) -> ExtensionResult:
    """Dispatch on whether ``pres`` is a core (no new arrows) or a full ``B``."""
    if pres.has_new_arrows:
        return extension_from_B(pres, max_degree)
    return build_extension(pres, max_degree=max_degree)


__all__ = [
    "OLD",
    "NEW",
    "Potential",
    "ExtensionResult",
    "Summand",
    "cyclic_canonical",
    "cyclic_derivative",
    "cyclic_reduce",
    "is_cyclically_zero",
    "build_extension",
    "extension_from_B",
    "extension_for",
    "new_arrow_classes",
    "bimodule_summands",
    "old_core",
]

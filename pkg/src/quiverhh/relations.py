"""Minimal-support relations and systems of relations.

A *circuit* of ``e_x I e_y`` is a nonzero element whose support (a set of
paths) is minimal among nonzero elements of the ideal.  Circuits are exactly
the strongly minimal relations, and they span every graded piece of ``I``,
which is what makes the greedy selection in :func:`minimal_relation_system`
work.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import QuotientAlgebra, _paths_between, ideal_span
from .errors import InvariantViolation, QuiverHHError
from .groebner import complete
from .linalg import Matrix, Subspace, intersect, kernel_basis, rank, solve
from .quiver import PathVector, term_key

MAX_CIRCUIT_PATHS = 22


def _nf_columns(alg: QuotientAlgebra, paths) -> list:
    return [alg.element(p) for p in paths]


def _ideal_part(alg: QuotientAlgebra, paths) -> Subspace:
    """``I`` inside ``span(paths)``: the kernel of the normal-form map."""
    cols = _nf_columns(alg, paths)
    nrows = 1 + max((max(c) for c in cols if c), default=0)
    return kernel_basis(Matrix(nrows, len(paths), _columns_to_rows(cols, nrows), alg.field))


def _support_circuits(columns: list, field, max_paths: int = MAX_CIRCUIT_PATHS) -> list:
    """Minimal dependent column sets, smallest first, with their null vector.

    Returns ``[(support tuple, {column: coefficient})]``.
    """
    zero = [j for j, c in enumerate(columns) if not c]
    out = [((j,), {j: field.one}) for j in zero]
    live = [j for j, c in enumerate(columns) if c]
    if len(live) > max_paths:
        raise InvariantViolation(
            f"{len(live)} paths in one graded piece; circuit enumeration is capped at {max_paths}"
        )
    if not live:
        return out
    nrows = 1 + max(max(c) for j, c in enumerate(columns) if c)
    top = rank(Matrix(len(live), nrows, [columns[j] for j in live], field)) + 1
    found = []
    for k in range(2, min(top, len(live)) + 1):
        for subset in itertools.combinations(live, k):
            s = set(subset)
            if any(f <= s for f in found):
                continue
            cols = [columns[j] for j in subset]
            m = Matrix(nrows, k, _columns_to_rows(cols, nrows), field)
            ker = kernel_basis(m)
            if ker.dim == 0:
                continue
            # proper subsets are independent, so the kernel is a line with full support
            vec = ker.basis[0]
            found.append(s)
            out.append((subset, {subset[i]: c for i, c in vec.items()}))
    return out


def _columns_to_rows(cols, nrows):
    rows = [{} for _ in range(nrows)]
    for j, c in enumerate(cols):
        for i, x in c.items():
            rows[i][j] = x
    return rows


def normalize(r: PathVector) -> PathVector:
    """Scale so the leading path has coefficient one."""
    lead = r.leading()
    c = r[lead]
    return r if c == 1 else r.scale(1 / c)


def circuits(alg: QuotientAlgebra, x: int, y: int, max_length: int | None = None,
             min_length: int = 2) -> list:
    """All circuits of ``e_x I e_y`` among paths of length ``min_length..max_length``.

    The default ``max_length`` is ``L - 1``: longer paths all lie in ``I`` and
    only contribute monomial circuits.  Each circuit is normalised to a monic
    leading term; the list is ordered by support size, then by the paths.
    """
    if max_length is None:
        max_length = alg.nilpotency_bound - 1
    paths = _paths_between(alg.quiver, x, y, max_length, min_length)
    cols = _nf_columns(alg, paths)
    out = []
    for support, vec in _support_circuits(cols, alg.field):
        r = normalize(PathVector({paths[j]: c for j, c in vec.items()}))
        out.append(r)
    out.sort(key=lambda r: (len(r), [term_key(p) for p in r.paths()]))
    return out


# -- strong minimality ------------------------------------------------------


@dataclass(frozen=True)
class MinimalityWitness:
    """A proper sub-support carrying a nonzero element of the ideal."""

    subset: tuple
    element: PathVector


def strongly_minimal_check(r: PathVector, alg: QuotientAlgebra):
    """Return ``(True, None)`` or ``(False, MinimalityWitness)``.

    Proper sub-supports are tried smallest first; for each the span of its
    paths is intersected with ``I`` inside the path space of ``r``.
    """
    x, y = r.endpoints()
    support = r.paths()
    if len(support) <= 1:
        return True, None
    paths = _paths_between(alg.quiver, x, y, r.max_length())
    index = {p: i for i, p in enumerate(paths)}
    ideal_part = _ideal_part(alg, paths)
    one = alg.field.one
    for k in range(1, len(support)):
        for subset in itertools.combinations(support, k):
            span = Subspace(len(paths), [{index[p]: one} for p in subset], alg.field)
            meet = intersect(span, ideal_part)
            if meet.dim:
                vec = meet.basis[0]
                elem = normalize(PathVector({paths[j]: c for j, c in vec.items()}))
                return False, MinimalityWitness(tuple(subset), elem)
    return True, None


def express_in(element: PathVector, generators, field):
    """Scalars ``c`` with ``element = sum c_i generators[i]``, or ``None``."""
    paths = sorted({p for g in list(generators) + [element] for p in g.paths()}, key=term_key)
    index = {p: i for i, p in enumerate(paths)}
    rows = [{} for _ in paths]
    for j, g in enumerate(generators):
        for p, c in g.items():
            rows[index[p]][j] = c
    m = Matrix(len(paths), len(generators), rows, field)
    sol = solve(m, {index[p]: c for p, c in element.items()})
    if sol is None:
        return None
    return [sol.get(j, field.zero) for j in range(len(generators))]


# -- relation systems -------------------------------------------------------


@dataclass(frozen=True)
class RelationSystem:
    """Relations grouped by endpoint pair, with optional names."""

    relations: tuple
    names: tuple
    strongly_minimal: tuple
    source: str = "computed"  # or "given"

    def pairs(self) -> dict:
        out = {}
        for i, r in enumerate(self.relations):
            out.setdefault(r.endpoints(), []).append(i)
        return out

    def count(self, x: int, y: int) -> int:
        return len(self.pairs().get((x, y), ()))

    def counts(self) -> dict:
        return {k: len(v) for k, v in sorted(self.pairs().items())}

    def __len__(self):
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)


def minimal_generator_counts(alg: QuotientAlgebra) -> dict:
    """``dim e_x (I / (JI + IJ)) e_y`` for every pair with a nonzero value."""
    out = {}
    for (x, y), (u_space, k_space) in _generator_spaces(alg).items():
        m = u_space.dim - k_space.dim
        if m:
            out[(x, y)] = m
    return out


def _generator_spaces(alg: QuotientAlgebra) -> dict:
    """Per pair: ``I`` and ``JI + IJ`` inside paths of length ``<= L`` (mod ``J^(L+1)``)."""
    pres = alg.presentation
    top = alg.nilpotency_bound
    n = alg.quiver.num_vertices
    out = {}
    for x in range(n):
        for y in range(n):
            paths = _paths_between(alg.quiver, x, y, top)
            if not paths:
                continue
            u_space = _ideal_part(alg, paths)
            if not u_space.dim:
                continue
            _, k_space = ideal_span(pres, x, y, top, min_outer=1, truncate=True)
            if not k_space.is_subspace_of(u_space):
                raise InvariantViolation(f"JI + IJ is not inside I at e{x}..e{y}; is the ideal admissible?")
            out[(x, y)] = (u_space, k_space)
    return out


def minimal_relation_system(alg: QuotientAlgebra) -> RelationSystem:
    """A system of strongly minimal relations generating ``I``.

    For each pair, circuits are added greedily (smallest support first) while
    they are independent modulo ``JI + IJ``.
    """
    rels = []
    for (x, y), (u_space, k_space) in sorted(_generator_spaces(alg).items()):
        need = u_space.dim - k_space.dim
        if not need:
            continue
        paths = _paths_between(alg.quiver, x, y, alg.nilpotency_bound)
        index = {p: i for i, p in enumerate(paths)}
        acc = Subspace(len(paths), k_space.basis, alg.field)
        for c in circuits(alg, x, y, max_length=alg.nilpotency_bound):
            vec = {index[p]: v for p, v in c.items()}
            if acc.contains(vec):
                continue
            acc = Subspace(len(paths), acc.basis + [vec], alg.field)
            rels.append(c)
            if acc.dim == u_space.dim:
                break
        if acc.dim != u_space.dim:
            raise InvariantViolation(f"circuits of e{x} I e{y} do not span I modulo JI + IJ")
    return RelationSystem(tuple(rels), (None,) * len(rels), (True,) * len(rels), "computed")


def relation_report(alg: QuotientAlgebra, relations=None) -> list:
    """Strong-minimality verdict for each relation (default: the presentation's).

    A failing entry carries the witness element and, when it exists, a
    combination of the listed relations equal to a multiple of it.
    """
    rels = list(alg.presentation.relations if relations is None else relations)
    out = []
    for i, r in enumerate(rels):
        ok, wit = strongly_minimal_check(r, alg)
        entry = {"index": i, "relation": r, "strongly_minimal": ok, "witness": wit, "combination": None}
        if not ok:
            entry["combination"] = express_in(wit.element, rels, alg.field)
        out.append(entry)
    return out


def is_relation_system(alg: QuotientAlgebra, relations) -> bool:
    """Whether ``relations`` is an irredundant generating set of ``I``."""
    rels = list(relations)
    counts = minimal_generator_counts(alg)
    mine = {}
    for r in rels:
        if not alg.groebner.contains(r):
            return False
        mine[r.endpoints()] = mine.get(r.endpoints(), 0) + 1
    if mine != counts:
        return False
    sub = alg.presentation.with_relations(rels)
    try:
        gb = complete(sub, max(alg.groebner.completion_degree, sub.max_relation_length()))
    except QuiverHHError:
        return False
    return all(gb.contains(r) for r in alg.presentation.relations)


def select_relation_system(alg: QuotientAlgebra) -> RelationSystem:
    """The presentation's own relations when they already form a strongly
    minimal system (names kept), else :func:`minimal_relation_system`."""
    rels = alg.presentation.relations
    if rels and all(strongly_minimal_check(r, alg)[0] for r in rels) and is_relation_system(alg, rels):
        return RelationSystem(tuple(rels), alg.presentation.relation_names, (True,) * len(rels), "given")
    if not rels:
        return RelationSystem((), (), (), "given")
    return minimal_relation_system(alg)

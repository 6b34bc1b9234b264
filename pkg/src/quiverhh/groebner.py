"""Noncommutative Gröbner bases for ideals of path algebras.

Elements of ``kQ`` are plain ``dict`` objects ``{Path: coefficient}`` here;
:class:`~quiverhh.quiver.PathVector` is used at the API boundary.  The
monomial order is length-first, then reverse-lexicographic by arrow id (see
:func:`~quiverhh.quiver.monomial_key`).

Every basis element carries its *provenance*: an expression
``sum b * u * r_i * v`` over the input relations ``r_i``.  Reduction traces
can therefore always be rewritten over the original generators.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from .errors import DegreeOverflow, NotFiniteDimensional
from .presentation import BoundQuiverPresentation
from .quiver import Path, PathVector, Quiver, monomial_key


def _cat(quiver: Quiver, *paths):
    out = paths[0]
    for p in paths[1:]:
        out = out.compose(p)
        if out is None:
            raise AssertionError("non-composable factors in an ideal expression")
    return out


def _split(quiver: Quiver, word: Path, pos: int, length: int):
    """``word = u * word[pos:pos+length] * v``; return ``(u, v)``."""
    return word.subpath(0, pos, quiver), word.subpath(pos + length, word.length, quiver)


def _add_into(acc: dict, key, c):
    t = acc.get(key)
    t = c if t is None else t + c
    if t:
        acc[key] = t
    else:
        acc.pop(key, None)


def _mul_poly(quiver, u: Path, poly: dict, v: Path, c=1) -> dict:
    out = {}
    for p, x in poly.items():
        _add_into(out, _cat(quiver, u, p, v), c * x)
    return out


def _mul_prov(quiver, u: Path, prov: dict, v: Path, c=1) -> dict:
    out = {}
    for (pu, i, pv), x in prov.items():
        _add_into(out, (_cat(quiver, u, pu), i, _cat(quiver, pv, v)), c * x)
    return out


class _Elem:
    __slots__ = ("poly", "tip", "prov", "alive")

    def __init__(self, poly, prov):
        self.poly, self.prov = poly, prov
        self.tip = max(poly, key=monomial_key)
        self.alive = True

    def make_monic(self):
        c = self.poly[self.tip]
        if c != 1:
            inv = 1 / c
            self.poly = {p: inv * x for p, x in self.poly.items()}
            self.prov = {k: inv * x for k, x in self.prov.items()}


@dataclass(frozen=True)
class ReductionCertificate:
    """``input - normal_form == sum(b * u * g * v for b, u, g, v in trace)``.

    ``g`` indexes :attr:`GroebnerBasis.generators`.
    """

    input: PathVector
    normal_form: PathVector
    trace: tuple
    gb: "GroebnerBasis" = field(repr=False, compare=False)

    def expand(self) -> PathVector:
        q = self.gb.quiver
        acc = {}
        for b, u, g, v in self.trace:
            for p, x in self.gb.generators[g].items():
                _add_into(acc, _cat(q, u, p, v), b * x)
        return PathVector(acc)

    def holds(self) -> bool:
        return self.input - self.normal_form == self.expand()

    def over_relations(self) -> list:
        """The trace rewritten as ``[(b, u, i, v)]`` over the input relations."""
        q = self.gb.quiver
        acc = {}
        for b, u, g, v in self.trace:
            for key, x in _mul_prov(q, u, self.gb.provenance[g], v, b).items():
                _add_into(acc, key, x)
        return [(c, u, i, v) for (u, i, v), c in sorted(acc.items(), key=lambda kv: _prov_key(kv[0]))]


def _prov_key(key):
    u, i, v = key
    return (i, monomial_key(u), monomial_key(v))


@dataclass(frozen=True, eq=False)
class GroebnerBasis:
    quiver: Quiver
    field: object
    generators: tuple  # {Path: coef} dicts, monic; tips form an antichain
    tips: tuple
    provenance: tuple  # per generator: {(u, relation index, v): coef}
    relations: tuple  # the input relations, as PathVector
    completion_degree: int
    finite_dim_certificate: int | None
    homogeneous: bool

    @property
    def leading_paths(self) -> list:
        return list(self.tips)

    @property
    def elements(self) -> list:
        return [PathVector(g) for g in self.generators]

    def _divisor(self, word: Path):
        arrows = word.arrows
        for g, tip in enumerate(self.tips):
            t = tip.arrows
            k = len(t)
            for pos in range(len(arrows) - k + 1):
                if arrows[pos:pos + k] == t:
                    return g, pos
        return None

    def is_reducible(self, word: Path) -> bool:
        return self._divisor(word) is not None

    def normal_form(self, x, check_degree: bool = True) -> ReductionCertificate:
        if not isinstance(x, PathVector):
            x = PathVector(x)
        if check_degree and x and self.finite_dim_certificate is None and x.max_length() > self.completion_degree:
            raise DegreeOverflow(
                f"degree {x.max_length()} exceeds completion degree {self.completion_degree}"
            )
        nf, trace = _reduce(self.quiver, dict(x.items()), self._divisor, self.generators, self.tips)
        return ReductionCertificate(x, PathVector(nf), tuple(trace), self)

    def reduce(self, x) -> PathVector:
        return self.normal_form(x).normal_form

    def contains(self, x) -> bool:
        return not self.normal_form(x).normal_form

    def normal_words(self, max_length: int | None = None) -> list:
        """All irreducible paths (the quotient basis), shortest first."""
        limit = self.finite_dim_certificate if max_length is None else max_length + 1
        if limit is None:
            raise NotFiniteDimensional("no finiteness certificate")
        return [p for level in _normal_levels(self.quiver, self.is_reducible, limit) for p in level]


def _reduce(quiver, work: dict, divisor, generators, tips):
    """Top-down full reduction; returns ``(normal form dict, trace)``."""
    normal = {}
    trace = []
    while work:
        t = max(work, key=monomial_key)
        c = work.pop(t)
        d = divisor(t)
        if d is None:
            normal[t] = c
            continue
        g, pos = d
        tip = tips[g]
        u, v = _split(quiver, t, pos, tip.length)
        gen = generators[g]
        b = c / gen[tip] if gen[tip] != 1 else c
        trace.append((b, u, g, v))
        for p, x in gen.items():
            if p != tip:
                _add_into(work, _cat(quiver, u, p, v), -b * x)
    return normal, trace


def _normal_levels(quiver: Quiver, reducible, limit: int):
    """Levels 0 .. limit-1 of irreducible paths."""
    level = [Path.stationary(v) for v in range(quiver.num_vertices)]
    out = []
    for k in range(limit):
        out.append(level)
        nxt = []
        for p in level:
            for a in quiver.arrows_from(p.target):
                w = Path(p.source, a.target, p.arrows + (a.id,))
                if not reducible(w):
                    nxt.append(w)
        level = nxt
    return out


def default_max_degree(pres: BoundQuiverPresentation) -> int:
    return 2 * pres.max_relation_length() + pres.quiver.num_vertices


def complete(pres: BoundQuiverPresentation, max_degree: int | None = None) -> GroebnerBasis:
    """Overlap completion truncated at ``max_degree``.

    Raises :class:`NotFiniteDimensional` when some path of every length up to
    ``max_degree`` stays irreducible.
    """
    q = pres.quiver
    if max_degree is None:
        max_degree = default_max_degree(pres)
    if max_degree < pres.max_relation_length():
        raise ValueError("max_degree is smaller than the longest relation")
    homogeneous = all(r.min_length() == r.max_length() for r in pres.relations)

    elems: list[_Elem] = []
    pairs = []
    counter = itertools.count()

    def tips_view():
        live = [e for e in elems if e.alive]
        return live, [e.poly for e in live], [e.tip for e in live]

    def divisor_for(live, tips):
        def divisor(word):
            arrows = word.arrows
            for g, tip in enumerate(tips):
                t = tip.arrows
                k = len(t)
                for pos in range(len(arrows) - k + 1):
                    if arrows[pos:pos + k] == t:
                        return g, pos
            return None

        return divisor

    def reduce_with_prov(poly, prov):
        live, polys, tips = tips_view()
        nf, trace = _reduce(q, dict(poly), divisor_for(live, tips), polys, tips)
        prov = dict(prov)
        for b, u, g, v in trace:
            for key, x in _mul_prov(q, u, live[g].prov, v, -b).items():
                _add_into(prov, key, x)
        return nf, prov

    def push_pairs(new: _Elem):
        for other in [e for e in elems if e.alive]:
            for f, g in ((new, other), (other, new)) if other is not new else ((new, new),):
                tf, tg = f.tip.arrows, g.tip.arrows
                for k in range(1, min(len(tf), len(tg))):
                    if tf[-k:] == tg[:k]:
                        deg = len(tf) + len(tg) - k
                        heapq.heappush(pairs, (deg, next(counter), f, g, k))

    def insert(poly, prov):
        pending = [(poly, prov)]
        while pending:
            poly, prov = pending.pop()
            nf, prov = reduce_with_prov(poly, prov)
            if not nf:
                continue
            e = _Elem(nf, prov)
            e.make_monic()
            for h in elems:
                if h.alive and _divides(e.tip, h.tip):
                    h.alive = False
                    pending.append((h.poly, h.prov))
            elems.append(e)
            push_pairs(e)

    for i, r in enumerate(pres.relations):
        x, y = r.endpoints()
        insert(dict(r.items()), {(Path.stationary(x), i, Path.stationary(y)): 1})

    certificate = None
    processed_degree = 0
    degree = 1
    while degree <= max_degree:
        while pairs and pairs[0][0] <= degree:
            _, _, f, g, k = heapq.heappop(pairs)
            if not (f.alive and g.alive):
                continue
            v = Path(q.arrows[g.tip.arrows[k]].source, g.tip.target, g.tip.arrows[k:])
            u = f.tip.subpath(0, f.tip.length - k, q)
            s = _mul_poly(q, Path.stationary(f.tip.source), f.poly, v)
            for key, x in _mul_poly(q, u, g.poly, Path.stationary(g.tip.target), -1).items():
                _add_into(s, key, x)
            sprov = _mul_prov(q, Path.stationary(f.tip.source), f.prov, v)
            for key, x in _mul_prov(q, u, g.prov, Path.stationary(g.tip.target), -1).items():
                _add_into(sprov, key, x)
            if s:
                insert(s, sprov)
        processed_degree = degree
        if homogeneous and certificate is None:
            live, _, tips = tips_view()
            if _all_reducible_at(q, divisor_for(live, tips), degree):
                certificate = degree
                break
        degree += 1

    live, _, tips = tips_view()
    if certificate is None:
        div = divisor_for(live, tips)
        levels = _normal_levels(q, lambda w: div(w) is not None, max_degree + 1)
        for k, level in enumerate(levels):
            if k >= 1 and not level:
                certificate = k
                break
        if certificate is None:
            raise NotFiniteDimensional(
                f"irreducible paths of length {max_degree} remain; the algebra looks infinite-dimensional",
                live_paths=[q.format_path(p) for p in levels[-1][:10]],
            )

    # reduce tails to obtain the reduced basis
    for e in live:
        tail = {p: x for p, x in e.poly.items() if p != e.tip}
        others = [h for h in live if h is not e]
        nf, trace = _reduce(q, tail, divisor_for(others, [h.tip for h in others]), [h.poly for h in others], [h.tip for h in others])
        prov = dict(e.prov)
        for b, u, g, v in trace:
            for key, x in _mul_prov(q, u, others[g].prov, v, -b).items():
                _add_into(prov, key, x)
        nf[e.tip] = e.poly[e.tip]
        e.poly, e.prov = nf, prov

    live.sort(key=lambda e: (monomial_key(e.tip)[0], e.tip.arrows))
    return GroebnerBasis(
        quiver=q,
        field=pres.field,
        generators=tuple(e.poly for e in live),
        tips=tuple(e.tip for e in live),
        provenance=tuple(e.prov for e in live),
        relations=pres.relations,
        completion_degree=max(processed_degree, certificate or 0),
        finite_dim_certificate=certificate,
        homogeneous=homogeneous,
    )


def _divides(small: Path, big: Path) -> bool:
    s, b = small.arrows, big.arrows
    k = len(s)
    return any(b[i:i + k] == s for i in range(len(b) - k + 1))


def _all_reducible_at(q: Quiver, divisor, length: int) -> bool:
    return not _normal_levels(q, lambda w: divisor(w) is not None, length + 1)[-1]

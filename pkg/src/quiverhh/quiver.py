"""Quivers, paths and linear combinations of paths.

Paths compose left to right: ``ab`` means "first ``a``, then ``b``", so a
path from ``x`` to ``y`` lives in ``e_x kQ e_y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

OLD = "old"
NEW = "new"


@dataclass(frozen=True)
class Vertex:
    id: int
    label: str


@dataclass(frozen=True)
class Arrow:
    id: int
    label: str
    source: int
    target: int
    kind: str = OLD

    @property
    def is_new(self) -> bool:
        return self.kind == NEW


class Path(NamedTuple):
    """A path given by its endpoints and arrow ids; ``arrows == ()`` is ``e_source``."""

    source: int
    target: int
    arrows: tuple = ()

    @classmethod
    def stationary(cls, v: int) -> "Path":
        return cls(v, v, ())

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_stationary(self) -> bool:
        return not self.arrows

    @property
    def is_cycle(self) -> bool:
        return self.source == self.target and bool(self.arrows)

    def compose(self, other: "Path"):
        """``self`` followed by ``other``, or ``None`` when not composable."""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def subpath(self, i: int, j: int, quiver: "Quiver") -> "Path":
        """Arrows ``i .. j-1`` as a path (stationary when ``i == j``)."""
        if i == j:
            v = self.source if i == 0 else quiver.arrows[self.arrows[i - 1]].target
            return Path.stationary(v)
        arr = self.arrows[i:j]
        return Path(quiver.arrows[arr[0]].source, quiver.arrows[arr[-1]].target, arr)


def compose_paths(p: Path, q: Path):
    """Return ``pq`` when ``t(p) = s(q)``, else ``None`` (the zero marker)."""
    return p.compose(q)


def term_key(p: Path):
    """Canonical display order: by length, then lexicographically by arrow id."""
    return (len(p.arrows), p.arrows, p.source, p.target)


def monomial_key(p: Path):
    """Admissible order; the leading path of an element maximises this key.

    Longer paths dominate; among equal lengths the lexicographically
    *smaller* arrow-id sequence is larger, so ``a1*b1`` leads ``a2*b1``.
    """
    return (len(p.arrows), tuple(-a for a in p.arrows), -p.source, -p.target)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple
    topological_order: tuple | None = None
    _by_label: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        ids = [v.id for v in self.vertices]
        if ids != list(range(len(ids))):
            raise ValueError("vertex ids must be 0..n-1 in order")
        for i, a in enumerate(self.arrows):
            if a.id != i:
                raise ValueError("arrow ids must be 0..m-1 in order")
            if not (0 <= a.source < len(ids) and 0 <= a.target < len(ids)):
                raise ValueError(f"arrow {a.label} has an unknown endpoint")
        labels = {}
        for v in self.vertices:
            labels[("v", v.label)] = v.id
        for a in self.arrows:
            labels[("a", a.label)] = a.id
        object.__setattr__(self, "_by_label", labels)

    @classmethod
    def build(cls, vertex_labels: Iterable, arrows: Iterable) -> "Quiver":
        """``arrows`` are ``(label, source_label, target_label[, kind])`` tuples."""
        vs = tuple(Vertex(i, str(lab)) for i, lab in enumerate(vertex_labels))
        index = {v.label: v.id for v in vs}
        arr = []
        for i, spec in enumerate(arrows):
            label, s, t = spec[:3]
            kind = spec[3] if len(spec) > 3 else OLD
            arr.append(Arrow(i, label, index[str(s)], index[str(t)], kind))
        return cls(vs, tuple(arr))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def vertex(self, label) -> int:
        return self._by_label[("v", str(label))]

    def arrow(self, label) -> Arrow:
        return self.arrows[self._by_label[("a", label)]]

    def has_vertex(self, label) -> bool:
        return ("v", str(label)) in self._by_label

    def has_arrow(self, label) -> bool:
        return ("a", label) in self._by_label

    def arrows_from(self, v: int) -> list:
        return [a for a in self.arrows if a.source == v]

    def new_arrows(self) -> list:
        return [a for a in self.arrows if a.is_new]

    def old_arrows(self) -> list:
        return [a for a in self.arrows if not a.is_new]

    def arrow_path(self, a) -> Path:
        if isinstance(a, int):
            a = self.arrows[a]
        elif isinstance(a, str):
            a = self.arrow(a)
        return Path(a.source, a.target, (a.id,))

    def path(self, labels) -> Path:
        """Build a path from a sequence of arrow labels (validated)."""
        labels = list(labels)
        if not labels:
            raise ValueError("use Path.stationary for stationary paths")
        arr = [self.arrow(lab) for lab in labels]
        for a, b in zip(arr, arr[1:]):
            if a.target != b.source:
                raise ValueError(f"{a.label}*{b.label} is not composable")
        return Path(arr[0].source, arr[-1].target, tuple(a.id for a in arr))

    def new_arrow_count(self, p: Path) -> int:
        return sum(1 for a in p.arrows if self.arrows[a].is_new)

    def format_path(self, p: Path) -> str:
        if p.is_stationary:
            return "e" + self.vertices[p.source].label
        return "*".join(self.arrows[a].label for a in p.arrows)

    def paths_of_length(self, k: int, source=None) -> Iterator[Path]:
        starts = range(self.num_vertices) if source is None else [source]
        if k == 0:
            for v in starts:
                yield Path.stationary(v)
            return
        frontier = [Path.stationary(v) for v in starts]
        for _ in range(k):
            nxt = []
            for p in frontier:
                for a in self.arrows_from(p.target):
                    nxt.append(Path(p.source, a.target, p.arrows + (a.id,)))
            frontier = nxt
        yield from frontier

    def paths_between(self, x: int, y: int, max_length: int, min_length: int = 0) -> list:
        out = []
        frontier = [Path.stationary(x)]
        for k in range(max_length + 1):
            if k >= min_length:
                out.extend(p for p in frontier if p.target == y)
            if k == max_length:
                break
            frontier = [
                Path(p.source, a.target, p.arrows + (a.id,))
                for p in frontier
                for a in self.arrows_from(p.target)
            ]
        return out

    def is_connected(self) -> bool:
        n = self.num_vertices
        if n == 0:
            return True
        adj = {v: set() for v in range(n)}
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen, stack = {0}, [0]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == n

    def restricted(self, keep_arrow) -> "Quiver":
        """Sub-quiver on all vertices and the arrows satisfying ``keep_arrow``."""
        kept = [a for a in self.arrows if keep_arrow(a)]
        arrows = tuple(Arrow(i, a.label, a.source, a.target, a.kind) for i, a in enumerate(kept))
        return Quiver(self.vertices, arrows)

    def with_order(self, order) -> "Quiver":
        return Quiver(self.vertices, self.arrows, tuple(order))


@dataclass(frozen=True)
class TriangularResult:
    order: tuple | None
    cycle: Path | None

    @property
    def is_triangular(self) -> bool:
        return self.order is not None


def validate_triangular(q: Quiver, restrict_to: str = "all") -> TriangularResult:
    """Topological vertex order over the chosen arrows, or an oriented cycle.

    ``restrict_to`` is ``"all"`` or ``"old"``.
    """
    if restrict_to not in ("all", "old"):
        raise ValueError("restrict_to must be 'all' or 'old'")
    arrows = [a for a in q.arrows if restrict_to == "all" or not a.is_new]
    n = q.num_vertices
    indeg = [0] * n
    out = {v: [] for v in range(n)}
    for a in arrows:
        indeg[a.target] += 1
        out[a.source].append(a)
    ready = sorted(v for v in range(n) if indeg[v] == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for a in out[v]:
            indeg[a.target] -= 1
            if indeg[a.target] == 0:
                ready.append(a.target)
                ready.sort()
    if len(order) == n:
        return TriangularResult(tuple(order), None)
    return TriangularResult(None, _find_cycle(n, out))


def _find_cycle(n, out) -> Path:
    color = [0] * n
    stack_arrows = []

    def dfs(v):
        color[v] = 1
        for a in out[v]:
            stack_arrows.append(a)
            if color[a.target] == 1:
                # cycle closes at a.target
                idx = next(i for i, b in enumerate(stack_arrows) if b.source == a.target)
                cyc = stack_arrows[idx:]
                return Path(cyc[0].source, cyc[-1].target, tuple(b.id for b in cyc))
            if color[a.target] == 0:
                found = dfs(a.target)
                if found is not None:
                    return found
            stack_arrows.pop()
        color[v] = 2
        return None

    for v in range(n):
        if color[v] == 0:
            found = dfs(v)
            if found is not None:
                return found
    raise AssertionError("no cycle found in a non-triangular quiver")


class PathVector:
    """A finite linear combination of paths; immutable, zero terms dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for p, c in items:
                c = clean.get(p, 0) + c if p in clean else c
                if c:
                    clean[p] = c
                else:
                    clean.pop(p, None)
        self._terms = dict(sorted(clean.items(), key=lambda kv: term_key(kv[0])))

    @classmethod
    def from_path(cls, p: Path, coef=1) -> "PathVector":
        return cls({p: coef})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def paths(self) -> list:
        return list(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __getitem__(self, p):
        return self._terms.get(p, 0)

    def __eq__(self, other):
        if isinstance(other, PathVector):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "PathVector") -> "PathVector":
        d = dict(self._terms)
        for p, c in other._terms.items():
            d[p] = d[p] + c if p in d else c
        return PathVector(d)

    def __neg__(self):
        return PathVector({p: -c for p, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PathVector":
        return PathVector({p: c * v for p, v in self._terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        """Product in kQ; non-composable terms vanish."""
        if isinstance(other, Path):
            other = PathVector.from_path(other)
        if not isinstance(other, PathVector):
            return self.scale(other)
        out = {}
        for p, c in self._terms.items():
            for q, d in other._terms.items():
                pq = p.compose(q)
                if pq is not None:
                    out[pq] = out[pq] + c * d if pq in out else c * d
        return PathVector(out)

    def leading(self):
        """Leading path under :func:`monomial_key`."""
        return max(self._terms, key=monomial_key)

    def endpoints(self):
        """``(x, y)`` when every term runs from x to y, else ``None``."""
        ends = {(p.source, p.target) for p in self._terms}
        return next(iter(ends)) if len(ends) == 1 else None

    @property
    def is_homogeneous_endpoints(self) -> bool:
        return self.endpoints() is not None

    def min_length(self) -> int:
        return min(p.length for p in self._terms)

    def max_length(self) -> int:
        return max(p.length for p in self._terms)

    def format(self, q: Quiver) -> str:
        return format_combination(((q.format_path(p), c) for p, c in self._terms.items()))

    def __repr__(self):
        return "PathVector(%r)" % (self._terms,)


def format_scalar(c) -> str:
    return str(c)


def format_combination(items) -> str:
    """Render ``[(word, coef), ...]`` as ``a - 2*b + 1/2*c``; empty means ``0``."""
    parts = []
    for word, c in items:
        s = format_scalar(c)
        neg = s.startswith("-")
        mag = s[1:] if neg else s
        body = word if mag == "1" else f"{mag}*{word}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"

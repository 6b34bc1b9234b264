"""Finite-dimensional quotients ``A = kQ/I`` of path algebras.

Elements of ``A`` are sparse coordinate dicts over :attr:`QuotientAlgebra.basis`,
the normal words of a completed Gröbner basis.  Basis words are homogeneous
in their endpoints, so every element splits along ``e_x A e_y``.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .errors import InvariantViolation, OracleMismatch
from .groebner import GroebnerBasis, complete
from .linalg import Subspace, axpy
from .presentation import BoundQuiverPresentation
from .quiver import Path, PathVector, Quiver, format_combination, term_key


class QuotientAlgebra:
    """Normal-word basis and structure constants of ``kQ/I``."""

    def __init__(self, presentation: BoundQuiverPresentation, groebner: GroebnerBasis | None = None,
                 max_degree: int | None = None):
        self.presentation = presentation
        self.quiver: Quiver = presentation.quiver
        self.field = presentation.field
        self.groebner = groebner if groebner is not None else complete(presentation, max_degree)
        words = sorted(self.groebner.normal_words(), key=term_key)
        self.basis = tuple(words)
        self.index = {w: i for i, w in enumerate(words)}
        self.radical = tuple(i for i, w in enumerate(words) if w.length)
        self.stationary = tuple(self.index[Path.stationary(v)] for v in range(self.quiver.num_vertices))
        self._products = {}
        by_ends = {}
        for i, w in enumerate(words):
            by_ends.setdefault((w.source, w.target), []).append(i)
        self._by_ends = {k: tuple(v) for k, v in by_ends.items()}

    @classmethod
    def from_presentation(cls, pres, max_degree=None) -> "QuotientAlgebra":
        return cls(pres, max_degree=max_degree)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    @property
    def nilpotency_bound(self) -> int:
        """Smallest ``L`` with every path of length ``L`` reducible."""
        return self.groebner.finite_dim_certificate

    def ends(self, i: int):
        w = self.basis[i]
        return (w.source, w.target)

    def basis_between(self, x: int, y: int) -> tuple:
        return self._by_ends.get((x, y), ())

    def word(self, i: int) -> Path:
        return self.basis[i]

    def label(self, i: int) -> str:
        return self.quiver.format_path(self.basis[i])

    # -- conversions -------------------------------------------------------

    def element(self, x) -> dict:
        """Coordinates of a path, path vector or ``{Path: c}`` dict."""
        if isinstance(x, Path):
            x = PathVector.from_path(x, self.field.one)
        elif isinstance(x, dict):
            x = PathVector(x)
        nf = self.groebner.reduce(x)
        return {self.index[p]: c for p, c in nf.items()}

    def path_element(self, p: Path) -> dict:
        return self.element(p)

    def arrow_element(self, arrow_id: int) -> dict:
        return self.element(self.quiver.arrow_path(arrow_id))

    def to_path_vector(self, v: dict) -> PathVector:
        return PathVector({self.basis[i]: c for i, c in v.items()})

    def format(self, v: dict) -> str:
        items = sorted(v.items(), key=lambda kv: term_key(self.basis[kv[0]]))
        return format_combination((self.label(i), c) for i, c in items)

    # -- multiplication ----------------------------------------------------

    def mul_basis(self, i: int, j: int) -> dict:
        key = (i, j)
        out = self._products.get(key)
        if out is None:
            pq = self.basis[i].compose(self.basis[j])
            out = {} if pq is None else self.element(pq)
            self._products[key] = out
        return out

    def mul(self, x: dict, y: dict) -> dict:
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = self.mul_basis(i, j)
                if prod:
                    axpy(out, a * b, prod)
        return out

    def one(self) -> dict:
        return {i: self.field.one for i in self.stationary}

    def structure_constants(self) -> dict:
        """``{(i, j): {k: c}}`` for every nonzero product of basis words."""
        out = {}
        for i in range(self.dim):
            for j in range(self.dim):
                if self.basis[i].target == self.basis[j].source:
                    prod = self.mul_basis(i, j)
                    if prod:
                        out[(i, j)] = dict(prod)
        return out

    def check_associativity(self, samples: int | None = 200, seed: int = 0) -> bool:
        """Check ``(ab)c = a(bc)`` on basis triples; all of them if ``samples`` is None."""
        n = self.dim
        triples = [
            (i, j, k)
            for i in range(n)
            for j in self.basis_from(self.basis[i].target)
            for k in self.basis_from(self.basis[j].target)
        ]
        if samples is not None and len(triples) > samples:
            triples = random.Random(seed).sample(triples, samples)
        for i, j, k in triples:
            left = self.mul(self.mul_basis(i, j), {k: self.field.one})
            right = self.mul({i: self.field.one}, self.mul_basis(j, k))
            if left != right:
                return False
        return True

    def basis_from(self, v: int) -> list:
        return [i for i, w in enumerate(self.basis) if w.source == v]

    def check_radical_splitting(self):
        """``A = A0 + r``: products of radical words have no stationary component."""
        stat = set(self.stationary)
        for i in self.radical:
            for j in self.radical:
                if set(self.mul_basis(i, j)) & stat:
                    raise InvariantViolation("a product of radical words has a stationary component")

    def center(self) -> Subspace:
        """``{z : z b = b z for every basis word b}``, computed directly."""
        from .linalg import Matrix, kernel_basis

        n = self.dim
        rows = {}
        nrows = 0
        for b in range(n):
            # column z_k contributes basis_k * b - b * basis_k
            block = {}
            for k in range(n):
                diff = dict(self.mul_basis(k, b))
                axpy(diff, -self.field.one, self.mul_basis(b, k))
                for t, c in diff.items():
                    block.setdefault(t, {})[k] = c
            for t in sorted(block):
                rows[nrows] = block[t]
                nrows += 1
        m = Matrix(nrows, n, [rows[i] for i in range(nrows)], self.field)
        return kernel_basis(m)

    def __repr__(self):
        return f"QuotientAlgebra(dim={self.dim}, vertices={self.quiver.num_vertices})"


# -- ideal dimensions ------------------------------------------------------


@lru_cache(maxsize=None)
def _paths_between(quiver: Quiver, x: int, y: int, max_length: int, min_length: int = 0) -> tuple:
    return tuple(quiver.paths_between(x, y, max_length, min_length))


def ideal_span(pres: BoundQuiverPresentation, x: int, y: int, max_length: int,
               min_outer: int = 0, truncate: bool = False) -> tuple:
    """Span of ``u r v`` inside the paths ``x -> y`` of length ``<= max_length``.

    Only products with ``|u| + |v| >= min_outer`` are used.  With ``truncate``
    the terms longer than ``max_length`` are dropped (working modulo
    ``J^(max_length+1)``); otherwise products with such terms are skipped.
    Returns ``(paths, Subspace)`` with coordinates indexed by ``paths``.
    """
    q = pres.quiver
    paths = _paths_between(q, x, y, max_length)
    index = {p: i for i, p in enumerate(paths)}
    vecs = []
    for r in pres.relations:
        s, t = r.endpoints()
        lo = r.min_length()
        hi = r.max_length()
        budget = max_length - lo
        if budget < 0:
            continue
        for u in _paths_between(q, x, s, budget):
            for v in _paths_between(q, t, y, budget - u.length):
                if u.length + v.length < min_outer:
                    continue
                if not truncate and u.length + v.length + hi > max_length:
                    continue
                vec = {}
                for p, c in r.items():
                    w = u.compose(p).compose(v)
                    if w.length <= max_length:
                        vec[index[w]] = c
                if vec:
                    vecs.append(vec)
    return paths, Subspace(len(paths), vecs, pres.field)


def ideal_dims(alg: QuotientAlgebra, check: bool = True) -> dict:
    """Per-pair dimensions of ``e_x A e_y`` and of the truncated ideal.

    The ideal is measured inside the paths of length ``<= N`` with
    ``N = max(L, longest relation)``.  The Gröbner count (paths minus normal
    words) is compared with the span of all ``u r v`` of length ``<= N``; a
    disagreement raises :class:`OracleMismatch`.  The span is only exact for
    length-homogeneous relations, so the comparison is skipped otherwise.
    """
    pres = alg.presentation
    n_trunc = max(alg.nilpotency_bound, pres.max_relation_length())
    homogeneous = alg.groebner.homogeneous
    table = {}
    n = alg.quiver.num_vertices
    for x in range(n):
        for y in range(n):
            paths = _paths_between(alg.quiver, x, y, n_trunc)
            a_dim = len(alg.basis_between(x, y))
            i_dim = len(paths) - a_dim
            row = {"paths": len(paths), "algebra": a_dim, "ideal": i_dim}
            if check and homogeneous:
                _, span = ideal_span(pres, x, y, n_trunc)
                if span.dim != i_dim:
                    raise OracleMismatch(
                        f"e{x} I e{y}: Gröbner count {i_dim} but truncated span {span.dim}"
                    )
                row["oracle_ideal"] = span.dim
                row["oracle_algebra"] = len(paths) - span.dim
            table[(x, y)] = row
    total_a = sum(r["algebra"] for r in table.values())
    if total_a != alg.dim:
        raise OracleMismatch(f"pair dimensions sum to {total_a}, basis has {alg.dim}")
    return {"truncation": n_trunc, "pairs": table, "dim": total_a, "oracle_checked": check and homogeneous}

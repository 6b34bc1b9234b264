"""Bound-quiver presentations ``(Q, I)`` with explicit relation generators."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import PresentationSemanticError
from .field import QQ, Field
from .quiver import PathVector, Quiver, validate_triangular


@dataclass(frozen=True)
class BoundQuiverPresentation:
    """A quiver together with relation generators over an exact field.

    ``relation_names`` optionally labels each relation; the relation-extension
    builder uses a name as the label of the new arrow attached to it.
    """

    quiver: Quiver
    relations: tuple
    field: Field = QQ
    relation_names: tuple = dc_field(default=None)

    def __post_init__(self):
        rels = tuple(self.relations)
        object.__setattr__(self, "relations", rels)
        names = self.relation_names
        if names is None:
            names = (None,) * len(rels)
        names = tuple(names)
        if len(names) != len(rels):
            raise ValueError("relation_names must match relations")
        object.__setattr__(self, "relation_names", names)
        for i, r in enumerate(rels):
            check_relation(r, self.quiver, index=i)

    @property
    def has_new_arrows(self) -> bool:
        return any(a.is_new for a in self.quiver.arrows)

    def max_relation_length(self) -> int:
        return max((r.max_length() for r in self.relations), default=0)

    def is_triangular(self, restrict_to="old") -> bool:
        return validate_triangular(self.quiver, restrict_to).is_triangular

    def with_relations(self, relations, names=None) -> "BoundQuiverPresentation":
        return BoundQuiverPresentation(self.quiver, tuple(relations), self.field, names)

    def with_field(self, fld: Field) -> "BoundQuiverPresentation":
        rels = tuple(PathVector({p: fld(_to_fraction(c)) for p, c in r.items()}) for r in self.relations)
        return BoundQuiverPresentation(self.quiver, rels, fld, self.relation_names)

    def old_part(self) -> Quiver:
        return self.quiver.restricted(lambda a: not a.is_new)

    def structurally_equal(self, other: "BoundQuiverPresentation") -> bool:
        return (
            self.quiver.vertices == other.quiver.vertices
            and self.quiver.arrows == other.quiver.arrows
            and self.relations == other.relations
            and self.field == other.field
            and self.relation_names == other.relation_names
        )


def _to_fraction(c):
    from fractions import Fraction

    from .field import ModP

    if isinstance(c, ModP):
        return Fraction(c.symmetric())
    return Fraction(c)


def check_relation(r: PathVector, q: Quiver, index=None, line=None, column=None):
    """Raise ``PresentationSemanticError`` unless ``r`` is a valid relation."""
    tag = f"relation {index + 1}" if index is not None else "relation"
    if not r:
        raise PresentationSemanticError(f"{tag} is zero", line, column)
    if r.endpoints() is None:
        raise PresentationSemanticError(f"{tag} is not endpoint-homogeneous", line, column)
    if r.min_length() < 2:
        raise PresentationSemanticError(f"{tag} contains a path of length < 2", line, column)

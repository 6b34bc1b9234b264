import pytest
from hypothesis import given, settings, strategies as st

from quiverhh.dsl import format_presentation, parse_path_vector, parse_presentation
from quiverhh.errors import PresentationSemanticError, PresentationSyntaxError
from quiverhh.field import Field
from quiverhh.fixtures import load, names, text


@pytest.mark.parametrize("name", names())
def test_fixture_roundtrip(name):
    pres = load(name)
    again = parse_presentation(format_presentation(pres))
    assert again.structurally_equal(pres)


def test_semicolons_and_arrow_section():
    pres = parse_presentation("vertices 1 2 3; arrows; a: 1 -> 2; b: 2 -> 3; relations; a*b")
    assert [a.label for a in pres.quiver.arrows] == ["a", "b"]
    assert len(pres.relations) == 1


def test_field_statement_and_override():
    src = "field F 5\nvertices 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\nrelations\n"
    assert parse_presentation(src).field == Field(5)
    assert parse_presentation(src, Field(7)).field == Field(7)


def test_new_arrows_and_names():
    pres = load("extension_B")
    q = pres.quiver
    assert [a.label for a in q.new_arrows()] == ["g1", "g2"]
    assert pres.relation_names[-2:] == ("g1", "g2")
    assert pres.has_new_arrows


def test_rational_coefficients():
    q = load("core_C").quiver
    v = parse_path_vector("1/2*a1*b1 - 3*a2*b1", q)
    assert v.format(q) == "1/2*a1*b1 - 3*a2*b1"


@pytest.mark.parametrize("src,line", [
    ("vertices 1 2\narrow a: 1 -> \n", 2),
    ("vertices 1 2\narrow a: 1 -> 2\nrelations\na*\n", 4),
    ("vertices 1 2\narrow a: 1 = 2\n", 2),
])
def test_syntax_errors_have_positions(src, line):
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation(src)
    assert info.value.line == line


@pytest.mark.parametrize("src", [
    "vertices 1 2\narrow a: 1 -> 3\n",  # unknown vertex
    "vertices 1 2\narrow a: 1 -> 2\narrow a: 2 -> 1\n",  # duplicate arrow
    "vertices 1 2\narrow a: 1 -> 2\nrelations\nc*a\n",  # unknown arrow
    "vertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelations\na*b + a\n",  # mixed endpoints
    "vertices 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\nrelations\nr: a\nr: b\n",  # duplicate name
])
def test_semantic_errors(src):
    with pytest.raises((PresentationSemanticError, PresentationSyntaxError)):
        parse_presentation(src)


def test_non_composable_path_rejected():
    with pytest.raises(PresentationSemanticError):
        parse_presentation("vertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelations\nb*a\n")


def test_comments_ignored():
    assert "#" in text("core_C")
    assert len(load("core_C").relations) == 2


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5).filter(bool), st.sampled_from(["a1*b1", "a2*b1"])), min_size=1, max_size=4))
def test_pathvector_parse_format(terms):
    q = load("core_C").quiver
    src = "".join((" - " if c < 0 else " + ") + f"{abs(c)}*{w}" for c, w in terms).lstrip(" +")
    v = parse_path_vector(src, q)
    if v:
        assert parse_path_vector(v.format(q), q) == v

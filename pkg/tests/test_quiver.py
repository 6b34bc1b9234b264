import pytest

from quiverhh.dsl import parse_path_vector
from quiverhh.fixtures import load
from quiverhh.quiver import Path, PathVector, term_key, validate_triangular


def test_paths_compose_left_to_right():
    q = load("core_C").quiver
    a1, b1 = q.arrow_path("a1"), q.arrow_path("b1")
    ab = a1.compose(b1)
    assert ab.length == 2 and q.format_path(ab) == "a1*b1"
    assert b1.compose(a1) is None
    assert Path.stationary(0).compose(a1) == a1


def test_tip_is_lex_smaller_arrow_sequence():
    q = load("core_C").quiver
    r = parse_path_vector("a1*b1 + a2*b1", q)
    assert q.format_path(r.leading()) == "a1*b1"
    longer = parse_path_vector("a1 + a2*b1", q)
    assert q.format_path(longer.leading()) == "a2*b1"


def test_paths_between_counts():
    q = load("core_C").quiver
    v1, v2 = q.vertex("1"), q.vertex("2")
    assert len(q.paths_between(v1, v2, 5)) == 2
    assert len(q.paths_between(v1, v1, 5)) == 1


def test_pathvector_arithmetic():
    q = load("core_C").quiver
    x = parse_path_vector("a1*b1 + a2*b1", q)
    y = parse_path_vector("a1*b1 - a2*b1", q)
    assert (x + y).format(q) == "2*a1*b1"
    assert not (x - x)
    assert (x * PathVector()).format(q) == "0"
    assert x.endpoints() == (q.vertex("1"), q.vertex("2"))
    assert x.scale(3) == x + x + x


def test_triangularity():
    assert validate_triangular(load("core_C").quiver).is_triangular
    res = validate_triangular(load("cycle3_B").quiver)
    assert not res.is_triangular and res.cycle.is_cycle
    assert validate_triangular(load("cycle3_B").quiver, "old").is_triangular
    with pytest.raises(ValueError):
        validate_triangular(load("A2").quiver, "new")


def test_term_key_length_first():
    q = load("A3").quiver
    ab = q.path(["a", "b"])
    assert term_key(q.arrow_path("a")) < term_key(ab)

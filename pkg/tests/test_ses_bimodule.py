import pytest

from quiverhh.bimodule import bimodule_hom, brick_report, end_to_h1, endomorphisms
from quiverhh.extension import extension_for
from quiverhh.fixtures import load
from quiverhh.ses import Derivation, extend_derivation, inner_derivation, verify_ses

from conftest import FIXTURES, complexes_of, ext_of


@pytest.mark.parametrize("name", FIXTURES)
@pytest.mark.parametrize("p", [0, 5])
def test_ses_holds(name, p):
    rep = verify_ses(ext_of(name, p), complexes_of(name, p))
    assert rep.passed, rep.failed()
    d = rep.dims
    assert d["HH1(B)"] == d["HH1(C)"] + d["H1(B,E)"]
    assert d["H1(B,E)"] >= d["n"]


def test_broken_fails_named_assertion():
    rep = verify_ses(extension_for(load("broken_B")))
    assert rep.failed() == ["jacobian-ideal"]


def test_extended_derivation_on_core():
    e, cx = ext_of("core_C"), complexes_of("core_C")
    z = cx.CC.cohomology(1).representatives[0]
    delta = Derivation.from_cochain(e.C_alg, cx.CC.slice(1), z)
    assert delta.format() == "a1 -> a2; a2 -> a1"
    ed = extend_derivation(delta, e)
    assert ed.ok
    assert ed.extended.format() == "a1 -> a2; a2 -> a1; g1 -> -g1; g2 -> g2"
    f = ed.extended.to_cochain(e.B_alg, cx.BB.slice(1))
    assert cx.BB.is_cocycle(1, f)
    assert cx.CC.cohomology(1).coords(cx.phi(1).apply(f)) == [1]


def test_extended_derivation_on_prime():
    e, cx = ext_of("core_C_prime"), complexes_of("core_C_prime")
    for z in cx.CC.cohomology(1).representatives:
        ed = extend_derivation(Derivation.from_cochain(e.C_alg, cx.CC.slice(1), z), e)
        assert ed.potential_zero and ed.derivatives_in_ideal


def test_inner_derivations_are_coboundaries():
    e, cx = ext_of("core_C"), complexes_of("core_C")
    A = e.B_alg
    for x in range(A.dim):
        d = inner_derivation(A, {x: A.field.one})
        f = d.to_cochain(A, cx.BB.slice(1))
        assert cx.BB.is_cocycle(1, f)
        assert cx.BB.cohomology(1).is_coboundary(f)


def test_derivation_leibniz():
    e = ext_of("core_C")
    q = e.C.quiver
    d = Derivation(q, {q.arrow("a1").id: e.C_alg.to_path_vector(e.C_alg.arrow_element(q.arrow("a2").id))})
    assert d.apply_path(q.path(["a1", "b1"])).format(q) == "a2*b1"
    assert d.preserves(e.C_alg.groebner, []) is True


# -- bimodule maps -----------------------------------------------------------


@pytest.mark.parametrize("name", ["core_C", "core_C_prime", "extension_B"])
def test_orthogonal_bricks(name):
    e = ext_of(name)
    r = brick_report(e, complexes_of(name))
    assert r.table == [[1, 0], [0, 1]]
    assert r.orthogonal_bricks and r.n == 2
    assert r.dim_end == 2 == r.end_rank_in_h1
    assert r.end_is_sum and r.bounds_hold and r.identities_in_end
    assert not r.exceeds_n


def test_prime_hom_zero_between_summands():
    e = ext_of("core_C_prime")
    S = e.summands
    h = bimodule_hom(S[0], S[1], e)
    assert h.dim == 0 and h.constraints > 0
    assert bimodule_hom(S[0], S[0], e).dim == 1


def test_hom_basis_maps_are_bimodule_maps():
    e = ext_of("core_C")
    end = endomorphisms(e)
    assert end.dim == 2
    for m in end.basis:
        assert len(m) == e.dim_E


@pytest.mark.parametrize("name", FIXTURES)
def test_end_embeds_in_h1(name):
    e, cx = ext_of(name), complexes_of(name)
    end = endomorphisms(e)
    assert end_to_h1(e, cx, end) == end.dim
    assert e.n <= end.dim <= cx.BE.cohomology(1).dim


def test_hereditary_empty_table():
    r = brick_report(ext_of("A2"))
    assert r.table == [] and r.orthogonal_bricks and r.n == 0

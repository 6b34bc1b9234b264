from fractions import Fraction

from hypothesis import given, settings, strategies as st
from sympy import GF, QQ as SQQ
from sympy.polys.matrices import DomainMatrix

from quiverhh.field import QQ, Field
from quiverhh.linalg import Matrix, Subspace, image, intersect, kernel_basis, rank, rref, solve


@st.composite
def matrices(draw, max_dim=7):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(1, max_dim))
    p = draw(st.sampled_from([0, 0, 2, 3, 5]))
    # low rank is common on purpose: build as a product of two random factors
    k = draw(st.integers(0, max(r, 1)))
    ent = st.integers(-3, 3)
    left = [[draw(ent) for _ in range(k)] for _ in range(r)]
    right = [[draw(ent) for _ in range(c)] for _ in range(k)]
    dense = [[sum(left[i][t] * right[t][j] for t in range(k)) for j in range(c)] for i in range(r)]
    return p, r, c, dense


def _sympy_rank(p, r, c, dense):
    if r == 0:
        return 0
    K = SQQ if p == 0 else GF(p)
    return DomainMatrix([[K(x) for x in row] for row in dense], (r, c), K).rank()


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_nullity_and_exactness(data):
    p, r, c, dense = data
    fld = Field(p)
    m = Matrix.from_dense(dense, fld) if r else Matrix(0, c, [], fld)
    rk = rank(m)
    ker = kernel_basis(m)
    assert rk + ker.dim == c
    assert rk == _sympy_rank(p, r, c, dense)
    for v in ker.basis:
        assert not m.apply(v)
    assert image(m).dim == rk


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(st.integers(-3, 3), min_size=7, max_size=7))
def test_solve_consistent_systems(data, x):
    p, r, c, dense = data
    if not r:
        return
    fld = Field(p)
    m = Matrix.from_dense(dense, fld)
    xv = {j: fld(x[j]) for j in range(c) if x[j] % (p or 10**9)}
    b = m.apply(xv)
    sol = solve(m, b)
    assert sol is not None and m.apply(sol) == b


def test_solve_inconsistent():
    m = Matrix.from_dense([[1, 1], [2, 2]], QQ)
    assert solve(m, {0: Fraction(1), 1: Fraction(3)}) is None


def test_rref_and_product():
    m = Matrix.from_dense([[2, 4], [1, 3]], QQ)
    assert rref(m) == Matrix.identity(2, QQ)
    assert (Matrix.identity(2, QQ) @ m) == m
    assert m.transpose().transpose() == m


def test_subspace_ops():
    a = Subspace(3, [{0: 1, 1: 1}, {2: 1}])
    b = Subspace(3, [{1: 1}, {2: 1}])
    meet = intersect(a, b)
    assert meet.dim == 1 and meet.contains({2: 1})
    assert (a + b).dim == 3
    assert Subspace(3, [{0: 1}, {0: 1, 1: 1}]) == Subspace(3, [{1: 2}, {0: 3}])
    assert a.coordinates({0: 2, 1: 2, 2: 5}) == [2, 5]
    assert a.is_subspace_of(a + b)

import pytest
from hypothesis import given, strategies as st

from overnerve import delta
from overnerve.delta import OperatorError, OrdinalOp, compose, ez_factorize


@st.composite
def ops(draw, source=None, target=None):
    m = draw(st.integers(0, 4)) if source is None else source
    n = draw(st.integers(0, 4)) if target is None else target
    vals = sorted(draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1)))
    return OrdinalOp(m, n, tuple(vals))


def test_compose_examples():
    assert compose(OrdinalOp(1, 2, (0, 2)), OrdinalOp(1, 1, (0, 0))).values == (0, 0)
    assert compose(OrdinalOp(2, 1, (0, 0, 1)), OrdinalOp(1, 2, (0, 2))).values == (0, 1)
    f = OrdinalOp(2, 3, (0, 1, 3))
    assert compose(OrdinalOp.identity(3), f) == f


def test_compose_mismatch():
    with pytest.raises(OperatorError):
        compose(OrdinalOp(1, 1, (0, 1)), OrdinalOp(0, 2, (1,)))


def test_invalid_ops():
    with pytest.raises(OperatorError):
        OrdinalOp(1, 1, (1, 0))
    with pytest.raises(OperatorError):
        OrdinalOp(0, -1, (0,))
    assert OrdinalOp(-1, 2, ()).values == ()


def test_ez_examples():
    fac = ez_factorize(OrdinalOp(2, 2, (0, 0, 2)))
    assert fac.surjection.values == (0, 0, 1)
    assert fac.injection.values == (0, 2)
    inj = OrdinalOp(1, 3, (1, 3))
    assert ez_factorize(inj).surjection.is_identity()
    sur = OrdinalOp(3, 1, (0, 0, 1, 1))
    assert ez_factorize(sur).injection.is_identity()


@given(st.data())
def test_associativity(data):
    f = data.draw(ops())
    g = data.draw(ops(source=f.target_dim))
    h = data.draw(ops(source=g.target_dim))
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


@given(ops())
def test_ez_factorization_reassembles(f):
    fac = ez_factorize(f)
    assert fac.surjection.is_surjective() and fac.injection.is_injective()
    assert compose(fac.injection, fac.surjection) == f
    again = ez_factorize(compose(fac.injection, fac.surjection))
    assert again == fac


@pytest.mark.parametrize("n", range(1, 5))
def test_cosimplicial_identities(n):
    for j in range(n + 1):
        for i in range(j):
            lhs = compose(OrdinalOp.face(j, n), OrdinalOp.face(i, n - 1))
            rhs = compose(OrdinalOp.face(i, n), OrdinalOp.face(j - 1, n - 1))
            assert lhs == rhs
    for i in range(n):
        for j in range(n):
            if i <= j:
                # s^j s^i = s^i s^{j+1} as codegeneracies [n+1] -> [n-1]
                lhs = compose(OrdinalOp.degeneracy(j, n - 1), OrdinalOp.degeneracy(i, n))
                rhs = compose(OrdinalOp.degeneracy(i, n - 1), OrdinalOp.degeneracy(j + 1, n))
                assert lhs == rhs


def test_counts_against_brute_force():
    from tests.oracles import monotone_count

    for m in range(4):
        for n in range(4):
            assert len(delta.monotone_maps(m, n)) == monotone_count(m, n)
    assert len(delta.surjections(3, 1)) == 3


def test_word_view():
    assert OrdinalOp(2, 2, (0, 0, 2)).word() == ["s0", "d1"]
    assert delta.bar((0, 0)) == (0, 1, 1)

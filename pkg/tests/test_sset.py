import pytest

from overnerve.sset import (
    EMPTY,
    FinSSet,
    SimplexRef,
    SimpMap,
    SSetError,
    apply_map,
    boundary,
    compose,
    count_maps,
    delta_ref,
    enumerate_maps,
    enumerate_simplices,
    find_isomorphism,
    horn,
    nondeg,
    product,
    pullback,
    pushout,
    simplex,
    simplex_map,
    standard_complex,
    standard_inclusion,
    vertex_inclusion,
)
from tests.oracles import grid_leq, poset_chain_counts


def test_standard_counts():
    assert standard_complex("simplex", 2).counts() == (3, 3, 1)
    assert standard_complex("boundary", 2).counts() == (3, 3)
    H = standard_complex("horn", 2, 1)
    assert H.counts() == (3, 2)
    assert "02" not in H and "012" not in H
    with pytest.raises(SSetError):
        horn(2, 3)


@pytest.mark.parametrize("n", range(5))
def test_standard_complexes_valid(n):
    assert simplex(n).is_valid() and boundary(n).is_valid()
    for k in range(n + 1):
        assert horn(n, k).is_valid()


def test_validate_reports_violation():
    good = simplex(2)
    faces = {x: list(good.faces[x]) for x in good.ids()}
    # d_0 replaced by the edge 01, so d_0 d_1 = 2 but d_0 d_0 = 1
    faces["012"][0] = nondeg("01", 1)
    bad = FinSSet({n: good.cells(n) for n in range(3)}, faces)
    problems = bad.validate()
    assert any("(i,j)=(0,1)" in p for p in problems)


def test_enumerate_simplices():
    assert len(enumerate_simplices(simplex(0), 2)) == 1
    assert len(enumerate_simplices(simplex(1), 2)) == 4
    assert len(enumerate_simplices(boundary(1), 1)) == 2


def test_product_counts_against_poset_oracle():
    for p in range(3):
        for q in range(3):
            pts = [(a, b) for a in range(p + 1) for b in range(q + 1)]
            assert product(simplex(p), simplex(q)).space.counts() == poset_chain_counts(pts, grid_leq)
    assert product(simplex(1), simplex(1)).space.counts() == (4, 5, 2)
    # n+1 top-dimensional simplices in Δ[n] × Δ[1]
    assert product(simplex(2), simplex(1)).space.counts()[-1] == 3


def test_product_unit_and_universal_property():
    B = boundary(2)
    assert find_isomorphism(product(simplex(0), B).space, B) is not None
    A, C = simplex(1), boundary(1)
    P = product(A, C).space
    for T in (simplex(0), simplex(1), boundary(1)):
        assert count_maps(T, P) == count_maps(T, A) * count_maps(T, C)


def test_product_simplices_are_jointly_nondegenerate_pairs():
    A, B = simplex(1), boundary(2)
    P = product(A, B)
    for m in range(3):
        pairs = {(a, b) for a in enumerate_simplices(A, m) for b in enumerate_simplices(B, m)}
        got = {(P.pr1(s), P.pr2(s)) for s in enumerate_simplices(P.space, m)}
        assert got == pairs


def test_pushout_examples():
    wedge = pushout(vertex_inclusion(1, 0), vertex_inclusion(1, 1))
    assert wedge.space.counts() == (3, 2)
    ident = standard_inclusion(simplex(1), 1)
    same = pushout(ident, SimpMap.identity(simplex(1)))
    assert find_isomorphism(same.space, simplex(1)) is not None
    h = standard_inclusion(horn(2, 1), 2)
    glued = pushout(h, h)
    # oracle: Λ^1[2] has every vertex; each copy of Δ[2] adds one edge and one triangle
    assert glued.space.counts() == (3, 3 - 1 + 2, 2)
    assert glued.space.is_valid()


def test_pushout_universal_property():
    i = standard_inclusion(boundary(1), 1)
    f = SimpMap(boundary(1), simplex(0), {"0": nondeg("0", 0), "1": nondeg("0", 0)})
    P = pushout(i, f)  # a circle
    for T in (simplex(1), boundary(2)):
        cone = 0
        for g in enumerate_maps(simplex(0), T):
            for h in enumerate_maps(simplex(1), T):
                if compose(g, f).same_as(compose(h, i)):
                    cone += 1
        assert count_maps(P.space, T) == cone


def test_pushout_requires_inclusion():
    with pytest.raises(SSetError):
        pushout(simplex_map((0, 0), 0), simplex_map((0, 0), 0))


def test_pullback_examples():
    a, b = vertex_inclusion(1, 0), vertex_inclusion(1, 1)
    assert pullback(a, SimpMap.identity(simplex(1))).space.counts() == (1,)
    assert pullback(a, b).space.is_empty()
    from overnerve.sset import to_point

    X, Z = simplex(1), boundary(2)
    over_pt = pullback(to_point(X), to_point(Z)).space
    assert find_isomorphism(over_pt, product(X, Z).space) is not None


def test_hom_counts():
    assert count_maps(simplex(0), boundary(3)) == 4
    assert count_maps(simplex(1), simplex(1)) == 3
    assert count_maps(boundary(1), simplex(0)) == 1
    assert count_maps(EMPTY, simplex(2)) == 1


def test_apply_map():
    s = SimplexRef((0, 0), "0")
    assert apply_map(SimpMap.identity(simplex(1)), s) == s
    f = simplex_map((0, 1), 2)
    assert apply_map(f, delta_ref((0, 0))) == delta_ref((0, 0))
    for g in enumerate_maps(simplex(0), boundary(2)):
        v = g.assign["0"]
        assert apply_map(g, SimplexRef((0, 0), "0")) == SimplexRef((0, 0), v.target)


def test_isomorphism_search_distinguishes():
    path = pushout(vertex_inclusion(1, 0), vertex_inclusion(1, 1)).space
    assert find_isomorphism(path, horn(2, 1)) is not None
    # both horns have two edges, but Λ^0[2] has them leaving 0 and Λ^2[2] entering 2
    assert find_isomorphism(horn(2, 0), horn(2, 2)) is None
    assert find_isomorphism(boundary(2), horn(2, 1)) is None

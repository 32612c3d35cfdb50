import pytest

from overnerve.fibrations import (
    BasedSSet,
    LiftError,
    LiftProblem,
    cone,
    cone_contraction,
    cone_corner,
    cone_path_adjunction,
    default_n_max,
    family_members,
    fiber_retraction,
    homotopy_fiber,
    homotopy_fiber_over,
    mapping_box,
    mapping_space,
    path,
    path_contraction,
    pushout_product,
    rlp_check,
    solve_lift,
    squares,
    unsolvable_square,
)
from overnerve.fixtures import categories, over_nerves, right_fibrations, suite_maps
from overnerve.homology import homology, pi0
from overnerve.over_nerve import F_sset
from overnerve.sset import (
    EMPTY,
    SimpMap,
    boundary,
    find_arrow_isomorphism,
    find_isomorphism,
    horn,
    simplex,
    standard_inclusion,
    to_point,
    vertex_inclusion,
)
from tests.oracles import grid_leq, monotone_count, ordered_complex, rlp_oracle

# vertex-map descriptions of the suite maps, in the same order
SUITE_ORACLE = [
    (ordered_complex(1), ordered_complex(1), {0: 0, 1: 1}),
    (ordered_complex(2, lambda s: len(s) < 3), ordered_complex(2, lambda s: len(s) < 3), {0: 0, 1: 1, 2: 2}),
    (ordered_complex(0), ordered_complex(1), {0: 0}),
    ({frozenset({1})}, ordered_complex(1), {1: 1}),
    (ordered_complex(1), ordered_complex(0), {0: 0, 1: 0}),
    (ordered_complex(1, lambda s: len(s) < 2), ordered_complex(0), {0: 0, 1: 0}),
    (ordered_complex(2, lambda s: s != (0, 1, 2) and s != (0, 2)), ordered_complex(2), {0: 0, 1: 1, 2: 2}),
    (ordered_complex(2), ordered_complex(1), {0: 0, 1: 0, 2: 1}),
    (ordered_complex(0), ordered_complex(0), {0: 0}),
]


# -- lifting ---------------------------------------------------------------------


def test_lift_problem_must_commute():
    i = standard_inclusion(horn(2, 1), 2)
    p = SimpMap.identity(simplex(2))
    top = SimpMap(horn(2, 1), simplex(2), {x: horn(2, 1).ref(x) for x in horn(2, 1).ids()})
    const = SimpMap(simplex(2), simplex(2), {x: simplex(2).act((0,) * (simplex(2).dim_of(x) + 1), simplex(2).ref("0")) for x in simplex(2).ids()})
    with pytest.raises(LiftError):
        LiftProblem(i, p, top, const)
    with pytest.raises(LiftError):
        LiftProblem(to_point(simplex(1)), p, top, const)


def test_inner_horn_lift_in_simplex():
    i = standard_inclusion(horn(2, 1), 2)
    p = to_point(simplex(2))
    for prob in squares(i, p):
        lift = solve_lift(prob)
        assert lift is not None and prob.is_solution(lift)


def test_unsolvable_square_witness():
    # Λ^1[1] -> Δ[1] against vertex 1 of Δ[1]: the edge 0 -> 1 has no lift
    count, prob = unsolvable_square(standard_inclusion(horn(1, 1), 1), vertex_inclusion(1, 1))
    assert count >= 1 and prob is not None and solve_lift(prob) is None


def test_family_members():
    names = [m[0] for m in family_members("right_horns", 2)]
    assert len(names) == 3
    assert len(family_members("all_horns", 2)) == 5
    assert len(family_members("boundaries", 2)) == 3


@pytest.mark.parametrize("idx", range(len(SUITE_ORACLE)))
@pytest.mark.parametrize("family", ["right_horns", "all_horns", "boundaries"])
def test_rlp_matches_oracle(idx, family):
    name, p = suite_maps()[idx]
    X, Y, vm = SUITE_ORACLE[idx]
    assert rlp_check(p, family, 3).passed == rlp_oracle(X, Y, vm, family, 3), name


def test_rlp_report_json():
    rep = rlp_check(vertex_inclusion(1, 1), "right_horns", 2)
    d = rep.to_json()
    assert not d["passed"] and d["witness"] is not None
    assert default_n_max(vertex_inclusion(1, 1)) == 3
    with pytest.raises(ValueError):
        rlp_check(vertex_inclusion(1, 1), "right_horns", 0)


# -- cones and paths -------------------------------------------------------------------


@pytest.mark.parametrize("A", [EMPTY, simplex(0), boundary(1), simplex(1), boundary(2), horn(3, 1)])
def test_cone_counts(A):
    # c_n(CA) = c_n(A) + c_{n-1}(A), with one cone point in degree 0
    C = cone(A).space
    a = list(A.counts()) if not A.is_empty() else []
    expect = [(a[n] if n < len(a) else 0) + (a[n - 1] if n >= 1 else 1) for n in range(len(a) + 1)]
    assert list(C.counts()) == expect
    assert C.is_valid() and homology(C).betti[0] == 1 and all(b == 0 for b in homology(C).betti[1:])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cone_corner_horns(n):
    for k in range(n + 1):
        i = cone_corner(standard_inclusion(horn(n, k), n))
        assert find_arrow_isomorphism(i, standard_inclusion(horn(n + 1, k + 1), n + 1)) is not None


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cone_corner_boundaries(n):
    i = cone_corner(standard_inclusion(boundary(n), n))
    assert find_arrow_isomorphism(i, standard_inclusion(boundary(n + 1), n + 1)) is not None


def test_cone_corner_degenerate_case():
    # the empty horn: the corner is ∂Δ[1] -> Δ[1], which is not Λ^1[1] -> Δ[1]
    i = cone_corner(standard_inclusion(horn(0, 0), 0))
    assert i.domain.counts() == (2,)
    assert find_arrow_isomorphism(i, standard_inclusion(horn(1, 1), 1)) is None


@pytest.mark.parametrize("A", [simplex(0), simplex(1), boundary(2), boundary(3), simplex(2)])
def test_cone_contraction(A):
    c = cone_contraction(A)
    assert c.ok, c.checks


@pytest.mark.parametrize("B,y", [(simplex(0), "0"), (simplex(1), "0"), (simplex(1), "1"), (boundary(2), "0"), (simplex(2), "2")])
def test_path_contraction(B, y):
    PB = path(BasedSSet(B, y))
    assert PB.space.is_valid()
    h = homology(PB.space)
    assert h.betti == (1,) + (0,) * (len(h.betti) - 1)
    c = path_contraction(BasedSSet(B, y), PB)
    assert c.ok, c.checks


def test_path_vertices_oracle():
    # vertices of P(Δ[n], 0) are edges of Δ[n] starting at 0
    for n in range(4):
        assert len(path(BasedSSet(simplex(n), "0")).space.cells(0)) == n + 1


@pytest.mark.parametrize("A", [simplex(0), boundary(1), simplex(1)])
@pytest.mark.parametrize("B", [(simplex(1), "0"), (simplex(1), "1"), (boundary(2), "0")])
def test_cone_path_adjunction(A, B):
    counts = cone_path_adjunction(A, BasedSSet(*B))
    assert counts.ok


# -- homotopy fibers --------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(categories()))
def test_homotopy_fiber_is_F(name):
    O = categories()[name]
    for phi in over_nerves(O):
        F = F_sset(phi)
        for b in O.objects:
            hf = homotopy_fiber_over(phi, b)
            assert find_isomorphism(hf.space, F.value[b]) is not None


def test_homotopy_fiber_of_vertex():
    # vertex 1 -> Δ[1] over 0: no path from 0 lands in the image
    hf = homotopy_fiber(vertex_inclusion(1, 1), "0")
    assert len(pi0(hf.space)) == 1
    hf = homotopy_fiber(vertex_inclusion(1, 0), "1")
    assert hf.space.is_empty()


@pytest.mark.parametrize("name,p,y", right_fibrations())
def test_fiber_retraction(name, p, y):
    r = fiber_retraction(p, y)
    assert r.ok, r.checks


def test_fiber_retraction_precondition():
    with pytest.raises(ValueError):
        fiber_retraction(to_point(simplex(1)), "0")
    assert fiber_retraction(to_point(simplex(1)), "0", require_fibration=False).ok


# -- products and mapping spaces ----------------------------------------------------------


def test_pushout_product_counts():
    i = standard_inclusion(boundary(1), 1)
    j = standard_inclusion(horn(1, 1), 1)
    box = pushout_product(i, j)
    assert box.domain.counts() == (4, 3)
    assert box.is_valid() and box.is_inclusion()
    assert box.codomain.counts() == (4, 5, 2)


@pytest.mark.parametrize("name,p,y", right_fibrations())
def test_box_against_right_fibrations(name, p, y):
    i = standard_inclusion(boundary(1), 1)
    j = standard_inclusion(horn(1, 1), 1)
    seen, bad = unsolvable_square(pushout_product(i, j), p)
    assert seen > 0 and bad is None


def test_mapping_space_oracle():
    M = mapping_space(simplex(1), simplex(1), 2)
    # k-simplices are monotone maps [1] x [k] -> [1]
    nd = M.space.counts()
    totals = [nd[0], nd[0] + nd[1], nd[0] + 2 * nd[1] + nd[2]]
    for k in range(3):
        expect = _monotone_grid_maps(k)
        assert totals[k] == expect
    assert monotone_count(1, 1) == nd[0]
    assert mapping_space(boundary(1), simplex(0), 2).space.counts() == (1,)
    assert mapping_space(EMPTY, simplex(1), 2).space.counts() == (1,)


def _monotone_grid_maps(k):
    from itertools import product

    pts = [(a, b) for a in range(2) for b in range(k + 1)]
    return sum(
        1
        for vals in product(range(2), repeat=len(pts))
        if all(vals[i] <= vals[j] for i, p in enumerate(pts) for j, q in enumerate(pts) if grid_leq(p, q))
    )


@pytest.mark.parametrize("name,p,y", right_fibrations())
def test_mapping_box_right_fibration(name, p, y):
    m = mapping_box(standard_inclusion(EMPTY, 0), p, 2)
    assert rlp_check(m, "right_horns", 2).passed

"""Shipped test categories, objects over nerves, diagrams and maps."""
from __future__ import annotations

from .cat import CatDiagram, CatOverO, FinCategory, Functor, identity_over
from .over_nerve import OverNerve, SSetDiagram, simplex_over
from .sset import SimpMap, boundary, horn, simplex, simplex_map, standard_inclusion, to_point, vertex_inclusion


def categories() -> dict[str, FinCategory]:
    """``[0]``, ``[1]``, ``[2]``, the span ``l <- c -> r`` and the idempotent monoid ``{id, e}``."""
    return {
        "[0]": FinCategory.ordinal(0),
        "[1]": FinCategory.ordinal(1),
        "[2]": FinCategory.ordinal(2),
        "span": FinCategory.poset(["c", "l", "r"], [("c", "l"), ("c", "r")]),
        "idem": FinCategory.monoid(["id", "e"], {("e", "e"): "e"}, "id"),
    }


def category(name: str) -> FinCategory:
    cats = categories()
    if name not in cats:
        raise KeyError(f"unknown fixture category {name!r}; choose from {sorted(cats)}")
    return cats[name]


def constant_diagram(O: FinCategory, K) -> SSetDiagram:
    return SSetDiagram(O, {b: K for b in O.objects}, {m: SimpMap.identity(K) for m in O.morphisms})


def constant_cat_diagram(O: FinCategory, C: FinCategory) -> CatDiagram:
    return CatDiagram(O, {b: C for b in O.objects}, {m: Functor.identity(C) for m in O.morphisms})


def point_over(O: FinCategory, b: str) -> OverNerve:
    return OverNerve(simplex(0), O, {"0": b}, {})


def chains_over(O: FinCategory, n_max: int, nondegenerate: bool = False) -> list[OverNerve]:
    """Every chain of length ``<= n_max`` as a labeled standard simplex."""
    return [simplex_over(O, objs, ms) for n in range(n_max + 1) for objs, ms in O.chains(n, nondegenerate)]


def over_nerves(O: FinCategory) -> list[OverNerve]:
    """Points, nondegenerate chains up to length 2 and a labeled boundary of Δ[2] when one exists."""
    out = chains_over(O, 2, nondegenerate=True)
    for sigma in list(out):
        if sigma.total.dim == 2:
            out.append(sigma.restrict(standard_inclusion(boundary(2), 2)))
            break
    return out


def sset_diagrams(O: FinCategory) -> list[SSetDiagram]:
    return [constant_diagram(O, K) for K in (simplex(0), boundary(1), simplex(1))]


def cat_diagrams(O: FinCategory) -> list[CatDiagram]:
    return [constant_cat_diagram(O, C) for C in (FinCategory.ordinal(0), FinCategory.ordinal(1))]


def cats_over(O: FinCategory) -> list[CatOverO]:
    """The identity of ``O`` and each object as a point over ``O``."""
    P = FinCategory.ordinal(0)
    pts = [CatOverO(P, Functor(P, O, {"0": b}, {"0>0": O.ident(b)})) for b in O.objects]
    return [identity_over(O)] + pts


# -- the counterexample --------------------------------------------------------


def example_data() -> tuple[FinCategory, OverNerve, OverNerve, SimpMap]:
    """``O = [1]``, ``φ`` the point over 0, ``ψ`` the identity labeling of Δ[1] and ``f: φ -> ψ``."""
    O = FinCategory.ordinal(1)
    phi = point_over(O, "0")
    psi = simplex_over(O, ["0", "1"], ["0>1"])
    return O, phi, psi, vertex_inclusion(1, 0)


def example_psi_nonconstant() -> SSetDiagram:
    """``ψ(0) = ∂Δ[1]``, ``ψ(1) = Δ[0]``, with the arrow picking vertex 0."""
    O = FinCategory.ordinal(1)
    K0, K1 = boundary(1), simplex(0)
    pick = SimpMap(K1, K0, {"0": K0.ref("0")})
    action = {"0>0": SimpMap.identity(K0), "1>1": SimpMap.identity(K1), "0>1": pick}
    return SSetDiagram(O, {"0": K0, "1": K1}, action)


# -- maps for the fibration suite -------------------------------------------------


def right_fibrations() -> list[tuple[str, SimpMap, str]]:
    """``(name, p, y)`` with ``p`` a right fibration and ``y`` a vertex of its codomain."""
    return [
        ("vertex 0 of Δ[1]", vertex_inclusion(1, 0), "0"),
        ("identity of Δ[1] at 0", SimpMap.identity(simplex(1)), "0"),
        ("identity of Δ[1] at 1", SimpMap.identity(simplex(1)), "1"),
        ("identity of Δ[2] at 0", SimpMap.identity(simplex(2)), "0"),
        ("Δ[0] -> Δ[0]", SimpMap.identity(simplex(0)), "0"),
    ]


def suite_maps() -> list[tuple[str, SimpMap]]:
    """Small maps used for the acyclicity test; some are fibrations, some are not."""
    return [
        ("identity Δ[1]", SimpMap.identity(simplex(1))),
        ("identity ∂Δ[2]", SimpMap.identity(boundary(2))),
        ("vertex 0 of Δ[1]", vertex_inclusion(1, 0)),
        ("vertex 1 of Δ[1]", vertex_inclusion(1, 1)),
        ("Δ[1] -> Δ[0]", to_point(simplex(1))),
        ("∂Δ[1] -> Δ[0]", to_point(boundary(1))),
        ("Λ^1[2] -> Δ[2]", standard_inclusion(horn(2, 1), 2)),
        ("s_0: Δ[2] -> Δ[1]", simplex_map((0, 0, 1), 1)),
        ("Δ[0] -> Δ[0]", SimpMap.identity(simplex(0))),
    ]

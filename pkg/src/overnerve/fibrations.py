"""Lifting problems, right fibrations, cones and paths, homotopy fibers, mapping spaces."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .delta import Values, bar
from .homology import cylinder_ends
from .cat import nerve
from .over_nerve import OverNerve, RawModel
from .sset import (
    FinSSet,
    Product,
    SimplexRef,
    SimpMap,
    SSetError,
    boundary,
    compose,
    horn,
    nondeg,
    product,
    product_map,
    pullback,
    pushout,
    ref_name,
    search_maps,
    simplex,
    simplex_map,
    standard_inclusion,
)


class LiftError(ValueError):
    pass


# -- lifting problems -------------------------------------------------------------


@dataclass
class LiftProblem:
    """A commutative square ``p ∘ top = bottom ∘ i`` with ``i`` an inclusion."""

    i: SimpMap
    p: SimpMap
    top: SimpMap
    bottom: SimpMap

    def __post_init__(self) -> None:
        if not self.i.is_inclusion():
            raise LiftError("the left map must be an inclusion")
        if not compose(self.p, self.top).same_as(compose(self.bottom, self.i)):
            raise LiftError("the square does not commute")

    def is_solution(self, lift: SimpMap) -> bool:
        return (
            lift.is_valid()
            and compose(lift, self.i).same_as(self.top)
            and compose(self.p, lift).same_as(self.bottom)
        )

    def describe(self) -> dict[str, dict[str, str]]:
        return {
            "top": {x: ref_name(r) for x, r in self.top.assign.items()},
            "bottom": {x: ref_name(r) for x, r in self.bottom.assign.items()},
        }


def solve_lift(prob: LiftProblem) -> SimpMap | None:
    """A diagonal ``B -> X``, or ``None`` once the finite search is exhausted."""
    B, X = prob.i.codomain, prob.p.domain
    fixed = {prob.i.assign[a].target: r for a, r in prob.top.assign.items()}
    p, bottom = prob.p, prob.bottom

    def accept(x: str, c: SimplexRef) -> bool:
        return p(c) == bottom.assign[x]

    for a in search_maps(B, X, fixed=fixed, accept=accept):
        lift = SimpMap(B, X, a)
        if not prob.is_solution(lift):
            raise LiftError("internal error: search produced a non-solution")
        return lift
    return None


def simplex_to_map(Y: FinSSet, y: SimplexRef) -> SimpMap:
    """The map ``Δ[n] -> Y`` classifying the ``n``-simplex ``y``."""
    D = simplex(y.dim)
    return SimpMap(D, Y, {x: Y.act(tuple(int(v) for v in D.vertices(D.ref(x))), y) for x in D.ids()})


def family_members(family: str, n_max: int) -> list[tuple[str, int, int | None, SimpMap]]:
    """``(kind, n, k, inclusion)`` for the chosen generating family up to ``n_max``."""
    out = []
    if family == "boundaries":
        for n in range(0, n_max + 1):
            out.append(("boundary", n, None, standard_inclusion(boundary(n), n)))
    elif family in ("right_horns", "all_horns"):
        lo = 1 if family == "right_horns" else 0
        for n in range(1, n_max + 1):
            for k in range(lo, n + 1):
                out.append(("horn", n, k, standard_inclusion(horn(n, k), n)))
    else:
        raise LiftError(f"unknown family {family!r}")
    return out


@dataclass
class RLPReport:
    family: str
    n_max: int
    passed: bool
    squares: int
    witness: dict | None = None

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n_max": self.n_max,
            "passed": self.passed,
            "squares": self.squares,
            "witness": self.witness,
        }


def squares(i: SimpMap, p: SimpMap) -> Iterator[LiftProblem]:
    """Every commuting square from the inclusion ``i: A -> B`` to ``p``."""
    Y, X = p.codomain, p.domain
    for b in search_maps(i.codomain, Y):
        bottom = SimpMap(i.codomain, Y, b)
        low = compose(bottom, i)

        def accept(x: str, c: SimplexRef, low=low) -> bool:
            return p(c) == low.assign[x]

        for a in search_maps(i.domain, X, accept=accept):
            yield LiftProblem(i, p, SimpMap(i.domain, X, a), bottom)


def unsolvable_square(i: SimpMap, p: SimpMap) -> tuple[int, LiftProblem | None]:
    """Count the squares from ``i`` to ``p`` and return the first without a lift."""
    count = 0
    for prob in squares(i, p):
        count += 1
        if solve_lift(prob) is None:
            return count, prob
    return count, None


def rlp_check(p: SimpMap, family: str, n_max: int) -> RLPReport:
    """Right lifting property of ``p`` against a generating family, up to ``n_max``."""
    if n_max < 1:
        raise LiftError("n_max must be >= 1")
    count = 0
    for kind, n, k, i in family_members(family, n_max):
        seen, bad = unsolvable_square(i, p)
        count += seen
        if bad is not None:
            return RLPReport(family, n_max, False, count, {"kind": kind, "n": n, "k": k, **bad.describe()})
    return RLPReport(family, n_max, True, count)


def default_n_max(p: SimpMap) -> int:
    """Two above the larger of the dimensions of source and target."""
    return max(p.domain.dim, p.codomain.dim, 0) + 2


# -- cones and paths ---------------------------------------------------------------


@dataclass
class BasedSSet:
    space: FinSSet
    base: str

    def __post_init__(self) -> None:
        if self.base not in self.space.cells(0):
            raise SSetError(f"{self.base!r} is not a vertex")


CONE_POINT = "*"


def cone_id(x: str) -> str:
    return f"c({x})"


def cone_ref(r: SimplexRef) -> SimplexRef:
    """``c(r)`` in normal form: the cone on a possibly degenerate simplex."""
    return SimplexRef(bar(r.op), cone_id(r.target))


@dataclass
class Cone:
    based: BasedSSet
    j: SimpMap

    @property
    def space(self) -> FinSSet:
        return self.based.space


def cone(A: FinSSet) -> Cone:
    """``CA``: a base vertex, the simplices of ``A`` and a cone ``c(x)`` on each of them."""
    if CONE_POINT in A:
        raise SSetError(f"{CONE_POINT!r} is reserved for the cone point")
    simplices: dict[int, list[str]] = {0: [CONE_POINT]}
    faces: dict[str, list[SimplexRef]] = {}
    for x in A.ids():
        n = A.dim_of(x)
        simplices.setdefault(n, []).append(x)
        simplices.setdefault(n + 1, []).append(cone_id(x))
        faces[x] = list(A.faces[x])
        if n == 0:
            faces[cone_id(x)] = [nondeg(x, 0), nondeg(CONE_POINT, 0)]
        else:
            faces[cone_id(x)] = [nondeg(x, n)] + [cone_ref(f) for f in A.faces[x]]
    CA = FinSSet(simplices, faces)
    return Cone(BasedSSet(CA, CONE_POINT), SimpMap(A, CA, {x: CA.ref(x) for x in A.ids()}))


def cone_map(f: SimpMap, CA: Cone | None = None, CB: Cone | None = None) -> SimpMap:
    CA = CA or cone(f.domain)
    CB = CB or cone(f.codomain)
    assign = {CONE_POINT: nondeg(CONE_POINT, 0)}
    for x, r in f.assign.items():
        assign[x] = r
        assign[cone_id(x)] = cone_ref(r)
    return SimpMap(CA.space, CB.space, assign)


@dataclass
class PathSpace:
    space: FinSSet
    jbar: SimpMap
    base: str
    model: RawModel
    source: BasedSSet


def path(B: BasedSSet) -> PathSpace:
    """``PB``: ``n``-simplices are ``(n+1)``-simplices of ``B`` starting at the base vertex."""
    Y, y = B.space, B.base
    model = RawModel(lambda th, z: Y.act(bar(th), z), ref_name, lambda z: z.dim - 1)

    def raw(n: int) -> Iterator[SimplexRef]:
        for z in Y.simplices(n + 1):
            if Y.act((0,), z).target == y:
                yield z

    P = model.build((n, raw(n)) for n in range(max(Y.dim, 0) + 1))
    jbar = SimpMap(P, Y, {k: Y.act(tuple(range(1, P.dim_of(k) + 2)), z) for k, z in model.raw.items()})
    base = ref_name(SimplexRef((0, 0), y))
    return PathSpace(P, jbar, base, model, B)


def cone_counit(PB: PathSpace, CP: Cone | None = None) -> SimpMap:
    """The evaluation ``C(PB) -> B`` adjoint to the identity of ``PB``."""
    CP = CP or cone(PB.space)
    Y = PB.source.space
    assign = {CONE_POINT: nondeg(PB.source.base, 0)}
    for k, z in PB.model.raw.items():
        assign[k] = PB.jbar.assign[k]
        assign[cone_id(k)] = z
    return SimpMap(CP.space, Y, assign)


def transpose_to_path(g: SimpMap, A: FinSSet, PB: PathSpace, CA: Cone) -> SimpMap:
    """A based map ``CA -> B`` becomes ``A -> PB``: ``a -> g(c(a))``."""
    return SimpMap(A, PB.space, {x: PB.model.normalize(g.assign[cone_id(x)]) for x in A.ids()})


def transpose_to_cone(f: SimpMap, PB: PathSpace, CA: Cone) -> SimpMap:
    """A map ``A -> PB`` becomes a based map ``CA -> B``."""
    Y = PB.source.space
    assign = {CONE_POINT: nondeg(PB.source.base, 0)}
    for x, r in f.assign.items():
        assign[x] = PB.jbar(r)
        assign[cone_id(x)] = PB.model.raw_of(r)
    return SimpMap(CA.space, Y, assign)


@dataclass
class ConePathCounts:
    based_cone_maps: int
    path_maps: int
    transposes_inverse: bool

    @property
    def ok(self) -> bool:
        return self.based_cone_maps == self.path_maps and self.transposes_inverse


def cone_path_adjunction(A: FinSSet, B: BasedSSet) -> ConePathCounts:
    CA = cone(A)
    PB = path(B)
    fixed = {CONE_POINT: nondeg(B.base, 0)}
    left = [SimpMap(CA.space, B.space, a) for a in search_maps(CA.space, B.space, fixed=fixed)]
    right = [SimpMap(A, PB.space, a) for a in search_maps(A, PB.space)]
    inverse = all(transpose_to_cone(transpose_to_path(g, A, PB, CA), PB, CA).same_as(g) for g in left) and all(
        transpose_to_path(transpose_to_cone(f, PB, CA), A, PB, CA).same_as(f) for f in right
    )
    return ConePathCounts(len(left), len(right), inverse)


def cone_corner(f: SimpMap) -> SimpMap:
    """``Ĉf: B ⊔_A CA -> CB``."""
    if not f.is_inclusion():
        raise SSetError("cone_corner needs an inclusion")
    CA, CB = cone(f.domain), cone(f.codomain)
    P = pushout(CA.j, f)
    return P.induced(CB.j, cone_map(f, CA, CB))


# -- contractions ------------------------------------------------------------------


def _zeros(e: SimplexRef) -> int:
    return sum(1 for v in simplex(1).vertices(e) if v == "0")


@dataclass
class Contraction:
    """A homotopy with its two end inclusions and the verified end equations."""

    homotopy: SimpMap
    end0: SimpMap
    end1: SimpMap
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def cone_contraction(A: FinSSet) -> Contraction:
    """``H: C(A × Δ[1]) -> CA``, constant at the base on ``C(A × 0)`` and the identity on ``C(A × 1)``.

    A simplex ``(a, e)`` whose ``Δ[1]`` part has ``j`` zeros sends its first
    ``j`` vertices to the cone point and keeps the rest: ``H c(a, e) =
    θ_j* c(a)`` with ``θ_j = (0, 0^j, j+1, ..., m)``.
    """
    cyl = product(A, simplex(1))
    C2 = cone(cyl.space)
    CA = cone(A)
    assign = {CONE_POINT: nondeg(CONE_POINT, 0)}
    for p in cyl.space.ids():
        a, e = cyl.pr1.assign[p], cyl.pr2.assign[p]
        j = _zeros(e)
        m = a.dim + 1
        ca = cone_ref(a)
        assign[cone_id(p)] = CA.space.act((0,) + (0,) * j + tuple(range(j + 1, m + 1)), ca)
        assign[p] = CA.space.act((0,) * j + tuple(range(j + 1, m + 1)), ca)
    H = SimpMap(C2.space, CA.space, assign)
    _, i0, i1 = cylinder_ends(A, cyl)
    e0 = cone_map(i0, CA, C2)
    e1 = cone_map(i1, CA, C2)
    const = SimpMap(CA.space, CA.space, {x: SimplexRef((0,) * (CA.space.dim_of(x) + 1), CONE_POINT) for x in CA.space.ids()})
    checks = {
        "simplicial": H.is_valid(),
        "end0_constant_at_base": compose(H, e0).same_as(const),
        "end1_identity": compose(H, e1).same_as(SimpMap.identity(CA.space)),
    }
    return Contraction(H, e0, e1, checks)


def path_contraction(B: BasedSSet, PB: PathSpace | None = None) -> Contraction:
    """``Ĥ: PB × Δ[1] -> PB``, the transpose of ``ev ∘ H``."""
    PB = PB or path(B)
    P = PB.space
    cyl = product(P, simplex(1))
    C2 = cone(cyl.space)
    CP = cone(P)
    contraction = cone_contraction(P)
    ev = cone_counit(PB, CP)
    g = compose(ev, contraction.homotopy)
    Hh = transpose_to_path(g, cyl.space, PB, C2)
    _, i0, i1 = cylinder_ends(P, cyl)
    const = SimpMap(P, P, {x: SimplexRef((0,) * (P.dim_of(x) + 1), PB.base) for x in P.ids()})
    checks = {
        "simplicial": Hh.is_valid(),
        "end0_constant_at_base": compose(Hh, i0).same_as(const),
        "end1_identity": compose(Hh, i1).same_as(SimpMap.identity(P)),
    }
    return Contraction(Hh, i0, i1, checks)


# -- homotopy fibers ---------------------------------------------------------------


@dataclass
class HomotopyFiber:
    pullback: Product  # space P(p,y), pr1 to X, pr2 = p̄ to P(Y,y)
    path: PathSpace
    fiber: FinSSet
    fiber_inclusion: SimpMap  # p^{-1}(y) -> P(p,y)

    @property
    def space(self) -> FinSSet:
        return self.pullback.space


def homotopy_fiber(p: SimpMap, y: str) -> HomotopyFiber:
    """``P(p, y)``: the pullback of ``j̄: P(Y, y) -> Y`` along ``p``."""
    Y = p.codomain
    if y not in Y.cells(0):
        raise SSetError(f"{y!r} is not a vertex")
    PY = path(BasedSSet(Y, y))
    pb = pullback(p, PY.jbar)
    keep = [x for x in p.domain.ids() if p.assign[x].target == y]
    fib, incl = p.domain.subcomplex(keep)
    base_const = SimpMap(fib, PY.space, {x: SimplexRef((0,) * (fib.dim_of(x) + 1), PY.base) for x in fib.ids()})
    fi = pb.lift(incl, base_const)
    return HomotopyFiber(pb, PY, fib, fi)


def homotopy_fiber_over(phi: OverNerve, b: str) -> HomotopyFiber:
    """``P(φ, b)`` for ``φ: X -> N O``, using the nerve truncated one dimension above ``X``."""
    N = nerve(phi.base, max(phi.total.dim, 0) + 1)
    return homotopy_fiber(phi.to_nerve(N), b)


@dataclass
class FiberRetraction:
    retraction: SimpMap  # P(p,y) -> p^{-1}(y)
    homotopy: SimpMap  # P(p,y) × Δ[1] -> P(p,y)
    problem: LiftProblem
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def fiber_retraction(p: SimpMap, y: str, n_max: int | None = None, require_fibration: bool = True) -> FiberRetraction:
    """Deform ``P(p, y)`` onto the fiber by lifting in the prism square with bottom ``Ĥ ∘ p̄``."""
    if require_fibration:
        rep = rlp_check(p, "right_horns", n_max or default_n_max(p))
        if not rep.passed:
            raise LiftError(f"not a right fibration up to n_max={rep.n_max}: {rep.witness}")
    hf = homotopy_fiber(p, y)
    Pp = hf.space
    pbar = hf.pullback.pr2
    Hh = path_contraction(hf.path.source, hf.path).homotopy
    cyl = product(Pp, simplex(1))
    fib_ids = hf.fiber_inclusion.image_ids()
    gens = [q for q in cyl.space.ids() if cyl.pr1.assign[q].target in fib_ids or _zeros(cyl.pr2.assign[q]) == 0]
    sub, i = cyl.space.subcomplex(gens)
    top = compose(cyl.pr1, i)
    P1 = product(hf.path.space, simplex(1))
    bottom = compose(Hh, product_map(pbar, SimpMap.identity(simplex(1)), cyl, P1))
    prob = LiftProblem(i, pbar, top, bottom)
    L = solve_lift(prob)
    if L is None:
        raise LiftError(f"prism lifting problem has no solution: {prob.describe()}")
    _, i0, i1 = cylinder_ends(Pp, cyl)
    back = {r.target: x for x, r in hf.fiber_inclusion.assign.items()}
    end0 = compose(L, i0)
    if any(r.target not in back for r in end0.assign.values()):
        raise LiftError("end 0 of the deformation leaves the fiber")
    r = SimpMap(Pp, hf.fiber, {x: SimplexRef(ref.op, back[ref.target]) for x, ref in end0.assign.items()})
    checks = {
        "retraction_simplicial": r.is_valid(),
        "retraction_of_inclusion": compose(r, hf.fiber_inclusion).same_as(SimpMap.identity(hf.fiber)),
        "homotopy_simplicial": L.is_valid(),
        "end0_is_inclusion_after_retraction": end0.same_as(compose(hf.fiber_inclusion, r)),
        "end1_identity": compose(L, i1).same_as(SimpMap.identity(Pp)),
    }
    return FiberRetraction(r, L, prob, checks)


# -- pushout-products and mapping spaces ------------------------------------------------


def pushout_product(i: SimpMap, f: SimpMap) -> SimpMap:
    """``i □ f: (K × B) ⊔_{K × A} (L × A) -> L × B``."""
    if not (i.is_inclusion() and f.is_inclusion()):
        raise SSetError("pushout_product needs inclusions")
    K, L, A, B = i.domain, i.codomain, f.domain, f.codomain
    KA, KB, LA, LB = product(K, A), product(K, B), product(L, A), product(L, B)
    idK, idL, idA, idB = (SimpMap.identity(Z) for Z in (K, L, A, B))
    ka_kb = product_map(idK, f, KA, KB)
    ka_la = product_map(i, idA, KA, LA)
    P = pushout(ka_kb, ka_la)
    return P.induced(product_map(idL, f, LA, LB), product_map(i, idB, KB, LB))


def _map_key(n: int, g: SimpMap) -> str:
    return f"{n}" + "{" + ",".join(f"{x}:{ref_name(g.assign[x])}" for x in sorted(g.assign)) + "}"


@dataclass
class MappingSpace:
    space: FinSSet
    model: RawModel
    source: FinSSet
    target: FinSSet
    dim_bound: int
    products: dict[int, Product]

    def prod(self, n: int) -> Product:
        return _prod(self.source, self.products, n)

    def dim_of(self, g: SimpMap) -> int:
        return _dim_of_map(g, self.products)


def _prod(K: FinSSet, prods: dict[int, Product], n: int) -> Product:
    if n not in prods:
        prods[n] = product(K, simplex(n))
    return prods[n]


def _dim_of_map(g: SimpMap, prods: dict[int, Product]) -> int:
    for n, P in prods.items():
        if g.domain is P.space:
            return n
    raise SSetError("map does not come from this mapping space")


def mapping_space(K: FinSSet, X: FinSSet, dim_bound: int) -> MappingSpace:
    """``Map(K, X)`` truncated at ``dim_bound``: ``n``-simplices are maps ``K × Δ[n] -> X``."""
    if dim_bound < 0:
        raise SSetError("dim_bound must be >= 0")
    prods: dict[int, Product] = {}
    idK = SimpMap.identity(K)

    def act(theta: Values, g: SimpMap) -> SimpMap:
        m, n = len(theta) - 1, _dim_of_map(g, prods)
        along = product_map(idK, simplex_map(theta, n), _prod(K, prods, m), prods[n])
        return compose(g, along)

    model = RawModel(act, lambda g: _map_key(_dim_of_map(g, prods), g), lambda g: _dim_of_map(g, prods))

    def raw(n: int) -> Iterator[SimpMap]:
        P = _prod(K, prods, n)
        for a in search_maps(P.space, X):
            yield SimpMap(P.space, X, a)

    space = model.build((n, raw(n)) for n in range(dim_bound + 1))
    return MappingSpace(space, model, K, X, dim_bound, prods)


def mapping_map(M1: MappingSpace, M2: MappingSpace, pre: SimpMap | None = None, post: SimpMap | None = None) -> SimpMap:
    """``Map(K, X) -> Map(K', X')`` by restriction along ``pre: K' -> K`` and composition with ``post: X -> X'``."""
    assign = {}
    for k, g in M1.model.raw.items():
        n = M1.dim_of(g)
        P2 = M2.prod(n)
        if pre is not None:
            h = compose(g, product_map(pre, SimpMap.identity(simplex(n)), P2, M1.prod(n)))
        else:
            h = SimpMap(P2.space, g.codomain, g.assign)
        if post is not None:
            h = compose(post, h)
        assign[k] = M2.model.normalize(SimpMap(P2.space, M2.target, h.assign))
    return SimpMap(M1.space, M2.space, assign)


def mapping_box(i: SimpMap, p: SimpMap, dim_bound: int) -> SimpMap:
    """``Map(L, X) -> Map(K, X) ×_{Map(K, Y)} Map(L, Y)``, truncated at ``dim_bound``."""
    K, L = i.domain, i.codomain
    X, Y = p.domain, p.codomain
    LX, KX = mapping_space(L, X, dim_bound), mapping_space(K, X, dim_bound)
    KY, LY = mapping_space(K, Y, dim_bound), mapping_space(L, Y, dim_bound)
    kx_ky = mapping_map(KX, KY, post=p)
    ly_ky = mapping_map(LY, KY, pre=i)
    pb = pullback(kx_ky, ly_ky)
    lx_kx = mapping_map(LX, KX, pre=i)
    lx_ly = mapping_map(LX, LY, post=p)
    return pb.lift(lx_kx, lx_ly)


__all__ = [
    "BasedSSet",
    "Cone",
    "Contraction",
    "FiberRetraction",
    "HomotopyFiber",
    "LiftError",
    "LiftProblem",
    "MappingSpace",
    "PathSpace",
    "RLPReport",
    "cone",
    "cone_contraction",
    "cone_corner",
    "cone_counit",
    "cone_map",
    "cone_path_adjunction",
    "default_n_max",
    "family_members",
    "fiber_retraction",
    "homotopy_fiber",
    "homotopy_fiber_over",
    "mapping_box",
    "mapping_map",
    "mapping_space",
    "path",
    "path_contraction",
    "pushout_product",
    "rlp_check",
    "simplex_to_map",
    "solve_lift",
    "squares",
    "transpose_to_cone",
    "transpose_to_path",
    "unsolvable_square",
]

"""Classification of maps over a nerve, generating sets and bounded checks of the model structure."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .cat import FinCategory
from .fibrations import RLPReport, default_n_max, rlp_check
from .homology import Tag, WEVerdict, we_evidence
from .over_nerve import (
    F_map,
    F_sset,
    OverNerve,
    SSetDiagram,
    attachment_pushout_check,
    counit_sset,
    E_sset,
    is_map_over,
    simplex_over,
    weak_equiv_over_nerve,
)
from .sset import SimpMap, boundary, fiber_over_vertex, horn, is_injective_on_simplices, standard_inclusion, to_point


class ModelCheckError(ValueError):
    pass


@dataclass
class OverNerveMap:
    """``f: X -> Y`` commuting with the labels of ``source`` and ``target``."""

    f: SimpMap
    source: OverNerve
    target: OverNerve
    name: str = ""

    def __post_init__(self) -> None:
        if self.source.base is not self.target.base and self.source.base.morphisms != self.target.base.morphisms:
            raise ModelCheckError("source and target live over different categories")
        if not (self.f.domain.same_as(self.source.total) and self.f.codomain.same_as(self.target.total)):
            raise ModelCheckError("map does not go between the given totals")
        if not self.f.is_valid() or not is_map_over(self.f, self.source, self.target):
            raise ModelCheckError(f"{self.name or 'map'} is not a map over the nerve")

    @property
    def base(self) -> FinCategory:
        return self.source.base

    def fiber_map(self, b: str) -> SimpMap:
        """``φ^{-1}(b) -> ψ^{-1}(b)``."""
        X, Y = self.source.total, self.target.total
        fx, ix = X.subcomplex([x for x in X.ids() if all(self.source.vertex_label[v] == b for v in X.vertices(X.ref(x)))])
        fy, iy = Y.subcomplex([y for y in Y.ids() if all(self.target.vertex_label[v] == b for v in Y.vertices(Y.ref(y)))])
        back = {r.target: y for y, r in iy.assign.items()}
        assign = {}
        for x in fx.ids():
            r = self.f.assign[ix.assign[x].target]
            assign[x] = type(r)(r.op, back[r.target])
        return SimpMap(fx, fy, assign)


@dataclass
class Classification:
    cofibration: bool
    fibration: bool
    right_fibration: RLPReport
    fiber_fibrations: dict[str, RLPReport]
    weak_equivalence: dict[str, WEVerdict]
    acyclic_fibration: RLPReport
    n_max: int

    @property
    def is_weak_equivalence(self) -> bool:
        return all(v.is_equivalence for v in self.weak_equivalence.values())

    def to_json(self) -> dict[str, Any]:
        return {
            "n_max": self.n_max,
            "cofibration": self.cofibration,
            "fibration": self.fibration,
            "right_fibration": self.right_fibration.to_json(),
            "fiber_fibrations": {b: r.to_json() for b, r in self.fiber_fibrations.items()},
            "weak_equivalence": {b: v.to_json() for b, v in self.weak_equivalence.items()},
            "acyclic_fibration": self.acyclic_fibration.to_json(),
        }


def classify(fm: OverNerveMap, n_max: int | None = None) -> Classification:
    """Cofibration exactly; fibration and acyclic fibration up to ``n_max``; weak equivalence per object."""
    n = n_max or default_n_max(fm.f)
    right = rlp_check(fm.f, "right_horns", n)
    fibers = {b: rlp_check(fm.fiber_map(b), "all_horns", n) for b in fm.base.objects}
    fibration = right.passed and all(r.passed for r in fibers.values())
    return Classification(
        cofibration=is_injective_on_simplices(fm.f),
        fibration=fibration,
        right_fibration=right,
        fiber_fibrations=fibers,
        weak_equivalence=weak_equiv_over_nerve(fm.f, fm.source, fm.target),
        acyclic_fibration=rlp_check(fm.f, "boundaries", n),
        n_max=n,
    )


# -- acyclic right fibrations -----------------------------------------------------------


@dataclass
class AcyclicityReport:
    """Hypothesis: right fibration with Kan fibers that look like a point; conclusion: boundary RLP."""

    right_fibration: bool
    kan_fibers: dict[str, bool]
    point_fibers: dict[str, WEVerdict]
    boundaries: RLPReport

    @property
    def hypothesis(self) -> bool:
        return (
            self.right_fibration
            and all(self.kan_fibers.values())
            and all(v.is_equivalence for v in self.point_fibers.values())
        )

    @property
    def violated(self) -> bool:
        return self.hypothesis and not self.boundaries.passed

    def to_json(self) -> dict[str, Any]:
        return {
            "hypothesis": self.hypothesis,
            "right_fibration": self.right_fibration,
            "kan_fibers": self.kan_fibers,
            "point_fibers": {v: w.to_json() for v, w in self.point_fibers.items()},
            "boundaries": self.boundaries.to_json(),
            "violated": self.violated,
        }


def acyclicity_check(p: SimpMap, n_max: int | None = None) -> AcyclicityReport:
    """Test whether ``p`` meets the hypothesis and, if so, whether it lifts against every boundary."""
    n = n_max or default_n_max(p)
    kan, pts = {}, {}
    for v in p.codomain.cells(0):
        F, _ = fiber_over_vertex(p, v)
        kan[v] = rlp_check(to_point(F), "all_horns", n).passed
        pts[v] = we_evidence(to_point(F))
    return AcyclicityReport(rlp_check(p, "right_horns", n).passed, kan, pts, rlp_check(p, "boundaries", n))


# -- generating sets ------------------------------------------------------------------


def _is_constant(O: FinCategory, ms) -> bool:
    return all(O.is_identity(m) for m in ms)


def generating_sets(O: FinCategory, n_max: int) -> tuple[list[OverNerveMap], list[OverNerveMap]]:
    """``I``: boundaries of every labeled simplex; ``J``: right horns, plus zero-horns of constant simplices."""
    if n_max < 1:
        raise ModelCheckError("n_max must be >= 1")
    I, J = [], []
    for n in range(n_max + 1):
        for objs, ms in O.chains(n):
            sigma = simplex_over(O, objs, ms)
            label = "->".join(objs)
            bd = standard_inclusion(boundary(n), n)
            I.append(OverNerveMap(bd, sigma.restrict(bd), sigma, f"∂Δ[{n}] over {label}"))
            if n == 0:
                continue
            for k in range(0 if _is_constant(O, ms) else 1, n + 1):
                hk = standard_inclusion(horn(n, k), n)
                J.append(OverNerveMap(hk, sigma.restrict(hk), sigma, f"Λ^{k}[{n}] over {label}"))
    return I, J


# -- recognition criteria -----------------------------------------------------------------


@dataclass
class Violation:
    item: str
    member: str
    detail: dict[str, Any]


@dataclass
class RecognitionReport:
    checked: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict[str, Any]:
        return {
            "checked": self.checked,
            "ok": self.ok,
            "violations": [{"item": v.item, "member": v.member, "detail": v.detail} for v in self.violations],
        }


def _not_eq(c: Classification) -> dict[str, Any]:
    return {b: v.to_json() for b, v in c.weak_equivalence.items() if v.tag is Tag.NOT_EQ}


def recognition_smoke(suite: list[tuple[OverNerveMap, bool]], n_max: int | None = None) -> RecognitionReport:
    """Check the implications demanded of each member; the flag marks members of ``J``."""
    rep = RecognitionReport(len(suite))
    for fm, in_J in suite:
        c = classify(fm, n_max)
        if in_J and not (c.cofibration and c.is_weak_equivalence):
            rep.violations.append(Violation("J members are acyclic cofibrations", fm.name, _not_eq(c)))
        if c.acyclic_fibration.passed and not c.is_weak_equivalence:
            rep.violations.append(Violation("I-injectives are weak equivalences", fm.name, _not_eq(c)))
        if c.fibration and c.is_weak_equivalence and not c.acyclic_fibration.passed:
            rep.violations.append(
                Violation("acyclic J-injectives are I-injectives", fm.name, c.acyclic_fibration.witness or {})
            )
        if c.acyclic_fibration.passed and not c.fibration:
            rep.violations.append(
                Violation("acyclic fibrations are fibrations", fm.name, c.right_fibration.witness or {})
            )
    return rep


def fixture_suite(O: FinCategory, n_max: int = 2) -> list[tuple[OverNerveMap, bool]]:
    """``I`` and ``J`` members, identities of labeled simplices and degeneracy maps of edges."""
    from .sset import simplex_map, vertex_inclusion

    I, J = generating_sets(O, n_max)
    suite = [(m, False) for m in I] + [(m, True) for m in J]
    for objs, ms in O.chains(1, nondegenerate=True):
        sigma = simplex_over(O, objs, ms)
        suite.append((OverNerveMap(SimpMap.identity(sigma.total), sigma, sigma, f"identity over {objs[0]}->{objs[1]}"), False))
        s0 = simplex_over(O, (objs[0],) + objs, (O.ident(objs[0]),) + ms)
        suite.append((OverNerveMap(simplex_map((0, 0, 1), 1), s0, sigma, f"s_0 over {objs[0]}->{objs[1]}"), False))
        pt = simplex_over(O, objs[:1], ())
        suite.append((OverNerveMap(vertex_inclusion(1, 0), pt, sigma, f"vertex 0 of {objs[0]}->{objs[1]}"), False))
    return suite


# -- Quillen adjunction on generators ---------------------------------------------------------


@dataclass
class QuillenReport:
    cofibrations: dict[str, bool]
    acyclic: dict[str, bool]
    counits: dict[str, dict[str, Any]]

    @property
    def ok(self) -> bool:
        return (
            all(self.cofibrations.values())
            and all(self.acyclic.values())
            and all(c["ok"] for c in self.counits.values())
        )

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "cofibrations": self.cofibrations, "acyclic": self.acyclic, "counits": self.counits}


def quillen_check(O: FinCategory, n_max: int = 2, diagrams: list[tuple[str, SSetDiagram]] | None = None) -> QuillenReport:
    """``F`` on ``I`` and ``J``, and the counit on each test diagram."""
    from .fixtures import sset_diagrams

    I, J = generating_sets(O, n_max)
    cofib: dict[str, bool] = {}
    for m in I:
        Ff = F_map(m.f, F_sset(m.source), F_sset(m.target))
        ok = all(g.is_inclusion() for g in Ff.values())
        if m.target.total.dim >= 1:
            ok = ok and attachment_pushout_check(m.target, m.f).ok
        cofib[m.name] = ok
    acyc = {m.name: all(v.is_equivalence for v in weak_equiv_over_nerve(m.f, m.source, m.target).values()) for m in J}
    if diagrams is None:
        diagrams = [(f"constant {K.value[O.objects[0]].counts()}", K) for K in sset_diagrams(O)]
    counits: dict[str, dict[str, Any]] = {}
    for name, psi in diagrams:
        E = E_sset(psi)
        for b in O.objects:
            cd = counit_sset(psi, b, E)
            counits[f"{name} at {b}"] = {
                "ok": cd.ok and cd.verdict.is_equivalence,
                "checks": cd.checks,
                "verdict": cd.verdict.tag.value,
                "exact": E.exact,
            }
    return QuillenReport(cofib, acyc, counits)

"""Deterministic check batteries run by ``overnerve suite``."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from . import cat, fixtures
from .fibrations import (
    cone_contraction,
    cone_corner,
    fiber_retraction,
    homotopy_fiber_over,
    path_contraction,
    BasedSSet,
    rlp_check,
)
from .homology import Tag, homology
from .model_check import classify, fixture_suite, generating_sets, quillen_check, recognition_smoke, OverNerveMap
from .over_nerve import (
    F_sset,
    attachment_pushout_check,
    check_adjunction,
    count_sequences,
    nat_transforms,
    simplex_over,
    weak_equiv_over_nerve,
)
from .sset import boundary, find_arrow_isomorphism, find_isomorphism, horn, simplex, standard_inclusion, vertex_inclusion


@dataclass
class Check:
    name: str
    passed: bool
    detail: Any = None

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


# -- sec2: F, E and the counterexample ----------------------------------------------


def example_checks() -> list[Check]:
    O, phi, psi, f = fixtures.example_data()
    Fphi, Fpsi = F_sset(phi), F_sset(psi)
    from .homology import we_evidence

    under = we_evidence(f)
    over = weak_equiv_over_nerve(f, phi, psi)
    return [
        Check("(Fφ)(1) is empty", Fphi.value["1"].is_empty()),
        Check("(Fψ)(1) ≅ Δ[0]", find_isomorphism(Fpsi.value["1"], simplex(0)) is not None),
        Check("underlying map EVIDENCE_EQ", under.tag is Tag.EVIDENCE_EQ, under.to_json()),
        Check("NOT_EQ over the nerve at 1", over["1"].tag is Tag.NOT_EQ, over["1"].to_json()),
    ]


def sec2() -> list[Check]:
    out = example_checks()
    cats = fixtures.categories()
    for name in ("[1]", "span"):
        O = cats[name]
        for i, phi in enumerate(fixtures.over_nerves(O)[:3]):
            for j, psi in enumerate(fixtures.sset_diagrams(O)[:2]):
                rep = check_adjunction(phi, psi)
                out.append(Check(f"sSet adjunction {name} φ{i} ψ{j}", rep.ok, [rep.hom_over, rep.hom_nat]))
        for i, phi in enumerate(fixtures.cats_over(O)[:2]):
            for j, psi in enumerate(fixtures.cat_diagrams(O)):
                rep = cat.check_adjunction_cat(phi, psi)
                out.append(Check(f"Cat adjunction {name} φ{i} ψ{j}", rep.ok, [rep.hom_over, rep.hom_nat]))
    for name in ("[1]", "[2]", "idem"):
        O = cats[name]
        for n in range(1, 3):
            for objs, ms in O.chains(n):
                sigma = simplex_over(O, objs, ms)
                for label, sub in [("∂", boundary(n))] + [(f"Λ^{k}", horn(n, k)) for k in range(1, n + 1)]:
                    w = attachment_pushout_check(sigma, standard_inclusion(sub, n))
                    out.append(Check(f"attachment {name} {'->'.join(objs)} {label}", w.ok))
        for sigma in fixtures.chains_over(O, 2):
            for j, psi in enumerate(fixtures.sset_diagrams(O)[:2]):
                a, b = count_sequences(psi, sigma), sum(1 for _ in nat_transforms(F_sset(sigma), psi))
                out.append(Check(f"(Eψ)_σ count {name} {sigma.chain_of(sigma.total.ids()[-1])[0]} ψ{j}", a == b, [a, b]))
    return out


# -- sec4: right fibrations -------------------------------------------------------------


def sec4() -> list[Check]:
    out = []
    for n in range(1, 3):
        for k in range(n + 1):
            iso = find_arrow_isomorphism(cone_corner(standard_inclusion(horn(n, k), n)), standard_inclusion(horn(n + 1, k + 1), n + 1))
            out.append(Check(f"cone corner Λ^{k}[{n}]", iso is not None))
    for label, A in (("Δ[0]", simplex(0)), ("Δ[1]", simplex(1)), ("∂Δ[2]", boundary(2))):
        out.append(Check(f"cone contraction on {label}", cone_contraction(A).ok))
        out.append(Check(f"path contraction on {label}", path_contraction(BasedSSet(A, "0")).ok))
    for name, O in fixtures.categories().items():
        F = None
        for i, phi in enumerate(fixtures.over_nerves(O)):
            F = F_sset(phi)
            ok = all(find_isomorphism(homotopy_fiber_over(phi, b).space, F.value[b]) is not None for b in O.objects)
            out.append(Check(f"homotopy fiber = F over {name} #{i}", ok))
    for name, p, y in fixtures.right_fibrations():
        out.append(Check(f"fiber retraction {name}", fiber_retraction(p, y).ok))
    out.append(Check("vertex 0 is a right fibration", rlp_check(vertex_inclusion(1, 0), "right_horns", 3).passed))
    out.append(Check("vertex 1 is not a right fibration", not rlp_check(vertex_inclusion(1, 1), "right_horns", 1).passed))
    return out


# -- sec5: the model structure ----------------------------------------------------------------


def sec5() -> list[Check]:
    out = []
    cats = fixtures.categories()
    I, J = generating_sets(cats["[0]"], 1)
    out.append(Check("generators over [0] up to 1", (len(I), len(J)) == (2, 2), [len(I), len(J)]))
    O, phi, psi, f = fixtures.example_data()
    c = classify(OverNerveMap(f, phi, psi))
    out.append(
        Check(
            "example classification",
            c.cofibration and c.weak_equivalence["1"].tag is Tag.NOT_EQ and not c.acyclic_fibration.passed,
        )
    )
    for name in ("[0]", "[1]", "idem"):
        O = cats[name]
        rep = recognition_smoke(fixture_suite(O, 2))
        out.append(Check(f"recognition {name}", rep.ok, rep.to_json()["violations"]))
        q = quillen_check(O, 2)
        out.append(Check(f"quillen {name}", q.ok))
    for name in ("[1]", "[2]"):
        O = cats[name]
        for psi in fixtures.cat_diagrams(O):
            for b in O.objects:
                out.append(Check(f"Cat counit retraction {name} at {b}", cat.counit_cat_retraction(psi, b).ok))
    for n in range(5):
        h = homology(simplex(n))
        out.append(Check(f"H(Δ[{n}])", h.betti == (1,) + (0,) * n))
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {"sec2": sec2, "sec4": sec4, "sec5": sec5}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [c for key in ("sec2", "sec4", "sec5") for c in SUITES[key]()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name]()

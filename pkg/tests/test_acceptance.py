"""Acceptance battery: one pass/fail line per criterion.

Run ``pytest tests/test_acceptance.py -v`` (the summary block is printed at
the end of the module) or ``python -m tests.test_acceptance``.
"""
from __future__ import annotations

import pytest

from overnerve import cat
from overnerve.fibrations import (
    BasedSSet,
    cone_contraction,
    cone_corner,
    fiber_retraction,
    homotopy_fiber_over,
    path_contraction,
    rlp_check,
)
from overnerve.fixtures import (
    categories,
    cat_diagrams,
    cats_over,
    chains_over,
    example_psi_nonconstant,
    over_nerves,
    right_fibrations,
    sset_diagrams,
    suite_maps,
)
from overnerve.homology import Tag, homology
from overnerve.model_check import acyclicity_check, fixture_suite, quillen_check, recognition_smoke
from overnerve.over_nerve import (
    E_sset,
    F_sset,
    attachment_pushout_check,
    check_adjunction,
    count_sequences,
    counit_sset,
    nat_transforms,
    simplex_over,
    weak_equiv_over_nerve,
)
from overnerve.sset import (
    boundary,
    find_arrow_isomorphism,
    find_isomorphism,
    horn,
    product,
    simplex,
    standard_inclusion,
)
from overnerve.suites import example_checks

CATS = categories()
RESULTS: dict[int, tuple[bool, str]] = {}


def _diagrams(O):
    extra = [example_psi_nonconstant()] if O.objects == ["0", "1"] and len(O.morphisms) == 3 else []
    return sset_diagrams(O) + extra


def _face_opposite_0(n):
    full = simplex(n)
    return full.subcomplex([x for x in full.ids() if "0" not in x])[0]


# -- criteria ---------------------------------------------------------------------


def criterion_1():
    checks = example_checks()
    bad = [c.name for c in checks if not c.passed]
    return not bad, f"{len(checks) - len(bad)}/{len(checks)} example facts" + (f"; failed {bad}" if bad else "")


def criterion_2():
    sset_pairs = cat_pairs = 0
    failures = []
    for name in ("[1]", "[2]", "span", "idem"):
        O = CATS[name]
        for phi in over_nerves(O)[:3]:
            for psi in sset_diagrams(O)[:2]:
                rep = check_adjunction(phi, psi)
                sset_pairs += 1
                if not (rep.ok and rep.triangles and rep.triangles.ok):
                    failures.append(("sset", name, rep.hom_over, rep.hom_nat))
        for phi in cats_over(O):
            for psi in cat_diagrams(O):
                rep = cat.check_adjunction_cat(phi, psi)
                cat_pairs += 1
                if not rep.ok:
                    failures.append(("cat", name, rep.hom_over, rep.hom_nat))
    ok = not failures and sset_pairs >= 3 and cat_pairs >= 3
    return ok, f"{sset_pairs} sSet pairs, {cat_pairs} Cat pairs" + (f"; failures {failures}" if failures else "")


def criterion_3():
    count, failures = 0, []
    for name, O in CATS.items():
        for n in range(1, 4):
            subs = [("opposite 0", _face_opposite_0(n)), ("∂", boundary(n))] + [(f"Λ^{k}", horn(n, k)) for k in range(1, n + 1)]
            for objs, ms in O.chains(n):
                sigma = simplex_over(O, objs, ms)
                for label, A in subs:
                    count += 1
                    if not attachment_pushout_check(sigma, standard_inclusion(A, n)).ok:
                        failures.append((name, objs, label))
    return not failures, f"{count} squares with isomorphism witnesses" + (f"; failures {failures[:3]}" if failures else "")


def criterion_4():
    count, failures = 0, []
    for name, O in CATS.items():
        for sigma in chains_over(O, 2):
            for psi in _diagrams(O):
                a = count_sequences(psi, sigma)
                b = sum(1 for _ in nat_transforms(F_sset(sigma), psi))
                count += 1
                if a != b:
                    failures.append((name, a, b))
    return not failures, f"{count} (σ, ψ) pairs" + (f"; mismatches {failures[:3]}" if failures else "")


def criterion_5():
    count, failures, zero_not_eq = 0, [], []
    for name, O in CATS.items():
        for n in range(1, 4):
            for objs, ms in O.chains(n):
                sigma = simplex_over(O, objs, ms)
                for k in range(n + 1):
                    incl = standard_inclusion(horn(n, k), n)
                    v = weak_equiv_over_nerve(incl, sigma.restrict(incl), sigma)
                    if k > 0:
                        count += 1
                        if not all(w.is_equivalence for w in v.values()):
                            failures.append((name, objs, k))
                    elif any(not O.is_identity(m) for m in ms) and any(w.tag is Tag.NOT_EQ for w in v.values()):
                        zero_not_eq.append((name, objs))
    ok = not failures and bool(zero_not_eq)
    return ok, f"{count} horns with k > 0 all EVIDENCE_EQ or better; {len(zero_not_eq)} zero-horn instances NOT_EQ" + (
        f"; failures {failures[:3]}" if failures else ""
    )


def criterion_6():
    cat_count, sset_count, failures = 0, 0, []
    for name in ("[0]", "[1]", "[2]", "span", "idem"):
        O = CATS[name]
        for psi in cat_diagrams(O):
            for b in O.objects:
                r = cat.counit_cat_retraction(psi, b)
                cat_count += 1
                if not (r.checks["epsilon_xi_identity"] and r.checks["omega_natural"] and r.ok):
                    failures.append(("cat", name, b))
    for name in ("[0]", "[1]", "[2]", "span"):
        O = CATS[name]
        for psi in _diagrams(O):
            E = E_sset(psi)
            if not E.exact:
                failures.append(("sset", name, "E not exact"))
                continue
            for b in O.objects:
                cd = counit_sset(psi, b, E)
                sset_count += 1
                if not (cd.ok and cd.verdict.tag is Tag.CERTIFIED_EQ):
                    failures.append(("sset", name, b))
    return not failures, f"{cat_count} Cat retractions, {sset_count} certified sSet counits" + (f"; failures {failures[:3]}" if failures else "")


def criterion_7():
    count, failures = 0, []
    for n in range(1, 4):
        for k in range(n + 1):
            count += 1
            i = cone_corner(standard_inclusion(horn(n, k), n))
            if find_arrow_isomorphism(i, standard_inclusion(horn(n + 1, k + 1), n + 1)) is None:
                failures.append((n, k))
    return not failures, f"{count} horns Λ^k[n], 1 ≤ n ≤ 3, 0 ≤ k ≤ n; the empty n = 0 case is tracked separately" + (
        f"; failures {failures}" if failures else ""
    )


def criterion_8():
    spaces = {"Δ[0]": simplex(0), "Δ[1]": simplex(1), "∂Δ[2]": boundary(2)}
    failures = []
    for label, A in spaces.items():
        c = cone_contraction(A)
        if not c.ok:
            failures.append(("H", label, c.checks))
        p = path_contraction(BasedSSet(A, "0"))
        if not p.ok:
            failures.append(("Ĥ", label, p.checks))
    return not failures, "H and Ĥ on Δ[0], Δ[1], ∂Δ[2]" + (f"; failures {failures}" if failures else "")


def criterion_9():
    count, failures = 0, []
    for name, O in CATS.items():
        for i, phi in enumerate(over_nerves(O)):
            F = F_sset(phi)
            for b in O.objects:
                count += 1
                if find_isomorphism(homotopy_fiber_over(phi, b).space, F.value[b]) is None:
                    failures.append((name, i, b))
    return not failures, f"{count} (φ, b) isomorphisms found" + (f"; failures {failures}" if failures else "")


def criterion_10():
    count, failures = 0, []
    for name, p, y in right_fibrations():
        if not rlp_check(p, "right_horns", 3).passed:
            failures.append((name, "not a right fibration"))
            continue
        r = fiber_retraction(p, y)
        count += 1
        if not (r.checks["retraction_of_inclusion"] and r.ok):
            failures.append((name, r.checks))
    ok = not failures and count >= 3
    return ok, f"{count} right fibrations with verified retraction and homotopy" + (f"; failures {failures}" if failures else "")


def criterion_11():
    maps = suite_maps() + [("Δ[1] x Δ[0] -> Δ[1]", product(simplex(1), simplex(0)).pr1)]
    hyp, violations = 0, []
    for name, p in maps:
        rep = acyclicity_check(p)
        hyp += rep.hypothesis
        if rep.violated:
            violations.append(name)
    return not violations, f"{len(maps)} maps, {hyp} meet the hypothesis, {len(violations)} violations" + (
        f": {violations}" if violations else ""
    )


def criterion_12():
    failures, checked = [], 0
    for name, O in CATS.items():
        rep = recognition_smoke(fixture_suite(O, 2))
        checked += rep.checked
        if not rep.ok:
            failures.append((name, "recognition", len(rep.violations)))
        q = quillen_check(O, 2)
        if not q.ok:
            failures.append((name, "quillen"))
        elif any(c["exact"] and c["verdict"] != Tag.CERTIFIED_EQ.value for c in q.counits.values()):
            failures.append((name, "counit not certified"))
    return not failures, f"{checked} suite maps, zero violations; Quillen checks on {len(CATS)} categories" if not failures else f"failures {failures}"


def criterion_13():
    failures = []
    for n in range(5):
        if homology(simplex(n)).betti != (1,) + (0,) * n:
            failures.append(f"Δ[{n}]")
        # ∂Δ[n] is the (n-1)-sphere; ∂Δ[0] is empty and ∂Δ[1] is two points
        b = homology(boundary(n)).betti
        expect = [0] * max(n, 1)
        if n == 1:
            expect[0] = 2
        elif n >= 2:
            expect[0] += 1
            expect[n - 1] += 1
        if list(b) + [0] * (len(expect) - len(b)) != expect:
            failures.append(f"∂Δ[{n}]")
        for k in range(n + 1) if n else ():
            hb = homology(horn(n, k)).betti
            if list(hb) != [1] + [0] * (len(hb) - 1):
                failures.append(f"Λ^{k}[{n}]")
    return not failures, "Δ[n], ∂Δ[n] for n ≤ 4 and Λ^k[n] for 1 ≤ n ≤ 4" + (f"; failures {failures}" if failures else "")


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 14)}


def _line(i: int, ok: bool, detail: str) -> str:
    return f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.fixture(scope="module", autouse=True)
def summary(request):
    yield
    tr = request.config.pluginmanager.get_plugin("terminalreporter")
    lines = [_line(i, *RESULTS[i]) for i in sorted(RESULTS)]
    if tr is not None:
        tr.write_line("")
        tr.write_sep("=", "acceptance criteria")
        for line in lines:
            tr.write_line(line)
    else:
        print("\n".join(lines))


@pytest.mark.parametrize("i", list(CRITERIA))
def test_criterion(i):
    ok, detail = CRITERIA[i]()
    RESULTS[i] = (ok, detail)
    print(_line(i, ok, detail))
    assert ok, detail


@pytest.mark.xfail(strict=True, reason="Λ^0[0] is empty: its cone corner is ∂Δ[1] -> Δ[1], not Λ^1[1] -> Δ[1], and it is not a point")
def test_empty_horn_degenerate_case():
    i = cone_corner(standard_inclusion(horn(0, 0), 0))
    assert find_arrow_isomorphism(i, standard_inclusion(horn(1, 1), 1)) is not None
    assert homology(horn(0, 0)).betti == (1,)


if __name__ == "__main__":
    for i, fn in CRITERIA.items():
        print(_line(i, *fn()))

"""Command-line interface.

Exit codes: 0 when the check passes, 1 when it fails (including NOT_EQ
verdicts and unsolvable lifting problems), 2 on malformed input.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import cat, fibrations as fib, io, model_check as mc, over_nerve as on
from .homology import Tag, homology, pi0, we_evidence
from .io import InputError
from .sset import SimpMap, find_isomorphism, simplex


@dataclass
class CommandResult:
    exit_code: int
    report: dict[str, Any] = field(default_factory=dict)
    text: str = ""


def _code(ok: bool) -> int:
    return 0 if ok else 1


def _sset_arg(tokens: list[str] | str):
    spec = tokens if isinstance(tokens, str) else ":".join(tokens)
    if spec.endswith(".json"):
        return io.sset_from_json(io.load_json(spec), spec)
    return io.parse_sset_spec(spec)


def _category_arg(s: str) -> cat.FinCategory:
    if s.endswith(".json"):
        return io.category_from_json(io.load_json(s), s)
    return io.category_from_json(s, "category")


def _map_arg(path: str) -> SimpMap:
    return io.map_from_json(io.load_json(path), where=path)


def _counts(X) -> list[int]:
    return list(X.counts())


def _is_cat_file(d: Any) -> bool:
    return isinstance(d, dict) and "total" in d and "projection" in d


# -- commands ------------------------------------------------------------------------------------


def cmd_nerve(a) -> CommandResult:
    C = _category_arg(a.category)
    N = cat.nerve(C, a.depth)
    rep = {"counts": _counts(N.space), "exact": N.exact, "depth": a.depth}
    return CommandResult(0, rep, f"nerve: cells per dimension {rep['counts']}, exact={N.exact}")


def cmd_f_cat(a) -> CommandResult:
    phi = io.cat_over_from_json(io.load_json(a.phi), a.phi)
    out = {b: io.category_to_json(cat.F_cat(phi, b)) for b in phi.base.objects}
    sizes = {b: len(v["objects"]) for b, v in out.items()}
    return CommandResult(0, {"values": out}, f"(Fφ)(b) object counts: {sizes}")


def cmd_e_cat(a) -> CommandResult:
    psi = io.cat_diagram_from_json(io.load_json(a.psi), a.psi)
    E = cat.E_cat(psi)
    return CommandResult(0, io.cat_over_to_json(E), f"Eψ: {len(E.total.objects)} objects, {len(E.total.morphisms)} morphisms")


def cmd_f_sset(a) -> CommandResult:
    phi = io.over_nerve_from_json(io.load_json(a.phi), a.phi)
    F = on.F_sset(phi)
    rep = {b: {"counts": _counts(K), "sset": io.sset_to_json(K)} for b, K in F.value.items()}
    return CommandResult(0, {"values": rep}, "; ".join(f"(Fφ)({b}): {v['counts']}" for b, v in rep.items()))


def cmd_e_sset(a) -> CommandResult:
    psi = io.diagram_from_json(io.load_json(a.psi), a.psi)
    E = on.E_sset(psi, a.depth)
    rep = {"counts": _counts(E.over.total), "depth": E.depth, "exact": E.exact, "over_nerve": io.over_nerve_to_json(E.over)}
    return CommandResult(0, rep, f"Eψ: cells per dimension {rep['counts']}, depth {E.depth}, exact={E.exact}")


def cmd_iota(a) -> CommandResult:
    sigma = io.over_nerve_from_json(io.load_json(a.sigma), a.sigma)
    if find_isomorphism(sigma.total, simplex(sigma.total.dim)) is None:
        raise InputError(f"{a.sigma}: total space is not a standard simplex")
    R, F, comp = on.iota(sigma)
    rep = {b: {"valid": f.is_valid(), "isomorphism": f.is_isomorphism(), "map": io.map_to_json(f)} for b, f in comp.items()}
    ok = all(v["valid"] for v in rep.values())
    return CommandResult(_code(ok), {"components": rep}, "ι components: " + ", ".join(f"{b}: iso={v['isomorphism']}" for b, v in rep.items()))


def cmd_check_adjunction(a) -> CommandResult:
    d1, d2 = io.load_json(a.phi), io.load_json(a.psi)
    if _is_cat_file(d1):
        rep = cat.check_adjunction_cat(io.cat_over_from_json(d1, a.phi), io.cat_diagram_from_json(d2, a.psi))
        out = {
            "level": "cat",
            "hom_over": rep.hom_over,
            "hom_nat": rep.hom_nat,
            "transposes_inverse": rep.transposes_inverse,
            "triangles": rep.triangle_left and rep.triangle_right,
        }
    else:
        srep = on.check_adjunction(io.over_nerve_from_json(d1, a.phi), io.diagram_from_json(d2, a.psi))
        out = {
            "level": "sset",
            "hom_over": srep.hom_over,
            "hom_nat": srep.hom_nat,
            "transposes_inverse": srep.transposes_inverse,
            "triangles": srep.triangles.ok if srep.triangles else None,
        }
        rep = srep
    return CommandResult(_code(rep.ok), out, f"|Hom over| = {out['hom_over']}, |Nat| = {out['hom_nat']}, inverse={out['transposes_inverse']}, triangles={out['triangles']}")


def cmd_counit_check(a) -> CommandResult:
    d = io.load_json(a.psi)
    if isinstance(d, dict) and "values" in d and "base" in d:
        psi_c = io.cat_diagram_from_json(d, a.psi)
        res = {b: cat.counit_cat_retraction(psi_c, b) for b in psi_c.base.objects}
        rep = {b: {"ok": r.ok, "checks": r.checks} for b, r in res.items()}
    else:
        psi = io.diagram_from_json(d, a.psi)
        E = on.E_sset(psi, a.depth)
        res = {b: on.counit_sset(psi, b, E) for b in psi.base.objects}
        rep = {b: {"ok": r.ok, "checks": r.checks, "verdict": r.verdict.to_json()} for b, r in res.items()}
    ok = all(v["ok"] for v in rep.values())
    return CommandResult(_code(ok), rep, "; ".join(f"{b}: {'ok' if v['ok'] else 'FAILED'}" + (f" {v['verdict']['tag']}" if "verdict" in v else "") for b, v in rep.items()))


def cmd_cone(a) -> CommandResult:
    C = fib.cone(_sset_arg(a.sset))
    return CommandResult(0, {"counts": _counts(C.space), "sset": io.sset_to_json(C.space)}, f"CA: cells per dimension {_counts(C.space)}")


def cmd_path(a) -> CommandResult:
    X = _sset_arg(a.sset)
    if a.base not in X.cells(0):
        raise InputError(f"base {a.base!r} is not a vertex")
    P = fib.path(fib.BasedSSet(X, a.base))
    return CommandResult(0, {"counts": _counts(P.space), "base": P.base, "sset": io.sset_to_json(P.space)}, f"PB: cells per dimension {_counts(P.space)}")


def cmd_hofiber(a) -> CommandResult:
    p = _map_arg(a.map)
    if a.y not in p.codomain.cells(0):
        raise InputError(f"{a.y!r} is not a vertex of the codomain")
    hf = fib.homotopy_fiber(p, a.y)
    rep = {"counts": _counts(hf.space), "fiber_counts": _counts(hf.fiber), "sset": io.sset_to_json(hf.space)}
    return CommandResult(0, rep, f"P(p,{a.y}): {rep['counts']}; fiber: {rep['fiber_counts']}")


def cmd_fiber_retract(a) -> CommandResult:
    p = _map_arg(a.map)
    if a.y not in p.codomain.cells(0):
        raise InputError(f"{a.y!r} is not a vertex of the codomain")
    try:
        r = fib.fiber_retraction(p, a.y, a.n_max, require_fibration=not a.skip_precondition)
    except fib.LiftError as e:
        return CommandResult(1, {"ok": False, "error": str(e)}, f"failed: {e}")
    rep = {"ok": r.ok, "checks": r.checks, "retraction": io.map_to_json(r.retraction)}
    return CommandResult(_code(r.ok), rep, "retraction " + ("verified" if r.ok else "FAILED") + f": {r.checks}")


def _table(assign: dict[str, str]) -> str:
    w = max((len(k) for k in assign), default=0)
    return "\n".join(f"  {k.ljust(w)} -> {v}" for k, v in assign.items())


def cmd_lift(a) -> CommandResult:
    d = io.load_json(a.problem)
    maps = {}
    for k in ("i", "p", "top", "bottom"):
        entry = io._need(d, k, a.problem)
        if isinstance(entry, str):  # a map file, relative to the problem file
            entry = io.load_json(Path(a.problem).parent / entry)
        maps[k] = io.map_from_json(entry, where=f"{a.problem}.{k}")
    try:
        prob = fib.LiftProblem(maps["i"], maps["p"], maps["top"], maps["bottom"])
    except fib.LiftError as e:
        raise InputError(f"{a.problem}: {e}") from None
    L = fib.solve_lift(prob)
    if L is None:
        return CommandResult(1, {"lift": None}, "no lift exists")
    rep = {"lift": io.map_to_json(L)}
    return CommandResult(0, rep, "lift:\n" + _table({x: str(r) for x, r in sorted(L.assign.items())}))


def cmd_rlp_check(a) -> CommandResult:
    p = _map_arg(a.map)
    n = a.n_max or fib.default_n_max(p)
    rep = fib.rlp_check(p, a.family, n)
    text = f"{a.family} up to n_max={n}: {'pass' if rep.passed else 'FAIL'} ({rep.squares} squares)"
    if rep.witness:
        text += f"\nwitness {rep.witness['kind']} n={rep.witness['n']} k={rep.witness['k']}\n top:\n" + _table(rep.witness["top"])
        text += "\n bottom:\n" + _table(rep.witness["bottom"])
    return CommandResult(_code(rep.passed), rep.to_json(), text)


def cmd_pushout_product(a) -> CommandResult:
    i, f = _map_arg(a.i), _map_arg(a.f)
    if not (i.is_inclusion() and f.is_inclusion()):
        raise InputError("pushout-product needs two inclusions")
    c = fib.pushout_product(i, f)
    rep = {"domain_counts": _counts(c.domain), "codomain_counts": _counts(c.codomain), "map": io.map_to_json(c, with_ends=True)}
    return CommandResult(0, rep, f"corner map {rep['domain_counts']} -> {rep['codomain_counts']}")


def cmd_mapping_space(a) -> CommandResult:
    M = fib.mapping_space(_sset_arg(a.k), _sset_arg(a.x), a.dim)
    return CommandResult(0, {"counts": _counts(M.space), "dim_bound": a.dim}, f"Map(K,X) up to dimension {a.dim}: {_counts(M.space)}")


def cmd_homology(a) -> CommandResult:
    h = homology(_sset_arg(a.sset))
    return CommandResult(0, h.to_json(), str(h))


def cmd_pi0(a) -> CommandResult:
    comps = pi0(_sset_arg(a.sset))
    return CommandResult(0, {"components": comps}, f"{len(comps)} components: {comps}")


def cmd_we(a) -> CommandResult:
    f = _map_arg(a.map)
    v = we_evidence(f)
    return CommandResult(_code(v.tag is not Tag.NOT_EQ), v.to_json(), v.tag.value)


def cmd_classify(a) -> CommandResult:
    fm = io.over_map_from_json(io.load_json(a.map), a.map)
    c = mc.classify(fm, a.n_max)
    rep = c.to_json()
    text = (
        f"cofibration={c.cofibration} fibration={c.fibration} (n_max={c.n_max}) "
        f"acyclic fibration={c.acyclic_fibration.passed} weak equivalence: "
        + ", ".join(f"{b}: {v.tag.value}" for b, v in c.weak_equivalence.items())
    )
    return CommandResult(0, rep, text)


def cmd_generators(a) -> CommandResult:
    O = _category_arg(a.category)
    I, J = mc.generating_sets(O, a.n_max or 2)
    rep = {"I": [m.name for m in I], "J": [m.name for m in J]}
    return CommandResult(0, rep, f"I: {len(I)} members, J: {len(J)} members")


def cmd_recognition(a) -> CommandResult:
    O = _category_arg(a.category)
    rep = mc.recognition_smoke(mc.fixture_suite(O, a.n_max or 2))
    return CommandResult(_code(rep.ok), rep.to_json(), f"{rep.checked} maps checked, {len(rep.violations)} violations")


def cmd_quillen_check(a) -> CommandResult:
    O = _category_arg(a.category)
    rep = mc.quillen_check(O, a.n_max or 2)
    return CommandResult(_code(rep.ok), rep.to_json(), "Quillen checks " + ("pass" if rep.ok else "FAIL"))


def cmd_repro_example(a) -> CommandResult:
    from .suites import example_checks

    checks = example_checks()
    ok = all(c.passed for c in checks)
    rep = {"reproduced": ok, "checks": [c.to_json() for c in checks], "conclusion": "not a weak equivalence over N𝒪; (Fφ)(1) empty"}
    lines = [f"{'ok  ' if c.passed else 'FAIL'} {c.name}" for c in checks]
    lines.append(rep["conclusion"])
    return CommandResult(_code(ok), rep, "\n".join(lines))


def cmd_suite(a) -> CommandResult:
    from .suites import run_suite

    checks = run_suite(a.name)
    ok = all(c.passed for c in checks)
    failed = [c.name for c in checks if not c.passed]
    rep = {"suite": a.name, "passed": ok, "total": len(checks), "failed": failed, "checks": [c.to_json() for c in checks]}
    return CommandResult(_code(ok), rep, f"suite {a.name}: {len(checks) - len(failed)}/{len(checks)} checks pass" + "".join(f"\nFAIL {n}" for n in failed))


# -- parser ------------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def common(default: Any) -> argparse.ArgumentParser:
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--format", choices=["text", "json"], default=default("text"))
        p.add_argument("--n-max", type=int, default=default(None), help="bound for lifting checks (default: dim + 2)")
        p.add_argument("--depth", type=int, default=default(4), help="truncation depth for nerves and E (default 4)")
        return p

    parser = argparse.ArgumentParser(
        prog="overnerve",
        description="Simplicial sets over nerves: constructions and checks.",
        parents=[common(lambda v: v)],
    )
    # repeated on each subcommand so the flags may come after it
    shared = common(lambda v: argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str, *args: tuple[str, dict]) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, parents=[shared])
        for arg, kw in args:
            p.add_argument(arg, **kw)
        p.set_defaults(fn=fn)
        return p

    sset_tokens = ("sset", {"nargs": "+", "help": "a JSON file or a spec like 'boundary 3'"})
    add("nerve", cmd_nerve, "nerve of a category", ("category", {}))
    add("f-cat", cmd_f_cat, "F of a category over O", ("phi", {}))
    add("e-cat", cmd_e_cat, "Grothendieck construction of a diagram", ("psi", {}))
    add("f-sset", cmd_f_sset, "F of a simplicial set over N O", ("phi", {}))
    add("e-sset", cmd_e_sset, "E of a diagram of simplicial sets", ("psi", {}))
    add("iota", cmd_iota, "components of ι for a labeled simplex", ("sigma", {}))
    add("check-adjunction", cmd_check_adjunction, "count both sides of F ⊣ E", ("phi", {}), ("psi", {}))
    add("counit-check", cmd_counit_check, "verify the counit retraction", ("psi", {}))
    add("cone", cmd_cone, "cone on a simplicial set", sset_tokens)
    add("path", cmd_path, "based path space", ("base", {}), sset_tokens)
    add("hofiber", cmd_hofiber, "homotopy fiber of a map", ("map", {}), ("y", {}))
    fr = add("fiber-retract", cmd_fiber_retract, "deform the homotopy fiber onto the fiber", ("map", {}), ("y", {}))
    fr.add_argument("--skip-precondition", action="store_true", help="do not require a right fibration")
    add("lift", cmd_lift, "solve a lifting problem", ("problem", {}))
    rc = add("rlp-check", cmd_rlp_check, "right lifting property check", ("map", {}))
    rc.add_argument("--family", choices=["right_horns", "all_horns", "boundaries"], default="right_horns")
    add("pushout-product", cmd_pushout_product, "corner map of two inclusions", ("i", {}), ("f", {}))
    add("mapping-space", cmd_mapping_space, "truncated mapping space", ("k", {}), ("x", {}), ("--dim", {"type": int, "default": 2}))
    add("homology", cmd_homology, "integral homology", sset_tokens)
    add("pi0", cmd_pi0, "connected components", sset_tokens)
    add("we", cmd_we, "weak-equivalence verdict for a map", ("map", {}))
    add("classify", cmd_classify, "classify a map over N O", ("map", {}))
    add("generators", cmd_generators, "generating sets I and J", ("category", {}))
    add("recognition", cmd_recognition, "recognition criteria on the fixture suite", ("category", {}))
    add("quillen-check", cmd_quillen_check, "Quillen adjunction checks on generators", ("category", {}))
    add("repro-example", cmd_repro_example, "reproduce the counterexample")
    add("suite", cmd_suite, "run a check battery", ("name", {"choices": ["sec2", "sec4", "sec5", "all"]}))
    return parser


def run(args: argparse.Namespace) -> CommandResult:
    try:
        return args.fn(args)
    except InputError as e:
        return CommandResult(2, {"error": str(e)}, f"input error: {e}")


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # usage errors and --help
        return 2 if e.code else 0
    res = run(args)
    if args.format == "json":
        print(io.dumps({"exit_code": res.exit_code, "report": res.report}))
    else:
        print(res.text)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())

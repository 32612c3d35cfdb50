"""JSON reading and writing for simplicial sets, maps, categories, functors and diagrams.

Wherever a simplicial set is expected, a short spec such as ``"simplex:2"``,
``"boundary:3"`` or ``"horn:2:1"`` may stand in for the full object; wherever a
category is expected, a fixture name such as ``"[1]"`` or ``"idem"`` may.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .cat import CatDiagram, CatOverO, FinCategory, Functor
from .fixtures import categories
from .over_nerve import OverNerve, SSetDiagram
from .sset import EMPTY, FinSSet, SimplexRef, SimpMap, SSetError, standard_complex


class InputError(ValueError):
    """Malformed input; the message names the offending location."""


def _need(d: Any, key: str, where: str) -> Any:
    if not isinstance(d, dict) or key not in d:
        raise InputError(f"{where}: missing key {key!r}")
    return d[key]


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


# -- simplicial sets -----------------------------------------------------------------------


def ref_to_json(r: SimplexRef) -> dict[str, Any]:
    return {"op": list(r.op), "target": r.target}


def ref_from_json(d: Any, where: str) -> SimplexRef:
    op = _need(d, "op", where)
    target = _need(d, "target", where)
    if not (isinstance(op, list) and all(isinstance(v, int) for v in op) and isinstance(target, str)):
        raise InputError(f"{where}: op must be a list of ints and target a string")
    return SimplexRef(tuple(op), target)


def sset_to_json(X: FinSSet) -> dict[str, Any]:
    return {
        "simplices": {
            str(n): [
                {"id": x, **({"faces": [ref_to_json(f) for f in X.faces[x]]} if n else {})}
                for x in X.cells(n)
            ]
            for n in range(X.dim + 1)
        }
    }


def parse_sset_spec(spec: str) -> FinSSet:
    parts = spec.replace(" ", ":").split(":")
    if parts == ["empty"]:
        return EMPTY
    try:
        kind, nums = parts[0], [int(p) for p in parts[1:]]
        return standard_complex(kind, *nums)
    except (ValueError, TypeError, SSetError) as e:
        raise InputError(f"bad simplicial set spec {spec!r}: {e}") from None


def sset_from_json(d: Any, where: str = "sset") -> FinSSet:
    if isinstance(d, str):
        return parse_sset_spec(d)
    simp = _need(d, "simplices", where)
    if not isinstance(simp, dict):
        raise InputError(f"{where}.simplices: expected an object keyed by dimension")
    cells: dict[int, list[str]] = {}
    faces: dict[str, list[SimplexRef]] = {}
    for key, entries in simp.items():
        try:
            n = int(key)
        except ValueError:
            raise InputError(f"{where}.simplices: dimension {key!r} is not an integer") from None
        for k, e in enumerate(entries):
            loc = f"{where}.simplices[{key}][{k}]"
            x = _need(e, "id", loc)
            cells.setdefault(n, []).append(x)
            fs = e.get("faces", [])
            if len(fs) != (n + 1 if n else 0):
                raise InputError(f"{loc}: expected {n + 1 if n else 0} faces, got {len(fs)}")
            faces[x] = [ref_from_json(f, f"{loc}.faces[{i}]") for i, f in enumerate(fs)]
    try:
        X = FinSSet(cells, faces)
    except SSetError as e:
        raise InputError(f"{where}: {e}") from None
    problems = X.validate()
    if problems:
        raise InputError(f"{where}: {problems[0]}")
    return X


def map_to_json(f: SimpMap, with_ends: bool = False) -> dict[str, Any]:
    out: dict[str, Any] = {"assign": {x: ref_to_json(r) for x, r in sorted(f.assign.items())}}
    if with_ends:
        out["domain"] = sset_to_json(f.domain)
        out["codomain"] = sset_to_json(f.codomain)
    return out


def map_from_json(d: Any, domain: FinSSet | None = None, codomain: FinSSet | None = None, where: str = "map") -> SimpMap:
    if domain is None:
        domain = sset_from_json(_need(d, "domain", where), f"{where}.domain")
    if codomain is None:
        codomain = sset_from_json(_need(d, "codomain", where), f"{where}.codomain")
    assign_raw = _need(d, "assign", where)
    assign = {x: ref_from_json(r, f"{where}.assign[{x}]") for x, r in assign_raw.items()}
    missing = [x for x in domain.ids() if x not in assign]
    if missing:
        raise InputError(f"{where}.assign: no image for {missing[0]!r}")
    f = SimpMap(domain, codomain, assign)
    try:
        problems = f.validate()
    except (KeyError, IndexError, SSetError) as e:
        raise InputError(f"{where}: {e}") from None
    if problems:
        raise InputError(f"{where}: {problems[0]}")
    return f


# -- categories ------------------------------------------------------------------------------


def category_to_json(C: FinCategory) -> dict[str, Any]:
    return {
        "objects": list(C.objects),
        "morphisms": [{"id": m, "src": s, "dst": t} for m, (s, t) in C.morphisms.items()],
        "identities": dict(C.identities),
        "composition": [[g, f, h] for (g, f), h in sorted(C.composition.items())],
    }


def category_from_json(d: Any, where: str = "category") -> FinCategory:
    if isinstance(d, str):
        cats = categories()
        if d not in cats:
            raise InputError(f"{where}: unknown fixture category {d!r}; choose from {sorted(cats)}")
        return cats[d]
    try:
        C = FinCategory(
            list(_need(d, "objects", where)),
            {m["id"]: (m["src"], m["dst"]) for m in _need(d, "morphisms", where)},
            dict(_need(d, "identities", where)),
            {(g, f): h for g, f, h in _need(d, "composition", where)},
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"{where}: {e}") from None
    problems = C.validate()
    if problems:
        raise InputError(f"{where}: {problems[0]}")
    return C


def functor_to_json(F: Functor) -> dict[str, Any]:
    return {"obj_map": dict(F.obj_map), "mor_map": dict(F.mor_map)}


def functor_from_json(d: Any, source: FinCategory, target: FinCategory, where: str = "functor") -> Functor:
    F = Functor(source, target, dict(_need(d, "obj_map", where)), dict(_need(d, "mor_map", where)))
    try:
        problems = F.validate()
    except KeyError as e:
        raise InputError(f"{where}: no image for {e}") from None
    if problems:
        raise InputError(f"{where}: {problems[0]}")
    return F


def cat_over_to_json(phi: CatOverO) -> dict[str, Any]:
    return {
        "total": category_to_json(phi.total),
        "base": category_to_json(phi.base),
        "projection": functor_to_json(phi.projection),
    }


def cat_over_from_json(d: Any, where: str = "cat_over") -> CatOverO:
    total = category_from_json(_need(d, "total", where), f"{where}.total")
    base = category_from_json(_need(d, "base", where), f"{where}.base")
    return CatOverO(total, functor_from_json(_need(d, "projection", where), total, base, f"{where}.projection"))


def cat_diagram_to_json(psi: CatDiagram) -> dict[str, Any]:
    return {
        "base": category_to_json(psi.base),
        "values": {b: category_to_json(C) for b, C in psi.value.items()},
        "action": {m: functor_to_json(F) for m, F in psi.action.items()},
    }


def cat_diagram_from_json(d: Any, where: str = "cat_diagram") -> CatDiagram:
    O = category_from_json(_need(d, "base", where), f"{where}.base")
    vals = _need(d, "values", where)
    value = {b: category_from_json(_need(vals, b, f"{where}.values"), f"{where}.values[{b}]") for b in O.objects}
    acts = _need(d, "action", where)
    action = {}
    for m, (b, c) in O.morphisms.items():
        action[m] = functor_from_json(_need(acts, m, f"{where}.action"), value[c], value[b], f"{where}.action[{m}]")
    psi = CatDiagram(O, value, action)
    problems = psi.validate()
    if problems:
        raise InputError(f"{where}: {problems[0]}")
    return psi


# -- objects over nerves and diagrams of simplicial sets ------------------------------------------


def over_nerve_to_json(phi: OverNerve) -> dict[str, Any]:
    return {
        "category": category_to_json(phi.base),
        "sset": sset_to_json(phi.total),
        "vertex_label": dict(sorted(phi.vertex_label.items())),
        "edge_label": dict(sorted(phi.edge_label.items())),
    }


def over_nerve_from_json(d: Any, where: str = "over_nerve", base: FinCategory | None = None) -> OverNerve:
    O = base or category_from_json(_need(d, "category", where), f"{where}.category")
    X = sset_from_json(_need(d, "sset", where), f"{where}.sset")
    vl = dict(_need(d, "vertex_label", where))
    el = dict(d.get("edge_label", {}))
    try:
        phi = OverNerve(X, O, vl, el)
        problems = phi.validate()
    except (KeyError, ValueError) as e:
        raise InputError(f"{where}: {e}") from None
    if problems:
        raise InputError(f"{where}: {problems[0]}")
    return phi


def diagram_to_json(psi: SSetDiagram) -> dict[str, Any]:
    return {
        "category": category_to_json(psi.base),
        "values": {b: sset_to_json(K) for b, K in psi.value.items()},
        "action": {m: map_to_json(f) for m, f in psi.action.items()},
    }


def diagram_from_json(d: Any, where: str = "diagram", base: FinCategory | None = None) -> SSetDiagram:
    O = base or category_from_json(_need(d, "category", where), f"{where}.category")
    vals = _need(d, "values", where)
    value = {b: sset_from_json(_need(vals, b, f"{where}.values"), f"{where}.values[{b}]") for b in O.objects}
    acts = d.get("action", {})
    action = {}
    for m, (b, c) in O.morphisms.items():
        if m not in acts and O.is_identity(m):
            action[m] = SimpMap.identity(value[b])
            continue
        action[m] = map_from_json(_need(acts, m, f"{where}.action"), value[c], value[b], f"{where}.action[{m}]")
    psi = SSetDiagram(O, value, action)
    problems = psi.validate()
    if problems:
        raise InputError(f"{where}: {problems[0]}")
    return psi


def over_map_from_json(d: Any, where: str = "over_map"):
    """``{"source": over_nerve, "target": over_nerve, "assign": ...}``."""
    from .model_check import ModelCheckError, OverNerveMap

    src = over_nerve_from_json(_need(d, "source", where), f"{where}.source")
    tgt = over_nerve_from_json(_need(d, "target", where), f"{where}.target", base=src.base)
    f = map_from_json(d, src.total, tgt.total, where)
    try:
        return OverNerveMap(f, src, tgt)
    except ModelCheckError as e:
        raise InputError(f"{where}: {e}") from None

import json
import subprocess
import sys

import pytest

from overnerve import io
from overnerve.cli import main
from overnerve.fixtures import (
    categories,
    cats_over,
    constant_cat_diagram,
    constant_diagram,
    example_data,
    example_psi_nonconstant,
)
from overnerve.sset import SimpMap, boundary, horn, simplex, standard_inclusion, to_point, vertex_inclusion

CATS = categories()


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(io.dumps(obj))
    return str(p)


def _json(capsys, argv):
    capsys.readouterr()
    code = main(argv + ["--format", "json"])
    out = json.loads(capsys.readouterr().out)
    assert out["exit_code"] == code
    return code, out["report"]


@pytest.fixture
def files(tmp_path):
    O, phi, psi, f = example_data()
    fm = io.map_to_json(f)
    fm.update(source=io.over_nerve_to_json(phi), target=io.over_nerve_to_json(psi))
    return {
        "phi": _write(tmp_path, "phi.json", io.over_nerve_to_json(phi)),
        "sigma": _write(tmp_path, "sigma.json", io.over_nerve_to_json(psi)),
        "psi": _write(tmp_path, "psi.json", io.diagram_to_json(constant_diagram(O, simplex(0)))),
        "psi2": _write(tmp_path, "psi2.json", io.diagram_to_json(example_psi_nonconstant())),
        "cphi": _write(tmp_path, "cphi.json", io.cat_over_to_json(cats_over(O)[1])),
        "cpsi": _write(tmp_path, "cpsi.json", io.cat_diagram_to_json(constant_cat_diagram(O, CATS["[1]"]))),
        "v0": _write(tmp_path, "v0.json", io.map_to_json(vertex_inclusion(1, 0), with_ends=True)),
        "v1": _write(tmp_path, "v1.json", io.map_to_json(vertex_inclusion(1, 1), with_ends=True)),
        "proj": _write(tmp_path, "proj.json", io.map_to_json(to_point(simplex(1)), with_ends=True)),
        "bd": _write(tmp_path, "bd.json", io.map_to_json(standard_inclusion(boundary(1), 1), with_ends=True)),
        "h11": _write(tmp_path, "h11.json", io.map_to_json(standard_inclusion(horn(1, 1), 1), with_ends=True)),
        "over_map": _write(tmp_path, "over_map.json", fm),
        "dir": tmp_path,
    }


def test_homology_text(capsys):
    assert main(["homology", "boundary", "3"]) == 0
    out = capsys.readouterr().out
    assert "H_0 = Z" in out and "H_2 = Z" in out


def test_flags_before_or_after(capsys):
    code1, rep1 = _json(capsys, ["homology", "simplex:2"])
    assert main(["--format", "json", "homology", "simplex:2"]) == 0
    rep2 = json.loads(capsys.readouterr().out)["report"]
    assert code1 == 0 and rep1 == rep2


def test_input_errors(capsys, tmp_path):
    assert main(["homology", "cube", "3"]) == 2
    assert main(["we", str(tmp_path / "nope.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, rep = _json(capsys, ["we", str(bad)])
    assert code == 2 and "bad.json:1:" in rep["error"]
    assert main(["no-such-command"]) == 2
    assert main(["nerve", "[7]"]) == 2


def test_repro_example(capsys):
    code, rep = _json(capsys, ["repro-example"])
    assert code == 0 and rep["reproduced"]
    assert rep["conclusion"] == "not a weak equivalence over N𝒪; (Fφ)(1) empty"


@pytest.mark.parametrize("name", ["sec2", "sec4", "sec5"])
def test_suites_pass(capsys, name):
    code, rep = _json(capsys, ["suite", name])
    assert code == 0 and rep["failed"] == []


def test_suite_all_deterministic(capsys):
    main(["suite", "all", "--format", "json"])
    a = capsys.readouterr().out
    main(["suite", "all", "--format", "json"])
    b = capsys.readouterr().out
    assert a == b and json.loads(a)["exit_code"] == 0


def test_category_commands(capsys, files):
    code, rep = _json(capsys, ["nerve", "[2]", "--depth", "3"])
    assert code == 0 and rep["counts"] == [3, 3, 1] and rep["exact"]
    code, rep = _json(capsys, ["f-cat", files["cphi"]])
    assert [len(rep["values"][b]["objects"]) for b in ("0", "1")] == [1, 0]
    code, rep = _json(capsys, ["e-cat", files["cpsi"]])
    assert len(rep["total"]["objects"]) == 4


def test_sset_level_commands(capsys, files):
    code, rep = _json(capsys, ["f-sset", files["phi"]])
    assert rep["values"]["0"]["counts"] == [1] and rep["values"]["1"]["counts"] == []
    code, rep = _json(capsys, ["e-sset", files["psi2"]])
    assert rep["counts"] == [3, 1] and rep["exact"]
    code, rep = _json(capsys, ["iota", files["sigma"]])
    assert code == 0
    assert main(["iota", files["phi"]]) == 0


@pytest.mark.parametrize("phi,psi", [("phi", "psi"), ("sigma", "psi2"), ("cphi", "cpsi")])
def test_check_adjunction(capsys, files, phi, psi):
    code, rep = _json(capsys, ["check-adjunction", files[phi], files[psi]])
    assert code == 0 and rep["hom_over"] == rep["hom_nat"]


def test_check_adjunction_example_count(capsys, files):
    code, rep = _json(capsys, ["check-adjunction", files["phi"], files["psi"]])
    assert (rep["hom_over"], rep["hom_nat"], rep["level"]) == (1, 1, "sset")


@pytest.mark.parametrize("psi", ["psi", "psi2", "cpsi"])
def test_counit_check(capsys, files, psi):
    code, rep = _json(capsys, ["counit-check", files[psi]])
    assert code == 0 and all(v["ok"] for v in rep.values())


def test_cone_and_path(capsys):
    code, rep = _json(capsys, ["cone", "boundary", "2"])
    assert rep["counts"] == [4, 6, 3]
    code, rep = _json(capsys, ["path", "0", "simplex", "2"])
    assert code == 0 and rep["counts"][0] == 3
    assert main(["path", "9", "simplex", "2"]) == 2


def test_hofiber_and_retraction(capsys, files):
    code, rep = _json(capsys, ["hofiber", files["v0"], "0"])
    assert code == 0 and rep["fiber_counts"] == [1]
    code, rep = _json(capsys, ["fiber-retract", files["v0"], "0"])
    assert code == 0 and rep["ok"]
    assert main(["fiber-retract", files["proj"], "0"]) == 1
    assert main(["fiber-retract", files["proj"], "0", "--skip-precondition"]) == 0
    assert main(["hofiber", files["v0"], "x"]) == 2


def _lift_file(files, bottom, p="v1.json", name="lift.json"):
    """Λ^1[1] -> Δ[1] against ``p``, with the top sending vertex 1 to the point."""
    Y = simplex(1)
    refs = {"0": Y.ref("0"), "1": Y.ref("1"), "01": Y.ref("01"), "11": Y.act((0, 0), Y.ref("1"))}
    d = {
        "i": io.map_to_json(standard_inclusion(horn(1, 1), 1), with_ends=True),
        "p": p,
        "top": io.map_to_json(SimpMap(horn(1, 1), simplex(0), {"1": simplex(0).ref("0")}), with_ends=True),
        "bottom": io.map_to_json(SimpMap(Y, Y, {x: refs[bottom[x]] for x in Y.ids()}), with_ends=True),
    }
    return _write(files["dir"], name, d)


def test_lift(capsys, files):
    # the square with bottom the identity has no lift; with bottom constant at 1 it does
    code, rep = _json(capsys, ["lift", _lift_file(files, {"0": "0", "1": "1", "01": "01"})])
    assert code == 1 and rep["lift"] is None
    code, rep = _json(capsys, ["lift", _lift_file(files, {"0": "1", "1": "1", "01": "11"})])
    assert code == 0 and rep["lift"]["assign"]


def test_lift_noncommuting_is_input_error(files):
    # vertex 0 of Δ[1] sends the point to 0, but the bottom sends vertex 1 to 1
    path = _lift_file(files, {"0": "0", "1": "1", "01": "01"}, p="v0.json", name="lift_bad.json")
    assert main(["lift", path]) == 2


def test_rlp_check(capsys, files):
    code, rep = _json(capsys, ["rlp-check", files["v0"]])
    assert code == 0 and rep["passed"]
    code, rep = _json(capsys, ["rlp-check", files["v1"], "--n-max", "2"])
    assert code == 1 and rep["witness"]["kind"]
    assert main(["rlp-check", files["v0"], "--family", "boundaries"]) == 1


def test_products_and_mapping(capsys, files):
    code, rep = _json(capsys, ["pushout-product", files["bd"], files["h11"]])
    assert rep["domain_counts"] == [4, 3] and rep["codomain_counts"] == [4, 5, 2]
    assert main(["pushout-product", files["proj"], files["h11"]]) == 2
    code, rep = _json(capsys, ["mapping-space", "simplex:1", "simplex:1", "--dim", "2"])
    assert rep["counts"] == [3, 3, 1]


def test_pi0_and_we(capsys, files):
    code, rep = _json(capsys, ["pi0", "boundary", "1"])
    assert len(rep["components"]) == 2
    code, rep = _json(capsys, ["we", files["v0"]])
    assert code == 0 and rep["tag"] == "EVIDENCE_EQ"
    code, rep = _json(capsys, ["we", files["bd"]])
    assert code == 1 and rep["tag"] == "NOT_EQ"


def test_model_commands(capsys, files):
    code, rep = _json(capsys, ["classify", files["over_map"]])
    assert rep["cofibration"] and rep["weak_equivalence"]["1"]["tag"] == "NOT_EQ"
    code, rep = _json(capsys, ["generators", "[0]", "--n-max", "1"])
    assert (len(rep["I"]), len(rep["J"])) == (2, 2)
    code, rep = _json(capsys, ["recognition", "[1]"])
    assert code == 0 and rep["violations"] == []
    code, rep = _json(capsys, ["quillen-check", "span"])
    assert code == 0 and rep["ok"]


def test_entry_point():
    out = subprocess.run([sys.executable, "-m", "overnerve.cli", "homology", "simplex", "1"], capture_output=True, text=True)
    assert out.returncode == 0 and "H_0 = Z" in out.stdout

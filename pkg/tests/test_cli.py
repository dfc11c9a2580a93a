import json

import pytest

from walkerhol.cli import main
from walkerhol.exactnum import Poly
from walkerhol.formats import write_walker
from walkerhol.walker import WalkerMetric


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def keys_of_text(text):
    return [line.split(" = ", 1)[0] for line in text.strip().splitlines()]


def values_of_text(text):
    return dict(line.split(" = ", 1) for line in text.strip().splitlines())


def test_spaces_g2(capsys):
    code, out, _ = run(capsys, "spaces", "--algebra", "builtin:g2")
    vals = values_of_text(out)
    assert code == 0
    assert vals["dim_P1"] == "0" and vals["berger"] == "true"


def test_spaces_trivial(capsys):
    code, out, _ = run(capsys, "spaces", "--algebra", "builtin:trivial:3")
    vals = values_of_text(out)
    assert code == 0
    assert all(vals[k] == "0" for k in ("dim_R", "dim_R0", "dim_R1", "dim_Rprime", "dim_P", "dim_P0", "dim_P1"))


@pytest.mark.parametrize(
    "argv",
    [
        ["spaces", "--algebra", "builtin:so:3"],
        ["classify", "--type", "1", "--algebra", "builtin:so:3", "--regime", "vacuum"],
        ["classify", "--type", "3", "--regime", "vacuum"],
    ],
)
def test_json_has_the_same_keys(capsys, argv):
    _, text, _ = run(capsys, *argv)
    _, js, _ = run(capsys, *argv, "--json")
    assert list(json.loads(js)) == keys_of_text(text)


def test_construct_verify_holonomy(capsys, tmp_path):
    out = tmp_path / "so2.walker"
    code, text, _ = run(capsys, "construct", "--holonomy", "builtin:so:2", "--type", "1", "--out", str(out))
    vals = values_of_text(text)
    assert code == 0 and vals["vacuum"] == "true" and vals["holonomy_matches"] == "true"
    assert len(keys_of_text(text)) == len(set(keys_of_text(text)))
    code, text, _ = run(capsys, "verify", str(out), "--expect", "vacuum")
    vals = values_of_text(text)
    assert code == 0 and vals["certificate_confirmed"] == "true"
    code, text, _ = run(capsys, "holonomy", str(out), "--expect", "closed")
    vals = values_of_text(text)
    assert code == 0 and vals["span_dim"] == "4" and vals["type"] == "1" and vals["matched"] == "so:2"
    code, text, _ = run(capsys, "classify", "--metric", str(out), "--regime", "vacuum")
    assert code == 0 and values_of_text(text)["admissible"] == "true"


def test_construct_einstein(capsys, tmp_path):
    out = tmp_path / "sphere.walker"
    code, text, _ = run(capsys, "construct", "--holonomy", "builtin:so:2", "--type", "1", "--lambda", "1", "--out", str(out))
    assert code == 0 and values_of_text(text)["einstein"] == "true"
    code, text, _ = run(capsys, "verify", str(out), "--lambda", "1", "--expect", "einstein")
    vals = values_of_text(text)
    assert code == 0 and vals["vacuum"] == "false"


def test_construct_refused(capsys, tmp_path):
    out = tmp_path / "never.walker"
    code, text, _ = run(capsys, "construct", "--holonomy", "builtin:g2", "--type", "1", "--lambda", "1", "--out", str(out))
    assert code == 1 and values_of_text(text)["admissible"] == "false"
    assert not out.exists()
    code, text, _ = run(capsys, "construct", "--holonomy", "builtin:su:2", "--type", "2", "--lambda", "1", "--out", str(out))
    assert code == 1


def test_verify_reports_offending_component(capsys, tmp_path):
    N = 4
    g = WalkerMetric.flat(2, f=Poly.var(N, 1, 2))
    path = tmp_path / "pp.walker"
    path.write_text(write_walker(g))
    code, text, _ = run(capsys, "verify", str(path), "--expect", "vacuum")
    vals = values_of_text(text)
    assert code == 1
    assert vals["offending"] == "Ric[3][3]" and vals["ricci_isotropic"] == "true"


def test_holonomy_points_and_errors(capsys, tmp_path):
    N = 4
    g = WalkerMetric.flat(2, f=Poly.var(N, 1, 2) - Poly.var(N, 2, 2))
    path = tmp_path / "pp.walker"
    path.write_text(write_walker(g))
    code, text, _ = run(capsys, "holonomy", str(path), "--points", "0,0,0,0;1,2,3,4", "--order", "1")
    assert code == 0 and values_of_text(text)["span_dim"] == "2"
    code, _, err = run(capsys, "holonomy", str(path), "--points", "0,0,0")
    assert code == 2 and "coordinates" in err


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "spaces", "--algebra", "builtin:nope:2")[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.walker"))[0] == 2
    assert run(capsys, "classify", "--type", "1", "--regime", "vacuum")[0] == 2
    assert run(capsys, "spaces")[0] == 2
    assert run(capsys, "spaces", "--algebra", "builtin:so:3", "--expect", "nonsense")[0] == 2


def test_classify_gates(capsys):
    code, text, _ = run(capsys, "classify", "--type", "2", "--regime", "einstein", "--lambda", "1")
    assert code == 0 and values_of_text(text)["admissible"] == "false"
    code, text, _ = run(capsys, "classify", "--type", "4", "--regime", "ricci-isotropic", "--expect", "admissible")
    assert code == 1
    code, text, _ = run(capsys, "classify", "--type", "2", "--algebra", "builtin:su:2", "--regime", "vacuum", "--expect", "isotropy_guaranteed")
    assert code == 0

import json
import shutil
import subprocess
import sys

import pytest

from swgamma.cli import run
from swgamma.verify import CLAIMS, THETA_GOLDEN

# proposition ids used as verify targets
KNOWN_IDS = {
    "thm-theta-n", "lem-key", "lem-first-sw", "prop-ideal-elementary-abelian", "lem-or", "coro-bounded",
    "lem-preserves-injectivity", "ex-cyclic-over-reals", "prop-cyclic-alg-closed", "prop-cyclic-real",
    "lem-degree-1", "coro-gr-R-bounded", "lem-torsion", "thm-chern-character", "prop-graded-D4",
    "thm-map-K-to-gr", "thm-map-K-to-grW", "lem-ourmap-iso-lowdegrees", "lem-theta-n-for-fields",
}


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def call_json(capsys, *argv):
    code, out, _ = call(capsys, *argv, "--json")
    data = json.loads(out)
    assert data["schema"] == 1
    return code, data


# --- theta --------------------------------------------------------------------------------

@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_theta_golden(capsys, n):
    code, out, _ = call(capsys, "theta", str(n), "--basis", "serre-cartan")
    assert code == 0 and out.strip() == THETA_GOLDEN[n]


def test_theta_text_and_json(capsys):
    assert call(capsys, "theta", "4")[1].strip() == "Sq^3 Sq^1 + Sq^4"
    assert call(capsys, "theta", "4", "--basis", "milnor")[1].strip() == "Sq(4) + Sq(1,1)"
    code, data = call_json(capsys, "theta", "4")
    assert code == 0 and data["degree"] == 4 and data["terms"] == [[3, 1], [4]]


def test_theta_seven_shape(capsys):
    out = call(capsys, "theta", "7")[1].strip()
    assert out.startswith("Sq^31 Sq^15 Sq^7 Sq^3 Sq^1") and out.count(" + ") == 4


def test_exit_codes(capsys):
    assert call(capsys, "theta", "0")[0] == 2
    assert call(capsys, "theta", "9", "--cap-degree", "100")[0] == 3
    assert call(capsys, "theta", "9")[0] == 3
    assert call(capsys, "nonsense")[0] == 2
    assert call(capsys, "theta")[0] == 2
    assert call(capsys, "verify", "no-such-claim")[0] == 2
    assert call(capsys, "zeta", "p-adic")[0] == 2
    assert call(capsys, "ideal", "elem-abelian")[0] == 2


def test_cap_flag_is_restored(capsys):
    from swgamma.steenrod import get_cap_degree
    call(capsys, "theta", "5", "--cap-degree", "20")
    assert get_cap_degree() == 120


# --- other subcommands ------------------------------------------------------------------------

def test_key_identity(capsys):
    code, data = call_json(capsys, "key-identity", "3")
    assert code == 0 and data["verified"]
    assert data["action"] == "t1^2*t2*t3 + t1*t2^2*t3 + t1*t2*t3^2"


def test_sw_virtual(capsys, tmp_path):
    spec = {"nvars": 2, "plus": [[1, 2], []], "minus": [[1], [2]], "max_degree": 3}
    code, data = call_json(capsys, "sw-virtual", json.dumps(spec))
    assert code == 0 and data["w"] == ["1", "0", "t1*t2", "t1^2*t2 + t1*t2^2"]
    assert data["first_nonzero"] == 2
    path = tmp_path / "v.json"
    path.write_text(json.dumps(spec))
    assert call_json(capsys, "sw-virtual", str(path))[1]["w"] == data["w"]
    assert call(capsys, "sw-virtual", "{not json")[0] == 2
    assert call(capsys, "sw-virtual", json.dumps({"nvars": 1, "plus": [[1]]}), "--max-degree", "0")[0] == 2


@pytest.mark.parametrize("argv,dims", [(["ideal", "c4", "--max-degree", "5"], [1, 1, 1, 0, 1, 0]),
                                       (["ideal", "d4", "--max-degree", "4"], [1, 2, 3, 2, 3]),
                                       (["ideal", "elem-abelian", "--rank", "2", "--max-degree", "4"],
                                        [1, 2, 3, 3, 3])])
def test_ideal(capsys, argv, dims):
    code, data = call_json(capsys, *argv)
    assert code == 0 and data["verified"]
    assert [d["quotient_dim"] for d in data["degrees"]] == dims


def test_bo_relations(capsys):
    code, data = call_json(capsys, "bo-relations")
    assert code == 0 and all(data["verdicts"].values())
    assert data["normal_forms"]["w5(p1)"]["variables"] == data["normal_forms"]["w1(p1)w4(p1)"]["variables"]


def test_group_validate(capsys, tmp_path):
    path = tmp_path / "c6.json"
    path.write_text(json.dumps({"order": 6, "table": [[(a + b) % 6 for b in range(6)] for a in range(6)]}))
    code, data = call_json(capsys, "group", "validate", str(path))
    assert code == 0 and data["order"] == 6 and data["abelian"] and data["valid"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"order": 2, "table": [[0, 1], [1, 1]]}))
    assert call(capsys, "group", "validate", str(bad))[0] == 2
    assert call(capsys, "group", "validate", str(tmp_path / "missing.json"))[0] == 2


def test_gr_rep(capsys, tmp_path):
    code, data = call_json(capsys, "gr-rep", "D4", "--max-degree", "3")
    assert code == 0
    assert [d["invariants"] for d in data["degrees"]] == [[2, 2], [2, 2, 4], [2, 2, 2]]
    assert all(d["relations_ok"] for d in data["degrees"])
    code, data = call_json(capsys, "gr-rep", "C4", "--field", "C", "--max-degree", "2")
    assert [d["invariants"] for d in data["degrees"]] == [[4], [4]]
    code, out, _ = call(capsys, "gr-rep", "z4pow(2)", "--dec", "--max-degree", "3")
    assert code == 0 and "dec 1" in out.splitlines()[2]
    path = tmp_path / "c3.json"
    path.write_text(json.dumps({"order": 3, "table": [[(a + b) % 3 for b in range(3)] for a in range(3)]}))
    code, data = call_json(capsys, "gr-rep", str(path), "--field", "C", "--max-degree", "2")
    assert code == 0 and [d["invariants"] for d in data["degrees"]] == [[3], [3]]


def test_omega_and_zeta(capsys):
    code, data = call_json(capsys, "omega", "D4", "--max-degree", "4")
    assert code == 0 and [d["kernel_dim"] for d in data["degrees"]] == [0, 0, 1, 0]
    code, data = call_json(capsys, "zeta", "finite-field", "--max-degree", "4")
    assert code == 0 and data["dec_dims"] == [1, 0, 0, 0] and data["dims_match"]


# --- verify -------------------------------------------------------------------------------------

def test_verify_list(capsys):
    code, data = call_json(capsys, "verify", "--list")
    ids = [c["id"] for c in data["claims"]]
    assert code == 0 and set(ids) == KNOWN_IDS == {c.claim_id for c in CLAIMS}
    assert len(ids) == len(set(ids))


def test_verify_graded_d4(capsys):
    code, out, _ = call(capsys, "verify", "prop-graded-D4")
    assert code == 0 and "prop-graded-D4: verified" in out


def test_verify_all_is_deterministic(capsys):
    code1, out1, _ = call(capsys, "verify", "all", "--max-degree", "6", "--json", "--no-timing")
    code2, out2, _ = call(capsys, "verify", "all", "--max-degree", "6", "--json", "--no-timing")
    assert code1 == code2 == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["schema"] == 1
    assert all(r["status"] == "verified" for r in data["claims"])
    assert [r["id"] for r in data["claims"]] == [c.claim_id for c in CLAIMS]
    assert "elapsed_s" not in out1


def test_verify_timing_fields(capsys):
    code, out, _ = call(capsys, "verify", "lem-or", "--json")
    assert code == 0 and "elapsed_s" in out


@pytest.mark.skipif(shutil.which("swgamma") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["swgamma", "theta", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "Sq^1"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "swgamma.cli", "theta", "0"], capture_output=True, text=True)
    assert res.returncode == 2 and "error" in res.stderr

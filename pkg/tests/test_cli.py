import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from linrel import relation as rel
from linrel.cli import main, verify_decomposition_document

from golden_cases import CASES

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = FIXTURES / "golden"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def fixture(name):
    return FIXTURES / name


def write_doc(tmp_path, doc, name="doc.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return path


# -- golden machine-readable output ---------------------------------------------


@pytest.mark.parametrize("case", sorted(CASES))
def test_golden_output(case):
    argv = list(CASES[case])
    argv[1] = fixture(argv[1])
    code, out, err = run(*argv, "--json")
    assert code == 0, err
    assert out == (GOLDEN / f"{case}.json").read_text()


def test_golden_contents_match_known_answers():
    load = lambda case: json.loads((GOLDEN / f"{case}.json").read_text())
    ones = load("classify_gf2_R")
    assert ones["properties"] == {"TOT": True, "DET": False, "INJ": False, "SUR": True}
    assert ones["shape"] == {"r": 1, "k_I": 1, "k_S": 0, "k_T": 0, "k_D": 1}
    assert all(load("classify_gf2_ID")["properties"].values())
    pair = load("decompose_gf2_PAIR_pair")["objects"]["H"]
    assert len(pair[0]) == 2
    sub = load("subspaces_gf2_I2_I2")
    assert sub["zassenhaus"]["status"] == "AGREE"
    inv = load("inverse_qq_M")["inverse"]
    assert inv == [["3/8", "1/4"], ["1/2", "-1"]]


# -- text reports ----------------------------------------------------------------


def test_classify_identity_graph():
    code, out, _ = run("classify", fixture("gf2.json"), "ID")
    assert code == 0
    assert out.splitlines()[0] == "TOT DET INJ SUR; shape r=2"


def test_classify_all_ones_cospan():
    code, out, _ = run("classify", fixture("gf2.json"), "R")
    assert code == 0
    assert out.splitlines()[0] == "TOT SUR; shape r=1 kI=1 kD=1"
    assert "status: AGREE" in out


def test_bare_matrix_name_means_its_graph():
    _, by_name, _ = run("classify", fixture("gf2.json"), "I2")
    assert by_name.splitlines()[0] == "TOT DET INJ SUR; shape r=2"


def test_decompose_identity_reports_identities():
    code, out, _ = run("decompose", fixture("gf2.json"), "ID", "--json")
    doc = json.loads(out)
    eye = [["1", "0"], ["0", "1"]]
    assert code == 0 and doc["objects"]["P"] == eye and doc["objects"]["Q"] == eye
    assert doc["decomposition"]["status"] == "VERIFIED"


def test_decompose_subspace_is_degenerate():
    code, out, _ = run("decompose", fixture("qq.json"), "SUB")
    assert code == 0 and "VERIFIED" in out
    assert "P (0x0)" in out


def test_pair_mode_text():
    code, out, _ = run("decompose", fixture("gf2.json"), "PAIR", "--mode", "pair")
    assert code == 0
    assert "H (2x2)" in out and out.rstrip().endswith("VERIFIED")


def test_subspace_reports():
    code, out, _ = run("subspaces", fixture("gf2.json"), "E1", "E1")
    assert code == 0 and "AGREE" in out
    code, out, _ = run("subspaces", fixture("gf3.json"), "A", "B", "--json")
    doc = json.loads(out)
    assert doc["zassenhaus"]["status"] == "AGREE"
    assert doc["dims"]["intersection"] == 1 and doc["dims"]["complement_of_b"] == 1


def test_axes_span_the_plane(tmp_path):
    path = write_doc(tmp_path, {"field": "QQ", "objects": {"X": [["1"], ["0"]],
                                                            "Y": [["0"], ["1"]]}})
    code, out, _ = run("subspaces", path, "X", "Y", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["dims"]["intersection"] == 0 and doc["dims"]["sum"] == 2


def test_inverse_of_singular_matrix():
    code, out, _ = run("inverse", fixture("gf2.json"), "SQ")
    assert code == 0
    assert "left inverse: none" in out and "inverse: none" in out


# -- round trip ------------------------------------------------------------------


@pytest.mark.parametrize("case", [c for c in sorted(CASES) if c.startswith("decompose")])
def test_decomposition_documents_reverify(case, tmp_path):
    argv = list(CASES[case])
    argv[1] = fixture(argv[1])
    _, out, _ = run(*argv, "--json")
    doc = json.loads(out)
    verify_decomposition_document(doc)
    path = write_doc(tmp_path, out)
    code, text, err = run("verify", path)
    assert code == 0, err
    assert "VERIFIED" in text


def test_tampered_document_fails_verification(tmp_path):
    _, out, _ = run("decompose", fixture("gf2.json"), "R", "--json")
    doc = json.loads(out)
    q = doc["objects"]["Q"]
    q[0][0] = "0" if q[0][0] == "1" else "1"
    code, out, _ = run("verify", write_doc(tmp_path, doc))
    assert code == 1 and out.strip() == "FAILED"


# -- input errors ----------------------------------------------------------------


@pytest.mark.parametrize("doc,needle", [
    ({"field": "QQ", "objects": {"A": [["1/0"]]}}, "objects.A[0][0]"),
    ({"field": "GF(4)", "objects": {"A": [["1"]]}}, "field"),
    ({"field": "QQ", "objects": {"A": [["1", "2"], ["3"]]}}, "A"),
    ({"field": "QQ", "objects": {"A": [[1]]}}, "objects.A[0][0]"),
    ({"objects": {"A": [["1"]]}}, "field"),
])
def test_malformed_documents(tmp_path, doc, needle):
    code, _, err = run("classify", write_doc(tmp_path, doc), "A")
    assert code == 2 and needle in err


def test_json_syntax_error_has_position(tmp_path):
    code, _, err = run("classify", write_doc(tmp_path, '{"field": "QQ",\n "objects": {'), "A")
    assert code == 2 and "line 2" in err


def test_unknown_name_and_missing_file(tmp_path):
    assert run("classify", fixture("gf2.json"), "NOPE")[0] == 2
    assert run("classify", tmp_path / "missing.json", "A")[0] == 2
    assert run("subspaces", fixture("gf2.json"), "I2", "NOPE")[0] == 2


def test_pair_mode_needs_a_cospan():
    code, _, err = run("decompose", fixture("gf2.json"), "ID", "--mode", "pair")
    assert code == 2 and "cospan" in err


def test_row_mismatch_in_subspaces():
    code, _, err = run("subspaces", fixture("gf2.json"), "ONES", "I2")
    assert code == 2 and err


def test_bad_reference_in_relation(tmp_path):
    doc = {"field": "QQ", "objects": {"A": [["1"]]},
           "relations": {"R": {"kind": "cospan", "refs": ["A", "Z"]}}}
    code, _, err = run("classify", write_doc(tmp_path, doc), "R")
    assert code == 2 and "Z" in err


def test_empty_matrix_object_form(tmp_path):
    doc = {"field": "GF(5)", "objects": {"Z": {"rows": 0, "cols": 2, "entries": []}},
           "relations": {"R": {"kind": "cospan", "refs": ["Z", "Z"]}}}
    code, out, _ = run("classify", write_doc(tmp_path, doc), "R", "--json")
    assert code == 0
    assert json.loads(out)["dim"] == 4


# -- selftest --------------------------------------------------------------------


def test_selftest_quick(tmp_path):
    code, out, _ = run("selftest", "--quick", "--repro-dir", tmp_path)
    assert code == 0 and "ALL PASS" in out
    code, out, _ = run("selftest", "--quick", "--json", "--repro-dir", tmp_path)
    doc = json.loads(out)
    assert code == 0 and doc["ok"]


def test_selftest_reports_injected_fault(tmp_path, monkeypatch):
    real = rel.compose
    monkeypatch.setattr(rel, "compose",
                        lambda r, s: rel.zero_relation(r.field, r.m, s.n) if r.m == 1
                        else real(r, s))
    code, out, _ = run("selftest", "--quick", "--repro-dir", tmp_path)
    assert code == 1 and "FAIL" in out
    assert (tmp_path / "linrel-counterexamples.json").exists()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "linrel", "classify",
                           str(fixture("gf2.json")), "ID"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("TOT DET INJ SUR")

import io
import json
import subprocess
import sys

import pytest

from radialfol.cli import run
from radialfol.forms import OneForm


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_classify_center():
    code, out, _ = call("classify-center", "--form", "[0,-z,y]", "--vars", "x,y,z", "--center", "y,z")
    assert (code, out) == (0, "DicNV r=2\n")


def test_hirzebruch_table():
    code, out, _ = call("hirzebruch-solve", "--delta", "0")
    rows = out.strip().split("\n")
    assert code == 0 and len(rows) == 4
    assert [r.split("\t")[-1] for r in rows] == ["yes", "yes", "no", "no"]


def test_verify_phi3():
    code, out, _ = call("verify", "--registry", "phi3", "--script",
                        '[{"center":{"kind":"curve","vars":["y","z"]}}]')
    assert (code, out) == (0, "resolved=yes controlled=no\n")


def test_unresolved_exit_code():
    code, out, _ = call("verify", "--registry", "linear_lambda:2")
    assert code == 1 and out.startswith("resolved=no")
    assert call("classify-germ", "--registry", "linear_lambda:3")[0] == 1


@pytest.mark.parametrize("argv, expected", [
    (["integrable", "--form", "[y,0,x]", "--vars", "x,y,z"], 1),
    (["integrable", "--form", "[0,-z,y] over (x,y,z)"], 0),
    (["invariant", "--form", "[0,-z,y]", "--vars", "x,y,z", "--var", "x"], 1),
    (["cart-wheel", "--form", "[y,-x]", "--vars", "x,y"], 0),
    (["cart-wheel", "--form", "[2*y,-x]", "--vars", "x,y"], 1),
    (["detect-open-book", "--registry", "phi2"], 1),
    (["tube-audit", "--alpha", "4", "--beta", "2"], 0),
])
def test_exit_codes(argv, expected):
    assert call(*argv)[0] == expected


@pytest.mark.parametrize("argv", [
    ["verify", "--form", "[0,-z"],
    ["frobnicate"],
    ["camacho-sad", "--form", "[1,x]", "--vars", "x,y", "--curve", "y"],
    ["registry", "unknown"],
    ["hirzebruch-solve"],
    ["verify", "--registry", "phi2", "--script", "[{\"center\": {\"kind\": \"curve\", \"vars\": [\"y\"]}}]"],
])
def test_input_errors(argv):
    code, out, err = call(*argv)
    assert code == 3 and out == ""
    payload = json.loads(err)
    assert set(payload) == {"error", "message"}


def test_camacho_sad_is_exact_text():
    code, out, _ = call("camacho-sad", "--form", "[5/2*y,-x]", "--vars", "x,y", "--curve", "y")
    assert out == "5/2\n"


def test_printed_forms_reparse():
    for name in ("phi1", "phi2", "open_book_shifted_divisor"):
        _, out, _ = call("resolve", "--registry", name)
        for line in out.strip().split("\n"):
            text = line.split("\t")[1]
            w = OneForm.from_text(text)
            assert OneForm.from_text(w.to_text()) == w
    _, out, _ = call("blowup", "--registry", "phi3", "--center", "y,z")
    assert OneForm.from_text(out.split("\n")[1].split("\t")[1]) == OneForm.parse(["z^3", "0", "-2"], "xyz")


def test_json_output():
    code, out, _ = call("verify", "--registry", "phi2", "--json")
    data = json.loads(out)
    assert data["resolved"] == "yes" and len(data["leaves"]) == 3
    assert out == json.dumps(data, sort_keys=True, indent=2) + "\n"


def _job(tmp_path, payload, name="job.json"):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


def test_job_file(tmp_path):
    job = _job(tmp_path, {"command": "verify", "germ": {"registry": "phi3"},
                          "script": [{"center": {"kind": "curve", "vars": ["y", "z"]}}],
                          "checks": ["resolved", "controlled", "audits"]})
    code, out, _ = call("--job", job)
    assert code == 0
    assert out.startswith("resolved=yes controlled=no\nstep 1\tc0\t(y,z)\tclass=DicNV")


def test_job_file_with_inline_chart(tmp_path):
    chart = {"id": "c0", "vars": ["x", "y", "z"], "coeffs": ["0", "-z", "y"],
             "divisor": [{"var": "x"}]}
    job = _job(tmp_path, {"germ": chart, "script": [{"center": {"kind": "curve", "vars": ["y", "z"]}}]})
    code, out, _ = call("classify-germ", "--job", job)
    assert (code, out) == (0, "RadialCertificate\n")


def test_job_file_rejects_unknown_keys(tmp_path):
    job = _job(tmp_path, {"command": "verify", "germ": {"registry": "phi3"}, "colour": "red"})
    code, _, err = call("--job", job)
    assert code == 3 and "colour" in json.loads(err)["message"]


def test_job_command_mismatch(tmp_path):
    job = _job(tmp_path, {"command": "verify", "germ": {"registry": "phi3"}})
    assert call("resolve", "--job", job)[0] == 3


def test_output_is_byte_stable(tmp_path):
    job = _job(tmp_path, {"command": "verify", "germ": {"registry": "phi1"}, "json": True,
                          "checks": ["resolved", "controlled", "audits"]})
    runs = [subprocess.run([sys.executable, "-m", "radialfol", "--job", job],
                           capture_output=True, check=False).stdout for _ in range(2)]
    assert runs[0] == runs[1] and runs[0]

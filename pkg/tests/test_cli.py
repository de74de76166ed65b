import json

import pytest

from hybridalg import jsonio
from hybridalg.cli import main
from hybridalg.corpus import corpus_path, load_entry


def corpus_file(entry_id):
    return str(corpus_path() / f"{entry_id}.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_pass_and_fail(capsys):
    code, out, _ = run(capsys, "validate", corpus_file("linear_sigma_l2"))
    assert code == 0 and "pass" in out
    code, out, _ = run(capsys, "validate", corpus_file("disc_quaternion_m21"))
    assert code == 1 and "excluded-disc" in out


def test_validate_full_level(capsys):
    code, out, _ = run(capsys, "validate", "--level", "full",
                       corpus_file("linear_sigma_l1"))
    assert code == 1 and "not-symmetric" in out


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "validate", "no_such_file.json")
    assert code == 3


def test_malformed_json_reports_location(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [1,]}')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 3 and "line" in err


def test_cap_exceeded_exit_code(capsys):
    code, _, err = run(capsys, "basis",
                       corpus_file("local_commuting_quaternion"))
    assert code == 2


def test_describe_relations(capsys):
    code, out, _ = run(capsys, "describe", "--relations",
                       corpus_file("pentagon_wsa"))
    assert code == 0
    assert "critical" in out and "suppressed" in out


def test_basis_and_cartan(capsys):
    code, out, _ = run(capsys, "basis", "--json",
                       corpus_file("linear_sigma_l2"))
    payload = json.loads(out)
    assert payload["total_dim"] == 20
    assert payload["dimension_vector"] == {"1": 6, "2": 8, "3": 6}
    code, out, _ = run(capsys, "cartan", corpus_file("linear_sigma_l2"))
    assert code == 0


def test_blocks_command(capsys):
    code, out, _ = run(capsys, "blocks", "--json",
                       corpus_file("triangle_quaternion_m311"))
    payload = json.loads(out)
    assert payload["count"] == 2
    assert sorted(b["dim"] for b in payload["blocks"]) == [1, 10]


def test_symmetric_check(capsys):
    code, out, _ = run(capsys, "symmetric-check",
                       corpus_file("linear_sigma_l2"))
    assert code == 0
    code, out, _ = run(capsys, "symmetric-check", "--json",
                       corpus_file("linear_sigma_l1"))
    assert code == 1
    payload = json.loads(out)
    assert payload["symmetric"] is False
    assert payload.get("certificate") or payload.get("certificate_pair")


def test_star_and_roundtrip(capsys):
    code, out, _ = run(capsys, "star", "--json",
                       corpus_file("local_commuting_hybrid"))
    payload = json.loads(out)
    assert len(payload["vertices"]) == 2
    assert sorted(payload["T"]) == sorted(payload["m"].keys() | set()) or \
        set(payload["T"]) == {a["name"] for a in payload["arrows"]}
    code, out, _ = run(capsys, "roundtrip", corpus_file("brauer_star"))
    assert code == 0 and "pass" in out


def test_idempotent_keep(capsys):
    code, out, _ = run(capsys, "idempotent", "--keep", "1,2",
                       corpus_file("linear_sigma_l2"))
    assert code == 0
    assert "s~" in out
    assert "s~=2" in out.replace(" ", "") or "s~ = 2" in out or "s~" in out


def test_idempotent_json_border(capsys):
    code, out, _ = run(capsys, "idempotent", "--json", "--keep", "1,2",
                       corpus_file("linear_sigma_l2"))
    payload = json.loads(out)
    assert payload["verified"] is True
    assert payload["border"] == {"s~": 2}
    assert sorted(payload["presentation"]["T"]) == ["a", "b", "g"]


def test_omega_command(capsys):
    code, out, _ = run(capsys, "omega", "--module", "arrow:a1",
                       "--steps", "8", "--json", corpus_file("brauer_star"))
    payload = json.loads(out)
    assert code == 0 and payload["period"] == 6
    code, out, _ = run(capsys, "omega", "--module", "simple:1",
                       "--json", corpus_file("disc_quaternion_m31"))
    assert json.loads(out)["period"] == 4


def test_detect_command(capsys):
    code, out, _ = run(capsys, "detect", "--x", "1/2", "--json",
                       corpus_file("brauer_star"))
    payload = json.loads(out)
    assert code == 0 and payload["kind"] == "matrix" and payload["r"] == 3
    code, out, _ = run(capsys, "detect", "--x", "2", "--json",
                       corpus_file("brauer_double"))
    payload = json.loads(out)
    assert code == 0 and payload["kind"] == "cyclic"


def test_middle_command(capsys):
    code, out, _ = run(capsys, "middle", "--vertex", "2", "--json",
                       corpus_file("disc_sigma_m11"))
    payload = json.loads(out)
    assert code == 0 and payload["indecomposable"] is True


def test_corpus_run(capsys):
    code, out, _ = run(capsys, "corpus", "run")
    assert code == 0
    assert "checks passed" in out


def test_json_output_deterministic(capsys):
    _, out1, _ = run(capsys, "basis", "--json", corpus_file("brauer_double"))
    _, out2, _ = run(capsys, "basis", "--json", corpus_file("brauer_double"))
    assert out1 == out2


def test_serialization_round_trip():
    from hybridalg.corpus import entry_ids
    for entry_id in entry_ids():
        data, _ = load_entry(entry_id)
        text = jsonio.dump_presentation(data)
        again = jsonio.data_from_dict(json.loads(text), entry_id)
        assert jsonio.dump_presentation(again) == text
        assert again.f == data.f
        assert again.triangles == data.triangles
        assert again.m == data.m and again.c == data.c and again.b == data.b

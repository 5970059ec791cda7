import json

import pytest

from codecrypt_lab import __version__
from codecrypt_lab.cli import _parse_params, main
from codecrypt_lab.config import LabConfig
from codecrypt_lab.errors import ParameterError


def run(capsys, *argv):
    """Run the CLI with --json and return the decoded stdout."""
    main(["--json", *argv])
    return json.loads(capsys.readouterr().out)


def run_failing(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(["--json", *argv])
    err = capsys.readouterr().err.strip().splitlines()[-1]
    return exc.value.code, json.loads(err)


def test_parse_params():
    assert _parse_params("family=goppa,m=4,n=0x10,") == {"family": "goppa", "m": 4, "n": 16}
    assert _parse_params(None) == {}
    with pytest.raises(ParameterError):
        _parse_params("family")


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out


# ---------------------------------------------------------------------------
# Keys and encryption
# ---------------------------------------------------------------------------

def test_mceliece_round_trip(tmp_path, capsys):
    key, ct = tmp_path / "key.json", tmp_path / "ct.json"
    written = run(capsys, "--seed", "3", "keygen", "--scheme", "mceliece", "--out", str(key))
    assert written["kind"] == "key" and key.exists()
    run(capsys, "--seed", "4", "encrypt", "--key", str(key), "--message", "1011", "--out", str(ct))
    result = run(capsys, "decrypt", "--key", str(key), "--in", str(ct))
    assert result["m"] == [1, 0, 1, 1]


def test_niederreiter_round_trip(tmp_path, capsys):
    key, ct = tmp_path / "key.json", tmp_path / "ct.json"
    run(capsys, "keygen", "--scheme", "niederreiter", "--params", "family=hamming,r=3", "--out", str(key))
    run(capsys, "encrypt", "--key", str(key), "--message", "0010000", "--out", str(ct))
    assert run(capsys, "decrypt", "--key", str(key), "--in", str(ct))["m"] == [0, 0, 1, 0, 0, 0, 0]


def test_keygen_prints_envelope_without_out(capsys):
    env = run(capsys, "keygen", "--scheme", "ags", "--params", "k=8,t=2")
    assert env["kind"] == "key" and env["scheme"] == "ags"
    assert set(env["secret"]) == {"m", "e"}


def test_encrypt_needs_a_message(tmp_path, capsys):
    key = tmp_path / "key.json"
    run(capsys, "keygen", "--scheme", "mceliece", "--out", str(key))
    code, err = run_failing(capsys, "encrypt", "--key", str(key))
    assert code == 2
    assert err["error"] == "parameter_error"


def test_missing_key_file(tmp_path, capsys):
    code, err = run_failing(capsys, "encrypt", "--key", str(tmp_path / "nope.json"), "--message", "1")
    assert code == 2
    assert err["error"] == "format_error"


def test_unknown_family(capsys):
    code, _ = run_failing(capsys, "keygen", "--scheme", "mceliece", "--params", "family=reed-muller")
    assert code == 2


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------

def test_fiat_shamir_sign_and_verify(tmp_path, capsys):
    key, sig = tmp_path / "key.json", tmp_path / "sig.json"
    run(capsys, "keygen", "--scheme", "cve", "--params", "n=16,k=8,t=3", "--out", str(key))
    run(capsys, "sign", "--scheme", "cve-fs", "--key", str(key), "--message", "hello", "--rounds", "8", "--out", str(sig))
    assert run(capsys, "verify", "--key", str(key), "--sig", str(sig), "--message", "hello")["valid"] is True
    code, err = run_failing(capsys, "verify", "--key", str(key), "--sig", str(sig), "--message", "hellO")
    assert code == 3
    assert err["error"] == "verify_failed"


def test_cfs_sign_and_verify(tmp_path, capsys):
    key, sig, msg = tmp_path / "key.json", tmp_path / "sig.json", tmp_path / "msg.txt"
    msg.write_bytes(b"contract")
    run(capsys, "keygen", "--scheme", "cfs", "--out", str(key))
    run(capsys, "sign", "--scheme", "cfs", "--key", str(key), "--in", str(msg), "--out", str(sig))
    assert run(capsys, "verify", "--key", str(key), "--sig", str(sig), "--in", str(msg))["valid"] is True


def test_sign_with_the_wrong_key(tmp_path, capsys):
    key = tmp_path / "key.json"
    run(capsys, "keygen", "--scheme", "ags", "--params", "k=8,t=2", "--out", str(key))
    code, _ = run_failing(capsys, "sign", "--scheme", "cve-fs", "--key", str(key), "--message", "x")
    assert code == 2


# ---------------------------------------------------------------------------
# Attacks and estimates
# ---------------------------------------------------------------------------

def test_instance_and_brute_force(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    run(capsys, "--seed", "5", "instance", "--n", "12", "--k", "6", "--t", "2", "--out", str(inst))
    solution = run(capsys, "attack", "--alg", "brute", "--instance", str(inst))
    assert solution["algorithm"] == "brute"
    assert 0 < solution["weight"] <= 2


def test_brute_force_on_zero_syndrome(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    run(capsys, "instance", "--n", "8", "--k", "4", "--t", "0", "--out", str(inst))
    solution = run(capsys, "attack", "--alg", "brute", "--instance", str(inst))
    assert solution["e"] == [0] * 8


def test_prange_attack(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    run(capsys, "--seed", "6", "instance", "--n", "20", "--k", "10", "--t", "2", "--out", str(inst))
    solution = run(capsys, "--seed", "1", "attack", "--alg", "prange", "--instance", str(inst))
    assert solution["weight"] <= 2
    assert solution["iterations"] >= 1


def test_brute_force_over_budget(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    run(capsys, "instance", "--n", "12", "--k", "6", "--t", "2", "--out", str(inst))
    code, err = run_failing(capsys, "--budget", "10", "attack", "--alg", "brute", "--instance", str(inst))
    assert code == 5
    assert err["error"] == "too_large"


def test_estimate_nist(capsys):
    sizes = run(capsys, "estimate", "nist", "--scheme", "classic-mceliece", "--level", "1")
    assert (sizes["pk_bytes"], sizes["sk_bytes"], sizes["ct_bytes"]) == (261120, 6492, 128)


def test_estimate_gv_and_comm(capsys):
    gv = run(capsys, "estimate", "gv", "--n", "7", "--k", "4", "--q", "2")
    assert (gv["gv_distance"], gv["gv_radius"]) == (3, 1)
    comm = run(capsys, "estimate", "comm", "--scheme", "cve", "--n", "24", "--k", "12", "--q", "5", "--t", "4", "--rounds", "1")
    assert comm["bits"] == 665


def test_estimate_unknown_level(capsys):
    code, err = run_failing(capsys, "estimate", "nist", "--scheme", "hqc", "--level", "2")
    assert code == 2
    assert err["error"] == "unknown_param_set"


def test_distinguish_random_grs(capsys):
    verdict = run(capsys, "distinguish", "--test", "square", "--random", "grs", "--p", "13", "--m", "1")
    assert verdict["verdict"] == "structured"


# ---------------------------------------------------------------------------
# Reductions, demos, config
# ---------------------------------------------------------------------------

def test_reduce_3dm(tmp_path, capsys):
    src, out = tmp_path / "tdm.json", tmp_path / "sdp.json"
    src.write_text(json.dumps({"T": ["A", "B"], "U": [["A", "B", "A"], ["B", "A", "B"], ["A", "A", "A"]]}))
    run(capsys, "reduce", "--in", str(src), "--out", str(out))
    solution = run(capsys, "attack", "--alg", "brute", "--instance", str(out))
    assert solution["weight"] == 2


def test_demo(capsys):
    payload = run(capsys, "demo", "--example", "prange-f5")
    assert payload["ok"] is True
    assert [d["example"] for d in payload["demos"]] == ["prange-f5"]
    assert "3dm" in run(capsys, "demo", "--list")["examples"]


def test_demo_output_is_reproducible(capsys):
    main(["--json", "demo", "--example", "qc"])
    first = capsys.readouterr().out
    main(["--json", "demo", "--example", "qc"])
    assert capsys.readouterr().out == first


def test_config_set_and_show(capsys):
    payload = run(capsys, "config", "set", "seed", "0x2a")
    assert payload["config"]["seed"] == 42
    assert LabConfig.load().seed == 42
    assert run(capsys, "config")["config"]["seed"] == 42


def test_config_errors(capsys):
    code, err = run_failing(capsys, "config", "set", "colour", "red")
    assert code == 2
    assert "colour" in err["message"]
    with pytest.raises(SystemExit) as exc:
        main(["config", "set", "seed"])
    assert exc.value.code == 2


def test_human_output(capsys):
    main(["--human", "estimate", "gv", "--n", "7", "--k", "4", "--q", "2"])
    out = capsys.readouterr().out
    assert "gv_distance" in out

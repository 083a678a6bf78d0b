import subprocess
import sys

import pytest

from brc.cli import main
from brc.cipher import read_key_file
from brc.burnside import KeySet


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --------------------------------------------------------------------- keygen


def test_keygen_prints_key_element(capsys):
    code, out, _ = run_cli(capsys, "keygen", "--indices", "2,3")
    assert code == 0
    assert out == "D1 2\nD2 -1\nD3 -1\nO2 1\n"


def test_keygen_single_index(capsys):
    code, out, _ = run_cli(capsys, "keygen", "--indices", "5")
    assert code == 0
    assert out == "D5 -1\nO2 1\n"


def test_keygen_writes_key_file(tmp_path, capsys):
    path = tmp_path / "key.brc"
    code, _, _ = run_cli(capsys, "keygen", "--indices", "2,3", "--out", str(path))
    assert code == 0
    assert path.read_text() == "BRC-KEY v1\nS 2 3\n"
    assert read_key_file(path) == KeySet([2, 3])


def test_keygen_rejects_duplicates(capsys):
    code, out, err = run_cli(capsys, "keygen", "--indices", "2,2")
    assert code == 1
    assert out == ""
    assert "duplicate" in err


def test_keygen_rejects_garbage(capsys):
    code, _, err = run_cli(capsys, "keygen", "--indices", "2,x")
    assert code == 1
    assert "error" in err


# ------------------------------------------------------------ encrypt/decrypt


@pytest.fixture
def keyfile(tmp_path, capsys):
    path = tmp_path / "key.brc"
    assert main(["keygen", "--indices", "2,3", "--out", str(path)]) == 0
    capsys.readouterr()
    return path


def test_encrypt_decrypt_roundtrip(tmp_path, keyfile, capsys):
    msg = tmp_path / "msg.txt"
    ct = tmp_path / "msg.ct"
    out = tmp_path / "msg.out"
    msg.write_bytes(b"attack at dawn\n")
    assert run_cli(capsys, "encrypt", "--key", str(keyfile), "--in", str(msg), "--out", str(ct))[0] == 0
    assert ct.read_text().startswith("BRC-CT v1\nL 15\n")
    assert run_cli(capsys, "decrypt", "--key", str(keyfile), "--in", str(ct), "--out", str(out))[0] == 0
    assert out.read_bytes() == b"attack at dawn\n"


def test_encrypt_rejects_empty_input(tmp_path, keyfile, capsys):
    msg = tmp_path / "empty.txt"
    msg.write_bytes(b"")
    code, _, err = run_cli(capsys, "encrypt", "--key", str(keyfile), "--in", str(msg), "--out", str(tmp_path / "x.ct"))
    assert code == 1
    assert "empty" in err


def test_encrypt_reports_non_ascii_position(tmp_path, keyfile, capsys):
    msg = tmp_path / "bad.txt"
    msg.write_bytes(b"ok\xffrest")
    code, _, err = run_cli(capsys, "encrypt", "--key", str(keyfile), "--in", str(msg), "--out", str(tmp_path / "x.ct"))
    assert code == 1
    assert "position 2" in err


def test_decrypt_with_wrong_key_fails_loudly(tmp_path, capsys):
    k2 = tmp_path / "k2.brc"
    k3 = tmp_path / "k3.brc"
    assert main(["keygen", "--indices", "2", "--out", str(k2)]) == 0
    assert main(["keygen", "--indices", "3", "--out", str(k3)]) == 0
    capsys.readouterr()
    msg = tmp_path / "msg.txt"
    msg.write_bytes(b"Hi")
    ct = tmp_path / "msg.ct"
    assert run_cli(capsys, "encrypt", "--key", str(k2), "--in", str(msg), "--out", str(ct))[0] == 0
    code, _, err = run_cli(capsys, "decrypt", "--key", str(k3), "--in", str(ct), "--out", str(tmp_path / "out.txt"))
    assert code == 1
    assert "outside [0, 127]" in err


def test_decrypt_rejects_truncated_ciphertext(tmp_path, keyfile, capsys):
    ct = tmp_path / "trunc.ct"
    ct.write_text("BRC-CT v1\nL 2\n")
    code, _, err = run_cli(capsys, "decrypt", "--key", str(keyfile), "--in", str(ct), "--out", str(tmp_path / "o.txt"))
    assert code == 1
    assert "truncated" in err


# -------------------------------------------------------------------- attacks


def test_attack_cpa_fixed_bit(capsys):
    code, out, _ = run_cli(capsys, "attack", "cpa", "--s0", "2", "--s1", "3", "--hidden-bit", "1")
    assert code == 0
    assert "chosen probe   : D3" in out
    assert "decision       : 1" in out
    assert "queries        : 1" in out
    assert "SUCCESS" in out


def test_attack_cpa_identical_sets_error(capsys):
    code, _, err = run_cli(capsys, "attack", "cpa", "--s0", "2", "--s1", "2", "--hidden-bit", "0")
    assert code == 1
    assert "identical" in err


def test_attack_cpa_random_prints_seed(capsys):
    code, out, _ = run_cli(capsys, "attack", "cpa", "--s0", "2", "--s1", "3", "--random", "--seed", "42")
    assert code == 0
    assert "seed           : 42" in out
    # deterministic rerun gives the same transcript
    code2, out2, _ = run_cli(capsys, "attack", "cpa", "--s0", "2", "--s1", "3", "--random", "--seed", "42")
    assert (code2, out2) == (code, out)


def test_attack_cpa_identity_query(capsys):
    code, out, _ = run_cli(
        capsys, "attack", "cpa", "--s0", "2", "--s1", "3", "--hidden-bit", "0", "--identity-query"
    )
    assert code == 0
    assert "identity-class query" in out
    assert "decision       : 0" in out


def test_attack_ambiguity_example(capsys):
    code, out, _ = run_cli(capsys, "attack", "ambiguity", "--s", "2,3", "--window", "5", "--count", "3")
    assert code == 0
    for twin in ("{14, 21}", "{22, 33}", "{26, 39}"):
        assert twin in out
    assert "matrices identical" in out


def test_attack_ambiguity_invalid_count(capsys):
    code, _, err = run_cli(capsys, "attack", "ambiguity", "--s", "2", "--window", "5", "--count", "0")
    assert code == 1
    assert "count" in err


def test_attack_kpa_report(tmp_path, keyfile, capsys):
    code, out, _ = run_cli(
        capsys, "attack", "kpa", "--key", str(keyfile), "--pairs", "6", "--window", "4", "--seed", "0"
    )
    assert code == 0
    assert "system rank    : 4 / 4" in out
    assert "does not identify the key set" in out


# --------------------------------------------------------------------- verify


@pytest.mark.parametrize("suite", ["table", "involution", "prop-coeff", "recurrence", "rf1"])
def test_verify_suites_pass(capsys, suite):
    args = ["verify", suite]
    if suite in ("involution", "prop-coeff"):
        args += ["--trials", "50"]
    code, out, _ = run_cli(capsys, *args)
    assert code == 0
    assert "PASS" in out
    assert "failures=0" in out


def test_verify_all(capsys):
    code, out, _ = run_cli(capsys, "verify", "all", "--trials", "50")
    assert code == 0
    assert out.count("PASS") == 5


def test_verify_respects_bounds(capsys):
    code, out, _ = run_cli(capsys, "verify", "table", "--max-index", "6")
    assert code == 0
    assert "cases=64" in out  # (6 dihedral + SO2 + O2) squared


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "brc", "keygen", "--indices", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "D2 -1\nO2 1\n"

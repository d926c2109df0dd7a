import json

import numpy as np
import pytest

from dvconv.cli import main
from dvconv.states import random_density, state_from_json, state_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gap_maximally_mixed(capsys):
    code, out, _ = run(capsys, "gap", "--d", "3", "--preset", "maximally-mixed")
    assert code == 0
    assert "MG        0" in out
    assert "PauliRank 1" in out


def test_gap_t_state_json(capsys):
    code, out, _ = run(capsys, "gap", "--d", "2", "--preset", "t-state", "--json")
    assert code == 0
    obj = json.loads(out)
    assert abs(obj["magic_gap"] - (1 - 1 / np.sqrt(2))) < 1e-12
    assert abs(obj["log_magic_gap"] - 0.5) < 1e-12
    assert obj["pauli_rank"] == 3


def test_gap_missing_state(capsys):
    code, _, err = run(capsys, "gap", "--d", "3")
    assert code == 2


def test_convolve_zero_kets(tmp_path, capsys):
    out_file = tmp_path / "out.json"
    code, _, _ = run(capsys, "convolve", "--d", "3", "--a", "zero-ket",
                     "--b", "zero-ket", "--out", str(out_file))
    assert code == 0
    rho = state_from_json(json.loads(out_file.read_text()))
    assert abs(rho.mat[0, 0] - 1) < 1e-10


def test_convolve_duality_flag(tmp_path, capsys):
    out_file = tmp_path / "out.json"
    code, out, _ = run(capsys, "convolve", "--d", "3", "--a", "random-mixed",
                       "--b", "random-mixed", "--seed", "3",
                       "--out", str(out_file), "--check-duality")
    assert code == 0
    dev = float(out.split()[-1])
    assert dev < 1e-10


def test_convolve_d2_rejected(tmp_path, capsys):
    code, _, err = run(capsys, "convolve", "--d", "2", "--a", "zero-ket",
                       "--b", "zero-ket", "--out", str(tmp_path / "x.json"))
    assert code == 2


def test_named_spec_rejected_at_small_d(tmp_path, capsys):
    code, _, _ = run(capsys, "convolve", "--d", "3", "--a", "zero-ket",
                     "--b", "zero-ket", "--spec", "beam-splitter",
                     "--out", str(tmp_path / "x.json"))
    assert code == 2


def test_random_preset_needs_seed(tmp_path, capsys):
    code, _, _ = run(capsys, "convolve", "--d", "3", "--a", "random-pure",
                     "--b", "zero-ket", "--out", str(tmp_path / "x.json"))
    assert code == 2


def test_state_file_input(tmp_path, capsys):
    rho = random_density(9, 3, 1)
    path = tmp_path / "state.json"
    path.write_text(json.dumps(state_to_json(rho)))
    out_file = tmp_path / "out.json"
    code, _, _ = run(capsys, "convolve", "--d", "3", "--a", str(path),
                     "--b", "maximally-mixed", "--out", str(out_file))
    assert code == 0
    out = state_from_json(json.loads(out_file.read_text()))
    assert np.max(np.abs(out.mat - np.eye(3) / 3)) < 1e-10


def test_emit_char_roundtrip(tmp_path, capsys):
    rho = random_density(4, 3, 1)
    src = tmp_path / "state.json"
    src.write_text(json.dumps(state_to_json(rho)))
    char_path = tmp_path / "char.json"
    code, _, _ = run(capsys, "gap", "--d", "3", "--input", str(src),
                     "--emit-char", str(char_path))
    assert code == 0
    back = state_from_json(json.loads(char_path.read_text()))
    assert np.max(np.abs(back.mat - rho.mat)) < 1e-10


def test_clt_csv(tmp_path, capsys):
    out_file = tmp_path / "clt.csv"
    code, _, _ = run(capsys, "clt", "--d", "7", "--steps", "5", "--seed", "7",
                     "--preset", "random-pure", "--out", str(out_file))
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0].startswith("N,norm,bound")
    assert len(lines) == 7  # header + steps 0..5
    for line in lines[1:]:
        cols = line.split(",")
        assert float(cols[1]) <= float(cols[2]) + 1e-9


def test_clt_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code, _, _ = run(capsys, "clt", "--d", "7", "--steps", "4", "--seed",
                         "11", "--out", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_clt_rejects_d3(tmp_path, capsys):
    code, _, _ = run(capsys, "clt", "--d", "3", "--seed", "1")
    assert code == 2


def test_suite_exit_codes(tmp_path, capsys):
    code, _, _ = run(capsys, "suite", "stability", "--out",
                     str(tmp_path / "s.csv"))
    assert code == 0
    code, _, _ = run(capsys, "suite", "duality", "--seed", "1", "--trials",
                     "4", "--format", "json", "--out", str(tmp_path / "d.json"))
    assert code == 0
    obj = json.loads((tmp_path / "d.json").read_text())
    assert obj["passed"]


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "msps", "--d", "3")
    assert code == 0
    assert len(json.loads(out)) == 13
    code, out, _ = run(capsys, "enumerate", "stabilizers", "--d", "2")
    assert code == 0
    assert len(json.loads(out)) == 6


def test_capacity_bounds(capsys):
    code, out, _ = run(capsys, "capacity-bounds", "--d", "3", "--sigma",
                       "zero-ket", "--rho0", "zero-ket")
    assert code == 0
    vals = {line.split()[0]: float(line.split()[1])
            for line in out.strip().splitlines()}
    assert abs(vals["lower"] - np.log2(3)) < 1e-9
    assert abs(vals["upper"] - np.log2(3)) < 1e-9
    assert abs(vals["weyl-ensemble"] - np.log2(3)) < 1e-9


def test_unsupported_scale_is_numeric_error(capsys):
    code, _, _ = run(capsys, "enumerate", "msps", "--d", "7")
    assert code == 3

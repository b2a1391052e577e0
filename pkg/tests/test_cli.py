import csv
import json
import math

import numpy as np
import pytest

from su2nlft import CoefficientSequence, nlft_forward
from su2nlft.cli import (
    load_pair,
    load_sequence,
    main,
    pair_to_json,
    sequence_to_json,
)


def write_seq(path, entries):
    path.write_text(sequence_to_json(CoefficientSequence.from_dict(entries)))
    return str(path)


def write_pair(path, F, n_points=None):
    pair = nlft_forward(CoefficientSequence.from_dict(F), n_points)
    path.write_text(pair_to_json(pair))
    return str(path), pair


TWO_POINT = {0: 0.5, 1: 0.5}


class TestForward:
    def test_file_output_round_trips_bit_identically(self, tmp_path):
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        out = tmp_path / "pair.json"
        assert main(["forward", "--input", inp, "--out", str(out)]) == 0
        text = out.read_text()
        again = pair_to_json(load_pair(str(out)))
        assert again.strip() == text.strip()
        pair = load_pair(str(out))
        assert np.array_equal(
            pair.b.coeffs,
            nlft_forward(CoefficientSequence.from_dict(TWO_POINT)).b.coeffs,
        )

    def test_stdout_mode(self, tmp_path, capsys):
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        assert main(["forward", "--input", inp]) == 0
        captured = capsys.readouterr()
        obj = json.loads(captured.out)
        assert set(obj) == {"a", "b", "grid_residual"}
        assert "a_star_zero" in captured.err

    def test_diagnostics_on_stdout_when_writing_file(self, tmp_path, capsys):
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        out = tmp_path / "pair.json"
        main(["forward", "--input", inp, "--out", str(out)])
        captured = capsys.readouterr()
        assert "determinant_residual" in captured.out

    def test_grid_override(self, tmp_path):
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        assert main(["forward", "--input", inp, "--out",
                     str(tmp_path / "p.json"), "--grid", "64"]) == 0

    def test_bad_grid_rejected(self, tmp_path):
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        assert main(["forward", "--input", inp, "--grid", "37"]) == 1


class TestInputValidation:
    def test_malformed_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["forward", "--input", str(bad)]) == 1

    def test_missing_file(self, tmp_path):
        assert main(["forward", "--input", str(tmp_path / "nope.json")]) == 1

    def test_unknown_key_rejected(self, tmp_path):
        f = tmp_path / "f.json"
        f.write_text('{"support": [0, 0], "coeffs": [[0.5, 0.0]], "extra": 1}')
        assert main(["forward", "--input", str(f)]) == 1

    def test_length_mismatch_rejected(self, tmp_path):
        f = tmp_path / "f.json"
        f.write_text('{"support": [0, 1], "coeffs": [[0.5, 0.0]]}')
        assert main(["forward", "--input", str(f)]) == 1

    def test_unknown_flag_exits_one(self, tmp_path):
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        with pytest.raises(SystemExit) as exc:
            main(["forward", "--input", inp, "--bogus"])
        assert exc.value.code == 1

    def test_missing_subcommand_exits_one(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 1

    def test_bad_support_string(self, tmp_path):
        b = write_seq(tmp_path / "b.json", {0: 0.3})
        assert main(["inverse", "--b", b, "--support", "0..x"]) == 1

    def test_inverse_requires_support(self, tmp_path):
        b = write_seq(tmp_path / "b.json", {0: 0.3})
        assert main(["inverse", "--b", b]) == 1


class TestInverse:
    def test_round_trip_from_b(self, tmp_path):
        pair = nlft_forward(CoefficientSequence.from_dict(TWO_POINT))
        b = tmp_path / "b.json"
        b.write_text(sequence_to_json(pair.b))
        out = tmp_path / "rec.json"
        code = main(["inverse", "--b", str(b), "--support", "0..1",
                     "--out", str(out)])
        assert code == 0
        rec = load_sequence(str(out))
        assert rec.support_lo == 0 and rec.support_hi == 1
        assert np.max(np.abs(rec.coeffs - [0.5, 0.5])) < 1e-10

    def test_singular_b_exits_two(self, tmp_path):
        # |b| reaches 1 on the circle: no Szego margin, not invertible
        b = write_seq(tmp_path / "b.json", {0: 0.5, 1: 0.5})
        assert main(["inverse", "--b", b, "--support", "0..1"]) == 2

    def test_supplied_a_is_used(self, tmp_path):
        pair = nlft_forward(CoefficientSequence.from_dict(TWO_POINT))
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        a.write_text(sequence_to_json(pair.a))
        b.write_text(sequence_to_json(pair.b))
        out = tmp_path / "rec.json"
        assert main(["inverse", "--b", str(b), "--a", str(a),
                     "--support", "0..1", "--out", str(out)]) == 0
        rec = load_sequence(str(out))
        assert np.max(np.abs(rec.coeffs - [0.5, 0.5])) < 1e-10

    def test_tampered_a_exits_two(self, tmp_path):
        pair = nlft_forward(CoefficientSequence.from_dict(TWO_POINT))
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        a.write_text(sequence_to_json(pair.a.scale(1.1)))
        b.write_text(sequence_to_json(pair.b))
        assert main(["inverse", "--b", str(b), "--a", str(a),
                     "--support", "0..1"]) == 2

    def test_imaginary_flag_rejects_real_data(self, tmp_path):
        pair = nlft_forward(CoefficientSequence.from_dict(TWO_POINT))
        b = tmp_path / "b.json"
        b.write_text(sequence_to_json(pair.b))
        out = tmp_path / "rec.json"
        code = main(["inverse", "--b", str(b), "--support", "0..1",
                     "--imaginary", "--out", str(out)])
        assert code == 2
        # the recovery itself succeeded and was written before the check
        assert out.exists()
        rec = load_sequence(str(out))
        assert rec.support_lo == 0 and rec.support_hi == 1

    def test_imaginary_flag_accepts_imaginary_data(self, tmp_path):
        F = CoefficientSequence.from_dict({0: 0.3j, 1: -0.2j})
        pair = nlft_forward(F)
        b = tmp_path / "b.json"
        b.write_text(sequence_to_json(pair.b))
        assert main(["inverse", "--b", str(b), "--support", "0..1",
                     "--imaginary"]) == 0

    def test_convergence_csv(self, tmp_path):
        pair = nlft_forward(CoefficientSequence.from_dict(TWO_POINT))
        b = tmp_path / "b.json"
        b.write_text(sequence_to_json(pair.b))
        csv_path = tmp_path / "conv.csv"
        main(["inverse", "--b", str(b), "--support", "0..1",
              "--out", str(tmp_path / "rec.json"), "--csv", str(csv_path)])
        with open(csv_path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["n", "solver_residual", "solution_norm", "rhs_norm"]
        assert {r[0] for r in rows[1:]} == {"0", "1"}
        for r in rows[1:]:
            assert float(r[1]) < 1e-10
            assert float(r[2]) > 0 and float(r[3]) > 0


class TestVerify:
    def test_sequence_input_passes(self, tmp_path, capsys):
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        out = tmp_path / "report.json"
        assert main(["verify", "--input", inp, "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["overall_pass"] is True
        assert any(r["name"] == "round_trip" for r in report["records"])
        assert "overall: PASS" in capsys.readouterr().err

    def test_pair_input(self, tmp_path):
        path, _ = write_pair(tmp_path / "pair.json", TWO_POINT)
        assert main(["verify", "--input", path, "--out",
                     str(tmp_path / "r.json")]) == 0

    def test_tampered_pair_fails(self, tmp_path):
        pair = nlft_forward(CoefficientSequence.from_dict(TWO_POINT))
        bad = tmp_path / "pair.json"
        bad.write_text(pair_to_json(
            type(pair)(pair.a.scale(1.1), pair.b, 0.0)))
        assert main(["verify", "--input", str(bad), "--out",
                     str(tmp_path / "r.json")]) == 2

    def test_b_input_singular_fails(self, tmp_path):
        b = write_seq(tmp_path / "b.json", {0: 0.5, 1: 0.5})
        out = tmp_path / "r.json"
        code = main(["verify", "--b", b, "--support", "0..1",
                     "--out", str(out)])
        assert code == 2
        report = json.loads(out.read_text())
        assert any(r["kind"] == "error" for r in report["records"])

    def test_b_input_recovers_and_passes(self, tmp_path):
        pair = nlft_forward(CoefficientSequence.from_dict({0: 0.4, 1: 0.4}))
        b = tmp_path / "b.json"
        b.write_text(sequence_to_json(pair.b))
        assert main(["verify", "--b", str(b), "--support", "0..1",
                     "--out", str(tmp_path / "r.json")]) == 0

    def test_decay_csv(self, tmp_path):
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        csv_path = tmp_path / "decay.csv"
        main(["verify", "--input", inp, "--out", str(tmp_path / "r.json"),
              "--csv", str(csv_path)])
        with open(csv_path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["n", "abs_F_n", "first_order_rhs"]
        assert rows[1][0] == "0" and rows[1][2] == ""
        assert float(rows[2][2]) > float(rows[2][1])

    def test_decay_csv_needs_sequence(self, tmp_path):
        path, _ = write_pair(tmp_path / "pair.json", TWO_POINT)
        assert main(["verify", "--input", path,
                     "--csv", str(tmp_path / "d.csv")]) == 1

    def test_weight_restriction(self, tmp_path):
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        out = tmp_path / "r.json"
        assert main(["verify", "--input", inp, "--weight", "poly:alpha=1.0",
                     "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        sinh = [r for r in report["records"] if r["name"] == "sinh_bound"]
        assert len(sinh) == 1
        assert sinh[0]["weight"] == "poly:alpha=1"

    def test_seed_flag(self, tmp_path):
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        assert main(["verify", "--input", inp, "--seed", "3",
                     "--out", str(tmp_path / "r.json")]) == 0

    def test_needs_exactly_one_input(self, tmp_path):
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        assert main(["verify", "--input", inp, "--b", inp]) == 1
        assert main(["verify"]) == 1


class TestNorms:
    def test_values(self, tmp_path, capsys):
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        assert main(["norms", "--input", inp]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["support"] == [0, 1]
        assert obj["l2"] == pytest.approx(math.sqrt(0.5))
        assert obj["weighted_l1"]["one"] == pytest.approx(1.0)
        assert obj["weighted_l1"]["poly:alpha=1.0"] == pytest.approx(1.5)
        assert set(obj["sobolev"]) == {"1", "1.5", "2"}

    def test_extra_weight(self, tmp_path, capsys):
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        assert main(["norms", "--input", inp,
                     "--weight", "poly:alpha=3.0"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert "poly:alpha=3.0" in obj["weighted_l1"]


class TestEnvConfig:
    def test_valid_config_applies(self, tmp_path, monkeypatch):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"grid_size": 64, "seed": 7}')
        monkeypatch.setenv("NLFT_CONFIG", str(cfg))
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        assert main(["forward", "--input", inp,
                     "--out", str(tmp_path / "p.json")]) == 0

    def test_unknown_config_key(self, tmp_path, monkeypatch):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"grid": 64}')
        monkeypatch.setenv("NLFT_CONFIG", str(cfg))
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        assert main(["forward", "--input", inp]) == 1

    def test_bad_config_json(self, tmp_path, monkeypatch):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("nope")
        monkeypatch.setenv("NLFT_CONFIG", str(cfg))
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        assert main(["forward", "--input", inp]) == 1

    def test_flag_overrides_config(self, tmp_path, monkeypatch):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"grid_size": 8}')
        monkeypatch.setenv("NLFT_CONFIG", str(cfg))
        inp = write_seq(tmp_path / "f.json", TWO_POINT)
        assert main(["forward", "--input", inp, "--grid", "256",
                     "--out", str(tmp_path / "p.json")]) == 0

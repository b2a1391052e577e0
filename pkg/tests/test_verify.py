import json
import math

import numpy as np
import pytest

from su2nlft import (
    BeurlingWeight,
    CoefficientSequence,
    NlftPair,
    SzegoMarginError,
    ValidationError,
    check_antisymmetry,
    check_decay_first_order,
    check_decay_fractional,
    check_determinant,
    check_lu_factorization,
    check_plancherel,
    check_quantitative_baxter,
    check_round_trip,
    check_sinh_bound,
    decay_table,
    nlft_forward,
    run_pair_checks,
    run_suite,
)


def seq(entries):
    return CoefficientSequence.from_dict(entries)


TWO_POINT = seq({0: 0.5, 1: 0.5})
TWO_POINT_PAIR = nlft_forward(TWO_POINT)
SINGULAR = seq({0: 1.0, 1: 1.0})  # b = (1 + z)/2, |b| = 1 at z = 1
SINGULAR_PAIR = nlft_forward(SINGULAR)


def tampered_pair():
    return NlftPair(TWO_POINT_PAIR.a.scale(1.1), TWO_POINT_PAIR.b, 0.0)


class TestDeterminant:
    def test_passes_on_forward_output(self):
        rec = check_determinant(TWO_POINT_PAIR)
        assert rec.passed and rec.value < 1e-14

    def test_fails_on_tampered_a(self):
        rec = check_determinant(tampered_pair())
        assert not rec.passed
        # (1.1^2 - 1)|a|^2 peaks where b vanishes, so the grid max is 0.21
        assert rec.value == pytest.approx(0.21, abs=1e-12)


class TestPlancherel:
    def test_two_point(self):
        rec = check_plancherel(TWO_POINT, TWO_POINT_PAIR)
        assert rec.passed and rec.value < 1e-10

    def test_boundary_touching_b_still_integrates(self):
        # |b| = 1 at z = 1, but the log singularity is integrable:
        # both sides equal 2 log 2
        rec = check_plancherel(SINGULAR, SINGULAR_PAIR, n_points=8192)
        assert rec.passed and rec.value < 1e-8
        assert rec.lhs == pytest.approx(2 * math.log(2), abs=1e-15)

    def test_hypothesis_error_when_b_exceeds_one(self):
        bad = NlftPair(SINGULAR_PAIR.a, SINGULAR_PAIR.b.scale(1.3), 0.0)
        with pytest.raises(SzegoMarginError):
            check_plancherel(SINGULAR, bad)


class TestSinhBound:
    @pytest.mark.parametrize("w", [
        BeurlingWeight.one(),
        BeurlingWeight.polynomial(0.5),
        BeurlingWeight.polynomial(1.0),
        BeurlingWeight.polynomial(2.0),
    ])
    def test_margin_nonnegative(self, w):
        rec = check_sinh_bound(TWO_POINT, w, TWO_POINT_PAIR)
        assert rec.passed and rec.value >= -1e-12

    def test_singular_instance_still_passes(self):
        rec = check_sinh_bound(SINGULAR, BeurlingWeight.one(), SINGULAR_PAIR)
        assert rec.passed


class TestDecay:
    def test_first_order_two_point(self):
        rec = check_decay_first_order(TWO_POINT, TWO_POINT_PAIR)
        assert rec.passed
        # |F_1| = 0.5 against 2 a*(0) ||(b/a*)'|| / 1
        assert rec.lhs == pytest.approx(0.5)
        assert rec.rhs > 0.5

    def test_single_point_vacuous(self):
        F = seq({0: 0.4})
        rec = check_decay_first_order(F, nlft_forward(F))
        assert rec.passed and rec.value == 0.0

    def test_fractional_monitored(self):
        rec = check_decay_fractional(TWO_POINT, TWO_POINT_PAIR, 1.5)
        assert rec.kind == "monitored"
        assert rec.passed
        assert 0 < rec.value < 10

    def test_fractional_needs_s_at_least_one(self):
        with pytest.raises(ValidationError):
            check_decay_fractional(TWO_POINT, TWO_POINT_PAIR, 0.5)


class TestQuantitativeBaxter:
    def test_inapplicable_when_b_norm_large(self):
        # ||b||_A = 0.8 > 1/sqrt(2)
        rec = check_quantitative_baxter(TWO_POINT, TWO_POINT_PAIR,
                                        BeurlingWeight.one())
        assert rec.kind == "inapplicable"
        assert rec.passed

    def test_applicable_small_instance(self):
        F = seq({0: 0.3, 1: 0.3})
        pair = nlft_forward(F)
        rec = check_quantitative_baxter(F, pair, BeurlingWeight.one())
        assert rec.kind == "monitored"
        assert rec.value > 0
        # ||b||_A = 0.6/1.09 comfortably below 1/sqrt(2)
        assert rec.lhs > 0


class TestLuFactorization:
    def test_two_point_machine_precision(self):
        rec = check_lu_factorization(TWO_POINT_PAIR)
        assert rec.passed
        assert rec.value < 1e-12

    def test_wide_instance(self):
        rng = np.random.default_rng(2)
        vals = 0.1 * (rng.standard_normal(9) + 1j * rng.standard_normal(9))
        pair = nlft_forward(CoefficientSequence(-4, 4, vals))
        rec = check_lu_factorization(pair)
        assert rec.passed

    def test_detects_broken_pair(self):
        rec = check_lu_factorization(tampered_pair())
        assert not rec.passed


class TestOperatorChecks:
    def test_antisymmetry(self):
        rec = check_antisymmetry(TWO_POINT_PAIR, n_probes=20)
        assert rec.passed and rec.value < 1e-12

    def test_round_trip_and_contraction(self):
        rt, contraction = check_round_trip(TWO_POINT, TWO_POINT_PAIR)
        assert rt.passed and rt.value < 1e-10
        assert contraction.passed and contraction.value <= 1e-12


class TestDecayTable:
    def test_rows(self):
        rows = decay_table(TWO_POINT, TWO_POINT_PAIR)
        assert [r[0] for r in rows] == [0, 1]
        assert rows[0][1] == pytest.approx(0.5)
        assert rows[0][2] is None
        assert rows[1][2] > 0.5


class TestRunSuite:
    def test_forward_suite_passes(self):
        report = run_suite(F=TWO_POINT)
        assert report.overall_pass
        names = {r.name for r in report.records}
        assert {"determinant", "plancherel", "sinh_bound", "round_trip",
                "contraction", "antisymmetry", "lu_factorization"} <= names
        assert json.dumps(report.to_dict())  # serializable
        assert report.lines()[-1] == "overall: PASS"

    def test_needs_exactly_one_input(self):
        with pytest.raises(ValidationError):
            run_suite(F=TWO_POINT, b=TWO_POINT_PAIR.b)
        with pytest.raises(ValidationError):
            run_suite()

    def test_b_suite_round_trips(self):
        report = run_suite(b=TWO_POINT_PAIR.b, support_window=(0, 1))
        assert report.overall_pass
        rt = [r for r in report.records if r.name == "round_trip"]
        assert rt and rt[0].passed

    def test_b_suite_singular_input_errors(self):
        report = run_suite(b=SINGULAR_PAIR.b, support_window=(0, 1))
        assert not report.overall_pass
        assert any(r.kind == "error" for r in report.records)

    def test_forward_suite_boundary_instance(self):
        # a* vanishes at z = 1, so ratio-based checks degrade to error
        # records, but the exact identities still hold
        report = run_suite(F=SINGULAR)
        assert not report.overall_pass
        assert any(r.kind == "error" for r in report.records)
        for name in ("determinant", "plancherel"):
            rec = [r for r in report.records if r.name == name]
            assert rec and rec[0].passed

    def test_lu_marked_inapplicable_when_a_small(self):
        # single large entry: min |a| = (1 + 100)^{-1/2} < 0.1
        report = run_suite(F=seq({0: 10.0}))
        lu = [r for r in report.records if r.name == "lu_factorization"]
        assert lu[0].kind == "inapplicable"


class TestRunPairChecks:
    def test_valid_pair(self):
        report = run_pair_checks(TWO_POINT_PAIR)
        assert report.overall_pass

    def test_tampered_pair(self):
        report = run_pair_checks(tampered_pair())
        assert not report.overall_pass

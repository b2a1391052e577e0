"""Instance-level verification of the transform identities and estimates.

Each check measures one identity or inequality on a concrete instance
and returns a small record.  Checks come in three kinds:

* ``hard``: an exact identity or an inequality with explicit constant;
  gates the overall pass flag.
* ``monitored``: an inequality whose absolute constant is unspecified;
  the measured ratio is recorded for regression tracking, never gated.
* ``inapplicable``: the hypothesis of the statement fails on this
  instance, so nothing is asserted.

``run_suite`` composes everything, including a full inverse round trip.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    BeurlingWeight,
    CoefficientSequence,
    NlftPair,
    _eval_samples,
    default_grid_size,
    derivative,
    from_grid,
    sobolev_norm,
    star_reflect,
    weighted_l1_norm,
    GridFunction,
)
from .errors import (
    NumericalError,
    SzegoMarginError,
    ValidationError,
    VanishingSymbolError,
)
from .forward import nlft_forward
from .inverse import RhSystem, _apply_m_vec, inverse_nlft_detailed
from .spectral import grid_quotient

logger = logging.getLogger(__name__)

__all__ = [
    "CheckRecord",
    "VerificationReport",
    "check_determinant",
    "check_plancherel",
    "check_sinh_bound",
    "check_decay_first_order",
    "check_decay_fractional",
    "check_quantitative_baxter",
    "check_lu_factorization",
    "check_antisymmetry",
    "check_contraction",
    "check_round_trip",
    "decay_table",
    "run_pair_checks",
    "run_suite",
]

HARD = "hard"
MONITORED = "monitored"
INAPPLICABLE = "inapplicable"
ERROR = "error"

DET_TOL = 1e-12
PLANCHEREL_TOL = 1e-8
SINH_TOL = 1e-12
DECAY_TOL = 1e-10
LU_TOL = 1e-11
ANTISYM_TOL = 1e-12
CONTRACTION_SLACK = 1e-12
ROUND_TRIP_TOL = 1e-8


@dataclass
class CheckRecord:
    """Outcome of a single check."""

    name: str
    anchor: str  # name of the identity/estimate being exercised
    kind: str  # hard / monitored / inapplicable / error
    lhs: float | None
    rhs: float | None
    value: float | None  # residual, margin or ratio, per check
    passed: bool
    tolerance: float | None
    weight: str | None = None
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        if self.kind == MONITORED:
            tag = "INFO"
        elif self.kind == INAPPLICABLE:
            tag = "N/A "
        bits = [f"[{tag}] {self.name}"]
        if self.weight:
            bits.append(f"w={self.weight}")
        if self.value is not None:
            bits.append(f"value={self.value:.3e}")
        if self.tolerance is not None:
            bits.append(f"tol={self.tolerance:.1e}")
        if self.detail:
            bits.append(self.detail)
        return "  ".join(bits)

    def to_dict(self) -> dict:
        def num(x):
            return None if x is None else float(x)

        return {
            "name": self.name,
            "anchor": self.anchor,
            "kind": self.kind,
            "lhs": num(self.lhs),
            "rhs": num(self.rhs),
            "value": num(self.value),
            "passed": bool(self.passed),
            "tolerance": num(self.tolerance),
            "weight": self.weight,
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    records: list[CheckRecord] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def overall_pass(self) -> bool:
        """True iff every applicable hard check passed and nothing errored."""
        for r in self.records:
            if r.kind == ERROR:
                return False
            if r.kind == HARD and not r.passed:
                return False
        return True

    def lines(self) -> list[str]:
        out = [r.line() for r in self.records]
        out.append(f"overall: {'PASS' if self.overall_pass else 'FAIL'}")
        return out

    def to_dict(self) -> dict:
        return {
            "metadata": self.metadata,
            "overall_pass": self.overall_pass,
            "records": [r.to_dict() for r in self.records],
        }


# ---------------------------------------------------------------------------
# hard identity checks
# ---------------------------------------------------------------------------


def check_determinant(pair: NlftPair, n_points: int | None = None,
                      tol: float = DET_TOL) -> CheckRecord:
    """``max_j | |a|^2 + |b|^2 - 1 |`` on the grid against ``tol``."""
    if n_points is None:
        n_points = default_grid_size(max(pair.a.width, pair.b.width))
    av = _eval_samples(pair.a, n_points)
    bv = _eval_samples(pair.b, n_points)
    s = np.abs(av) ** 2 + np.abs(bv) ** 2
    residual = float(np.max(np.abs(s - 1.0)))
    return CheckRecord(
        name="determinant",
        anchor="su2_determinant_identity",
        kind=HARD,
        lhs=float(np.max(s)),
        rhs=1.0,
        value=residual,
        passed=residual <= tol,
        tolerance=tol,
    )


def _shifted_log_gap_mean(b: CoefficientSequence, n_points: int) -> float:
    """Mean of ``-log(1 - |b|^2)`` over the half-step-shifted grid."""
    idx = np.arange(b.support_lo, b.support_hi + 1)
    shifted = CoefficientSequence(
        b.support_lo, b.support_hi,
        b.coeffs * np.exp(1j * np.pi * idx / n_points),
    )
    gap = 1.0 - np.abs(_eval_samples(shifted, n_points)) ** 2
    if np.min(gap) <= 1e-14:
        raise SzegoMarginError(
            f"1 - |b|^2 reaches {np.min(gap):.3e} on the quadrature grid; "
            "the logarithmic integral hypothesis fails"
        )
    return float(-np.mean(np.log(gap)))


def check_plancherel(F: CoefficientSequence, pair: NlftPair,
                     n_points: int | None = None,
                     tol: float = PLANCHEREL_TOL) -> CheckRecord:
    """Sum rule: ``sum_k log(1+|F_k|^2) = -(1/2pi) int log(1-|b|^2)``.

    Quadrature nodes sit halfway between the standard grid points, so a
    boundary zero of ``1 - |b|^2`` at a root of unity (where the log
    singularity is still integrable) never lands on a node; its exact
    ``c/N`` aliasing error is removed by one Richardson step against the
    doubled grid.  Interior instances are unaffected: both grids are
    already spectrally accurate.  Raises ``SzegoMarginError`` when the
    gap is not positive on the nodes.
    """
    if n_points is None:
        n_points = default_grid_size(max(pair.a.width, pair.b.width))
    lhs = float(np.sum(np.log1p(np.abs(F.coeffs) ** 2))) if not F.is_empty else 0.0
    if pair.b.is_empty:
        rhs = 0.0
    else:
        coarse = _shifted_log_gap_mean(pair.b, n_points)
        fine = _shifted_log_gap_mean(pair.b, 2 * n_points)
        rhs = 2.0 * fine - coarse
    residual = abs(lhs - rhs)
    return CheckRecord(
        name="plancherel",
        anchor="szego_plancherel_identity",
        kind=HARD,
        lhs=lhs,
        rhs=rhs,
        value=residual,
        passed=residual <= tol,
        tolerance=tol,
    )


def check_sinh_bound(F: CoefficientSequence, w: BeurlingWeight,
                     pair: NlftPair | None = None,
                     tol: float = SINH_TOL) -> CheckRecord:
    """``||b||_{A_w} <= sinh(||F||_{l1_w})``; margin must be >= -tol."""
    if pair is None:
        pair = nlft_forward(F)
    lhs = weighted_l1_norm(pair.b, w)
    rhs = math.sinh(weighted_l1_norm(F, w))
    margin = rhs - lhs
    return CheckRecord(
        name="sinh_bound",
        anchor="sinh_norm_bound",
        kind=HARD,
        lhs=lhs,
        rhs=rhs,
        value=margin,
        passed=margin >= -tol,
        tolerance=tol,
        weight=w.descriptor,
    )


# ---------------------------------------------------------------------------
# decay estimates
# ---------------------------------------------------------------------------


def _full_symbol_ratio(pair: NlftPair, n_points: int) -> CoefficientSequence:
    b = pair.b
    lo = b.support_lo if not b.is_empty else 0
    return grid_quotient(b, star_reflect(pair.a), n_points,
                         (lo, lo + n_points - 2))


def _a_star_zero(pair: NlftPair) -> float:
    return float(np.real(pair.a.coefficient(0)))


def check_decay_first_order(F: CoefficientSequence, pair: NlftPair,
                            n_points: int | None = None,
                            tol: float = DECAY_TOL) -> CheckRecord:
    """``|F_n| <= (2 a*(0) / |n|) ||(b/a*)'||_L2`` for every ``n != 0``.

    Reports the worst margin (bound minus ``|F_n|``) over the support.
    """
    if n_points is None:
        n_points = default_grid_size(max(pair.a.width, pair.b.width))
    ratio = _full_symbol_ratio(pair, n_points)
    deriv_l2 = derivative(ratio).l2_norm()
    a0 = _a_star_zero(pair)
    worst_margin = math.inf
    worst = (0.0, 0.0, None)
    if not F.is_empty:
        for n, c in zip(F.indices(), F.coeffs):
            if n == 0 or c == 0:
                continue
            bound = 2.0 * a0 * deriv_l2 / abs(n)
            margin = bound - abs(c)
            if margin < worst_margin:
                worst_margin = margin
                worst = (float(abs(c)), float(bound), int(n))
    if worst_margin is math.inf:
        worst_margin = 0.0  # no off-center entries: nothing to bound
    return CheckRecord(
        name="decay_first_order",
        anchor="first_order_decay_bound",
        kind=HARD,
        lhs=worst[0],
        rhs=worst[1],
        value=float(worst_margin),
        passed=worst_margin >= -tol,
        tolerance=tol,
        detail=f"worst n={worst[2]}" if worst[2] is not None else "",
    )


def check_decay_fractional(F: CoefficientSequence, pair: NlftPair, s: float,
                           n_points: int | None = None) -> CheckRecord:
    """Monitored ratio for the fractional decay estimate of order ``s``.

    rho(n) = |F_n| |n|^s / [a*(0) (1 + ||b/a*||_{H^s})
                            max(1, ||(b/a*)'||_inf^ceil(s))].

    The estimate's absolute constant is unspecified, so the max ratio is
    recorded without a pass/fail gate.
    """
    if s < 1:
        raise ValidationError("fractional decay needs s >= 1")
    if n_points is None:
        n_points = default_grid_size(max(pair.a.width, pair.b.width))
    ratio = _full_symbol_ratio(pair, n_points)
    hs = sobolev_norm(ratio, s)
    deriv_inf = float(np.max(np.abs(_eval_samples(derivative(ratio), n_points))))
    a0 = _a_star_zero(pair)
    denom = a0 * (1.0 + hs) * max(1.0, deriv_inf) ** math.ceil(s)
    worst = 0.0
    lhs = 0.0
    if not F.is_empty:
        for n, c in zip(F.indices(), F.coeffs):
            if n == 0 or c == 0:
                continue
            num = abs(c) * abs(n) ** s
            if num / denom > worst:
                worst = num / denom
                lhs = num
    return CheckRecord(
        name=f"decay_fractional_s{s:g}",
        anchor="fractional_decay_ratio",
        kind=MONITORED,
        lhs=lhs,
        rhs=denom,
        value=worst,
        passed=True,
        tolerance=None,
        detail=f"s={s:g}",
    )


def check_quantitative_baxter(F: CoefficientSequence, pair: NlftPair,
                              w: BeurlingWeight, epsilon: float | None = None,
                              n_points: int | None = None) -> CheckRecord:
    """Monitored ratio ``||F||_{l1_w} eps / ||b/a||_{A_w}``.

    Applicable only when ``||b||_{A_w} < 1/sqrt(2) - eps``; with
    ``epsilon=None`` half of the available margin is used.
    """
    if n_points is None:
        n_points = default_grid_size(max(pair.a.width, pair.b.width))
    b_norm = weighted_l1_norm(pair.b, w)
    target = 1.0 / math.sqrt(2.0)
    if epsilon is None:
        epsilon = max((target - b_norm) / 2.0, 0.0)
    if not (b_norm < target - epsilon) or epsilon <= 0.0:
        return CheckRecord(
            name="quantitative_baxter",
            anchor="quantitative_inverse_ratio",
            kind=INAPPLICABLE,
            lhs=b_norm,
            rhs=target,
            value=None,
            passed=True,
            tolerance=None,
            weight=w.descriptor,
            detail="||b||_Aw not below 1/sqrt(2) - eps",
        )
    if F.is_empty:
        ratio = 0.0
        quot_norm = 0.0
    else:
        hi = pair.b.support_hi
        quot = grid_quotient(pair.b, pair.a, n_points,
                             (hi - (n_points - 2), hi))
        quot_norm = weighted_l1_norm(quot, w)
        ratio = weighted_l1_norm(F, w) * epsilon / quot_norm if quot_norm else 0.0
    return CheckRecord(
        name="quantitative_baxter",
        anchor="quantitative_inverse_ratio",
        kind=MONITORED,
        lhs=weighted_l1_norm(F, w) * epsilon,
        rhs=quot_norm,
        value=ratio,
        passed=True,
        tolerance=None,
        weight=w.descriptor,
        detail=f"eps={epsilon:.4g}",
    )


# ---------------------------------------------------------------------------
# LU factorization and operator probes
# ---------------------------------------------------------------------------


def _window_vec_norm(samples: np.ndarray, lo: int, hi: int) -> float:
    g = GridFunction(samples.size, samples)
    return from_grid(g, (lo, hi)).l2_norm()


def _random_window(rng, lo: int, hi: int, n_points: int) -> np.ndarray:
    """Samples of a random coefficient vector supported on [lo, hi]."""
    width = hi - lo + 1
    vec = rng.standard_normal(width) + 1j * rng.standard_normal(width)
    spec = np.zeros(n_points, dtype=np.complex128)
    spec[np.arange(lo, hi + 1) % n_points] = vec
    return np.fft.ifft(spec) * n_points, float(np.linalg.norm(vec))


def check_lu_factorization(pair: NlftPair, n_points: int | None = None,
                           tol: float = LU_TOL, n: int | None = None,
                           n_probes: int = 4, seed: int = 0,
                           min_modulus: float = 1e-6) -> CheckRecord:
    """Pointwise LU identities and the vanishing operator compositions.

    Checks ``C = L U`` and ``C = Ut Lt`` entrywise on the grid, the
    eight triangularity compositions (lower family against the analytic
    projection, upper family against its complement) and the four
    compositions with the split projections at truncation ``n``, all on
    random windowed probes.  The record value is the worst residual.

    The compositions vanish exactly only for the bi-infinite symbols;
    on a grid the tails of 1/a alias into the forbidden windows, so the
    default grid is oversized relative to the data width.
    """
    if n_points is None:
        n_points = 4 * default_grid_size(max(pair.a.width, pair.b.width))
    av = _eval_samples(pair.a, n_points)
    small = float(np.min(np.abs(av)))
    if small < min_modulus:
        raise VanishingSymbolError(
            f"min |a| = {small:.3e} < {min_modulus:.3e} on the grid"
        )
    bv = _eval_samples(pair.b, n_points)
    astar = np.conj(av)
    bstar = np.conj(bv)
    one = np.ones(n_points, dtype=np.complex128)
    zero = np.zeros(n_points, dtype=np.complex128)

    C = [[one, bstar / av], [-bv / astar, one]]
    L = [[1.0 / av, bstar / av], [zero, one]]
    U = [[1.0 / astar, zero], [-bv / astar, one]]
    Lt = [[one, bstar / av], [zero, 1.0 / av]]
    Ut = [[one, zero], [-bv / astar, 1.0 / astar]]
    L_inv = [[av, -bstar], [zero, one]]
    U_inv = [[astar, zero], [bv, one]]
    Lt_inv = [[one, -bstar], [zero, av]]
    Ut_inv = [[one, zero], [bv, astar]]

    def matmul(X, Y):
        return [
            [X[0][0] * Y[0][0] + X[0][1] * Y[1][0],
             X[0][0] * Y[0][1] + X[0][1] * Y[1][1]],
            [X[1][0] * Y[0][0] + X[1][1] * Y[1][0],
             X[1][0] * Y[0][1] + X[1][1] * Y[1][1]],
        ]

    def mat_residual(X, Y):
        return max(
            float(np.max(np.abs(X[i][j] - Y[i][j]))) for i in range(2) for j in range(2)
        )

    res_lu = mat_residual(C, matmul(L, U))
    res_ul = mat_residual(C, matmul(Ut, Lt))

    if n is None:
        n = (pair.b.support_lo + pair.b.support_hi) // 2 if not pair.b.is_empty else 0
    k = max(pair.a.width, pair.b.width, 8)
    if 4 * k + 2 * abs(n) >= n_points:
        k = max((n_points - 2 * abs(n)) // 4 - 1, 4)
    rng = np.random.default_rng(seed)

    def apply_entries(T, x1, x2):
        a11, a12 = T[0]
        a21, a22 = T[1]
        u1 = x1 if x1 is not None else zero
        u2 = x2 if x2 is not None else zero
        return a11 * u1 + a12 * u2, a21 * u1 + a22 * u2

    worst_probe = 0.0

    def probe(T, in1, in2, out1, out2):
        """One random application; windows given as (lo, hi) or None."""
        nonlocal worst_probe
        norm_in_sq = 0.0
        x1 = x2 = None
        if in1 is not None:
            x1, nrm = _random_window(rng, in1[0], in1[1], n_points)
            norm_in_sq += nrm**2
        if in2 is not None:
            x2, nrm = _random_window(rng, in2[0], in2[1], n_points)
            norm_in_sq += nrm**2
        y1, y2 = apply_entries(T, x1, x2)
        out_sq = 0.0
        if out1 is not None:
            out_sq += _window_vec_norm(y1, out1[0], out1[1]) ** 2
        if out2 is not None:
            out_sq += _window_vec_norm(y2, out2[0], out2[1]) ** 2
        worst_probe = max(worst_probe, math.sqrt(out_sq / norm_in_sq))

    half = n_points // 2 - 1
    for _ in range(n_probes):
        # triangularity: lower family mapped through the negative window
        for T in (L, L_inv, Lt, Lt_inv):
            probe(T, (-k, -1), None, (0, k), (-half, half))
        # upper family against the complementary projection
        for T in (U, U_inv, Ut, Ut_inv):
            probe(T, (0, k), (-k, k), (-k - 1, -1), None)
        # split-projection compositions at truncation n
        probe(Lt, (0, k), (n - k, n), None, (n + 1, n + 1 + k))
        probe(Lt_inv, (0, k), (n - k, n), None, (n + 1, n + 1 + k))
        probe(Ut, None, (n + 1, n + 1 + k), (0, k), (n - k, n))
        probe(Ut_inv, None, (n + 1, n + 1 + k), (0, k), (n - k, n))

    value = max(res_lu, res_ul, worst_probe)
    return CheckRecord(
        name="lu_factorization",
        anchor="lu_factorization_identity",
        kind=HARD,
        lhs=max(res_lu, res_ul),
        rhs=worst_probe,
        value=value,
        passed=value <= tol,
        tolerance=tol,
        detail=f"n={n} probes={n_probes}",
    )


# ---------------------------------------------------------------------------
# operator checks tied to the solver
# ---------------------------------------------------------------------------


def check_antisymmetry(pair: NlftPair, n: int | None = None,
                       n_points: int | None = None, n_probes: int = 20,
                       seed: int = 0, tol: float = ANTISYM_TOL,
                       bandwidth: int | None = None) -> CheckRecord:
    """``|<Mx, y> + <x, My>| <= tol ||x|| ||y||`` on random probe pairs."""
    if n is None:
        n = pair.b.support_hi if not pair.b.is_empty else 0
    sys = RhSystem.build(pair, n, n_points=n_points, bandwidth=bandwidth)
    w = sys.bandwidth
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_probes):
        x = rng.standard_normal(2 * w) + 1j * rng.standard_normal(2 * w)
        y = rng.standard_normal(2 * w) + 1j * rng.standard_normal(2 * w)
        mx = np.concatenate(_apply_m_vec(sys, x[:w], x[w:]))
        my = np.concatenate(_apply_m_vec(sys, y[:w], y[w:]))
        # <u, v> = sum u conj(v)
        s = np.vdot(y, mx) + np.vdot(my, x)
        worst = max(worst, abs(s) / (np.linalg.norm(x) * np.linalg.norm(y)))
    return CheckRecord(
        name="antisymmetry",
        anchor="rh_antisymmetry",
        kind=HARD,
        lhs=worst,
        rhs=0.0,
        value=float(worst),
        passed=worst <= tol,
        tolerance=tol,
        detail=f"n={n} probes={n_probes}",
    )


def check_contraction(records, tol: float = CONTRACTION_SLACK) -> CheckRecord:
    """Solution 2-norm never exceeds the rhs 2-norm, up to roundoff slack."""
    records = list(records)
    worst = 0.0
    for r in records:
        worst = max(worst, r.solution_norm / r.rhs_norm - 1.0)
    return CheckRecord(
        name="contraction",
        anchor="rh_inverse_contraction",
        kind=HARD,
        lhs=1.0 + worst,
        rhs=1.0,
        value=float(worst),
        passed=worst <= tol,
        tolerance=tol,
        detail=f"solves={len(records)}",
    )


def check_round_trip(F: CoefficientSequence, pair: NlftPair | None = None,
                     n_points: int | None = None, solver_tol: float = 1e-12,
                     tol: float = ROUND_TRIP_TOL,
                     szego_margin: float = 1e-6):
    """Invert the forward output and compare; also yields the contraction record."""
    if pair is None:
        pair = nlft_forward(F)
    window = (F.support_lo, F.support_hi) if not F.is_empty else (0, 0)
    recovered, report = inverse_nlft_detailed(
        pair.b, window, n_points=n_points, tol=solver_tol,
        szego_margin=szego_margin,
    )
    diff = recovered - F
    err = float(np.max(np.abs(diff.coeffs))) if not diff.is_empty else 0.0
    rt = CheckRecord(
        name="round_trip",
        anchor="round_trip_recovery",
        kind=HARD,
        lhs=err,
        rhs=0.0,
        value=err,
        passed=err <= tol,
        tolerance=tol,
        detail=f"window=[{window[0]},{window[1]}]",
    )
    return rt, check_contraction(report.records)


def decay_table(F: CoefficientSequence, pair: NlftPair | None = None,
                n_points: int | None = None):
    """Rows ``(n, |F_n|, first_order_rhs)`` over the support of ``F``.

    The rhs column is ``None`` at ``n = 0``, where the first-order bound
    says nothing.
    """
    if pair is None:
        pair = nlft_forward(F)
    if n_points is None:
        n_points = default_grid_size(max(pair.a.width, pair.b.width))
    ratio = _full_symbol_ratio(pair, n_points)
    deriv_l2 = derivative(ratio).l2_norm()
    a0 = _a_star_zero(pair)
    rows = []
    for n in F.indices():
        rhs = 2.0 * a0 * deriv_l2 / abs(n) if n != 0 else None
        rows.append((int(n), float(abs(F.coefficient(n))), rhs))
    return rows


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------


def _error_record(name: str, anchor: str, exc: Exception) -> CheckRecord:
    return CheckRecord(
        name=name,
        anchor=anchor,
        kind=ERROR,
        lhs=None,
        rhs=None,
        value=None,
        passed=False,
        tolerance=None,
        detail=f"{type(exc).__name__}: {exc}",
    )


def run_pair_checks(pair: NlftPair, n_points: int | None = None,
                    seed: int = 0, lu_min_a: float = 0.1) -> VerificationReport:
    """Checks that need only the pair (a, b), not the generating sequence.

    Used for externally supplied pairs, where determinant failure is the
    typical defect to surface.
    """
    report = VerificationReport(metadata={"input": "pair", "grid": n_points})
    report.records.append(check_determinant(pair, n_points))
    np_grid = n_points or default_grid_size(max(pair.a.width, pair.b.width))
    min_a = float(np.min(np.abs(_eval_samples(pair.a, np_grid))))
    if min_a >= lu_min_a:
        try:
            report.records.append(check_lu_factorization(pair, n_points,
                                                         seed=seed))
        except VanishingSymbolError as exc:
            report.records.append(
                _error_record("lu_factorization", "lu_factorization_identity",
                              exc))
    else:
        report.records.append(CheckRecord(
            name="lu_factorization", anchor="lu_factorization_identity",
            kind=INAPPLICABLE, lhs=min_a, rhs=lu_min_a, value=None,
            passed=True, tolerance=None,
            detail=f"min |a| = {min_a:.3f} below the {lu_min_a} floor",
        ))
    try:
        report.records.append(check_antisymmetry(pair, n_points=n_points,
                                                 seed=seed))
    except VanishingSymbolError as exc:
        report.records.append(_error_record("antisymmetry", "rh_antisymmetry",
                                            exc))
    return report


def run_suite(
    F: CoefficientSequence | None = None,
    b: CoefficientSequence | None = None,
    n_points: int | None = None,
    weights: list[BeurlingWeight] | None = None,
    sobolev_orders: tuple[float, ...] = (1.0, 1.5, 2.0),
    support_window: tuple[int, int] | None = None,
    solver_tol: float = 1e-12,
    round_trip_tol: float = ROUND_TRIP_TOL,
    szego_margin: float = 1e-6,
    seed: int = 0,
    lu_min_a: float = 0.1,
) -> VerificationReport:
    """Run every check on one instance.

    Give either the sequence ``F`` (forward direction, round trip
    included) or the datum ``b`` (inverse direction first; the checks
    then run on the recovered sequence).  Hard-check failures and
    numerical errors flip the overall flag; monitored ratios never do.
    """
    if (F is None) == (b is None):
        raise ValidationError("provide exactly one of F or b")
    if weights is None:
        weights = [BeurlingWeight.one()] + [
            BeurlingWeight.polynomial(alpha) for alpha in (0.5, 1.0, 2.0)
        ]
    report = VerificationReport()
    inverse_records = None

    if F is not None:
        pair = nlft_forward(F, n_points)
    else:
        try:
            recovered, inv_report = inverse_nlft_detailed(
                b,
                support_window if support_window is not None
                else (b.support_lo, b.support_hi),
                n_points=n_points, tol=solver_tol, szego_margin=szego_margin,
            )
        except NumericalError as exc:
            report.records.append(
                _error_record("inverse_path", "round_trip_recovery", exc))
            report.metadata["input"] = "b"
            return report
        F = recovered
        pair = nlft_forward(recovered, n_points)
        inverse_records = inv_report.records
        err = inv_report.round_trip_residual
        report.records.append(CheckRecord(
            name="round_trip",
            anchor="round_trip_recovery",
            kind=HARD,
            lhs=err, rhs=0.0, value=err,
            passed=err <= round_trip_tol,
            tolerance=round_trip_tol,
            detail="reconstruction of b from the recovered sequence",
        ))

    report.metadata = {
        "support": [F.support_lo, F.support_hi] if not F.is_empty else None,
        "grid": n_points,
        "weights": [w.descriptor for w in weights],
        "sobolev_orders": list(sobolev_orders),
        "seed": seed,
    }

    report.records.append(check_determinant(pair, n_points))
    try:
        report.records.append(check_plancherel(F, pair, n_points))
    except SzegoMarginError as exc:
        report.records.append(
            _error_record("plancherel", "szego_plancherel_identity", exc))
    for w in weights:
        report.records.append(check_sinh_bound(F, w, pair))
    try:
        report.records.append(check_decay_first_order(F, pair, n_points))
        for s in sobolev_orders:
            report.records.append(check_decay_fractional(F, pair, s, n_points))
    except VanishingSymbolError as exc:
        report.records.append(
            _error_record("decay", "first_order_decay_bound", exc))
    for w in weights:
        report.records.append(check_quantitative_baxter(F, pair, w,
                                                        n_points=n_points))
    np_grid = n_points or default_grid_size(max(pair.a.width, pair.b.width))
    min_a = float(np.min(np.abs(_eval_samples(pair.a, np_grid))))
    if min_a >= lu_min_a:
        report.records.append(check_lu_factorization(pair, n_points, seed=seed))
    else:
        report.records.append(CheckRecord(
            name="lu_factorization", anchor="lu_factorization_identity",
            kind=INAPPLICABLE, lhs=min_a, rhs=lu_min_a, value=None,
            passed=True, tolerance=None,
            detail=f"min |a| = {min_a:.3f} below the {lu_min_a} floor",
        ))
    try:
        report.records.append(check_antisymmetry(pair, n_points=n_points,
                                                 seed=seed))
    except (VanishingSymbolError,) as exc:
        report.records.append(_error_record("antisymmetry", "rh_antisymmetry", exc))

    if inverse_records is None:
        try:
            rt, contraction = check_round_trip(
                F, pair, n_points=n_points, solver_tol=solver_tol,
                tol=round_trip_tol, szego_margin=szego_margin)
            report.records.append(rt)
            report.records.append(contraction)
        except NumericalError as exc:
            report.records.append(
                _error_record("round_trip", "round_trip_recovery", exc))
    else:
        report.records.append(check_contraction(inverse_records))
    return report

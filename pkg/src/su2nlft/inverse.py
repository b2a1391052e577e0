"""Inverse transform by truncated Riemann-Hilbert solves and layer stripping.

For a truncation index ``n`` the pair of the restricted sequence
``(F_k)_{k <= n}`` solves the projected linear system

    a_n* = 1/a_n*(0) - P_+((b*/a) b_n),      b_n = P_{<=n}((b/a*) a_n*),

or, with ``x = (A, B) = a_n*(0) (a_n*, b_n)`` renormalized,

    (Id + M) x = (1, 0),
    M = [[0, P_+ (b*/a) P_{<=n}], [-P_{<=n} (b/a*) P_+, 0]].

``M`` is skew-adjoint, so ``Id + M`` has spectrum on ``1 + iR`` and the
inverse is a 2-norm contraction; a matrix-free Krylov iteration on
windowed coefficient vectors solves each system.  The potential is then
read off one index at a time:

    F_n = b_n^(n) / a_n*(0)

(the layer-stripping formula).  Negative indices are recovered by
stripping the reflected pair ``(a*(1/z), b(1/z))``, which is the
transform of the index-reversed sequence.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse.linalg import LinearOperator, gmres

from .core import (
    BeurlingWeight,
    CoefficientSequence,
    NlftPair,
    _eval_samples,
    default_grid_size,
    star_reflect,
    weighted_l1_norm,
)
from .errors import (
    ConsistencyError,
    ConvergenceError,
    GridSizeError,
    ValidationError,
    VanishingSymbolError,
)
from .forward import CLAMP_TOL, nlft_forward
from .spectral import grid_quotient, outer_complement

logger = logging.getLogger(__name__)

__all__ = [
    "RhSystem",
    "RhSolution",
    "apply_m",
    "rh_solve",
    "layer_strip",
    "layer_strip_detailed",
    "inverse_nlft",
    "inverse_nlft_detailed",
    "InverseReport",
    "reflect_pair",
    "solvability_certificate",
    "first_certified_index",
    "default_bandwidth",
    "solver_grid_size",
]

DEFAULT_SOLVER_TOL = 1e-12
MAX_RESTART_CYCLES = 10  # total Krylov steps capped at 10x the window size
IMAG_TOL = 1e-10  # allowed imaginary leakage in the leading solution entry


def default_bandwidth(window_width: int, b_width: int) -> int:
    """Default coefficient bandwidth: 4x the strip window plus width(b)."""
    return 4 * max(window_width, 1) + b_width


def solver_grid_size(bandwidth: int, b_width: int) -> int:
    """Smallest power of two >= 4 * (bandwidth + width(b))."""
    n = 8
    while n < 4 * (bandwidth + b_width):
        n *= 2
    return n


@dataclass(eq=False)
class RhSystem:
    """Truncated Riemann-Hilbert system at one truncation index.

    Immutable after construction.  ``sym_b_over_astar`` and
    ``sym_bstar_over_a`` are grid samples of the symbols appearing in the
    two blocks of ``M``; the unknowns live on the coefficient windows
    ``[0, bandwidth)`` and ``(n - bandwidth, n]``.
    """

    pair: NlftPair
    n: int
    n_points: int
    bandwidth: int
    sym_b_over_astar: np.ndarray
    sym_bstar_over_a: np.ndarray

    def __post_init__(self):
        w = self.bandwidth
        if w < 1:
            raise ValidationError("bandwidth must be positive")
        if 2 * w > self.n_points:
            raise GridSizeError(
                f"bandwidth {w} needs a grid larger than {self.n_points}"
            )
        self._idx_plus = np.arange(0, w) % self.n_points
        self._idx_low = np.arange(self.n - w + 1, self.n + 1) % self.n_points

    @property
    def window_plus(self) -> tuple[int, int]:
        return (0, self.bandwidth - 1)

    @property
    def window_low(self) -> tuple[int, int]:
        return (self.n - self.bandwidth + 1, self.n)

    @classmethod
    def build(
        cls,
        pair: NlftPair,
        n: int,
        n_points: int | None = None,
        bandwidth: int | None = None,
        min_modulus: float = 1e-6,
    ) -> "RhSystem":
        """Assemble the system for one truncation index of a validated pair."""
        b_lo = pair.b.support_lo if not pair.b.is_empty else 0
        b_width = pair.b.width
        if bandwidth is None:
            bandwidth = default_bandwidth(max(n - b_lo + 1, 1), b_width)
        bandwidth = max(bandwidth, n - b_lo + 2, b_width + 1, 1)
        if n_points is None:
            n_points = solver_grid_size(bandwidth, b_width)
        av = _eval_samples(pair.a, n_points)
        small = float(np.min(np.abs(av)))
        if small < min_modulus:
            raise VanishingSymbolError(
                f"min |a| = {small:.3e} < {min_modulus:.3e} on the grid"
            )
        bv = _eval_samples(pair.b, n_points)
        t = bv / np.conj(av)  # b / a* on the circle
        return cls(pair, n, n_points, bandwidth, t, np.conj(t))


def _apply_m_vec(sys: RhSystem, x1: np.ndarray, x2: np.ndarray):
    """Raw windowed application of M; the 1/N factors of the two
    transforms cancel, so none appear."""
    n = sys.n_points
    spec = np.zeros(n, dtype=np.complex128)
    spec[sys._idx_low] = x2
    y1 = np.fft.fft(np.fft.ifft(spec) * sys.sym_bstar_over_a)[sys._idx_plus]
    spec = np.zeros(n, dtype=np.complex128)
    spec[sys._idx_plus] = x1
    y2 = -np.fft.fft(np.fft.ifft(spec) * sys.sym_b_over_astar)[sys._idx_low]
    return y1, y2


def _embed(seq: CoefficientSequence, lo: int, hi: int) -> np.ndarray:
    out = np.zeros(hi - lo + 1, dtype=np.complex128)
    if not seq.is_empty:
        if seq.support_lo < lo or seq.support_hi > hi:
            raise ValidationError(
                f"support [{seq.support_lo}, {seq.support_hi}] not inside "
                f"window [{lo}, {hi}]"
            )
        out[seq.support_lo - lo : seq.support_hi - lo + 1] = seq.coeffs
    return out


def apply_m(
    sys: RhSystem, x: tuple[CoefficientSequence, CoefficientSequence]
) -> tuple[CoefficientSequence, CoefficientSequence]:
    """Apply the block operator ``M`` to a windowed coefficient pair."""
    lo1, hi1 = sys.window_plus
    lo2, hi2 = sys.window_low
    y1, y2 = _apply_m_vec(sys, _embed(x[0], lo1, hi1), _embed(x[1], lo2, hi2))
    return (
        CoefficientSequence(lo1, hi1, y1).trim(),
        CoefficientSequence(lo2, hi2, y2).trim(),
    )


@dataclass(eq=False)
class RhSolution:
    """Result of one truncated solve (denormalized and renormalized forms)."""

    n: int
    a: CoefficientSequence  # a_n
    b: CoefficientSequence  # b_n
    a_star_zero: float
    tilde_a_star: CoefficientSequence  # a_n*(0) * a_n*
    tilde_b: CoefficientSequence  # a_n*(0) * b_n
    residual: float
    solution_norm: float
    rhs_norm: float
    reflected: bool = False


def rh_solve(sys: RhSystem, tol: float = DEFAULT_SOLVER_TOL) -> RhSolution:
    """Solve ``(Id + M) x = (1, 0)`` and denormalize.

    Full-memory GMRES with relative residual ``tol``; the iteration cap
    is ``10x`` the window dimension.  Raises ``ConvergenceError`` if the
    cap is hit and ``ConsistencyError`` if the leading entry of the
    solution (which equals ``a_n*(0)^2``) is not a positive real within
    tolerance.
    """
    w = sys.bandwidth
    dim = 2 * w
    rhs = np.zeros(dim, dtype=np.complex128)
    rhs[0] = 1.0

    def matvec(x):
        y1, y2 = _apply_m_vec(sys, x[:w], x[w:])
        out = np.asarray(x, dtype=np.complex128).copy()
        out[:w] += y1
        out[w:] += y2
        return out

    op = LinearOperator((dim, dim), matvec=matvec, dtype=np.complex128)
    x, info = gmres(op, rhs, rtol=tol, atol=0.0, restart=dim,
                    maxiter=MAX_RESTART_CYCLES)
    if info != 0:
        raise ConvergenceError(
            f"no convergence to {tol:.1e} within {MAX_RESTART_CYCLES * dim} "
            f"Krylov steps at truncation {sys.n}"
        )
    residual = float(np.linalg.norm(matvec(x) - rhs))
    sol_norm = float(np.linalg.norm(x))

    leading = x[0]
    if abs(leading.imag) > IMAG_TOL or leading.real <= 0.0:
        raise ConsistencyError(
            f"leading solution entry {leading!r} is not a positive real"
        )
    a_star_zero = math.sqrt(leading.real)

    lo1, hi1 = sys.window_plus
    lo2, hi2 = sys.window_low
    tilde_a_star = CoefficientSequence(lo1, hi1, x[:w]).clamp(CLAMP_TOL)
    tilde_b = CoefficientSequence(lo2, hi2, x[w:]).clamp(CLAMP_TOL)
    a_n = star_reflect(tilde_a_star.scale(1.0 / a_star_zero))
    b_n = tilde_b.scale(1.0 / a_star_zero)
    return RhSolution(
        n=sys.n,
        a=a_n,
        b=b_n,
        a_star_zero=a_star_zero,
        tilde_a_star=tilde_a_star,
        tilde_b=tilde_b,
        residual=residual,
        solution_norm=sol_norm,
        rhs_norm=1.0,
    )


def reflect_pair(pair: NlftPair) -> NlftPair:
    """The pair ``(a*(1/z), b(1/z))``, i.e. the transform of ``(F_{-k})_k``."""
    a = pair.a
    b = pair.b
    a_refl = a.conjugate()  # coefficients of a*(1/z) are conj(a^(k)) at k
    if b.is_empty:
        b_refl = b
    else:
        b_refl = CoefficientSequence(-b.support_hi, -b.support_lo, b.coeffs[::-1])
    return NlftPair(a_refl, b_refl, pair.grid_residual)


def _strip_ascending(
    pair: NlftPair,
    indices: list[int],
    tol: float,
    n_points: int | None,
    bandwidth: int | None,
    min_modulus: float,
    reflected: bool,
) -> list[RhSolution]:
    """One rh_solve per index, sharing the cached symbol grids."""
    if not indices:
        return []
    b_lo = pair.b.support_lo if not pair.b.is_empty else 0
    b_width = pair.b.width
    if bandwidth is None:
        bandwidth = default_bandwidth(max(indices) - min(indices) + 1, b_width)
    bandwidth = max(bandwidth, max(indices) - b_lo + 2, b_width + 1, 1)
    if n_points is None:
        n_points = solver_grid_size(bandwidth, b_width)
    av = _eval_samples(pair.a, n_points)
    small = float(np.min(np.abs(av)))
    if small < min_modulus:
        raise VanishingSymbolError(
            f"min |a| = {small:.3e} < {min_modulus:.3e} on the grid"
        )
    t = _eval_samples(pair.b, n_points) / np.conj(av)
    s = np.conj(t)
    out = []
    for n in indices:
        sys = RhSystem(pair, n, n_points, bandwidth, t, s)
        sol = rh_solve(sys, tol)
        sol.reflected = reflected
        out.append(sol)
    return out


def layer_strip_detailed(
    pair: NlftPair,
    support_window: tuple[int, int],
    tol: float = DEFAULT_SOLVER_TOL,
    n_points: int | None = None,
    bandwidth: int | None = None,
    min_modulus: float = 1e-6,
) -> tuple[CoefficientSequence, list[RhSolution]]:
    """Recover ``F`` on a window together with the per-index solve records.

    Indices ``n >= 0`` are stripped from the pair directly; negative
    indices are stripped at ``-n`` from the reflected pair.  Entries with
    ``|F_n| < tol`` are reported as zero.
    """
    lo, hi = int(support_window[0]), int(support_window[1])
    if hi < lo:
        raise ValidationError("support window is empty")
    width = hi - lo + 1
    if bandwidth is None:
        bandwidth = default_bandwidth(width, pair.b.width)

    values: dict[int, complex] = {}
    records: list[RhSolution] = []

    direct = list(range(max(lo, 0), hi + 1))
    for sol in _strip_ascending(pair, direct, tol, n_points, bandwidth,
                                min_modulus, reflected=False):
        values[sol.n] = sol.b.coefficient(sol.n) / sol.a_star_zero
        records.append(sol)

    if lo < 0:
        mirrored = list(range(max(1, -hi), -lo + 1))
        refl = reflect_pair(pair)
        for sol in _strip_ascending(refl, mirrored, tol, n_points, bandwidth,
                                    min_modulus, reflected=True):
            values[-sol.n] = sol.b.coefficient(sol.n) / sol.a_star_zero
            records.append(sol)
        records.sort(key=lambda r: (r.reflected, r.n))

    arr = np.zeros(width, dtype=np.complex128)
    for n, v in values.items():
        if abs(v) >= tol:
            arr[n - lo] = v
    return CoefficientSequence(lo, hi, arr).trim(), records


def layer_strip(
    pair: NlftPair,
    support_window: tuple[int, int],
    tol: float = DEFAULT_SOLVER_TOL,
    n_points: int | None = None,
    bandwidth: int | None = None,
) -> CoefficientSequence:
    """Potential on a window via per-index Riemann-Hilbert solves."""
    F, _ = layer_strip_detailed(pair, support_window, tol, n_points, bandwidth)
    return F


@dataclass(eq=False)
class InverseReport:
    """Residual report accompanying an inversion."""

    pair_residual: float  # determinant residual of the completed pair
    records: list[RhSolution]
    round_trip_residual: float  # max coefficient error of forward(F) vs b

    @property
    def max_solver_residual(self) -> float:
        return max((r.residual for r in self.records), default=0.0)

    @property
    def contraction_ok(self) -> bool:
        return all(r.solution_norm <= r.rhs_norm * (1 + 1e-12) for r in self.records)


def inverse_nlft_detailed(
    b: CoefficientSequence,
    support_window: tuple[int, int],
    n_points: int | None = None,
    tol: float = DEFAULT_SOLVER_TOL,
    szego_margin: float = 1e-6,
    bandwidth: int | None = None,
    outer_window_hi: int | None = None,
) -> tuple[CoefficientSequence, InverseReport]:
    """Full inverse transform from ``b`` alone, with residual report.

    Completes ``b`` to a pair by spectral factorization, then layer
    strips on the window.  The report carries the determinant residual
    of the completed pair, every solver record, and the coefficient
    error of the forward transform of the result against ``b``.

    ``n_points`` sizes the solver grid only; the completion picks its
    own quadrature grid to meet its residual target.
    """
    pair = outer_complement(b, window_hi=outer_window_hi,
                            szego_margin=szego_margin)
    F, records = layer_strip_detailed(pair, support_window, tol,
                                      n_points=n_points, bandwidth=bandwidth)
    check = nlft_forward(F)
    diff = check.b - b
    rt = float(np.max(np.abs(diff.coeffs))) if not diff.is_empty else 0.0
    report = InverseReport(pair.grid_residual, records, rt)
    logger.info(
        "inverse_nlft window=%s pair_residual=%.3e solver_residual=%.3e "
        "round_trip=%.3e",
        support_window, report.pair_residual, report.max_solver_residual, rt,
    )
    return F, report


def inverse_nlft(
    b: CoefficientSequence,
    support_window: tuple[int, int],
    n_points: int | None = None,
    tol: float = DEFAULT_SOLVER_TOL,
    szego_margin: float = 1e-6,
    bandwidth: int | None = None,
) -> CoefficientSequence:
    """Recover ``F`` from ``b`` (see ``inverse_nlft_detailed``)."""
    F, _ = inverse_nlft_detailed(b, support_window, n_points, tol,
                                 szego_margin, bandwidth)
    return F


# ---------------------------------------------------------------------------
# solvability certificate
# ---------------------------------------------------------------------------


def solvability_certificate(
    pair: NlftPair,
    n: int,
    w: BeurlingWeight,
    n_points: int | None = None,
    min_modulus: float = 1e-6,
) -> float:
    """``|| P_{>n}(b) / a* ||_{A_w}``, the per-index solvability certificate.

    Values below 1/2 certify the weighted invertibility of the truncated
    system at ``n``.  The norm is computed over the full index range the
    grid resolves.
    """
    tail = pair.b.restrict(n + 1, pair.b.support_hi) if not pair.b.is_empty \
        else CoefficientSequence.empty()
    if tail.is_empty:
        return 0.0
    if n_points is None:
        n_points = 4 * default_grid_size(max(pair.a.width, pair.b.width))
    astar = star_reflect(pair.a)
    q = grid_quotient(tail, astar, n_points, (n + 1, n + n_points - 1),
                      min_modulus)
    return weighted_l1_norm(q, w)


def first_certified_index(
    pair: NlftPair,
    w: BeurlingWeight,
    n_points: int | None = None,
    search_window: tuple[int, int] | None = None,
) -> int | None:
    """Smallest ``n`` in the window whose certificate is below 1/2.

    No minimality over all integers is claimed; the certificate is just
    scanned left to right.
    """
    if search_window is None:
        if pair.b.is_empty:
            return None
        search_window = (pair.b.support_lo - 1, pair.b.support_hi)
    for n in range(search_window[0], search_window[1] + 1):
        if solvability_certificate(pair, n, w, n_points) < 0.5:
            return n
    return None

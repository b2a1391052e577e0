"""Spectral factorization: rebuild ``a`` from ``b`` alone.

On the circle the determinant identity forces ``|a|^2 = 1 - |b|^2``.
Among all solutions the normalization picks the one whose star dual
``a*`` is outer on the disk with ``a*(0) > 0``; concretely

    log a*(z) = g^(0) + 2 sum_{n > 0} g^(n) z^n,
    g = (1/2) log(1 - |b|^2),

so ``a* = exp(P g)`` with ``P`` the analytic (Herglotz) projection,
evaluated with FFTs on a uniform grid.  ``a*(0) = exp(g^(0))`` is the
exponential of the mean of ``g``, automatically positive.  Outerness of
the truncated polynomial is certified after the fact by a winding count
on a circle slightly inside the unit circle.
"""

from __future__ import annotations

import logging

import numpy as np

from .core import (
    CoefficientSequence,
    GridFunction,
    NlftPair,
    _eval_samples,
    default_grid_size,
    determinant_residual,
    from_grid,
    star_reflect,
    to_grid,
)
from .errors import (
    ConsistencyError,
    GridSizeError,
    OuternessError,
    SzegoMarginError,
    ValidationError,
    VanishingSymbolError,
)

logger = logging.getLogger(__name__)

__all__ = [
    "outer_complement",
    "symbol_ratio",
    "symbol_tail_mass",
    "grid_quotient",
    "winding_number",
]

DEFAULT_SZEGO_MARGIN = 1e-6
TAIL_TARGET = 1e-10  # tail mass goal when auto-sizing coefficient windows
PAIR_RESIDUAL_TOL = 1e-10
WINDING_RADIUS = 0.999
WINDING_OVERSAMPLE = 4
MAX_OUTER_GRID = 1 << 18


def _analytic_projection_exp(g: np.ndarray) -> np.ndarray:
    """Samples of ``exp(g^(0) + 2 sum_{n>0} g^(n) z^n)`` for real ``g``."""
    n = g.size
    coeff = np.fft.fft(g) / n
    folded = np.zeros(n, dtype=np.complex128)
    folded[0] = coeff[0]
    folded[1 : n // 2] = 2.0 * coeff[1 : n // 2]
    folded[n // 2] = coeff[n // 2]  # Nyquist bin kept once; content is ~0
    log_astar = np.fft.ifft(folded) * n
    return np.exp(log_astar)


def winding_number(
    s: CoefficientSequence,
    n_samples: int,
    radius: float = WINDING_RADIUS,
) -> int:
    """Winding of ``s`` around 0 along ``|z| = radius``.

    By the argument principle this counts the zeros of the polynomial
    inside that circle (support must be in ``[0, deg]``).
    """
    if s.is_empty:
        raise VanishingSymbolError("the zero polynomial has no winding number")
    if s.support_lo < 0:
        raise ValidationError("winding check expects support in [0, inf)")
    if n_samples <= s.support_hi:
        raise GridSizeError("not enough samples for the polynomial degree")
    spec = np.zeros(n_samples, dtype=np.complex128)
    k = np.arange(s.support_lo, s.support_hi + 1)
    spec[k] = s.coeffs * radius ** k.astype(np.float64)
    vals = np.fft.ifft(spec) * n_samples
    if np.min(np.abs(vals)) == 0.0:
        raise VanishingSymbolError("zero hit on the winding contour")
    phases = np.angle(vals)
    steps = np.diff(np.concatenate([phases, phases[:1]]))
    steps = (steps + np.pi) % (2.0 * np.pi) - np.pi
    return int(np.rint(steps.sum() / (2.0 * np.pi)))


def outer_complement(
    b: CoefficientSequence,
    n_points: int | None = None,
    window_hi: int | None = None,
    szego_margin: float = DEFAULT_SZEGO_MARGIN,
) -> NlftPair:
    """Complete ``b`` to a pair ``(a, b)`` with outer ``a*`` and ``a*(0) > 0``.

    Parameters
    ----------
    b : CoefficientSequence
        Upper entry of the sought pair; needs ``sup |b| <= 1 - szego_margin``
        on the grid.
    n_points : int, optional
        FFT grid size (power of two).  When absent the grid is doubled
        until the assembled pair meets the determinant residual target;
        the quadrature error of the logarithmic integrand decays
        geometrically in the grid size, at a rate set by how close the
        zeros of ``a`` come to the circle.
    window_hi : int, optional
        Highest retained coefficient index of ``a*``; defaults to
        ``4 * width(b)``.  The discarded tail mass is logged.
    szego_margin : float
        Required distance of ``sup |b|`` from 1.

    Raises
    ------
    SzegoMarginError
        If ``max |b|`` on the grid exceeds ``1 - szego_margin``.
    OuternessError
        If the truncated ``a*`` winds around 0 on ``|z| = 0.999``.
    ConsistencyError
        If the assembled pair misses the determinant identity by more
        than 1e-10 (window or grid too small).
    """
    if window_hi is None:
        window_hi = 4 * max(b.width, 1)
    if n_points is not None:
        grids = [n_points]
    else:
        start = default_grid_size(max(b.width, window_hi))
        grids = []
        while start <= MAX_OUTER_GRID:
            grids.append(start)
            start *= 2

    residual = np.inf
    astar = None
    for n in grids:
        bv = to_grid(b, n).samples
        sup_b = float(np.max(np.abs(bv))) if bv.size else 0.0
        if sup_b > 1.0 - szego_margin:
            raise SzegoMarginError(
                f"sup |b| = {sup_b:.12g} is within {szego_margin:.3e} of 1"
            )
        g = 0.5 * np.log1p(-np.abs(bv) ** 2)
        astar_samples = _analytic_projection_exp(g)

        full = from_grid(GridFunction(n, astar_samples), (0, n - 2))
        tail = float(np.sum(np.abs(full.coeffs[window_hi + 1 :])))
        logger.debug("outer_complement N=%d tail mass beyond %d: %.3e",
                     n, window_hi, tail)
        astar = full.restrict(0, window_hi).trim()
        residual = determinant_residual(star_reflect(astar), b, n)
        if residual <= PAIR_RESIDUAL_TOL:
            break
    if residual > PAIR_RESIDUAL_TOL:
        raise ConsistencyError(
            f"outer complement misses the determinant identity by "
            f"{residual:.3e}; increase the grid or the coefficient window"
        )

    n_wind = max(WINDING_OVERSAMPLE * default_grid_size(astar.width),
                 WINDING_OVERSAMPLE * (astar.support_hi + 1))
    wn = winding_number(astar, n_wind)
    if wn != 0:
        raise OuternessError(
            f"spectral factor winds {wn} times on |z| = {WINDING_RADIUS}"
        )

    a = star_reflect(astar)
    return NlftPair(a, b, residual)


def grid_quotient(
    numer: CoefficientSequence,
    denom: CoefficientSequence,
    n_points: int,
    window: tuple[int, int],
    min_modulus: float = 1e-6,
) -> CoefficientSequence:
    """Windowed coefficients of ``numer / denom`` via grid division."""
    dv = _eval_samples(denom, n_points)
    small = float(np.min(np.abs(dv)))
    if small < min_modulus:
        raise VanishingSymbolError(
            f"min |denominator| = {small:.3e} < {min_modulus:.3e} on the grid"
        )
    nv = _eval_samples(numer, n_points)
    return from_grid(GridFunction(n_points, nv / dv), window)


def symbol_ratio(
    pair: NlftPair,
    n_points: int | None = None,
    window: tuple[int, int] | None = None,
    min_modulus: float = 1e-6,
) -> CoefficientSequence:
    """Coefficients of the ratio ``b / a*`` on a window.

    The ratio is supported on ``[support_lo(b), inf)``; with
    ``window=None`` the window starts there and is grown until the
    remaining tail mass (as far as the grid resolves it) drops below
    1e-10, starting from the baseline width ``4 * width(b)``.
    """
    b = pair.b
    if b.is_empty:
        return CoefficientSequence.empty()
    if n_points is None:
        n_points = default_grid_size(max(pair.a.width, b.width))
    astar = star_reflect(pair.a)
    lo = b.support_lo
    full = grid_quotient(b, astar, n_points, (lo, lo + n_points - 2), min_modulus)
    mags = np.abs(full.coeffs)
    if window is not None:
        out = full.restrict(window[0], window[1])
        tail = float(np.sum(mags[window[1] + 1 - lo :])) if window[1] >= lo else float(np.sum(mags))
        logger.debug("symbol_ratio tail mass beyond %s: %.3e", window, tail)
        return out
    suffix = np.cumsum(mags[::-1])[::-1]  # suffix[k] = sum of |c| from k on
    hi = lo + 4 * b.width
    while hi - lo + 1 < full.width and suffix[hi + 1 - lo] > TAIL_TARGET:
        hi += b.width
    hi = min(hi, full.support_hi)
    return full.restrict(lo, hi)


def symbol_tail_mass(
    pair: NlftPair,
    n_points: int,
    window: tuple[int, int],
    min_modulus: float = 1e-6,
) -> float:
    """Mass of ``b / a*`` coefficients beyond ``window``, as the grid sees it."""
    b = pair.b
    if b.is_empty:
        return 0.0
    astar = star_reflect(pair.a)
    lo = b.support_lo
    full = grid_quotient(b, astar, n_points, (lo, lo + n_points - 2), min_modulus)
    beyond = full.restrict(window[1] + 1, full.support_hi)
    before = full.restrict(full.support_lo, window[0] - 1)
    return float(np.sum(np.abs(beyond.coeffs)) + np.sum(np.abs(before.coeffs)))

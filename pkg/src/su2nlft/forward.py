"""Forward nonlinear Fourier transform on the unit circle.

A sequence ``F`` with finite support maps to the SU(2)-valued symbol

    G(z) = prod_k (1 + |F_k|^2)^(-1/2) [[1, F_k z^k], [-conj(F_k) z^-k, 1]]

with factors ordered by ascending index (lower indices act leftmost).
``G`` is stored through its first row ``(a, b)``; the second row is
``(-b*, a*)``, and ``|a|^2 + |b|^2 = 1`` on the circle.  The transform is
computed by exact coefficient arithmetic, one factor at a time:

    a <- (a - conj(F_k) z^-k b) / sqrt(1 + |F_k|^2)
    b <- (b + F_k z^k a)       / sqrt(1 + |F_k|^2)

starting from ``(1, 0)``.  For ``F`` supported on ``[l, m]`` the outputs
satisfy ``supp(b) in [l, m]`` and ``supp(a) in [l - m, 0]``.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .core import (
    CoefficientSequence,
    NlftPair,
    convolve,
    default_grid_size,
    determinant_residual,
    star_reflect,
)
from .errors import CombinatoricsError

__all__ = [
    "nlft_forward",
    "a_star_at_zero",
    "multilinear_term",
    "multilinear_partial_sum",
    "single_factor",
    "su2_product",
]

CLAMP_TOL = 1e-13  # coefficients below this are treated as exact zeros
TERM_GUARD = 10**6  # cap on binomial(#support, arity) for enumeration


def nlft_forward(F: CoefficientSequence, n_points: int | None = None) -> NlftPair:
    """Forward transform of a compactly supported sequence.

    Parameters
    ----------
    F : CoefficientSequence
        Finite sequence of complex coefficients.
    n_points : int, optional
        Grid used for the cached determinant residual; defaults to the
        auto-sized power of two for the output width.

    Returns
    -------
    NlftPair
        ``(a, b)`` with the determinant residual on the chosen grid.
    """
    a = CoefficientSequence.constant(1.0)
    b = CoefficientSequence.empty()
    if not F.is_empty:
        for k, fk in zip(F.indices(), F.coeffs):
            if fk == 0:
                continue
            nu = math.sqrt(1.0 + abs(fk) ** 2)
            a_next = (a - b.shift(-int(k)).scale(np.conj(fk))).scale(1.0 / nu)
            b_next = (b + a.shift(int(k)).scale(fk)).scale(1.0 / nu)
            a, b = a_next, b_next
    a = a.clamp(CLAMP_TOL)
    b = b.clamp(CLAMP_TOL)
    if n_points is None:
        n_points = default_grid_size(max(a.width, b.width))
    return NlftPair(a, b, determinant_residual(a, b, n_points))


def a_star_at_zero(F: CoefficientSequence) -> float:
    """``a*(0) = prod_k (1 + |F_k|^2)^(-1/2)``, the constant term of ``a*``."""
    if F.is_empty:
        return 1.0
    return float(np.prod((1.0 + np.abs(F.coeffs) ** 2) ** -0.5))


def single_factor(k: int, value: complex) -> tuple[CoefficientSequence, CoefficientSequence]:
    """The pair of a one-point sequence ``{k: value}``."""
    nu = math.sqrt(1.0 + abs(value) ** 2)
    a = CoefficientSequence.constant(1.0 / nu)
    b = CoefficientSequence.single(k, value / nu)
    return a, b


def su2_product(
    p: tuple[CoefficientSequence, CoefficientSequence],
    q: tuple[CoefficientSequence, CoefficientSequence],
) -> tuple[CoefficientSequence, CoefficientSequence]:
    """Product of two SU(2) symbols given by their first rows.

    ``(a1, b1) . (a2, b2) = (a1 a2 - b1 b2*, a1 b2 + b1 a2*)``.  This is
    a second, recursion-free route to the transform (multiply the factors
    as matrices of Laurent polynomials); the test suite cross-checks the
    two.
    """
    a1, b1 = p
    a2, b2 = q
    a = convolve(a1, a2) - convolve(b1, star_reflect(b2))
    b = convolve(a1, b2) + convolve(b1, star_reflect(a2))
    return a.clamp(CLAMP_TOL), b.clamp(CLAMP_TOL)


def _support_points(F: CoefficientSequence) -> list[tuple[int, complex]]:
    return [(int(n), complex(c)) for n, c in zip(F.indices(), F.coeffs) if c != 0]


def multilinear_term(n: int, F: CoefficientSequence) -> CoefficientSequence:
    """The arity-``n`` term of the power-series expansion of the transform.

    ``T_n`` sums over increasing index tuples ``j_1 < ... < j_n``; odd
    positions contribute ``F_{j} z^{j}`` and even positions contribute
    ``-conj(F_{j}) z^{-j}``.  ``T_0 = 1``.  Even arities build up ``a``
    and odd arities build up ``b``, each up to the overall scalar
    ``prod_k (1 + |F_k|^2)^(-1/2)``.

    Raises
    ------
    CombinatoricsError
        If ``binomial(#support, n)`` exceeds ``10**6``.
    """
    if n < 0:
        raise CombinatoricsError("arity must be nonnegative")
    if n == 0:
        return CoefficientSequence.constant(1.0)
    pts = _support_points(F)
    if n > len(pts):
        return CoefficientSequence.empty()
    if math.comb(len(pts), n) > TERM_GUARD:
        raise CombinatoricsError(
            f"binomial({len(pts)}, {n}) exceeds the {TERM_GUARD} term guard"
        )
    acc: dict[int, complex] = {}
    for combo in itertools.combinations(pts, n):
        exponent = 0
        value = 1.0 + 0.0j
        for pos, (j, fj) in enumerate(combo, start=1):
            if pos % 2 == 1:
                exponent += j
                value *= fj
            else:
                exponent -= j
                value *= -np.conj(fj)
        acc[exponent] = acc.get(exponent, 0.0 + 0.0j) + value
    return CoefficientSequence.from_dict(acc)


def multilinear_partial_sum(
    F: CoefficientSequence, max_arity: int
) -> tuple[CoefficientSequence, CoefficientSequence]:
    """Partial sums of even and odd multilinear terms up to ``max_arity``.

    Returns ``(sum of T_n for even n <= max_arity, sum for odd n)``.
    Multiplying both by ``a_star_at_zero(F)`` reproduces ``(a, b)`` once
    ``max_arity`` reaches the support size.
    """
    even = CoefficientSequence.empty()
    odd = CoefficientSequence.empty()
    for n in range(max_arity + 1):
        term = multilinear_term(n, F)
        if n % 2 == 0:
            even = even + term
        else:
            odd = odd + term
    return even, odd

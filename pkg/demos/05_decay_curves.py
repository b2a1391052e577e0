"""Decay of the recovered coefficients versus the a-priori envelopes.

|F_n| is controlled by derivative norms of the ratio b/a*: a 1/|n|
envelope from the first derivative, and |n|^{-s} envelopes from
fractional smoothness.  The table prints both sides; the sinh bound
relates weighted norms of b and F directly.
"""

import math

import numpy as np

from su2nlft import (
    BeurlingWeight,
    CoefficientSequence,
    check_decay_fractional,
    decay_table,
    nlft_forward,
    weighted_l1_norm,
)

# a smooth bump gives visibly decaying coefficients
n = np.arange(-8, 9)
F = CoefficientSequence(-8, 8, 0.3 * np.exp(-0.35 * n.astype(float) ** 2))
pair = nlft_forward(F)

print("first-order envelope (bound is vacuous at n = 0):")
print("    n    |F_n|       2 a*(0) ||(b/a*)'|| / |n|")
for idx, mag, rhs in decay_table(F, pair):
    rhs_txt = "-" if rhs is None else f"{rhs:.6f}"
    print(f"  {idx:+3d}   {mag:.6f}   {rhs_txt}")

print("\nfractional-smoothness ratios (monitored, <= O(1) when sharp):")
for s in (1.0, 1.5, 2.0):
    rec = check_decay_fractional(F, pair, s)
    print(f"  s = {s}: sup_n |F_n| |n|^{s} / envelope = {rec.value:.4f}")

print("\nweighted norms of b against sinh of the input norm:")
for w in (BeurlingWeight.one(), BeurlingWeight.polynomial(1.0)):
    lhs = weighted_l1_norm(pair.b, w)
    rhs = math.sinh(weighted_l1_norm(F, w))
    print(f"  {w.descriptor:<16} ||b||_A = {lhs:.6f} <= {rhs:.6f}")

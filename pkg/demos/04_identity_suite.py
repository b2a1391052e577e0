"""The verification suite: exact identities as hard gates, estimate
ratios as monitored diagnostics.

run_suite accepts either a sequence F (checks its forward output and a
round trip) or a b alone (inverts first).  Hard checks carry
tolerances; monitored ones only record their values.
"""

from su2nlft import (
    CoefficientSequence,
    NlftPair,
    nlft_forward,
    run_pair_checks,
    run_suite,
)

F = CoefficientSequence.from_dict({-2: 0.3j, 0: 0.25, 3: -0.2 + 0.1j})
report = run_suite(F=F)
print("suite on a three-point sequence:")
for line in report.lines():
    print(f"  {line}")

# an externally supplied pair gets structural checks only
pair = nlft_forward(F)
tampered = NlftPair(pair.a.scale(1.02), pair.b, 0.0)
print("\ntampered pair (a scaled by 1.02):")
for line in run_pair_checks(tampered).lines():
    print(f"  {line}")

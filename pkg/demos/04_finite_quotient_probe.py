"""Certified search for non-trivial finite quotients.

Developability of ball-permutoid quotients and the existence of
non-trivial finite quotients of the presented group translate into each
other.  The probe makes one direction executable: a found development is
turned into generator images in a symmetric group and independently
certified.

Run:  python demos/04_finite_quotient_probe.py
"""

from permutoid_lab import (
    parse_presentation,
    probe_finite_quotient,
    verify_quotient_hom,
)

# The cyclic group of order six: the probe develops a small quotient of
# the radius-4 ball permutoid and certifies the resulting images.
z6 = parse_presentation("gens: a\nrels: a^6")
report = probe_finite_quotient(z6, rho=4, max_ground=12)
print("verdict:", report.verdict)
print("certified image order:", report.evidence.group_order)
print("generator image:", dict(zip(report.evidence.generators,
                                   report.evidence.images)))
print("statistics:", dict(report.statistics))

# The certificate stands on its own: re-check it from scratch.
recheck = verify_quotient_hom(
    z6, dict(zip(report.evidence.generators, report.evidence.images))
)
assert recheck.group_order == report.evidence.group_order
print("re-verified independently: order", recheck.group_order)

# The free group has every finite cyclic group as a quotient; the probe
# finds a modular reduction of the translation ball.
free = parse_presentation("gens: a")
report = probe_finite_quotient(free, rho=1, max_ground=8)
print("\nfree group verdict:", report.verdict,
      "-> order", report.evidence.group_order)

# A presentation of the trivial group cannot have one, and the trivial
# ball permutoid proves it.
trivial = parse_presentation("gens: a\nrels: a")
report = probe_finite_quotient(trivial, rho=1, max_ground=4)
print("\ntrivial group verdict:", report.verdict)

# Bounds matter: the only non-trivial quotient class of the saturated
# five-element ball needs five points, so a bound of four is inconclusive.
z5 = parse_presentation("gens: a\nrels: a^5")
report = probe_finite_quotient(z5, rho=3, max_ground=4)
print("\nz5 with max_ground=4:", report.verdict,
      "(skipped classes:", report.statistics["skipped_too_large"], ")")
report = probe_finite_quotient(z5, rho=3, max_ground=5)
print("z5 with max_ground=5:", report.verdict,
      "-> order", report.evidence.group_order)

#!/usr/bin/env python3
"""Counting totally split primes against the expected density.

In a degree-d multiquadratic field, a fraction 1/d of all primes splits
totally, so the count up to x should track x/(d log x).  The ratio hovers
around li(x)/(x/log x) ~ 1.08 at x = 10^6 - a statistical check, not a
proof.  A field containing i admits no totally split primes 3 mod 4 at all,
and that empty count is exact.
"""

from splitlab import MultiquadField, count_totally_split, reciprocal_sum_totally_split
from splitlab.density import density_checkpoints, reports_to_csv

for gens in ([-1], [2, 5], [-1, 2, 5]):
    field = MultiquadField.from_generators(gens)
    report = count_totally_split(field, 10**6)
    print(f"Q(sqrt {gens}): degree {field.degree}, count {report.count}, "
          f"expected {report.expected:.0f}, ratio {report.ratio:.4f}")

gauss = MultiquadField.from_generators([-1])
print("\nQ(i), primes 3 mod 4 only:",
      count_totally_split(gauss, 10**6, residue_filter=3).count, "(exactly none)")
print("Q(i), primes 1 mod 4 only:",
      count_totally_split(gauss, 10**6, residue_filter=1).count)

print("\nReciprocal sums over totally split primes (diverging, slowly):")
for x in (10**3, 10**4, 10**5, 10**6):
    print(f"  x = {x:>7}: {reciprocal_sum_totally_split(gauss, x):.4f}")

print("\nCSV checkpoints, ready for plotting:")
print(reports_to_csv(density_checkpoints(gauss, 10**5, per_decade=2)))

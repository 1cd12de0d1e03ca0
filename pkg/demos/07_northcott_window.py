#!/usr/bin/env python3
"""Two-sided bounds from a finite prime set, and hitting a target interval.

For a finite set S of primes, the maximal field where all of S splits totally
has its height floor sandwiched between (1/2) sum log(p)/(p+1) and
sum log(p)/(p-1).  Because consecutive-prime terms are small and their
upper/lower gap is summable, a window of consecutive primes can place both
bounds inside (r - eps, 2r] for any r > 0.
"""

from splitlab import northcott_bounds, select_prime_window

print("Bounds for small sets:")
for primes in ([2], [2, 3], [2, 3, 5, 7], [101, 103]):
    b = northcott_bounds(primes)
    print(f"  S = {primes}: lower {b.lower:.5f}, upper {b.upper:.5f}")

print("\nWindows hitting (r - eps, 2r]:")
for r, eps in ((1.0, 0.5), (2.0, 0.25), (5.0, 0.1)):
    window, bounds = select_prime_window(r, eps)
    head = ", ".join(map(str, window[:5]))
    print(f"  r={r}, eps={eps}: {len(window)} primes [{head}, ..., {window[-1]}]")
    print(f"    lower {bounds.lower:.6f} > r - eps = {r - eps}")
    print(f"    upper {bounds.upper:.6f} <= 2r = {2 * r}")

print("\nA tight request can still work out:")
window, bounds = select_prime_window(0.3, 0.3)
print(f"  r=0.3, eps=0.3: window {window}, upper {bounds.upper:.4f} <= 0.6")

print("\nInfeasible requests fail loudly instead of returning a bad window:")
try:
    select_prime_window(0.2, 2.0)
except ValueError as exc:
    print(f"  r=0.2, eps=2.0: {exc}")

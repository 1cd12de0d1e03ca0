#!/usr/bin/env python3
"""The splitting series: sum over primes of log(p) / (e_p (p^{f_p} + 1)).

Split primes contribute ~log(p)/p (the series over them diverges slowly);
inert primes contribute ~log(p)/p^2 (summable).  So the series over a field
diverges or converges depending on how many primes split, and the tail past
any ceiling is rigorously bounded by an integral.
"""

from splitlab import (
    MultiquadField,
    PrimeRange,
    partial_sum,
    series_term,
    tail_bound_fully_inert,
)

Q = MultiquadField.rationals()
gauss = MultiquadField.from_generators([-1])

print("Per-prime terms over Q vs Q(i):")
for p in (2, 3, 5, 7, 13):
    print(f"  p={p:>2}  Q: {series_term(Q, p):.5f}   Q(i): {series_term(gauss, p):.5f}")

print("\nPartial sums to growing ceilings (every prime splits in Q, so the")
print("series diverges like log; over Q(i) half the primes go inert):")
for hi in (10**2, 10**3, 10**4, 10**5):
    a = partial_sum(Q, PrimeRange(2, hi)).partial_sum
    b = partial_sum(gauss, PrimeRange(2, hi)).partial_sum
    print(f"  up to {hi:>6}:  Q {a:8.4f}   Q(i) {b:.4f}")

print("\nIf every prime past X were inert, the remainder would be at most")
print("the integral bound (log X + 1)/X:")
for x in (10**2, 10**4, 10**6):
    print(f"  X = {x:>7}: tail <= {tail_bound_fully_inert(x):.3e}")

print("\nA report carries the breakdown on request:")
report = partial_sum(gauss, PrimeRange(2, 13), with_terms=True)
for p, e, f, term in report.per_prime_terms:
    print(f"  p={p:>2}  e={e} f={f}  term={term:.6f}")
print(f"  total {report.partial_sum:.6f}")

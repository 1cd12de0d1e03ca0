#!/usr/bin/env python3
"""Building quadratic fields to order.

Give three disjoint sets of odd primes and ask for a field where the first
set splits, the second stays inert, and the third ramifies; optionally pin
the behaviour of 2 and the signature.  The construction combines one residue
condition per prime by CRT and picks a prime cofactor, so the result is
certifiable (and re-verified) before it is returned.
"""

from splitlab import SplittingSpec, construct_prescribed_quadratic, splitting_type

examples = [
    SplittingSpec(split=frozenset({5}), inert=frozenset({3})),
    SplittingSpec(ramified=frozenset({7})),
    SplittingSpec(split=frozenset({3, 13}), inert=frozenset({5, 11}),
                  ramified=frozenset({17})),
    SplittingSpec(split=frozenset({5}), two_behavior="split"),
    SplittingSpec(inert=frozenset({19}), two_behavior="ramified",
                  signature="totally_complex"),
]

for spec in examples:
    m = construct_prescribed_quadratic(spec)
    print(f"\nsplit {sorted(spec.split)}, inert {sorted(spec.inert)}, "
          f"ramified {sorted(spec.ramified)}, two={spec.two_behavior}, "
          f"{spec.signature}")
    print(f"  -> m = {m.value}")
    for p in sorted(spec.split | spec.inert | spec.ramified | {2}):
        print(f"     {p}: {splitting_type(m, p).value}")

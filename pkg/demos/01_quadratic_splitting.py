#!/usr/bin/env python3
"""How rational primes decompose in a quadratic field Q(sqrt(m)).

Every prime falls into exactly one of three buckets: it splits into two
primes, stays inert, or ramifies.  For odd p the bucket is read off the
Kronecker symbol (m|p); the prime 2 follows the residue of m mod 8.
"""

from splitlab import SquarefreeInt, discriminant, kronecker, sieve_primes, splitting_type
from splitlab.primes import PrimeRange

for m in (5, 2, -1, -6, 17):
    field = SquarefreeInt.from_int(m)
    print(f"\nQ(sqrt({m})), discriminant {discriminant(field)}")
    row = []
    for p in sieve_primes(PrimeRange(2, 50)):
        row.append(f"{p}:{splitting_type(field, p).value[0]}")
    print("  " + " ".join(row), "   (s=split i=inert r=ramified)")

print("\nThe split/inert pattern is periodic: it only depends on p modulo the")
print("discriminant. For Q(sqrt(-1)) the rule is the classical one:")
field = SquarefreeInt.from_int(-1)
for p in sieve_primes(PrimeRange(3, 30)):
    print(f"  p={p:>2}  p mod 4 = {p % 4}  ->  {splitting_type(field, p).value}")

print("\nKronecker symbol sanity, (m|p) for m=10:")
for p in (3, 7, 11, 13):
    print(f"  (10|{p}) = {kronecker(10, p):+d}")

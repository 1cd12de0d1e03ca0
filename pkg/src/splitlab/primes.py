"""Exact elementary number theory: sieves, primality, residue symbols, CRT.

All functions are pure and deterministic.  Ties are always broken toward the
smallest valid value (smallest representative, smallest prime) so callers get
bit-for-bit reproducible results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import ResourceBudgetError

try:
    import gmpy2

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _HAVE_GMPY2 = False

DEFAULT_SIEVE_CEILING = 10**8
DEFAULT_AP_BUDGET = 10**7
DEFAULT_TRIAL_CEILING = 10**7

_SEGMENT = 1 << 22


@dataclass(frozen=True)
class PrimeRange:
    """Closed interval [lo, hi]; iteration-by-sieve yields each prime in it once."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 2:
            raise ValueError(f"invalid prime range: lo={self.lo} must be >= 2")
        if self.hi < self.lo:
            raise ValueError(f"invalid prime range: hi={self.hi} < lo={self.lo}")


def _simple_sieve(limit: int) -> np.ndarray:
    """Primes <= limit as an int64 array (plain Eratosthenes)."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def iter_primes(lo: int, hi: int, *, ceiling: int = DEFAULT_SIEVE_CEILING) -> Iterator[int]:
    """Yield primes in [lo, hi] in increasing order via a segmented sieve."""
    if hi > ceiling:
        raise ResourceBudgetError(
            f"sieve ceiling {ceiling} exceeded: requested primes up to {hi}"
        )
    lo = max(lo, 2)
    if hi < lo:
        return
    base = _simple_sieve(math.isqrt(hi))
    start = lo
    while start <= hi:
        stop = min(start + _SEGMENT - 1, hi)
        flags = np.ones(stop - start + 1, dtype=bool)
        for p in base:
            p = int(p)
            first = max(p * p, ((start + p - 1) // p) * p)
            if first > stop:
                continue
            flags[first - start :: p] = False
        for q in np.flatnonzero(flags):
            yield start + int(q)
        start = stop + 1


def sieve_primes(rng: PrimeRange, *, ceiling: int = DEFAULT_SIEVE_CEILING) -> list[int]:
    """Exactly the primes in [rng.lo, rng.hi], increasing."""
    return list(iter_primes(rng.lo, rng.hi, ceiling=ceiling))


# ---------------------------------------------------------------------------
# Primality
# ---------------------------------------------------------------------------

_TINY_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Strong-pseudoprime testing against the 12 bases above is a proven primality
# test below this bound (~3.3e24); beyond it a strong Lucas-Selfridge test is
# added.  The combined test stays fully reproducible: no random bases.
MR_PROVEN_BOUND = 3_317_044_064_679_887_385_961_981


def _mr_round(n: int, a: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas_prp(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge parameters (method A)."""
    if math.isqrt(n) ** 2 == n:
        return False
    d = 5
    while True:
        j = kronecker(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -(d + 2) if d > 0 else -(d - 2)
    q = (1 - d) // 4
    # Lucas sequence U_k, V_k for P=1, Q=q, evaluated at k = n+1.
    k = n + 1
    s = (k & -k).bit_length() - 1
    m = k >> s
    u, v, qk = 1, 1, q % n
    for bit in bin(m)[3:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (u + v) % n, (v + d * u) % n
            if u & 1:
                u += n
            if v & 1:
                v += n
            u, v = (u >> 1) % n, (v >> 1) % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic for n < MR_PROVEN_BOUND (fixed 12-base Miller-Rabin).

    Larger inputs additionally pass a strong Lucas-Selfridge test; the whole
    battery uses fixed parameters, so results are reproducible at any size.
    """
    n = int(n)
    if n < 2:
        return False
    for p in _TINY_PRIMES:
        if n % p == 0:
            return n == p
    if _HAVE_GMPY2:
        z = gmpy2.mpz(n)
        for a in _MR_BASES:
            if not gmpy2.is_strong_prp(z, a):
                return False
        if n < MR_PROVEN_BOUND:
            return True
        return bool(gmpy2.is_strong_selfridge_prp(z))
    for a in _MR_BASES:
        if not _mr_round(n, a):
            return False
    if n < MR_PROVEN_BOUND:
        return True
    return _strong_lucas_prp(n)


# ---------------------------------------------------------------------------
# Residue symbols and congruences
# ---------------------------------------------------------------------------


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n); the Legendre symbol when n is an odd prime."""
    if n == 0:
        raise ValueError("kronecker symbol undefined for n = 0")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        z = (n & -n).bit_length() - 1
        n >>= z
        if z % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # n is now odd and positive; run the Jacobi loop.
    a %= n
    while a:
        while a % 2 == 0:
            a >>= 1
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def smallest_nonresidue(p: int) -> int:
    """Smallest positive quadratic non-residue modulo the odd prime p."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    a = 2
    while kronecker(a, p) != -1:
        a += 1
    return a


def crt_solve(congruences: Sequence[tuple[int, int]]) -> tuple[int, int]:
    """Combine congruences x = r_i (mod m_i) with pairwise coprime moduli >= 2.

    Returns (x, M) with x the smallest non-negative representative modulo
    M = prod m_i.
    """
    if not congruences:
        raise ValueError("crt_solve requires at least one congruence")
    for _, m in congruences:
        if m < 2:
            raise ValueError(f"modulus {m} must be >= 2")
    x, acc = congruences[0][0] % congruences[0][1], congruences[0][1]
    for j in range(1, len(congruences)):
        r, m = congruences[j]
        g = math.gcd(acc, m)
        if g != 1:
            for i in range(j):
                gi = math.gcd(congruences[i][1], m)
                if gi != 1:
                    raise ValueError(
                        f"moduli {congruences[i][1]} and {m} are not coprime "
                        f"(gcd={gi})"
                    )
            raise ValueError(f"modulus {m} is not coprime to the others (gcd={g})")
        # x + acc*t = r (mod m)
        t = (r - x) * pow(acc, -1, m) % m
        x += acc * t
        acc *= m
    return x % acc, acc


def find_prime_in_ap(
    residue: int,
    modulus: int,
    min_value: int,
    *,
    budget: int = DEFAULT_AP_BUDGET,
) -> int:
    """Smallest prime p = residue (mod modulus) with p > min_value.

    Dirichlet guarantees existence when gcd(residue, modulus) = 1; that
    precondition is enforced, and budget exhaustion therefore signals a
    configuration problem, never nonexistence.
    """
    if modulus < 1:
        raise ValueError(f"modulus {modulus} must be >= 1")
    if math.gcd(residue, modulus) != 1:
        raise ValueError(
            f"residue {residue} and modulus {modulus} are not coprime; "
            "the progression contains at most one prime"
        )
    c = residue % modulus
    candidate = c + modulus * max(0, -((c - min_value - 1) // modulus))
    if candidate <= min_value:
        candidate += modulus
    for _ in range(budget):
        if candidate >= 2 and is_prime(candidate):
            return candidate
        candidate += modulus
    raise ResourceBudgetError(
        f"scan budget {budget} exhausted searching the progression "
        f"{residue} mod {modulus} above {min_value}"
    )


# ---------------------------------------------------------------------------
# Factored integers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactoredInt:
    """A nonzero integer carried with its full prime factorization."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +-1, got {self.sign}")
        last = 1
        for p, a in self.factors:
            if p <= last:
                raise ValueError("factor primes must be strictly increasing")
            if a < 1:
                raise ValueError(f"exponent of {p} must be >= 1, got {a}")
            last = p

    @property
    def value(self) -> int:
        v = self.sign
        for p, a in self.factors:
            v *= p**a
        return v

    def __int__(self) -> int:
        return self.value

    @classmethod
    def from_int(cls, n: int, *, trial_ceiling: int = DEFAULT_TRIAL_CEILING) -> "FactoredInt":
        """Factor n by trial division up to trial_ceiling.

        A remaining cofactor is accepted only if it passes the primality
        battery; anything else is rejected rather than guessed at.
        """
        if n == 0:
            raise ValueError("cannot factor 0")
        sign = 1 if n > 0 else -1
        n = abs(n)
        factors: list[tuple[int, int]] = []
        for p in (2, 3):
            if n % p == 0:
                a = 0
                while n % p == 0:
                    n //= p
                    a += 1
                factors.append((p, a))
        d = 5
        while d <= trial_ceiling and d * d <= n:
            for step in (0, 2):  # 6k-1, 6k+1 wheel
                q = d + step
                if n % q == 0:
                    a = 0
                    while n % q == 0:
                        n //= q
                        a += 1
                    factors.append((q, a))
            d += 6
        if n > 1:
            if not is_prime(n):
                raise ValueError(
                    f"cofactor {n} is composite with no prime factor below "
                    f"the trial ceiling {trial_ceiling}; refusing to guess"
                )
            factors.append((n, 1))
        factors.sort()
        return cls(sign, tuple(factors))

    @classmethod
    def from_known_factors(
        cls, sign: int, factors: Sequence[tuple[int, int]]
    ) -> "FactoredInt":
        """Assemble from primes the caller already knows (no refactoring)."""
        return cls(sign, tuple(sorted(factors)))


def squarefree_kernel(n: FactoredInt) -> FactoredInt:
    """Reduce every exponent mod 2: the squarefree part, same sign."""
    return FactoredInt(n.sign, tuple((p, 1) for p, a in n.factors if a % 2 == 1))

"""The local splitting series: per-prime terms log(p)/(e_p (p^f_p + 1)).

Sums are always over explicit finite prime ranges, paired with rigorous tail
bounds where a statement about the full series is needed.  Divergence is
certified by partial sums exceeding a threshold, convergence by a partial sum
plus tail bound staying under a cap; a literal infinite sum is never claimed.
Natural logarithm throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import VerificationError
from .multiquadratic import MultiquadField, local_data
from .primes import DEFAULT_SIEVE_CEILING, PrimeRange, iter_primes


class KahanSum:
    """Compensated accumulator; keeps the running error out of the sum."""

    __slots__ = ("total", "carry")

    def __init__(self) -> None:
        self.total = 0.0
        self.carry = 0.0

    def add(self, value: float) -> None:
        value += self.carry
        fresh = self.total + value
        self.carry = value - (fresh - self.total)
        self.total = fresh

    @property
    def value(self) -> float:
        return self.total


@dataclass(frozen=True)
class SeriesReport:
    """Partial sum of the splitting series over a prime range.

    tail_upper_bound, when present, rigorously bounds the series beyond
    prime_hi; per_prime_terms carries the (p, e, f, term) breakdown on request.
    chunk_size records the deterministic summation chunking.
    """

    field_degree: int
    prime_lo: int
    prime_hi: int
    partial_sum: float
    tail_upper_bound: Optional[float] = None
    per_prime_terms: Optional[tuple[tuple[int, int, int, float], ...]] = None
    chunk_size: Optional[int] = None

    @property
    def total_upper_bound(self) -> Optional[float]:
        if self.tail_upper_bound is None:
            return None
        return self.partial_sum + self.tail_upper_bound


@dataclass(frozen=True)
class StabilizationCertificate:
    """Asserts that every tower stage after `stage` splits `prime` totally,
    so the prime's series term is already final at that stage."""

    prime: int
    stage: int


def series_term(field: MultiquadField, p: int) -> float:
    """log(p) / (e (p^f + 1)) for the local data (e, f) of p in the field."""
    data = local_data(field, p)
    return math.log(p) / (data.e * (float(p) ** data.f + 1.0))


def partial_sum(
    field: MultiquadField,
    rng: PrimeRange,
    *,
    include_two: bool = True,
    with_terms: bool = False,
    chunk_size: Optional[int] = None,
    sieve_ceiling: int = DEFAULT_SIEVE_CEILING,
) -> SeriesReport:
    """Sum of series terms over the primes in rng, compensated accumulation.

    include_two=False restricts to odd primes (the prime 2 is otherwise
    included using its exact local data).  Chunks are summed independently
    and combined in order, so a fixed chunk_size fixes the result bit-for-bit.
    """
    terms: list[tuple[int, int, int, float]] = []
    chunk_totals: list[float] = []
    acc = KahanSum()
    count_in_chunk = 0
    for p in iter_primes(rng.lo, rng.hi, ceiling=sieve_ceiling):
        if p == 2 and not include_two:
            continue
        data = local_data(field, p)
        term = math.log(p) / (data.e * (float(p) ** data.f + 1.0))
        acc.add(term)
        count_in_chunk += 1
        if with_terms:
            terms.append((p, data.e, data.f, term))
        if chunk_size is not None and count_in_chunk >= chunk_size:
            chunk_totals.append(acc.value)
            acc = KahanSum()
            count_in_chunk = 0
    if chunk_size is not None:
        if count_in_chunk:
            chunk_totals.append(acc.value)
        acc = KahanSum()
        for t in chunk_totals:
            acc.add(t)
    return SeriesReport(
        field_degree=field.degree,
        prime_lo=rng.lo,
        prime_hi=rng.hi,
        partial_sum=acc.value,
        per_prime_terms=tuple(terms) if with_terms else None,
        chunk_size=chunk_size,
    )


def tail_bound_fully_inert(range_start: int) -> float:
    """Upper bound for sum_{p > X} log(p)/(p^2 + 1).

    The summand is below log(n)/n^2, which is decreasing from n = 2 on, so the
    tail is at most the integral of log(x)/x^2 from X, i.e. (log X + 1)/X.
    """
    if range_start < 2:
        raise ValueError(f"range_start must be >= 2, got {range_start}")
    return (math.log(range_start) + 1.0) / range_start


def tower_sum(
    stages: Sequence[MultiquadField],
    rng: PrimeRange,
    certificates: Sequence[StabilizationCertificate],
    *,
    residue_filter: Optional[tuple[int, int]] = None,
    include_two: bool = True,
    with_terms: bool = False,
    sieve_ceiling: int = DEFAULT_SIEVE_CEILING,
) -> SeriesReport:
    """Partial sum for an infinite tower, each term taken at its certified stage.

    stages[k] is the k-th compositum (stages[0] may be Q itself).  Every prime
    the range selects must carry a certificate whose stage indexes into
    `stages`; offenders are reported instead of guessed at.  residue_filter
    (r, mod) restricts the range to p = r (mod mod).
    """
    cert_by_prime: dict[int, int] = {}
    for cert in certificates:
        if not 0 <= cert.stage < len(stages):
            raise ValueError(
                f"certificate for prime {cert.prime} points at stage "
                f"{cert.stage}, outside the {len(stages)} provided"
            )
        cert_by_prime[cert.prime] = cert.stage
    uncertified: list[int] = []
    selected: list[tuple[int, int]] = []
    for p in iter_primes(rng.lo, rng.hi, ceiling=sieve_ceiling):
        if p == 2 and not include_two:
            continue
        if residue_filter is not None and p % residue_filter[1] != residue_filter[0]:
            continue
        stage = cert_by_prime.get(p)
        if stage is None:
            uncertified.append(p)
        else:
            selected.append((p, stage))
    if uncertified:
        raise ValueError(
            "unstabilized primes in range (no certificate): "
            + ", ".join(map(str, uncertified[:20]))
            + ("..." if len(uncertified) > 20 else "")
        )
    acc = KahanSum()
    terms = []
    for p, stage in selected:
        data = local_data(stages[stage], p)
        # the certificate claims later provided stages leave (e, f) unchanged
        for later in range(stage + 1, len(stages)):
            other = local_data(stages[later], p)
            if (other.e, other.f) != (data.e, data.f):
                raise VerificationError(
                    f"stabilization certificate for p={p} at stage {stage} is "
                    f"contradicted at stage {later}"
                )
        term = math.log(p) / (data.e * (float(p) ** data.f + 1.0))
        acc.add(term)
        if with_terms:
            terms.append((p, data.e, data.f, term))
    return SeriesReport(
        field_degree=stages[-1].degree,
        prime_lo=rng.lo,
        prime_hi=rng.hi,
        partial_sum=acc.value,
        per_prime_terms=tuple(terms) if with_terms else None,
    )

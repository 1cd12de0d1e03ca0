"""Executable field constructions, each emitting a verifiable certificate trace.

Four builders live here: quadratic fields with prescribed splitting at a
finite set of primes, the divergence tower (a totally real compositum whose
splitting series grows without bound while adjoining i caps it), the
split-prime tower (every stage's prime splits everything below it, with
discriminant-norm growth certificates), and reciprocity companion searches.

Every builder re-verifies what it built through the independent splitting
predicates before returning; a failed check raises VerificationError and is
never returned silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .errors import ResourceBudgetError, VerificationError
from .multiquadratic import MultiquadField, is_totally_real, linearly_disjoint, totally_split
from .primes import (
    DEFAULT_AP_BUDGET,
    DEFAULT_SIEVE_CEILING,
    crt_solve,
    find_prime_in_ap,
    is_prime,
    iter_primes,
    smallest_nonresidue,
)
from .quadratic import SplittingType, SquarefreeInt, splitting_type
from .series import (
    KahanSum,
    SeriesReport,
    StabilizationCertificate,
    series_term,
    tail_bound_fully_inert,
)

TWO_UNCONSTRAINED = "unconstrained"
TWO_SPLIT = "split"
TWO_INERT = "inert"
TWO_RAMIFIED = "ramified"

SIGNATURE_REAL = "totally_real"
SIGNATURE_COMPLEX = "totally_complex"

# Large enough for the reachable tower stages (the two-stage divergence tower
# needs ~4.9k bits), small enough that the doubly exponential later stages
# fail fast with a resource error instead of grinding for hours.
DEFAULT_MODULUS_BIT_BUDGET = 8192
DEFAULT_STAGE_CAP = 4

THM12_TOWER = "thm12-tower"
PROP71_TOWER = "prop71-tower"
CONSTRUCT_QUADRATIC = "construct-quadratic"


@dataclass(frozen=True)
class SplittingSpec:
    """Prescribed behaviour at disjoint finite sets of odd primes, plus the
    prime 2 and the infinite place."""

    split: frozenset[int] = frozenset()
    inert: frozenset[int] = frozenset()
    ramified: frozenset[int] = frozenset()
    two_behavior: str = TWO_UNCONSTRAINED
    signature: str = SIGNATURE_REAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "split", frozenset(self.split))
        object.__setattr__(self, "inert", frozenset(self.inert))
        object.__setattr__(self, "ramified", frozenset(self.ramified))
        if self.two_behavior not in (TWO_UNCONSTRAINED, TWO_SPLIT, TWO_INERT, TWO_RAMIFIED):
            raise ValueError(f"unknown two_behavior {self.two_behavior!r}")
        if self.signature not in (SIGNATURE_REAL, SIGNATURE_COMPLEX):
            raise ValueError(f"unknown signature {self.signature!r}")
        sets = (self.split, self.inert, self.ramified)
        for name, s in zip(("split", "inert", "ramified"), sets):
            for p in s:
                if p == 2 or not is_prime(p):
                    raise ValueError(f"{name} set must contain odd primes, got {p}")
        if self.split & self.inert or self.split & self.ramified or self.inert & self.ramified:
            raise ValueError("split, inert and ramified sets must be pairwise disjoint")
        if not (self.split or self.inert or self.ramified) and self.two_behavior == TWO_UNCONSTRAINED:
            raise ValueError("at least one constraint must be nonempty")


def construct_prescribed_quadratic(
    spec: SplittingSpec,
    *,
    ap_budget: int = DEFAULT_AP_BUDGET,
    modulus_bit_budget: int = DEFAULT_MODULUS_BIT_BUDGET,
) -> SquarefreeInt:
    """Smallest certifiable squarefree m realizing the prescription in Q(sqrt(m)).

    The residue conditions (a square mod each split prime, a fixed non-residue
    mod each inert prime, exact valuation 1 at each ramified prime, the mod-8
    condition for 2, the sign for the signature) are combined by CRT on the
    cofactor t of m = sign * (ramified product) * t; t is then the smallest
    prime in that class.  A prime cofactor keeps the output fully factored and
    never a square, so the result is certifiable by construction.
    """
    sigma = -1 if spec.signature == SIGNATURE_COMPLEX else 1
    ram_primes = sorted(spec.ramified)
    if spec.two_behavior == TWO_RAMIFIED:
        ram_primes = [2] + ram_primes
    ram_product = math.prod(ram_primes) if ram_primes else 1
    signed = sigma * ram_product

    congruences: list[tuple[int, int]] = []
    for p in sorted(spec.split):
        congruences.append((pow(signed % p, -1, p), p))
    for q in sorted(spec.inert):
        a = smallest_nonresidue(q)
        congruences.append((a * pow(signed % q, -1, q) % q, q))
    for ell in sorted(spec.ramified):
        cof = signed // ell
        congruences.append((pow(cof % ell, -1, ell), ell))
    if spec.two_behavior == TWO_SPLIT:
        congruences.append((pow(signed % 8, -1, 8), 8))
    elif spec.two_behavior == TWO_INERT:
        congruences.append((5 * pow(signed % 8, -1, 8) % 8, 8))
    elif spec.two_behavior == TWO_RAMIFIED:
        congruences.append((1, 2))  # odd cofactor keeps the valuation at 2 exact

    residue, modulus = crt_solve(congruences)
    if modulus.bit_length() > modulus_bit_budget:
        raise ResourceBudgetError(
            f"prescription needs a CRT modulus of {modulus.bit_length()} bits, "
            f"over the budget of {modulus_bit_budget}"
        )
    t = find_prime_in_ap(residue, modulus, 1, budget=ap_budget)
    result = SquarefreeInt.from_prime_factors(sigma, ram_primes + [t])
    _verify_prescription(result, spec)
    return result


def _verify_prescription(m: SquarefreeInt, spec: SplittingSpec) -> None:
    problems = []
    wanted = (
        (spec.split, SplittingType.SPLIT),
        (spec.inert, SplittingType.INERT),
        (spec.ramified, SplittingType.RAMIFIED),
    )
    for primes, expected in wanted:
        for p in sorted(primes):
            got = splitting_type(m, p)
            if got is not expected:
                problems.append(f"p={p}: wanted {expected.value}, got {got.value}")
    if spec.two_behavior != TWO_UNCONSTRAINED:
        got2 = splitting_type(m, 2)
        if got2.value != spec.two_behavior:
            problems.append(f"p=2: wanted {spec.two_behavior}, got {got2.value}")
    if spec.signature == SIGNATURE_REAL and m.value < 0:
        problems.append("wanted a totally real field, got negative m")
    if spec.signature == SIGNATURE_COMPLEX and m.value > 0:
        problems.append("wanted a totally complex field, got positive m")
    if problems:
        raise VerificationError(
            f"constructed m={m.value} fails its own prescription: " + "; ".join(problems)
        )


# ---------------------------------------------------------------------------
# Certificate records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CertifiedInequality:
    name: str
    lhs: float
    rhs: float
    holds: bool


@dataclass(frozen=True)
class WidmerTerm:
    """Discriminant-norm growth certificate for one tower step.

    The relative discriminant norm for the step into `stage` is
    norm_base ** norm_exponent, and the Widmer quantity is its
    1/([L:Q][L:L_prev])-th root, i.e. norm_base ** (1/4); only its logarithm
    is stored since the primes grow past float range.
    """

    stage: int
    norm_base: int
    norm_exponent: int
    log_quantity: float

    @property
    def quantity(self) -> Optional[float]:
        try:
            return math.exp(self.log_quantity)
        except OverflowError:
            return None


@dataclass(frozen=True)
class StageRecord:
    index: int
    n: int
    auxiliary_primes: tuple[int, ...]
    field_added: SquarefreeInt
    cumulative_field: MultiquadField
    certified_inequalities: tuple[CertifiedInequality, ...]
    block_primes: tuple[int, ...]
    block_sum: float
    widmer: Optional[WidmerTerm] = None


@dataclass
class ConstructionTrace:
    construction: str
    params: dict
    stages: tuple[StageRecord, ...]
    certificates: tuple[CertifiedInequality, ...]

    @property
    def accepted(self) -> bool:
        stage_ok = all(c.holds for s in self.stages for c in s.certified_inequalities)
        return stage_ok and all(c.holds for c in self.certificates)

    def stage_fields(self) -> list[MultiquadField]:
        """[Q, L_1, ..., L_K]: the cumulative fields with the base field first."""
        return [MultiquadField.rationals()] + [s.cumulative_field for s in self.stages]

    def block_certificates(self) -> list[StabilizationCertificate]:
        """One stabilization certificate per block prime: the block of stage k
        is evaluated on the previous compositum, index k-1 in stage_fields()."""
        certs = []
        for s in self.stages:
            for p in s.block_primes:
                certs.append(StabilizationCertificate(prime=p, stage=s.index - 1))
        return certs


# ---------------------------------------------------------------------------
# Shared scanning helpers
# ---------------------------------------------------------------------------


def _scan_block(
    field: MultiquadField,
    start: int,
    target: float,
    *,
    residue_filter: Optional[tuple[int, int]],
    lo_exclusive: bool,
    sieve_ceiling: int,
    stage_label: str,
) -> tuple[list[int], float, int]:
    """Accumulate series terms over primes (filtered) from `start` until the
    target is reached; returns (block primes, certified sum, last prime)."""
    acc = KahanSum()
    block: list[int] = []
    lo = start + 1 if lo_exclusive else start
    lo = max(lo, 2)
    window = max(lo, 64)
    while True:
        hi = min(window * 4, sieve_ceiling)
        if hi < lo:
            raise ResourceBudgetError(
                f"{stage_label}: block scan exhausted the sieve ceiling {sieve_ceiling}"
            )
        for p in iter_primes(lo, hi, ceiling=sieve_ceiling):
            if residue_filter is not None and p % residue_filter[1] != residue_filter[0]:
                continue
            acc.add(series_term(field, p))
            block.append(p)
            if acc.value >= target:
                return block, acc.value, p
        if hi >= sieve_ceiling:
            raise ResourceBudgetError(
                f"{stage_label}: block scan exhausted the sieve ceiling {sieve_ceiling}"
            )
        lo, window = hi + 1, hi


def _smallest_split_aux_prime(
    field: MultiquadField, *, sieve_ceiling: int
) -> int:
    """Smallest prime q = 1 (mod 4) that splits totally in the field."""
    lo, hi = 5, 4096
    while True:
        for q in iter_primes(lo, min(hi, sieve_ceiling), ceiling=sieve_ceiling):
            if q % 4 == 1 and totally_split(field, q):
                return q
        if hi >= sieve_ceiling:
            raise ResourceBudgetError(
                f"no totally split auxiliary prime below the sieve ceiling {sieve_ceiling}"
            )
        lo, hi = hi + 1, hi * 4


def _check(name: str, lhs: float, rhs: float, holds: bool) -> CertifiedInequality:
    return CertifiedInequality(name=name, lhs=lhs, rhs=rhs, holds=holds)


# ---------------------------------------------------------------------------
# The divergence tower
# ---------------------------------------------------------------------------


def build_divergence_tower(
    num_stages: int,
    sum_target_per_block: float = 1.0,
    *,
    ap_budget: int = DEFAULT_AP_BUDGET,
    sieve_ceiling: int = DEFAULT_SIEVE_CEILING,
    modulus_bit_budget: int = DEFAULT_MODULUS_BIT_BUDGET,
    stage_cap: int = DEFAULT_STAGE_CAP,
) -> ConstructionTrace:
    """Totally real quadratic tower certified stage by stage.

    Stage k: the threshold n_k is minimal with block sum >= target over the
    primes p = 3 (mod 4) in [n_{k-1}, n_k), evaluated on the previous
    compositum; the new quadratic field splits every p = 3 (mod 4) up to n_k
    and inerts every p = 1 (mod 4) up to n_k plus an auxiliary totally split
    prime (the linear-disjointness witness).

    Thresholds grow doubly exponentially (each stage halves the density of
    contributing primes), so the prescription modulus explodes quickly; the
    modulus bit budget turns that into a clean resource error.
    """
    if num_stages < 1:
        raise ValueError(f"num_stages must be >= 1, got {num_stages}")
    if num_stages > stage_cap:
        raise ValueError(f"num_stages {num_stages} exceeds the stage cap {stage_cap}")
    if sum_target_per_block <= 0:
        raise ValueError("sum_target_per_block must be positive")

    current = MultiquadField.rationals()
    n_prev = 1
    stages: list[StageRecord] = []
    for k in range(1, num_stages + 1):
        block, block_sum, last_p = _scan_block(
            current,
            n_prev,
            sum_target_per_block,
            residue_filter=(3, 4),
            lo_exclusive=False,
            sieve_ceiling=sieve_ceiling,
            stage_label=f"stage {k}",
        )
        n_k = last_p + 1
        aux = _smallest_split_aux_prime(current, sieve_ceiling=sieve_ceiling)
        split_set = set()
        inert_set = {aux}
        bits = 3.0  # slack for the auxiliary prime and a mod-8 factor
        for p in iter_primes(3, n_k, ceiling=sieve_ceiling):
            bits += math.log2(p)
            if p % 4 == 3:
                split_set.add(p)
            elif p % 4 == 1:
                inert_set.add(p)
        if bits > modulus_bit_budget:
            raise ResourceBudgetError(
                f"stage {k}: prescribing every prime below n={n_k} needs a CRT "
                f"modulus of about {int(bits)} bits, over the budget of "
                f"{modulus_bit_budget}"
            )
        spec = SplittingSpec(
            split=frozenset(split_set),
            inert=frozenset(inert_set),
            signature=SIGNATURE_REAL,
        )
        try:
            m_new = construct_prescribed_quadratic(
                spec, ap_budget=ap_budget, modulus_bit_budget=modulus_bit_budget
            )
        except ResourceBudgetError as exc:
            raise ResourceBudgetError(
                f"stage {k} (n={n_k}, {len(split_set) + len(inert_set)} prescribed "
                f"primes): {exc}"
            ) from exc
        added = MultiquadField.from_generators([m_new])
        grown = current.adjoin(m_new)

        disjoint = linearly_disjoint(current, added)
        checked = 0
        want_total = len(split_set) + len(inert_set)
        for p in sorted(split_set):
            if splitting_type(m_new, p) is SplittingType.SPLIT:
                checked += 1
        for p in sorted(inert_set):
            if splitting_type(m_new, p) is SplittingType.INERT:
                checked += 1
        aux_witness = (
            splitting_type(m_new, aux) is SplittingType.INERT
            and totally_split(current, aux)
        )
        certs = (
            _check("(a) linearly disjoint from the previous compositum",
                   float(grown.degree), float(2 * current.degree), disjoint and grown.degree == 2 * current.degree),
            _check("(b) prescribed splitting verified at every prime <= n",
                   float(checked), float(want_total), checked == want_total),
            _check("(c) block sum reaches the target",
                   block_sum, sum_target_per_block, block_sum >= sum_target_per_block),
            _check("auxiliary prime inert above, totally split below",
                   1.0 if aux_witness else 0.0, 1.0, aux_witness),
            _check("compositum stays totally real",
                   1.0 if is_totally_real(grown) else 0.0, 1.0, is_totally_real(grown)),
        )
        stages.append(
            StageRecord(
                index=k,
                n=n_k,
                auxiliary_primes=(aux,),
                field_added=m_new,
                cumulative_field=grown,
                certified_inequalities=certs,
                block_primes=tuple(block),
                block_sum=block_sum,
            )
        )
        current, n_prev = grown, n_k

    total = KahanSum()
    for s in stages:
        total.add(s.block_sum)
    global_certs = (
        _check(
            "total certified block sum",
            total.value,
            num_stages * sum_target_per_block,
            total.value >= num_stages * sum_target_per_block,
        ),
    )
    params = {
        "stages": num_stages,
        "sum_target": sum_target_per_block,
        "ap_budget": ap_budget,
        "sieve_ceiling": sieve_ceiling,
        "modulus_bit_budget": modulus_bit_budget,
    }
    return ConstructionTrace(THM12_TOWER, params, tuple(stages), global_certs)


def certify_adjoin_i_convergence(
    trace: ConstructionTrace,
    prime_ceiling: int,
    *,
    sieve_ceiling: int = DEFAULT_SIEVE_CEILING,
) -> SeriesReport:
    """Upper bound for the splitting series after adjoining i to the tower.

    Primes p = 1 (mod 4) contribute at most log(p)/(e_p (p^2 + 1)) once some
    stage inerts them (the tower recipe does so for every such prime
    eventually); all other primes are covered by the term of Q(i) bounded by
    log(p)/(p^2 + 1).  Terms are summed up to the ceiling and the remainder is
    covered by the integral tail bound.
    """
    if trace.construction != THM12_TOWER:
        raise ValueError(f"expected a {THM12_TOWER} trace, got {trace.construction}")
    if not trace.accepted:
        raise ValueError("trace has failed certificates; refusing to certify")
    if prime_ceiling < 2:
        raise ValueError("prime_ceiling must be >= 2")
    top = trace.stages[-1].cumulative_field
    ramified = set()
    for b in top.basis:
        ramified.update(p for p, _ in b.factored.factors)
    acc = KahanSum()
    for p in iter_primes(2, prime_ceiling, ceiling=sieve_ceiling):
        e = 2 if (p % 4 == 1 and p in ramified) else 1
        acc.add(math.log(p) / (e * (float(p) ** 2 + 1.0)))
    return SeriesReport(
        field_degree=2 * top.degree,
        prime_lo=2,
        prime_hi=prime_ceiling,
        partial_sum=acc.value,
        tail_upper_bound=tail_bound_fully_inert(prime_ceiling),
    )


# ---------------------------------------------------------------------------
# The split-prime tower
# ---------------------------------------------------------------------------


def build_split_prime_tower(
    num_stages: int,
    sum_target_per_block: float = 1.0,
    *,
    ap_budget: int = DEFAULT_AP_BUDGET,
    sieve_ceiling: int = DEFAULT_SIEVE_CEILING,
    modulus_bit_budget: int = DEFAULT_MODULUS_BIT_BUDGET,
    stage_cap: int = DEFAULT_STAGE_CAP,
) -> ConstructionTrace:
    """Tower of prime quadratic fields Q(sqrt(p_1), ..., sqrt(p_K)).

    Stage i: n_i is minimal with block sum >= target over all primes in
    (n_{i-1}, n_i] on the previous compositum (the prime 2 participates in
    stage 1); p_i is the smallest prime exceeding max(n_i, p_{i-1}) in the
    progression 1 mod 4*(product of all primes <= n_i), which makes every
    prime <= n_i, including 2, split totally in Q(sqrt(p_i)) and pins
    p_i = 1 (mod 4) so that the field discriminant is exactly p_i.

    The progression modulus is the primorial of n_i: it exceeds any fixed
    bit budget within a few stages, which surfaces as a resource error.
    """
    if num_stages < 1:
        raise ValueError(f"num_stages must be >= 1, got {num_stages}")
    if num_stages > stage_cap:
        raise ValueError(f"num_stages {num_stages} exceeds the stage cap {stage_cap}")
    if sum_target_per_block <= 0:
        raise ValueError("sum_target_per_block must be positive")

    current = MultiquadField.rationals()
    n_prev = 1
    p_prev = 0
    stages: list[StageRecord] = []
    for i in range(1, num_stages + 1):
        block, block_sum, last_p = _scan_block(
            current,
            n_prev,
            sum_target_per_block,
            residue_filter=None,
            lo_exclusive=True,
            sieve_ceiling=sieve_ceiling,
            stage_label=f"stage {i}",
        )
        n_i = last_p
        small = list(iter_primes(2, n_i, ceiling=sieve_ceiling))
        bits = 2.0 + sum(math.log2(q) for q in small)
        if bits > modulus_bit_budget:
            raise ResourceBudgetError(
                f"stage {i}: progression modulus 4*({n_i} primorial) needs "
                f"about {int(bits)} bits, over the budget of {modulus_bit_budget}"
            )
        modulus = 4 * math.prod(small)
        p_i = find_prime_in_ap(1, modulus, max(n_i, p_prev), budget=ap_budget)
        added = SquarefreeInt.from_prime_factors(1, [p_i])

        split_ok = sum(
            1 for q in small if splitting_type(added, q) is SplittingType.SPLIT
        )
        grown = current.adjoin(added)
        widmer = WidmerTerm(
            stage=i,
            norm_base=p_i,
            norm_exponent=1 << (i - 1),
            log_quantity=math.log(p_i) / 4.0,
        )
        certs = (
            _check("block sum reaches the target",
                   block_sum, sum_target_per_block, block_sum >= sum_target_per_block),
            _check("every prime up to n splits totally in the new field",
                   float(split_ok), float(len(small)), split_ok == len(small)),
            _check("stage prime is 1 mod 4",
                   float(p_i % 4), 1.0, p_i % 4 == 1),
            _check("stage prime strictly exceeds n and the previous prime",
                   1.0 if p_i > max(n_i, p_prev) else 0.0, 1.0, p_i > max(n_i, p_prev)),
            _check("degree doubles",
                   float(grown.degree), float(2 * current.degree), grown.degree == 2 * current.degree),
        )
        stages.append(
            StageRecord(
                index=i,
                n=n_i,
                auxiliary_primes=(),
                field_added=added,
                cumulative_field=grown,
                certified_inequalities=certs,
                block_primes=tuple(block),
                block_sum=block_sum,
                widmer=widmer,
            )
        )
        current, n_prev, p_prev = grown, n_i, p_i

    logs = [s.widmer.log_quantity for s in stages]
    increasing = all(a < b for a, b in zip(logs, logs[1:]))
    global_certs = (
        _check("discriminant-norm quantities strictly increase",
               1.0 if increasing else 0.0, 1.0, increasing),
    )
    params = {
        "stages": num_stages,
        "sum_target": sum_target_per_block,
        "ap_budget": ap_budget,
        "sieve_ceiling": sieve_ceiling,
        "modulus_bit_budget": modulus_bit_budget,
    }
    return ConstructionTrace(PROP71_TOWER, params, tuple(stages), global_certs)


# ---------------------------------------------------------------------------
# Reciprocity companions
# ---------------------------------------------------------------------------


def search_inert_companion(
    p: int,
    modulus_exponent: int,
    want: Union[str, SplittingType],
    *,
    budget: int = DEFAULT_AP_BUDGET,
) -> int:
    """Smallest prime q = 1 (mod 2^m), q != p, with p behaving as `want` in
    Q(sqrt(q)); want is 'inert' or 'split'."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if modulus_exponent < 1:
        raise ValueError(f"modulus exponent must be >= 1, got {modulus_exponent}")
    if isinstance(want, str):
        want = SplittingType(want)
    if want not in (SplittingType.INERT, SplittingType.SPLIT):
        raise ValueError("want must be inert or split")
    step = 1 << modulus_exponent
    candidate = 1
    for _ in range(budget):
        candidate += step
        if candidate == p or not is_prime(candidate):
            continue
        if splitting_type(SquarefreeInt.from_prime_factors(1, [candidate]), p) is want:
            return candidate
    raise ResourceBudgetError(
        f"scan budget {budget} exhausted searching companions of {p} mod {step}"
    )

"""Construction-trace JSON: stable serialization, schema check, re-verification.

The wire format is pinned by trace_schema.json next to this module.  Output is
canonical (sorted keys, two-space indent, trailing newline) so identical runs
are byte-identical.  verify_trace_dict() re-derives every certified inequality
from scratch; a verified document proves the same facts as the original run.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from typing import Any

import jsonschema

from .constructions import (
    CONSTRUCT_QUADRATIC,
    PROP71_TOWER,
    THM12_TOWER,
    CertifiedInequality,
    ConstructionTrace,
    SplittingSpec,
    StageRecord,
    WidmerTerm,
    _verify_prescription,
)
from .errors import VerificationError
from .multiquadratic import MultiquadField, linearly_disjoint, totally_split
from .primes import DEFAULT_SIEVE_CEILING, is_prime, iter_primes
from .quadratic import SplittingType, SquarefreeInt, splitting_type
from .series import KahanSum, series_term

TRACE_VERSION = 1

_SUM_TOL = 1e-9


def load_schema() -> dict:
    with resources.files("splitlab").joinpath("trace_schema.json").open("rb") as fh:
        return json.load(fh)


def dumps_canonical(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _factored_to_doc(m: SquarefreeInt) -> dict:
    return {
        "value": m.value,
        "factors": [[p, a] for p, a in m.factored.factors]
        + ([[-1, 1]] if m.factored.sign < 0 else []),
    }


def _factored_from_doc(doc: dict) -> SquarefreeInt:
    sign = 1
    primes = []
    for p, a in doc["factors"]:
        if p == -1:
            sign = -sign
            continue
        if a != 1:
            raise VerificationError(f"factor {p}^{a} is not squarefree")
        if not is_prime(p):
            raise VerificationError(f"claimed factor {p} is not prime")
        primes.append(p)
    m = SquarefreeInt.from_prime_factors(sign, primes)
    if m.value != doc["value"]:
        raise VerificationError(
            f"factored value mismatch: factors give {m.value}, document says {doc['value']}"
        )
    return m


def _inequality_to_doc(c: CertifiedInequality) -> dict:
    return {"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "holds": c.holds}


def _stage_to_doc(s: StageRecord) -> dict:
    doc = {
        "index": s.index,
        "n": s.n,
        "auxiliary_primes": list(s.auxiliary_primes),
        "field_added": _factored_to_doc(s.field_added),
        "cumulative_field": [_factored_to_doc(b) for b in s.cumulative_field.basis],
        "certified_inequalities": [_inequality_to_doc(c) for c in s.certified_inequalities],
        "block_primes": list(s.block_primes),
        "block_sum": s.block_sum,
        "widmer": None,
    }
    if s.widmer is not None:
        doc["widmer"] = {
            "stage": s.widmer.stage,
            "norm_base": s.widmer.norm_base,
            "norm_exponent": s.widmer.norm_exponent,
            "log_quantity": s.widmer.log_quantity,
        }
    return doc


def trace_to_doc(trace: ConstructionTrace) -> dict:
    return {
        "construction": trace.construction,
        "version": TRACE_VERSION,
        "params": dict(trace.params),
        "stages": [_stage_to_doc(s) for s in trace.stages],
        "certificates": [_inequality_to_doc(c) for c in trace.certificates],
    }


def quadratic_doc(spec: SplittingSpec, m: SquarefreeInt) -> dict:
    """Prescribed-quadratic result in the common trace envelope."""
    checks = [
        {"name": f"splitting at {p} is {kind}", "lhs": 1.0, "rhs": 1.0, "holds": True}
        for kind, primes in (
            ("split", sorted(spec.split)),
            ("inert", sorted(spec.inert)),
            ("ramified", sorted(spec.ramified)),
        )
        for p in primes
    ]
    return {
        "construction": CONSTRUCT_QUADRATIC,
        "version": TRACE_VERSION,
        "params": {
            "split": sorted(spec.split),
            "inert": sorted(spec.inert),
            "ramified": sorted(spec.ramified),
            "two_behavior": spec.two_behavior,
            "signature": spec.signature,
        },
        "stages": [
            {
                "index": 1,
                "n": 0,
                "auxiliary_primes": [],
                "field_added": _factored_to_doc(m),
                "cumulative_field": [_factored_to_doc(m)],
                "certified_inequalities": checks,
                "block_primes": [],
                "block_sum": 0.0,
                "widmer": None,
            }
        ],
        "certificates": [],
        "m": m.value,
        "verified": True,
    }


def validate_schema(doc: Any) -> None:
    try:
        jsonschema.validate(doc, load_schema())
    except jsonschema.ValidationError as exc:
        raise ValueError(f"trace does not match the schema: {exc.message}") from exc


def trace_from_doc(doc: dict) -> ConstructionTrace:
    """Rebuild a trace object, re-checking primality of every claimed factor."""
    validate_schema(doc)
    stages = []
    for s in doc["stages"]:
        added = _factored_from_doc(s["field_added"])
        cumulative = MultiquadField.from_generators(
            [_factored_from_doc(b) for b in s["cumulative_field"]]
        )
        widmer = None
        if s.get("widmer") is not None:
            widmer = WidmerTerm(**s["widmer"])
        stages.append(
            StageRecord(
                index=s["index"],
                n=s["n"],
                auxiliary_primes=tuple(s["auxiliary_primes"]),
                field_added=added,
                cumulative_field=cumulative,
                certified_inequalities=tuple(
                    CertifiedInequality(**c) for c in s["certified_inequalities"]
                ),
                block_primes=tuple(s["block_primes"]),
                block_sum=s["block_sum"],
                widmer=widmer,
            )
        )
    return ConstructionTrace(
        construction=doc["construction"],
        params=dict(doc["params"]),
        stages=tuple(stages),
        certificates=tuple(CertifiedInequality(**c) for c in doc["certificates"]),
    )


# ---------------------------------------------------------------------------
# Independent re-verification
# ---------------------------------------------------------------------------


def _verify_thm12(doc: dict, sieve_ceiling: int) -> list[str]:
    issues: list[str] = []
    target = float(doc["params"].get("sum_target", 1.0))
    previous = MultiquadField.rationals()
    n_prev = 1
    total = KahanSum()
    for stage in doc["stages"]:
        k = stage["index"]
        try:
            added = _factored_from_doc(stage["field_added"])
        except VerificationError as exc:
            issues.append(f"stage {k}: {exc}")
            continue
        n_k = stage["n"]
        block = [
            p
            for p in iter_primes(max(2, n_prev), n_k - 1, ceiling=sieve_ceiling)
            if p % 4 == 3
        ]
        if block != list(stage["block_primes"]):
            issues.append(f"stage {k}: block primes differ from the range [{n_prev}, {n_k})")
        acc = KahanSum()
        for p in block:
            acc.add(series_term(previous, p))
        if abs(acc.value - stage["block_sum"]) > _SUM_TOL:
            issues.append(
                f"stage {k}: recomputed block sum {acc.value} != stored {stage['block_sum']}"
            )
        if acc.value < target:
            issues.append(f"stage {k}: block sum {acc.value} below target {target}")
        total.add(acc.value)
        f_new = MultiquadField.from_generators([added])
        if not linearly_disjoint(previous, f_new):
            issues.append(f"stage {k}: new field is not linearly disjoint")
        for p in iter_primes(3, n_k, ceiling=sieve_ceiling):
            want = SplittingType.SPLIT if p % 4 == 3 else SplittingType.INERT
            if splitting_type(added, p) is not want:
                issues.append(f"stage {k}: prime {p} is not {want.value} in the new field")
        for q in stage["auxiliary_primes"]:
            if splitting_type(added, q) is not SplittingType.INERT:
                issues.append(f"stage {k}: auxiliary prime {q} is not inert above")
            if not totally_split(previous, q):
                issues.append(f"stage {k}: auxiliary prime {q} does not split below")
        grown = previous.adjoin(added)
        stored_basis = [b["value"] for b in stage["cumulative_field"]]
        if [b.value for b in grown.basis] != stored_basis:
            issues.append(f"stage {k}: cumulative field does not match the recomputation")
        if any(b.value < 0 for b in grown.basis):
            issues.append(f"stage {k}: compositum is not totally real")
        previous, n_prev = grown, n_k
    want_total = target * len(doc["stages"])
    if total.value + _SUM_TOL < want_total:
        issues.append(f"total block sum {total.value} below {want_total}")
    return issues


def _verify_prop71(doc: dict, sieve_ceiling: int) -> list[str]:
    issues: list[str] = []
    target = float(doc["params"].get("sum_target", 1.0))
    previous = MultiquadField.rationals()
    n_prev = 1
    p_prev = 0
    last_log = -math.inf
    for stage in doc["stages"]:
        i = stage["index"]
        try:
            added = _factored_from_doc(stage["field_added"])
        except VerificationError as exc:
            issues.append(f"stage {i}: {exc}")
            continue
        p_i = added.value
        n_i = stage["n"]
        block = list(iter_primes(n_prev + 1, n_i, ceiling=sieve_ceiling))
        if block != list(stage["block_primes"]):
            issues.append(f"stage {i}: block primes differ from the range ({n_prev}, {n_i}]")
        acc = KahanSum()
        for p in block:
            acc.add(series_term(previous, p))
        if abs(acc.value - stage["block_sum"]) > _SUM_TOL:
            issues.append(
                f"stage {i}: recomputed block sum {acc.value} != stored {stage['block_sum']}"
            )
        if acc.value < target:
            issues.append(f"stage {i}: block sum {acc.value} below target {target}")
        if p_i % 4 != 1:
            issues.append(f"stage {i}: prime {p_i} is not 1 mod 4")
        if p_i <= max(n_i, p_prev):
            issues.append(f"stage {i}: prime does not exceed max(n, previous prime)")
        for q in iter_primes(2, n_i, ceiling=sieve_ceiling):
            if splitting_type(added, q) is not SplittingType.SPLIT:
                issues.append(f"stage {i}: prime {q} does not split totally in Q(sqrt(p))")
        w = stage.get("widmer")
        if w is None:
            issues.append(f"stage {i}: missing discriminant-norm record")
        else:
            if w["norm_base"] != p_i or w["norm_exponent"] != 1 << (i - 1):
                issues.append(f"stage {i}: discriminant-norm power mismatch")
            expect = math.log(p_i) / 4.0
            if abs(w["log_quantity"] - expect) > 1e-12 * max(1.0, abs(expect)):
                issues.append(f"stage {i}: log quantity {w['log_quantity']} != {expect}")
            if not w["log_quantity"] > last_log:
                issues.append(f"stage {i}: discriminant-norm quantity fails to increase")
            last_log = w["log_quantity"]
        previous = previous.adjoin(added)
        stored_basis = [b["value"] for b in stage["cumulative_field"]]
        if [b.value for b in previous.basis] != stored_basis:
            issues.append(f"stage {i}: cumulative field does not match the recomputation")
        n_prev, p_prev = n_i, p_i
    return issues


def _verify_quadratic(doc: dict) -> list[str]:
    params = doc["params"]
    spec = SplittingSpec(
        split=frozenset(params["split"]),
        inert=frozenset(params["inert"]),
        ramified=frozenset(params["ramified"]),
        two_behavior=params["two_behavior"],
        signature=params["signature"],
    )
    try:
        m = _factored_from_doc(doc["stages"][0]["field_added"])
        if m.value != doc.get("m", m.value):
            return [f"stage field {m.value} disagrees with top-level m={doc['m']}"]
        _verify_prescription(m, spec)
    except VerificationError as exc:
        return [str(exc)]
    return []


def verify_trace_doc(
    doc: dict, *, sieve_ceiling: int = DEFAULT_SIEVE_CEILING
) -> list[str]:
    """Re-derive every certificate in the document; returns found problems."""
    validate_schema(doc)
    issues: list[str] = []
    for where, certs in [("trace", doc["certificates"])] + [
        (f"stage {s['index']}", s["certified_inequalities"]) for s in doc["stages"]
    ]:
        for c in certs:
            if not c["holds"]:
                issues.append(f"{where}: stored certificate {c['name']!r} does not hold")
    kind = doc["construction"]
    if kind == THM12_TOWER:
        issues.extend(_verify_thm12(doc, sieve_ceiling))
    elif kind == PROP71_TOWER:
        issues.extend(_verify_prop71(doc, sieve_ceiling))
    elif kind == CONSTRUCT_QUADRATIC:
        issues.extend(_verify_quadratic(doc))
    else:  # unreachable once the schema passed
        issues.append(f"unknown construction {kind!r}")
    return issues

"""Certificates for semilocal and S-integer definitions, and their text format.

A certificate is a JSON document with a fixed key order and a sha256 digest
of its canonical body. Loading recomputes the digest, rebuilds the objects
and re-runs every invariant check, so a tampered or stale file is rejected.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .arith import Q, RationalLike, val
from .errors import CounterexampleFound, InvariantViolated, PreconditionViolated
from .localglobal import QuatAlg
from .logic.ast import Formula, PrenexExistential
from .logic.emit import QuantifierLedger, emit_complement_exists, emit_semilocal_exists3, emit_universal, quantifier_ledger
from .semilocal import (
    ProductEncoding,
    SemilocalDefinition,
    build_encoding,
    member_via_definition,
    phi_reduction_value,
    synthesize_semilocal,
)
from .universal import (
    EnlargedParams,
    WitnessPair,
    construct_witness,
    enlarge,
    rhs_predicate,
    smallest_complement_prime,
)

FORMAT_VERSION = 1


# -- text format ------------------------------------------------------------------------


def _digest(body: dict) -> str:
    canon = json.dumps(body, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canon.encode()).hexdigest()


def dumps(body: dict) -> str:
    """Serialize ``body`` with its digest appended as the last key."""
    doc = dict(body)
    doc["digest"] = _digest(body)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    """Parse a document and check its digest; returns the body without it."""
    doc = json.loads(text)
    digest = doc.pop("digest", None)
    if digest != _digest(doc):
        raise InvariantViolated("certificate digest does not match its contents")
    return doc


def _frac(x: str) -> Fraction:
    return Fraction(x)


# -- semilocal ------------------------------------------------------------------------


def _encoding_body(enc: ProductEncoding) -> dict:
    return {"d": enc.d, "factors": enc.describe()}


def _check_encoding(enc: ProductEncoding, body: dict) -> None:
    if _encoding_body(enc) != body:
        raise InvariantViolated("stored encoding differs from the rebuilt one")


def semilocal_body(defn: SemilocalDefinition) -> dict:
    return {
        "kind": "semilocal",
        "version": FORMAT_VERSION,
        "S": sorted(defn.S),
        "Q": {"a": str(defn.Q.a), "b": str(defn.Q.b)},
        "delta": sorted(defn.delta_places),
        "pi": str(defn.pi),
        "a": str(defn.a),
        "encoding": _encoding_body(build_encoding(defn.S)),
        "quantifiers": emit_semilocal_exists3(defn).quantifier_count,
    }


def semilocal_from_body(body: dict) -> SemilocalDefinition:
    if body.get("kind") != "semilocal":
        raise PreconditionViolated(f"not a semilocal certificate: kind = {body.get('kind')!r}")
    defn = SemilocalDefinition(
        QuatAlg(_frac(body["Q"]["a"]), _frac(body["Q"]["b"])),
        _frac(body["pi"]),
        _frac(body["a"]),
        frozenset(body["S"]),
    ).check()
    if sorted(defn.delta_places) != body["delta"]:
        raise InvariantViolated("stored Delta differs from the recomputed one")
    _check_encoding(build_encoding(defn.S), body["encoding"])
    return defn


def dump_semilocal(defn: SemilocalDefinition) -> str:
    return dumps(semilocal_body(defn))


def load_semilocal(text: str) -> SemilocalDefinition:
    return semilocal_from_body(loads(text))


# -- universal ------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplementDecision:
    """Whether y lies in the union of m_w over primes w outside S_user, and why."""

    y: Fraction
    value: bool
    route: str
    witness: WitnessPair | None = None
    prime: int | None = None

    def summary(self) -> str:
        if self.witness is not None:
            return self.witness.summary()
        if self.prime is not None:
            return f"p={self.prime}"
        return ""


@dataclass(frozen=True)
class UniversalCertificate:
    """Everything needed to define the S_user-integers by a universal formula.

    The ring is {0} together with the x whose inverse avoids the complement
    C = union of m_w over w outside S_user. C splits into the primes of S
    outside S_user, each handled by a semilocal definition applied to y/p,
    and the primes outside S, handled by witness pairs (a, b) in Phi.
    """

    params: EnlargedParams
    extra: dict = field(hash=False)
    phi_defn: SemilocalDefinition
    encoding: ProductEncoding
    ledger: QuantifierLedger

    @property
    def S_user(self) -> frozenset[int]:
        return self.params.S_user

    @cached_property
    def complement_formula(self) -> PrenexExistential:
        return emit_complement_exists(
            self.S_user, self.params.pi, self.params.u, self.phi_defn, self.encoding, self.extra
        )

    @cached_property
    def universal_formula(self) -> Formula:
        return emit_universal(self.complement_formula)

    def in_complement(self, y: RationalLike, witness_budget: int | None = None) -> ComplementDecision:
        y = Q(y)
        if y == 0:
            return ComplementDecision(y, True, "zero")
        for p in sorted(self.extra):
            if member_via_definition(self.extra[p], y / p):
                return ComplementDecision(y, True, "semilocal", prime=p)
        w = smallest_complement_prime(self.params, y)
        if w is None:
            return ComplementDecision(y, False, "none")
        kw = {} if witness_budget is None else {"budget": witness_budget}
        wp = construct_witness(self.params, y, w, **kw)
        self._check_witness(wp, y)
        return ComplementDecision(y, True, "witness", witness=wp, prime=w)

    def _check_witness(self, wp: WitnessPair, y: Fraction) -> None:
        # Phi membership once more through the encoding and the semilocal definition
        value = phi_reduction_value(self.params.phi_spec, self.encoding, wp.a, wp.b)
        if not member_via_definition(self.phi_defn, value):
            raise CounterexampleFound(f"witness {wp.summary()} fails the Phi reduction")
        if not rhs_predicate(self.params, wp.a, wp.b, y):
            raise CounterexampleFound(f"witness {wp.summary()} fails the predicate at {y}")

    def decide(self, x: RationalLike) -> bool:
        """Membership of x in the ring of S_user-integers through the complement."""
        x = Q(x)
        return x == 0 or not self.in_complement(1 / x).value

    def body(self) -> dict:
        return {
            "kind": "universal",
            "version": FORMAT_VERSION,
            "S_user": sorted(self.S_user),
            "S": sorted(self.params.S),
            "pi": str(self.params.pi),
            "u": str(self.params.u),
            "extra": {str(p): semilocal_body(self.extra[p]) for p in sorted(self.extra)},
            "phi": semilocal_body(self.phi_defn),
            "encoding": _encoding_body(self.encoding),
            "ledger": self.ledger.as_dict(),
            "duality": "x is in the ring iff x = 0 or 1/x is outside the complement; "
            "the universal formula has as many quantifiers as the complement's existential one",
        }

    def dumps(self) -> str:
        return dumps(self.body())


def in_s_integers(S_user: Iterable[int], x: RationalLike) -> bool:
    """Oracle: v_q(x) >= 0 for every prime q outside S_user."""
    x = Q(x)
    d = x.denominator
    for p in S_user:
        while d % p == 0:
            d //= p
    return d == 1


def assemble_certificate(S_user: Iterable[int]) -> UniversalCertificate:
    params = enlarge(S_user)
    extra = {}
    for p in sorted(params.S - params.S_user):
        defn = synthesize_semilocal({p})
        if val(Q(p), p) != 1:
            raise InvariantViolated(f"{p} is not a uniformizer at {p}")
        extra[p] = defn
    phi_defn = synthesize_semilocal(params.S)
    enc = build_encoding(params.S)
    return UniversalCertificate(params, extra, phi_defn, enc, quantifier_ledger(params.S_user))


def load_universal(text: str) -> UniversalCertificate:
    body = loads(text)
    if body.get("kind") != "universal":
        raise PreconditionViolated(f"not a universal certificate: kind = {body.get('kind')!r}")
    cert = assemble_certificate(body["S_user"])
    if cert.body() != body:
        raise InvariantViolated("stored universal certificate differs from the rebuilt one")
    for p, sub in body["extra"].items():
        semilocal_from_body(sub)
    semilocal_from_body(body["phi"])
    return cert


def load_any(text: str):
    body = loads(text)
    kind = body.get("kind")
    if kind == "semilocal":
        return semilocal_from_body(body)
    if kind == "universal":
        return load_universal(text)
    raise PreconditionViolated(f"unknown certificate kind {kind!r}")

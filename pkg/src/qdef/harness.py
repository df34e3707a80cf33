"""Corpus generation, named property suites and run reports.

Every suite draws its randomness from ``random.Random(f"{seed}:{suite}")``
so a report depends only on the suite name, the corpus spec and the
options. Reports never contain timings; callers print those separately.
"""

from __future__ import annotations

import csv
import io
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import certificates
from .arith import (
    REAL,
    LocalPolynomial,
    hensel_lift,
    primes_up_to,
    quadratic_has_root_local,
    support,
    val,
    weak_approx,
)
from .errors import BudgetExceeded, DegenerateDenominator, QdefError, UnknownSuite
from .localglobal import (
    QuatAlg,
    construct_with_delta,
    delta,
    hilbert_symbol,
    in_poonen_set,
    nonsplit_local_invariant,
    poonen_decompose,
)
from .logic.ast import contains_inv, eval_qf, eval_term
from .logic.emit import decide_exists3, emit_semilocal_exists3, quantifier_ledger
from .logic.generate import inverse_arguments, random_formula, zero_hitting_assignments
from .logic.rewrite import collapse_to_single_polynomial, eliminate_inverses
from .oracles import hilbert_symbol_bruteforce, quadratic_root_bruteforce, root_test_values, square_class_representatives
from .semilocal import (
    PhiSpec,
    build_encoding,
    encode_pair,
    encode_tuple,
    in_phi,
    in_semilocal,
    in_units,
    member_via_definition,
    phi_reduction_value,
    synthesize_semilocal,
)
from .universal import (
    enlarge,
    g_property_check,
    in_complement,
    lemma_equivalence_check,
    rhs_predicate,
    sample_phi_pair,
)

BOUNDARY_PRIMES = primes_up_to(13)
MAX_COUNTEREXAMPLES = 20

# 26 prime sets with |S| from 1 to 4 and all primes below 50
SEMILOCAL_BATTERY: tuple[frozenset[int], ...] = tuple(
    frozenset(s)
    for s in [(p,) for p in primes_up_to(47)]
    + [(2, 3), (3, 7), (5, 11), (2, 13), (17, 19)]
    + [(2, 5, 11), (3, 5, 7), (29, 31, 37), (41, 43, 47)]
    + [(13, 17, 19, 23), (2, 3, 41, 43)]
)
LEMMA_BATTERY: tuple[frozenset[int], ...] = (frozenset({2}), frozenset({5}), frozenset({2, 3}))
UNIVERSAL_BATTERY: tuple[frozenset[int], ...] = LEMMA_BATTERY + (frozenset({2, 3, 5}), frozenset({7}))


# -- corpus ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusSpec:
    height_bound: int = 1000
    count: int = 10_000
    seed: int = 0
    include_boundary: bool = False

    def __post_init__(self):
        if self.height_bound < 1 or self.count < 1:
            raise ValueError("height_bound and count must be positive")


def boundary_values() -> list[Fraction]:
    """0, +-1, +-1/2 and p, 1/p, p/q for primes p, q <= 13."""
    out = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2)]
    for p in BOUNDARY_PRIMES:
        out += [Fraction(p), Fraction(1, p)]
    for p in BOUNDARY_PRIMES:
        for q in BOUNDARY_PRIMES:
            if p != q:
                out.append(Fraction(p, q))
    return list(dict.fromkeys(out))


def random_rational(rng: random.Random, bound: int, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x or not nonzero:
            return x


def _capacity(bound: int) -> int:
    """Number of rationals of height <= bound: 0 plus signed coprime pairs."""
    phi = list(range(bound + 1))
    for k in range(2, bound + 1):
        if phi[k] == k:
            for m in range(k, bound + 1, k):
                phi[m] -= phi[m] // k
    return 1 + 2 * (2 * sum(phi[1:]) - 1)


def generate_corpus(spec: CorpusSpec) -> list[Fraction]:
    """``spec.count`` distinct random rationals of height <= the bound, boundary values first."""
    rng = random.Random(f"corpus:{spec.seed}:{spec.height_bound}")
    out = boundary_values() if spec.include_boundary else []
    seen = set(out)
    if spec.height_bound <= 10**5 and spec.count > _capacity(spec.height_bound) - len(seen):
        raise ValueError(f"fewer than {spec.count} new rationals have height <= {spec.height_bound}")
    made = 0
    while made < spec.count:
        x = random_rational(rng, spec.height_bound)
        if x not in seen:
            seen.add(x)
            out.append(x)
            made += 1
    return out


# -- results and reports -------------------------------------------------------------------


@dataclass
class SuiteResult:
    checks: dict[str, list[int]] = field(default_factory=dict)
    counterexamples: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)
    metrics: dict[str, object] = field(default_factory=dict)

    def check(self, name: str, ok: bool, detail: str | Callable[[], str] = "") -> bool:
        tally = self.checks.setdefault(name, [0, 0])
        tally[0 if ok else 1] += 1
        if not ok and len(self.counterexamples) < MAX_COUNTEREXAMPLES:
            self.counterexamples.append(f"{name}: {detail() if callable(detail) else detail}")
        return ok

    def note(self, text: str) -> None:
        self.notes.append(text)

    @property
    def failed(self) -> int:
        return sum(f for _, f in self.checks.values())

    @property
    def passed(self) -> int:
        return sum(p for p, _ in self.checks.values())


@dataclass
class RunReport:
    command: str
    parameters: dict
    result: SuiteResult
    seed: int
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.result.failed == 0 and bool(self.result.checks)

    def to_text(self) -> str:
        lines = [f"command: {self.command}", f"seed: {self.seed}"]
        for k, v in self.parameters.items():
            lines.append(f"param {k}: {v}")
        for name in sorted(self.result.checks):
            p, f = self.result.checks[name]
            lines.append(f"check {name}: passed={p} failed={f}")
        for k in sorted(self.result.metrics):
            lines.append(f"metric {k}: {self.result.metrics[k]}")
        for n in self.result.notes:
            lines.append(f"note: {n}")
        for c in self.result.counterexamples:
            lines.append(f"counterexample: {c}")
        lines.append(f"status: {'pass' if self.ok else 'fail'}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.result.rows:
            keys = list(self.result.rows[0])
            w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
            w.writeheader()
            w.writerows(self.result.rows)
        else:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["check", "passed", "failed"])
            for name in sorted(self.result.checks):
                w.writerow([name, *self.result.checks[name]])
        return buf.getvalue()

    def render(self, fmt: str = "text") -> str:
        return self.to_csv() if fmt == "tabular" else self.to_text()


# -- registry ---------------------------------------------------------------------------

SuiteFn = Callable[[CorpusSpec, dict, random.Random], SuiteResult]
SUITES: dict[str, tuple[SuiteFn, str]] = {}


def suite(name: str, description: str):
    def register(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = (fn, description)
        return fn

    return register


def run_differential(name: str, spec: CorpusSpec | None = None, **options) -> RunReport:
    if name not in SUITES:
        raise UnknownSuite(f"no suite named {name!r}; known: {', '.join(sorted(SUITES))}")
    spec = spec or CorpusSpec(include_boundary=True)
    fn, _ = SUITES[name]
    rng = random.Random(f"{spec.seed}:{name}")
    start = time.perf_counter()
    result = fn(spec, options, rng)
    elapsed = time.perf_counter() - start
    params = {
        "height": spec.height_bound,
        "count": spec.count,
        "boundary": spec.include_boundary,
    } | {k: _show_option(v) for k, v in sorted(options.items())}
    return RunReport(name, params, result, spec.seed, elapsed)


def _show_option(v) -> str:
    if isinstance(v, (list, tuple)) and v and isinstance(v[0], (set, frozenset)):
        return ";".join(",".join(map(str, sorted(s))) for s in v)
    if isinstance(v, (set, frozenset)):
        return ",".join(map(str, sorted(v)))
    return str(v)


def _sets(options: dict, default: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    raw = options.get("S")
    if raw is None:
        return list(default)
    if raw and isinstance(next(iter(raw)), int):
        return [frozenset(raw)]
    return [frozenset(s) for s in raw]


def _random_prime(rng: random.Random, bound: int = 50) -> int:
    return rng.choice(primes_up_to(bound))


# -- exact arithmetic ---------------------------------------------------------------------


@suite("valuation", "ultrametric inequality and multiplicativity of v_p")
def _valuation(spec, options, rng):
    res = SuiteResult()
    for _ in range(spec.count):
        x, y = random_rational(rng, spec.height_bound), random_rational(rng, spec.height_bound)
        p = _random_prime(rng, 30)
        vx, vy, vs = val(x, p), val(y, p), val(x + y, p)
        res.check("ultrametric", vs >= min(vx, vy) and (vx == vy or vs == min(vx, vy)), lambda: f"{x}, {y}, p={p}")
        if x and y:
            res.check("multiplicative", val(x * y, p) == vx + vy, lambda: f"{x}, {y}, p={p}")
    return res


@suite("weak-approx", "weak_approx meets every target beyond gamma")
def _weak_approx(spec, options, rng):
    res = SuiteResult()
    for _ in range(max(1, spec.count // 10)):
        primes = rng.sample(primes_up_to(50), rng.randint(1, 4))
        targets = [(p, random_rational(rng, spec.height_bound)) for p in primes]
        gamma = rng.randint(-2, 6)
        x = weak_approx(targets, gamma)
        res.check("approximation", all(val(x - a, p) > gamma for p, a in targets), lambda: f"{targets}, gamma={gamma}")
    return res


def random_hensel_instance(rng: random.Random) -> tuple[LocalPolynomial, Fraction, int]:
    """A polynomial, a starting point with v(f(a0)) > 2 v(f'(a0)), and a target precision."""
    p = rng.choice(primes_up_to(13))
    while True:
        deg = rng.randint(2, 4)
        coeffs = [Fraction(rng.randint(-50, 50)) for _ in range(deg + 1)]
        coeffs[-1] = Fraction(rng.choice([1, -1, 2, 3, 5]))
        a0 = Fraction(rng.randint(-30, 30))
        df = LocalPolynomial(tuple(coeffs), p).derivative()
        e = val(df(a0), p)
        if e == math.inf or e > 3:
            continue
        f0 = LocalPolynomial(tuple(coeffs), p)(a0)
        # shift the constant so that f(a0) becomes p^k times a random integer, k > 2e
        k = 2 * e + 1 + rng.randint(0, 2)
        coeffs[0] += -f0 + p**k * rng.randint(-5, 5)
        return LocalPolynomial(tuple(coeffs), p), a0, rng.randint(1, 30)


@suite("hensel", "hensel_lift reaches the requested precision and stays near a0")
def _hensel(spec, options, rng):
    res = SuiteResult()
    for _ in range(max(1, spec.count // 10)):
        f, a0, N = random_hensel_instance(rng)
        a = hensel_lift(f, a0, N)
        e = val(f.derivative()(a0), f.p)
        res.check("precision", val(f(a), f.p) >= N, lambda: f"f={f.coefficients}, p={f.p}, a0={a0}, N={N}")
        res.check("proximity", val(a - a0, f.p) > e, lambda: f"f={f.coefficients}, p={f.p}, a0={a0}")
    return res


@suite("local-roots", "quadratic_has_root_local against root counting mod p^k, p <= 13")
def _local_roots(spec, options, rng):
    res = SuiteResult()
    for p in primes_up_to(13):
        for a in root_test_values(p):
            res.check(f"roots p={p}", quadratic_has_root_local(a, p) == quadratic_root_bruteforce(a, p), lambda: f"a={a}")
    return res


# -- local-global ---------------------------------------------------------------------------


@suite("reciprocity", "product of Hilbert symbols over all places is 1")
def _reciprocity(spec, options, rng):
    res = SuiteResult()
    for _ in range(spec.count):
        s = random_rational(rng, spec.height_bound, nonzero=True)
        t = random_rational(rng, spec.height_bound, nonzero=True)
        places = support(s) | support(t) | {2}
        prod = hilbert_symbol(s, t, REAL)
        for p in places:
            prod *= hilbert_symbol(s, t, p)
        res.check("reciprocity", prod == 1, lambda: f"({s}, {t})")
    return res


@suite("local-oracle", "closed-form Hilbert symbols against Z/p^k solvability on square classes")
def _local_oracle(spec, options, rng):
    res = SuiteResult()
    for p in (2, 3, 5, 7, 13):
        reps = square_class_representatives(p)
        for s in reps:
            for t in reps:
                ok = hilbert_symbol(s, t, p) == hilbert_symbol_bruteforce(s, t, p)
                res.check(f"symbol p={p}", ok, lambda: f"({s}, {t})")
    return res


def random_algebra(rng: random.Random, bound: int) -> QuatAlg:
    while True:
        a = random_rational(rng, bound)
        b = random_rational(rng, bound, nonzero=True)
        if 1 + 4 * a != 0:
            return QuatAlg(a, b)


@suite("delta-parity", "|Delta| + real bit is even; local non-split invariants at ramified primes")
def _delta_parity(spec, options, rng):
    res = SuiteResult()
    n = max(1, spec.count // 10)
    nonreal = 0
    while nonreal < n:
        A = random_algebra(rng, spec.height_bound)
        d = delta(A)
        res.check("parity", (len(d.finite_places) + d.real_ramified) % 2 == 0, lambda: str(A))
        if d.real_ramified:
            continue
        nonreal += 1
        res.check("nonreal even", len(d.finite_places) % 2 == 0, lambda: str(A))
        for p in d.finite_places:
            try:
                nonsplit_local_invariant(A, p)
                ok = True
            except QdefError:
                ok = False
            res.check("local invariant", ok, lambda: f"{A} at {p}")
    for S in [(), (2, 3), (3, 5), (2, 7), (5, 13), (2, 3, 5, 7), (3, 11, 17, 19)]:
        A = construct_with_delta(S)
        d = delta(A)
        res.check("construct", d.finite_places == frozenset(S) and not d.real_ramified, lambda: f"{S}: {A}")
        for p in d.finite_places:
            try:
                nonsplit_local_invariant(A, p)
                ok = True
            except QdefError:
                ok = False
            res.check("local invariant", ok, lambda: f"{A} at {p}")
    return res


@suite("symbol-squares", "Hilbert symbols only see square classes")
def _symbol_squares(spec, options, rng):
    res = SuiteResult()
    for _ in range(max(1, spec.count // 10)):
        s = random_rational(rng, spec.height_bound, nonzero=True)
        t = random_rational(rng, spec.height_bound, nonzero=True)
        u = random_rational(rng, 50, nonzero=True)
        place = rng.choice([REAL, *primes_up_to(13)])
        ok = hilbert_symbol(s * u * u, t, place) == hilbert_symbol(s, t, place)
        res.check("square class", ok, lambda: f"({s}, {t}), u={u}, place={place}")
    return res


POONEN_ALGEBRA = QuatAlg(Fraction(-1, 2), Fraction(3))


def _poonen_member(rng: random.Random, bound: int) -> Fraction:
    while True:
        x = random_rational(rng, bound)
        if in_poonen_set(POONEN_ALGEBRA, x):
            return x


@suite("poonen", "sums of two elements of S(Q) are exactly the semilocal ring at Delta(Q)")
def _poonen(spec, options, rng):
    res = SuiteResult()
    A = POONEN_ALGEBRA
    ring = delta(A).finite_places
    for _ in range(options.get("samples", max(1, spec.count // 10))):
        s, t = _poonen_member(rng, spec.height_bound), _poonen_member(rng, spec.height_bound)
        res.check("closure", in_semilocal(ring, s + t), lambda: f"{s} + {t}")
    budget = options.get("budget", 10**4)
    wanted = options.get("decompose", 200)
    done = 0
    while done < wanted:
        x = random_rational(rng, 100)
        if not in_semilocal(ring, x):
            continue
        done += 1
        try:
            s, t = poonen_decompose(A, x, budget)
            ok = s + t == x and in_poonen_set(A, s) and in_poonen_set(A, t)
        except BudgetExceeded:
            ok = False
        res.check("decompose", ok, lambda: f"{x} within height {budget}")
    return res


# -- semilocal rings ------------------------------------------------------------------------


@suite("semilocal-equivalence", "member_via_definition agrees with the valuation oracle")
def _semilocal_equivalence(spec, options, rng):
    res = SuiteResult()
    corpus = generate_corpus(spec)
    for S in _sets(options, SEMILOCAL_BATTERY):
        defn = synthesize_semilocal(S)
        name = "S=" + ",".join(map(str, sorted(S)))
        text = certificates.dump_semilocal(defn)
        res.check("certificate round trip", certificates.dump_semilocal(certificates.load_semilocal(text)) == text, name)
        for x in corpus:
            res.check("definition", member_via_definition(defn, x) == in_semilocal(S, x), lambda: f"{name}, x={x}")
    res.metrics["certificates"] = len(_sets(options, SEMILOCAL_BATTERY))
    return res


@suite("units", "in_units matches v_p(x) = 0 for all p in S")
def _units(spec, options, rng):
    res = SuiteResult()
    corpus = generate_corpus(spec)
    for S in _sets(options, SEMILOCAL_BATTERY[:8]):
        for x in corpus:
            expected = x != 0 and all(val(x, p) == 0 for p in S)
            res.check("units", in_units(S, x) == expected, lambda: f"S={sorted(S)}, x={x}")
    return res


def _pair_component(rng: random.Random, S: frozenset[int], bound: int) -> Fraction:
    if rng.random() < 0.15:
        return Fraction(0)
    x = random_rational(rng, bound, nonzero=True)
    p = rng.choice(sorted(S))
    return x * Fraction(p) ** rng.randint(-3, 3)


@suite("encoding", "valuation identity of the product encoding and tuple membership")
def _encoding(spec, options, rng):
    res = SuiteResult()
    samples = options.get("samples", max(1, spec.count // 10))
    bound = min(spec.height_bound, 1000)
    for S in _sets(options, SEMILOCAL_BATTERY[:6] + SEMILOCAL_BATTERY[15:21]):
        enc = build_encoding(S)
        for _ in range(samples):
            x, y = _pair_component(rng, S, bound), _pair_component(rng, S, bound)
            F = encode_pair(enc, x, y)
            for p in S:
                expected = enc.d * min(val(x, p), val(y, p))
                res.check("valuation identity", val(F, p) == expected, lambda: f"S={sorted(S)}, ({x}, {y}), p={p}")
        for _ in range(samples):
            xs = [_pair_component(rng, S, bound) for _ in range(rng.randint(1, 4))]
            lhs = in_semilocal(S, encode_tuple(enc, xs))
            rhs = all(in_semilocal(S, x) for x in xs)
            res.check("tuple membership", lhs == rhs, lambda: f"S={sorted(S)}, {xs}")
    return res


@suite("phi-reduction", "in_phi agrees with semilocal membership of the reduction value")
def _phi_reduction(spec, options, rng):
    res = SuiteResult()
    samples = options.get("samples", max(1, spec.count // 10))
    for S in _sets(options, SEMILOCAL_BATTERY[:4] + SEMILOCAL_BATTERY[15:19]):
        pi = Fraction(math.prod(S))
        u = next(Fraction(k) for k in range(1, 10**6) if all(k % p for p in S))
        phi = PhiSpec(S, u, pi)
        enc = build_encoding(S)
        for _ in range(samples):
            if rng.random() < 0.5:
                a = u + pi * _pair_component(rng, S, 100)
            else:
                a = random_rational(rng, 1000)
            b = _pair_component(rng, S, 1000) or Fraction(1)
            value = phi_reduction_value(phi, enc, a, b)
            res.check("reduction", in_phi(phi, a, b) == in_semilocal(S, value), lambda: f"S={sorted(S)}, ({a}, {b})")
    return res


# -- formulas ----------------------------------------------------------------------------------


@suite("exists3", "emitted three-quantifier formulas: count, decisions and witnesses")
def _exists3(spec, options, rng):
    res = SuiteResult()
    corpus = generate_corpus(spec)
    height_budget = options.get("witness_height", 1000)
    search = options.get("search", True)
    positives = found = 0
    for S in _sets(options, SEMILOCAL_BATTERY):
        defn = synthesize_semilocal(S)
        emitted = emit_semilocal_exists3(defn)
        name = ",".join(map(str, sorted(S)))
        res.check("quantifier count", emitted.quantifier_count == 3, name)
        pos = hit = 0
        for x in corpus:
            dec = decide_exists3(emitted, defn, x, height_budget, search=search)
            res.check("decision", dec.value == in_semilocal(S, x), lambda: f"S={name}, x={x}")
            if dec.value:
                pos += 1
                hit += dec.status in ("found", "trivial")
        positives += pos
        found += hit
        res.rows.append({"S": name, "positives": pos, "witnessed": hit})
    res.metrics["positives"] = positives
    res.metrics["witnessed"] = found
    if search and positives:
        res.metrics["witness rate"] = f"{found / positives:.4f}"
        res.note(f"witnesses of height <= {height_budget} found for {found} of {positives} positive cases")
    return res


@suite("inverse-elimination", "eliminate_inverses preserves truth, zero-hitting assignments included")
def _inverse_elimination(spec, options, rng):
    res = SuiteResult()
    names = ("x", "y", "z", "w")
    assignments = options.get("assignments", 100)
    hits = 0
    for _ in range(options.get("samples", max(1, spec.count // 10))):
        phi = random_formula(rng, names, term_depth=3, atoms=rng.randint(1, 3))
        out = eliminate_inverses(phi)
        res.check("inverse free", not contains_inv(out), lambda: str(phi))
        args = inverse_arguments(phi)
        for env in zero_hitting_assignments(rng, phi, names, assignments):
            hits += any(eval_term(a, env) == 0 for a in args)
            res.check("truth preserved", eval_qf(phi, env) == eval_qf(out, env), lambda: f"{phi} at {env}")
    res.metrics["zero-hitting assignments"] = hits
    return res


@suite("collapse", "single-polynomial collapse preserves truth")
def _collapse(spec, options, rng):
    res = SuiteResult()
    names = ("x", "y", "z")
    for _ in range(options.get("samples", 50)):
        phi = random_formula(rng, names, term_depth=2, atoms=rng.randint(1, 4), field=False, negation=False)
        single = collapse_to_single_polynomial(phi)
        for env in zero_hitting_assignments(rng, phi, names, options.get("assignments", 1000)):
            res.check("truth preserved", eval_qf(phi, env) == eval_qf(single, env), lambda: f"{phi} at {env}")
    return res


# -- universal definitions ---------------------------------------------------------------------


@suite("g-clauses", "valuation clauses of g at odd primes")
def _g_clauses(spec, options, rng):
    res = SuiteResult()
    wanted = options.get("samples", max(1, spec.count // 10))
    applicable = 0
    while applicable < wanted:
        p = rng.choice(primes_up_to(50)[1:])
        a = random_rational(rng, 200)
        b = random_rational(rng, 200, nonzero=True) * Fraction(p) ** rng.randint(-2, 2)
        try:
            rep = g_property_check(a, b, p)
        except QdefError as exc:
            applicable += 1
            res.check("clauses", False, f"(a, b, p) = ({a}, {b}, {p}): {exc}")
            continue
        if rep.clauses:
            applicable += 1
            for c in rep.clauses:
                res.check(f"clause {c}", True)
    return res


@suite("main-lemma", "complement characterization: forward witnesses and reverse samples")
def _main_lemma(spec, options, rng):
    res = SuiteResult()
    samples = options.get("samples", 500)
    corpus = generate_corpus(spec)
    for S_user in _sets(options, LEMMA_BATTERY):
        params = enlarge(S_user)
        name = ",".join(map(str, sorted(S_user)))
        forward = [x for x in corpus if in_complement(params, x)][:samples]
        for x in forward:
            try:
                rep = lemma_equivalence_check(params, x)
                ok = rep.status == "verified"
            except QdefError as exc:
                ok, rep = False, exc
            res.check("forward", ok, lambda: f"S={name}, x={x}: {rep}")
        done = skipped = tries = 0
        while done < samples and tries < 200 * samples:
            tries += 1
            a, b = sample_phi_pair(params, rng)
            x = random_rational(rng, spec.height_bound)
            try:
                hit = rhs_predicate(params, a, b, x)
            except DegenerateDenominator:
                skipped += 1
                continue
            if hit:
                done += 1
                res.check("reverse", in_complement(params, x), lambda: f"S={name}, (a, b, x) = ({a}, {b}, {x})")
        res.check("reverse samples", done == samples, lambda: f"S={name}: only {done} of {samples} after {tries} draws")
        if skipped:
            res.note(f"S={name}: {skipped} degenerate (a, b, x) draws skipped")
        outside = [x for x in corpus if not in_complement(params, x)][: options.get("negative", 10)]
        for x in outside:
            try:
                rep = lemma_equivalence_check(params, x, samples=options.get("phi_samples", 200))
                ok = rep.status == "consistent"
            except QdefError as exc:
                ok, rep = False, exc
            res.check("negative sampling", ok, lambda: f"S={name}, x={x}: {rep}")
    return res


@suite("universal", "certificate decisions against the S-integer oracle, plus the quantifier ledger")
def _universal(spec, options, rng):
    res = SuiteResult()
    corpus = generate_corpus(spec)
    for S_user in _sets(options, UNIVERSAL_BATTERY):
        cert = certificates.assemble_certificate(S_user)
        name = ",".join(map(str, sorted(S_user)))
        text = cert.dumps()
        res.check("certificate round trip", certificates.load_universal(text).dumps() == text, name)
        led = cert.ledger
        res.check("ledger", (led.paper, led.naive, led.merge_constructed) == (10, 12, False), name)
        res.check("complement quantifiers", cert.complement_formula.quantifier_count == led.naive, name)
        for x in corpus:
            oracle = certificates.in_s_integers(S_user, x)
            got = cert.decide(x)
            res.check("decision", got == oracle, lambda: f"S={name}, x={x}")
            if x:
                dec = cert.in_complement(1 / x)
                res.rows.append(
                    {"S": name, "x": str(x), "oracle": int(oracle), "certificate": int(got), "witness": dec.summary()}
                )
    return res


@suite("certificates", "certificate documents round-trip and reject tampering")
def _certificates(spec, options, rng):
    res = SuiteResult()
    for S in _sets(options, SEMILOCAL_BATTERY[:6]):
        text = certificates.dump_semilocal(synthesize_semilocal(S))
        res.check("round trip", certificates.dump_semilocal(certificates.load_semilocal(text)) == text, str(sorted(S)))
        tampered = text.replace('"a": "', '"a": "1', 1)
        try:
            certificates.load_semilocal(tampered)
            ok = False
        except QdefError:
            ok = True
        res.check("tamper detected", ok, str(sorted(S)))
    return res


@suite("ledger", "quantifier bookkeeping of the universal definition")
def _ledger(spec, options, rng):
    res = SuiteResult()
    for S_user in _sets(options, UNIVERSAL_BATTERY):
        led = quantifier_ledger(S_user)
        res.check("counts", (led.paper, led.naive, led.universal) == (10, 12, 12), str(sorted(S_user)))
        res.check("merge flagged", led.merge_constructed is False, str(sorted(S_user)))
    return res


# Sizes used by ``selftest`` so that a full pass stays within a few minutes.
SELFTEST_OPTIONS: dict[str, dict] = {
    "exists3": {"S": SEMILOCAL_BATTERY[:6]},
    "main-lemma": {"samples": 100, "negative": 3},
    "poonen": {"decompose": 50},
}


def selftest(spec: CorpusSpec) -> list[RunReport]:
    return [run_differential(name, spec, **SELFTEST_OPTIONS.get(name, {})) for name in sorted(SUITES)]


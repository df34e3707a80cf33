"""Full-size acceptance criteria, one line each.

Run with pytest (lines appear in the terminal summary) or directly:

    python tests/test_acceptance.py [1 5 9 ...]

Set QDEF_SKIP_ACCEPTANCE=1 to skip them in a quick pytest run.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from typing import Callable

import pytest

from qdef.harness import CorpusSpec, RunReport, run_differential

FULL = CorpusSpec(1000, 10_000, seed=0, include_boundary=True)


@dataclass
class Outcome:
    ok: bool
    detail: str
    elapsed: float


def _tally(report: RunReport) -> str:
    return ", ".join(f"{name} {p}/{p + f}" for name, (p, f) in sorted(report.result.checks.items()))


def _first_failures(report: RunReport, k: int = 3) -> str:
    return "; ".join(report.result.counterexamples[:k])


def _suite(name: str, spec: CorpusSpec, limit: float | None = None, **options) -> Outcome:
    report = run_differential(name, spec, **options)
    ok = report.ok
    detail = _tally(report)
    if limit is not None:
        ok = ok and report.elapsed < limit
        detail += f"; {report.elapsed:.1f}s (limit {limit:.0f}s)"
    if not report.ok:
        detail += f"; e.g. {_first_failures(report)}"
    return Outcome(ok, detail, report.elapsed)


def c1() -> Outcome:
    return _suite("reciprocity", CorpusSpec(10_000, 10_000, seed=0), limit=60)


def c2() -> Outcome:
    return _suite("local-oracle", FULL, limit=30)


def c3() -> Outcome:
    # the suite draws count // 10 nonreal algebras
    return _suite("delta-parity", CorpusSpec(1000, 10_000, seed=0))


def c4() -> Outcome:
    return _suite("semilocal-equivalence", FULL, limit=600)


def c5() -> Outcome:
    report = run_differential("exists3", FULL, witness_height=1000)
    m = report.result.metrics
    rate = m["witnessed"] / m["positives"]
    ok = report.ok and rate >= 0.90
    detail = f"{_tally(report)}; witness rate {rate:.4f} ({m['witnessed']}/{m['positives']}, need >= 0.90)"
    detail += "; per S: " + ", ".join(f"{{{r['S']}}} {r['witnessed']}/{r['positives']}" for r in report.result.rows)
    return Outcome(ok, detail, report.elapsed)


def c6() -> Outcome:
    return _suite("poonen", FULL, samples=1000, decompose=200, budget=10**4)


def c7() -> Outcome:
    return _suite("g-clauses", FULL, samples=1000)


def c8() -> Outcome:
    return _suite("main-lemma", FULL, limit=900, samples=500)


def c9() -> Outcome:
    out = _suite("universal", CorpusSpec(1000, 1000, seed=0))
    led = run_differential("ledger", FULL)
    return Outcome(out.ok and led.ok, f"{out.detail}; ledger {_tally(led)}", out.elapsed + led.elapsed)


def c10() -> Outcome:
    return _suite("inverse-elimination", FULL, samples=1000, assignments=100)


def c11() -> Outcome:
    # count // 10 instances
    return _suite("hensel", CorpusSpec(1000, 10_000, seed=0))


def c12() -> Outcome:
    return _suite("encoding", FULL, samples=1000)


CRITERIA: dict[int, tuple[str, Callable[[], Outcome]]] = {
    1: ("Hilbert reciprocity on 10^4 pairs of height <= 10^4", c1),
    2: ("closed-form local symbols match Z/p^k solvability", c2),
    3: ("|Delta| even for 10^3 nonreal algebras", c3),
    4: ("semilocal definitions match the oracle, 26 certificates", c4),
    5: ("three-quantifier formulas: count, decisions, witness rate", c5),
    6: ("Poonen sums for [-1/2, 3)", c6),
    7: ("valuation clauses of g on 10^3 triples", c7),
    8: ("complement lemma, forward and reverse", c8),
    9: ("universal certificate against the S-integer oracle, ledger", c9),
    10: ("inverse elimination on 10^3 formulas x 10^2 assignments", c10),
    11: ("Hensel lifting on 10^3 instances", c11),
    12: ("product encoding identities", c12),
}


def line(n: int, out: Outcome) -> str:
    return f"criterion {n:>2} {'PASS' if out.ok else 'FAIL'} [{out.elapsed:7.1f}s] {CRITERIA[n][0]}: {out.detail}"


skip_all = pytest.mark.skipif(os.environ.get("QDEF_SKIP_ACCEPTANCE") == "1", reason="QDEF_SKIP_ACCEPTANCE=1")


@skip_all
@pytest.mark.acceptance
@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, acceptance_log):
    out = CRITERIA[n][1]()
    text = line(n, out)
    acceptance_log(text)
    print(text)
    assert out.ok, text


if __name__ == "__main__":
    wanted = [int(a) for a in sys.argv[1:]] or sorted(CRITERIA)
    failed = 0
    for n in wanted:
        out = CRITERIA[n][1]()
        print(line(n, out), flush=True)
        failed += not out.ok
    sys.exit(1 if failed else 0)

from fractions import Fraction

import pytest

from qdef import harness
from qdef.errors import UnknownSuite
from qdef.harness import CorpusSpec, generate_corpus, run_differential


def test_corpus_deterministic_and_distinct():
    spec = CorpusSpec(100, 500, seed=3, include_boundary=True)
    a, b = generate_corpus(spec), generate_corpus(spec)
    assert a == b and len(set(a)) == len(a)
    assert all(max(abs(x.numerator), x.denominator) <= 100 for x in a[len(harness.boundary_values()) :])
    assert generate_corpus(CorpusSpec(100, 500, seed=4)) != a


def test_corpus_capacity():
    # 0, +-1, +-2 and +-1/2 are all rationals of height <= 2
    assert sorted(generate_corpus(CorpusSpec(2, 7))) == sorted(map(Fraction, ("0", "1", "-1", "2", "-2", "1/2", "-1/2")))
    with pytest.raises(ValueError):
        generate_corpus(CorpusSpec(2, 8))


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_differential("nope")


def test_reports_exclude_timing():
    spec = CorpusSpec(50, 40, seed=1)
    a = run_differential("valuation", spec).to_text()
    b = run_differential("valuation", spec).to_text()
    assert a == b


@pytest.mark.parametrize("name", sorted(harness.SUITES))
def test_every_suite_small(name):
    options = dict(harness.SELFTEST_OPTIONS.get(name, {}))
    small = {
        "exists3": {"S": harness.SEMILOCAL_BATTERY[:2]},
        "main-lemma": {"samples": 20, "negative": 2, "phi_samples": 40},
        "poonen": {"decompose": 10},
        "collapse": {"samples": 10, "assignments": 100},
    }
    options.update(small.get(name, {}))
    report = run_differential(name, CorpusSpec(60, 150, seed=2, include_boundary=True), **options)
    assert report.ok, report.to_text()

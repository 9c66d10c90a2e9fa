"""The seeded harness itself: every suite runs green at small case counts."""

from nestlab.suites import SUITES, bimodule_samples, run_suite


def test_every_suite_passes_at_small_scale():
    for name in SUITES:
        cases = 100 if name == "chaincalc" else 15
        for outcome in run_suite(name, 3, cases):
            assert outcome.passed, (name, outcome.name, outcome.minimal_failure)


def test_all_concatenates_every_suite():
    outcomes = run_suite("all", 5, 5)
    per_suite = sum(len(run_suite(name, 5, 5)) for name in SUITES)
    assert len(outcomes) == per_suite


def test_samples_are_reproducible():
    first = [
        (nest.elements, j.space) for nest, j in bimodule_samples(11, 8)
    ]
    second = [
        (nest.elements, j.space) for nest, j in bimodule_samples(11, 8)
    ]
    assert first == second


def test_different_seeds_differ():
    a = [(nest.elements, j.space) for nest, j in bimodule_samples(1, 8)]
    b = [(nest.elements, j.space) for nest, j in bimodule_samples(2, 8)]
    assert a != b

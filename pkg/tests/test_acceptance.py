"""Acceptance gate: eight checks at their stated tolerances.

Each check prints one ``[PASS]``/``[FAIL]`` line as soon as it finishes; the
lines are repeated in the pytest terminal summary.
"""
import pytest

from acfgeom import acceptance

RESULTS: dict = {}


@pytest.fixture(scope="module")
def results(pytestconfig):
    capture = pytestconfig.pluginmanager.getplugin("capturemanager")

    def report(res):
        RESULTS[res.number] = res
        with capture.global_and_fixture_disabled():
            print("\n" + res.line(), flush=True)

    acceptance.run_all(report=report)
    return RESULTS


NAMES = {
    1: "slope_dichotomy_sweep",
    2: "einf_rewrite_vs_structural_finiteness",
    3: "qe_soundness_vs_oracle",
    4: "dimension_suite",
    5: "algebraic_boundedness_contract",
    6: "slope_cover_of_infinite_sets",
    7: "frobenius_injection",
    8: "parser_round_trip",
}


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(NAMES), ids=[f"{n}-{NAMES[n]}" for n in sorted(NAMES)])
def test_criterion(results, number):
    res = results[number]
    assert res.passed, f"{res.line()}\nfirst failures: {res.failures[:5]}"

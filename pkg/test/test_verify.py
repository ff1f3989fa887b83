import pytest

from pentagram.errors import GenericityFailure, NonSimpleBranching, NotCorrugated
from pentagram.lax import corrugated_3d, partial
from pentagram.polygon import CORRUGATED
from pentagram.verify import SuiteParams, _guarded, run_suite
from utils import CheckLogger


def _names(report):
    return {check["name"] for check in report["checks"]}


def test_corrugated_suite_in_dimension_four():
    report = run_suite("corrugated", SuiteParams(d=4, n=7, seed=0, trials=2))
    assert report["passed"]
    assert {"is_corrugated", "image_corrugated", "inverse_corrugated", "dented_restriction"} <= _names(report)
    assert "corrugated_map" not in _names(report)


def test_duality_suite_checks_alpha_identities():
    report = run_suite("duality", SuiteParams(d=3, n=7, seed=1, trials=1))
    assert report["passed"]
    assert {
        "dual_composition",
        "alpha_dual_pair",
        "alpha_factorization",
        "alpha_conjugation",
        "alpha_involution",
        "dented_conjugation",
    } <= _names(report)


def test_variant_corrugation_classes():
    assert corrugated_3d().corrugation == CORRUGATED
    assert partial(4, 1, 2).corrugation == CORRUGATED
    assert partial(4, 2, 3).corrugation.zero_slots(4) == partial(4, 2, 3).zero_slots


def test_degenerate_random_draws_are_skipped():
    def degenerate():
        raise NonSimpleBranching("repeated root")

    logger = CheckLogger()
    assert _guarded(logger, "genus", "dented", degenerate, seed=3) is None
    assert logger.passed
    assert logger.skipped[0]["seed"] == 3
    assert logger.skipped[0]["reason"] == "repeated root"

    # an input polygon has no seed and cannot be redrawn
    assert _guarded(logger, "genus", "dented", degenerate, seed=None) is False
    assert not logger.passed


def test_real_failures_still_fail():
    def not_corrugated():
        raise NotCorrugated("no")

    def image_not_generic():
        raise GenericityFailure("image")

    logger = CheckLogger()
    assert _guarded(logger, "restriction", "r", not_corrugated, seed=0) is False
    assert _guarded(logger, "restriction", "r", image_not_generic, seed=0) is None
    assert logger.r.failed == 1 and logger.r.skipped == 1


@pytest.mark.slow
def test_genus_suite_skips_degenerate_draws():
    report = run_suite("genus", SuiteParams(ns=(9,), trials=2))
    assert report["passed"]
    assert any(s["name"] == "genus" and s["seed"] == 1 for s in report["skipped"])

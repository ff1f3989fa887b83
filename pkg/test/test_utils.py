from pentagram.verify import list_suites
from utils import CheckLogger, Tally, list_entries
from utils.registry import list_modules


def test_tally():
    tally = Tally()
    for outcome in (True, True, False, None):
        tally.update(outcome)
    assert str(tally) == "2/3 passed (1 skipped)"
    assert not tally.ok


def test_check_logger_groups():
    logger = CheckLogger(delimiter=" | ")
    logger.update("shift", True, group="duality", seed=0)
    logger.skip("conservation", "no Lax variant registered", group="T")
    assert logger.passed
    assert logger.checks == [{"name": "shift", "passed": True, "seed": 0}]
    assert logger.duality.passed == 1
    assert str(logger) == "duality: 1/1 passed (0 skipped) | T: 0/0 passed (1 skipped)"
    logger.update("shift", False, group="duality", seed=1)
    assert not logger.passed


def test_registries():
    assert list_suites() == [
        "casimirs", "classical", "conservation", "corrugated", "duality", "genus", "lax", "psi", "scaling",
    ]
    assert "dented" in list_entries("lax", "den*")
    assert list_entries("lax", "*", exclude_filters="*_3d") == ["dented", "partial", "tilde"]
    assert {"lax", "verify"} <= set(list_modules())

import json

import pytest

from rankvar.errors import UnknownSuite
from rankvar.suites import SUITES, SuiteConfig, run_suite


def test_all_cheap_suites_pass_with_defaults():
    cfg = SuiteConfig(count=16, pairs=8)
    for name in ("dade", "tensor", "hom", "cosupport", "koszul", "carlson", "equiv"):
        rep = run_suite(name, cfg)
        assert rep["passed"], (name, rep["failures"][:1])
        assert rep["schema"] == "v1"
        assert rep["cases"] > 0


def test_reports_are_deterministic():
    a = json.dumps(run_suite("dade", SuiteConfig(count=10)), sort_keys=True)
    b = json.dumps(run_suite("dade", SuiteConfig(count=10)), sort_keys=True)
    assert a == b


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope")


def test_suite_registry_matches_contract():
    assert set(SUITES) == {
        "dade",
        "tensor",
        "hom",
        "koszul",
        "carlson",
        "equiv",
        "ext-symmetry",
        "generic-points",
        "residue-model",
        "cosupport",
    }


def test_residue_model_default_runs_all_primes():
    rep = run_suite("residue-model", SuiteConfig())
    assert rep["passed"]
    assert rep["cases"] == 4
    assert "skipped" not in rep

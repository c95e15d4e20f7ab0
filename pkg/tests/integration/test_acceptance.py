"""
Acceptance runs of the built-in oracle suites.

Sizes are reduced so the whole file stays fast; ``adictrop check`` runs the
default sizes.
"""

import pytest

from adictrop.models.config import JobConfig
from adictrop.oracles import SUITES, OracleSizes, run_suite, run_suites
from adictrop.runner import JobRunner

SMALL = OracleSizes(polynomials=6, points=40, max_terms=6, cones=12, insertions=6, transforms=2)


class TestOracleSuites:
    """Every suite passes on a fixed seed."""

    @pytest.mark.parametrize("name", sorted(SUITES))
    def test_suite_passes(self, name):
        result = run_suite(name, seed=0, sizes=SMALL)
        assert result.passed, "\n".join(result.failures)
        assert result.cases > 0

    @pytest.mark.parametrize("seed", [1, 7])
    def test_randomized_suites_other_seeds(self, seed):
        names = ["fundamental", "hilbert_basis", "duality_balancing", "refinement_invariance"]
        for result in run_suites(seed, names, SMALL):
            assert result.passed, f"{result.name}: " + "\n".join(result.failures)

    def test_tower_suite_length(self):
        result = run_suite("tower", sizes=OracleSizes(insertions=8))
        assert result.passed
        assert result.cases == 5


class TestDeterminism:
    """Same seed, same report."""

    def test_repeatable(self):
        first = run_suites(3, ["fundamental", "hilbert_basis"], SMALL)
        second = run_suites(3, ["fundamental", "hilbert_basis"], SMALL)
        assert [(r.name, r.cases, r.failures) for r in first] == [
            (r.name, r.cases, r.failures) for r in second
        ]

    def test_registry_order(self):
        names = [r.name for r in run_suites(0, ["tower", "tropical_line"], SMALL)]
        assert names == ["tropical_line", "tower"]

    def test_unknown_suite(self):
        with pytest.raises(KeyError):
            run_suites(0, ["tropical_line", "missing"])

    def test_check_artifact_is_stable(self):
        runner = JobRunner(JobConfig(seed=5))
        first = runner.run("check", suites=["chart_p1", "tower"]).render("json")
        second = runner.run("check", suites=["chart_p1", "tower"]).render("json")
        assert first == second

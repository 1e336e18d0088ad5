"""
Tests for the claim verification report.
"""
import json
import math
from types import SimpleNamespace

import pytest

from certifier import claims as claims_module
from certifier.claims import (
    CLAIM_IDS,
    Claim,
    ClaimReport,
    ClaimResult,
    verify_paper_claims,
    verify_paper_claims_async,
)
from lawlor.config import SolverSettings

FAST_CLAIMS = ["poly-k1-2-3", "two-block-grid", "two-block-integer", "edge-S9", "edge-S10"]


@pytest.fixture(scope="module")
def settings():
    return SolverSettings()


@pytest.fixture(scope="module")
def fast_report(settings):
    return verify_paper_claims(settings, only=FAST_CLAIMS, jobs=2)


class TestClaimRegistry:
    """Tests for the claim registry."""

    def test_ids_unique(self):
        """Claim ids are unique."""
        assert len(CLAIM_IDS) == len(set(CLAIM_IDS))

    def test_expected_claims_present(self):
        """The report covers angles, focal cones, unions, products and sweeps."""
        for claim_id in (
            "exp-12-10",
            "tan-exp-12-44/3",
            "focal-4-1-2-minus",
            "focal-3-8",
            "focal-6-2",
            "union-4-2-2",
            "sweep-g4-20",
            "chain-13-40",
            "sphere-dim-8",
            "product-three-factor",
        ):
            assert claim_id in CLAIM_IDS
        assert [c for c in CLAIM_IDS if c.startswith("F-") and c.endswith(("-5", "-6", "-7", "-8", "-9"))] == [
            "F-7-5",
            "F-8-6",
            "F-9-7",
            "F-10-8",
            "F-11-9",
        ]


class TestFastClaims:
    """Claims that need no sweeps."""

    def test_selected_order(self, fast_report):
        """Only the selected claims run, in registry order."""
        assert [c.claim_id for c in fast_report.claims] == [c for c in CLAIM_IDS if c in FAST_CLAIMS]

    def test_all_pass(self, fast_report):
        """Closed-form and edge claims hold."""
        assert fast_report.passed, fast_report.render_text()
        assert fast_report.failed == []

    def test_grid_counts(self, fast_report):
        """The grid check runs on 9900 ordered pairs."""
        grid = next(c for c in fast_report.claims if c.claim_id == "two-block-grid")
        assert grid.details == "9900 pairs"
        assert grid.value == 0.0

    def test_edge_margin_positive(self, fast_report):
        """S = 9 and S = 10 clear the quoted double-angle bounds."""
        for claim in fast_report.claims:
            if claim.claim_id.startswith("edge-"):
                assert claim.margin > 0
                assert claim.unit == "tan^2"

    def test_report_json(self, fast_report):
        """to_dict is JSON serializable and carries schema_version."""
        data = json.loads(json.dumps(fast_report.to_dict()))
        assert data["schema_version"] == 1
        assert data["total"] == len(FAST_CLAIMS)
        assert data["failed"] == []

    def test_render_text(self, fast_report):
        """Text rendering has one line per claim and a summary."""
        lines = fast_report.render_text().splitlines()
        assert len(lines) == len(FAST_CLAIMS) + 1
        assert lines[-1] == f"{len(FAST_CLAIMS)}/{len(FAST_CLAIMS)} claims passed"
        assert all(line.startswith("PASS") for line in lines[:-1])

    def test_unknown_id(self, settings):
        """Unknown claim ids are refused."""
        with pytest.raises(ValueError, match="no-such-claim"):
            verify_paper_claims(settings, only=["no-such-claim"])


class TestVerifyAsync:
    """Tests for verify_paper_claims_async."""

    async def test_progress_callback(self, settings):
        """The callback sees each claim once, in order."""
        seen = []

        async def progress(step: str, duration: float, details: str) -> None:
            seen.append((step, details))

        await verify_paper_claims_async(settings, only=["poly-k1-2-3", "two-block-grid"], progress_callback=progress)
        assert seen == [("poly-k1-2-3", "pass"), ("two-block-grid", "pass")]

    async def test_exception_becomes_failure(self, settings, monkeypatch):
        """A check that raises is reported as a failed claim."""

        def explode(_settings):
            raise RuntimeError("solver exploded")

        monkeypatch.setattr(claims_module, "CLAIMS", [Claim("broken", "always raises", explode)])
        monkeypatch.setattr(claims_module, "CLAIM_IDS", ["broken"])
        report = await verify_paper_claims_async(settings)
        assert not report.passed
        assert report.failed[0].claim_id == "broken"
        assert "solver exploded" in report.failed[0].details


class TestExistenceClaim:
    """Tests for the theta_c(12, sqrt 19) existence claim."""

    def test_real_solve_passes(self, settings):
        """The exp-bound angle at (12, 19) exists below pi/2 and above the chain base."""
        claim = claims_module._exp_12_19(settings)
        assert claim.passed, claim.details
        assert 0 < claim.value < claim.bound
        assert claim.margin == claim.bound - claim.value

    @pytest.mark.parametrize(
        "angles",
        [
            {19.0: math.pi / 2 + 0.1, 44 / 3: 0.1},
            {19.0: 0.1, 44 / 3: 0.2},
        ],
    )
    def test_bad_angle_fails(self, angles, settings, monkeypatch):
        """An angle at or past pi/2, or one below the smaller-alpha angle, fails the claim."""

        def fake_bound(k, alpha_sq, strategies=None, settings=None):
            theta = angles[alpha_sq]
            return SimpleNamespace(theta=theta, degrees=math.degrees(theta))

        monkeypatch.setattr(claims_module, "theta_upper_bound", fake_bound)
        assert not claims_module._exp_12_19(settings).passed


class TestClaimReport:
    """Tests for ClaimReport."""

    def test_failed_listed(self):
        """Failed claims are listed and flip passed."""
        report = ClaimReport(
            [
                ClaimResult("ok", "passes", True, margin=0.1),
                ClaimResult("bad", "fails", False, margin=-0.1),
            ]
        )
        assert not report.passed
        assert [c.claim_id for c in report.failed] == ["bad"]
        assert "FAIL  bad" in report.render_text()


@pytest.mark.slow
class TestAllClaims:
    """The full report."""

    def test_everything_passes(self, settings):
        """Every registered claim holds."""
        report = verify_paper_claims(settings, jobs=4)
        assert report.passed, report.render_text()
        assert len(report.claims) == len(CLAIM_IDS)

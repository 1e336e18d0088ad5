"""
Tests for the CLI commands and exit codes.
"""
import io
import json
import re

import pytest

from cli.main import EXIT_INCONCLUSIVE, EXIT_INPUT_ERROR, EXIT_OK, main, run
from cli.run_config import ModelChoice, OutputFormat, config_from_args


async def invoke(*argv: str):
    out, err = io.StringIO(), io.StringIO()
    code = await run(config_from_args(list(argv)), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class TestConfigFromArgs:
    """Tests for argument parsing."""

    def test_angle(self):
        """angle flags land in RunConfig."""
        config = config_from_args(["angle", "--dim", "12", "--alpha2", "10", "--model", "exp", "--format", "json"])
        assert config.command == "angle"
        assert (config.dim, config.alpha2) == (12, 10.0)
        assert config.model is ModelChoice.EXP
        assert config.output_format is OutputFormat.JSON

    def test_m2_defaults_to_m1(self):
        """--m2 falls back to --m1."""
        config = config_from_args(["certify", "focal", "--g", "3", "--m1", "2"])
        assert (config.target, config.m1, config.m2) == ("focal", 2, 2)

    def test_jobs_from_env(self, monkeypatch):
        """CONE_CERTIFY_JOBS sets the default width."""
        monkeypatch.setenv("CONE_CERTIFY_JOBS", "3")
        config = config_from_args(["table"])
        assert config.jobs is None
        assert config.with_environment().jobs == 3

    def test_explicit_jobs_win_over_env(self, monkeypatch):
        """--jobs is kept when the environment also sets a width."""
        monkeypatch.setenv("CONE_CERTIFY_JOBS", "3")
        assert config_from_args(["table", "--jobs", "2"]).with_environment().jobs == 2

    @pytest.mark.parametrize("name,value", [("CONE_CERTIFY_TOL", "abc"), ("CONE_CERTIFY_JOBS", "many")])
    def test_malformed_env_is_input_error(self, name, value, monkeypatch, capsys):
        """A malformed environment variable exits 2 with a one-line message."""
        monkeypatch.setenv(name, value)
        code = main(["angle", "--dim", "12", "--alpha2", "10", "--model", "exp"])
        assert code == EXIT_INPUT_ERROR
        err = capsys.readouterr().err
        assert name in err
        assert "Traceback" not in err

    def test_verify_needs_mode(self):
        """verify without --all, --claim or --recheck is an argparse error."""
        with pytest.raises(SystemExit) as exc:
            config_from_args(["verify"])
        assert exc.value.code == 2


class TestAngleCommand:
    """Tests for `angle`."""

    async def test_exp_12_10(self):
        """theta_c(12, sqrt 10) prints below 9 degrees."""
        code, out, _ = await invoke("angle", "--dim", "12", "--alpha2", "10", "--model", "exp")
        assert code == EXIT_OK
        degrees = float(re.search(r"< ([0-9.]+) deg", out).group(1))
        assert degrees < 9.0

    async def test_json_deterministic(self):
        """Repeated runs give identical bytes."""
        first = await invoke("angle", "--dim", "5", "--spectrum", "1x1,-1x1,0x2", "--model", "exact", "--format", "json")
        second = await invoke("angle", "--dim", "5", "--spectrum", "1x1,-1x1,0x2", "--model", "exact", "--format", "json")
        assert first[0] == EXIT_OK
        assert first[1] == second[1]
        assert json.loads(first[1])["strategy"] == "exact"

    async def test_trace_csv(self):
        """--trace emits the profile as t,h CSV."""
        code, out, _ = await invoke("angle", "--dim", "12", "--alpha2", "10", "--model", "exp", "--trace")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "t,h"
        assert len(lines) > 2

    async def test_missing_alpha(self):
        """Neither --alpha2 nor --spectrum is an input error."""
        code, _, err = await invoke("angle", "--dim", "6")
        assert code == EXIT_INPUT_ERROR
        assert "--alpha2" in err

    async def test_looser_tolerance_refused(self):
        """--tol cannot loosen the integrator."""
        code, _, err = await invoke("angle", "--dim", "12", "--alpha2", "10", "--tol", "1e-6")
        assert code == EXIT_INPUT_ERROR
        assert "loosen" in err


class TestCertifyCommand:
    """Tests for `certify`."""

    async def test_g4_1_1_inconclusive(self):
        """(4, 1, 1) plus is Inconclusive with exit 1."""
        code, out, _ = await invoke("certify", "focal", "--g", "4", "--m1", "1", "--m2", "1", "--side", "plus")
        assert code == EXIT_INCONCLUSIVE
        assert out.startswith("Inconclusive")

    async def test_g4_1_2_minus(self):
        """(4, 1, 2) minus is Minimizing with exit 0."""
        code, out, _ = await invoke("certify", "focal", "--g", "4", "--m1", "1", "--m2", "2", "--side", "minus")
        assert code == EXIT_OK
        assert out.startswith("Minimizing")

    async def test_product_csv(self):
        """Product certificates render as one CSV row."""
        code, out, _ = await invoke("certify", "product", "--factors", "g=3,m=2; g=3,m=2", "--format", "csv")
        assert code == EXIT_OK
        header, row = out.splitlines()
        assert header.startswith("label,kind,cone_dim")
        assert row.endswith("Minimizing")

    async def test_bad_factors(self):
        """An empty factor list exits 2 with a diagnostic on stderr."""
        code, out, err = await invoke("certify", "product", "--factors", "")
        assert code == EXIT_INPUT_ERROR
        assert out == ""
        assert "empty factor list" in err

    async def test_invalid_family(self):
        """g = 5 exits 2."""
        code, _, err = await invoke("certify", "focal", "--g", "5", "--m1", "1")
        assert code == EXIT_INPUT_ERROR
        assert "g=5" in err

    async def test_union_needs_g4(self):
        """Unions of g = 3 families are refused."""
        code, _, _ = await invoke("certify", "union", "--g", "3", "--m1", "2")
        assert code == EXIT_INPUT_ERROR


class TestRecheckCommand:
    """Tests for `verify --recheck` on saved certificates."""

    async def test_saved_certificate_rechecks(self, tmp_path):
        """A certificate written with --out re-validates, also with --resolve."""
        path = tmp_path / "cert.json"
        code, out, err = await invoke(
            "certify", "focal", "--g", "3", "--m1", "2", "--format", "json", "--out", str(path)
        )
        assert code == EXIT_OK
        assert out == ""
        assert "Saved" in err
        assert json.loads(path.read_text(encoding="utf-8"))["verdict"] == "Minimizing"

        code, out, _ = await invoke("verify", "--recheck", str(path))
        assert code == EXIT_OK
        assert out.startswith("ok")
        code, _, _ = await invoke("verify", "--recheck", str(path), "--resolve")
        assert code == EXIT_OK

    async def test_tampered_certificate(self, tmp_path):
        """A flipped verdict fails the recheck with exit 1."""
        path = tmp_path / "cert.json"
        await invoke("certify", "focal", "--g", "4", "--m1", "1", "--m2", "2", "--format", "json", "--out", str(path))
        data = json.loads(path.read_text(encoding="utf-8"))
        data["verdict"] = "Inconclusive"
        path.write_text(json.dumps(data), encoding="utf-8")

        code, out, _ = await invoke("verify", "--recheck", str(path))
        assert code == EXIT_INCONCLUSIVE
        assert out.startswith("FAIL")

    async def test_store_round_trip(self, tmp_path):
        """certify --store saves under the certificate label; verify --recheck reads it back by name."""
        store = tmp_path / "runs"
        code, out, err = await invoke("certify", "focal", "--g", "3", "--m1", "2", "--store", str(store))
        assert code == EXIT_OK
        assert out.startswith("Minimizing")
        assert "Stored" in err
        assert (store / "certificates" / "g_3_2_2_plus.json").exists()

        code, out, _ = await invoke("verify", "--recheck", "g=3(2,2)plus", "--store", str(store))
        assert code == EXIT_OK
        assert out.startswith("ok")

    async def test_store_tampered_certificate(self, tmp_path):
        """A stored certificate edited on disk fails the recheck."""
        store = tmp_path / "runs"
        await invoke(
            "certify", "focal", "--g", "4", "--m1", "1", "--m2", "2", "--side", "minus",
            "--store", str(store), "--name", "minus",
        )
        path = store / "certificates" / "minus.json"
        data = json.loads(path.read_text(encoding="utf-8"))
        data["margin"] = data["margin"] + 0.1
        path.write_text(json.dumps(data), encoding="utf-8")

        code, out, _ = await invoke("verify", "--recheck", "minus", "--store", str(store))
        assert code == EXIT_INCONCLUSIVE
        assert out.startswith("FAIL")

    async def test_store_unknown_name(self, tmp_path):
        """An unknown name in the store exits 2."""
        code, _, err = await invoke("verify", "--recheck", "absent", "--store", str(tmp_path))
        assert code == EXIT_INPUT_ERROR
        assert "absent" in err

    async def test_claim_report_stored(self, tmp_path):
        """verify --claim --store writes the report under reports/."""
        code, _, err = await invoke("verify", "--claim", "two-block-grid", "--store", str(tmp_path), "--name", "grid")
        assert code == EXIT_OK
        report = json.loads((tmp_path / "reports" / "grid.json").read_text(encoding="utf-8"))
        assert report["passed"] is True
        assert "Stored" in err

    async def test_missing_file(self, tmp_path):
        """A missing file exits 2."""
        code, _, err = await invoke("verify", "--recheck", str(tmp_path / "absent.json"))
        assert code == EXIT_INPUT_ERROR
        assert "not found" in err


class TestOtherCommands:
    """Tests for classify, catalog, table and verify --claim."""

    async def test_classify_exception(self):
        """(4, 1, 6) is one of the two non-minimizing exceptions."""
        code, out, _ = await invoke("classify", "--g", "4", "--m1", "1", "--m2", "6", "--format", "json")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["minimizing"] is False
        assert data["n"] == 16

    async def test_classify_text(self):
        """(3, 4, 4) in S^13: text output states strict minimality."""
        code, out, _ = await invoke("classify", "--g", "3", "--m1", "4")
        assert code == EXIT_OK
        assert "area-minimizing (strictly)" in out

    async def test_catalog_csv(self):
        """The catalog lists both sides of every family."""
        code, out, _ = await invoke("catalog", "--max-sum", "3", "--format", "csv")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "g,m1,m2,side,dim,alpha_sq,provenance"
        assert "4,1,2,minus,4,2,OT-FKM" in lines

    async def test_table_widths_agree(self):
        """The table is identical for one and two workers."""
        args = ("table", "--dims", "3,4,6", "--alpha2s", "0,1,2", "--format", "csv")
        one = await invoke(*args, "--jobs", "1")
        two = await invoke(*args, "--jobs", "2")
        assert one[0] == EXIT_OK
        assert one[1] == two[1]
        assert one[1].splitlines()[1] == "0,***,***,***"

    async def test_verify_claim(self):
        """A single claim runs and reports progress on stderr."""
        code, out, err = await invoke("verify", "--claim", "two-block-grid")
        assert code == EXIT_OK
        assert "two-block-grid" in out
        assert err.startswith("pass two-block-grid")

    async def test_verify_unknown_claim(self):
        """Unknown claim ids exit 2."""
        code, _, err = await invoke("verify", "--claim", "nope")
        assert code == EXIT_INPUT_ERROR
        assert "nope" in err

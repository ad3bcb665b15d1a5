"""Tests for invariant findings and status icons."""

import io

import pytest

from jointri._icons import supports_unicode
from jointri.checks import CheckReport, Severity


@pytest.fixture
def report():
    r = CheckReport(subject="sample")
    r.require("RECON", 1e-12, 1e-9, "reconstruction residual")
    return r


class TestCheckReport:
    def test_passing_value_is_info(self, report):
        assert report.passed
        assert report.findings[0].severity == Severity.INFO

    def test_exceeding_value_is_error(self, report):
        report.require("UNIT-U", 1e-6, 1e-10, "unitarity of U")
        assert not report.passed
        assert [f.code for f in report.errors] == ["UNIT-U"]

    def test_nan_is_an_error(self):
        r = CheckReport(subject="nan")
        r.require("RECON", float("nan"), 1e-9, "residual")
        assert not r.passed

    def test_warning_does_not_fail(self, report):
        report.warn("MONTE-CARLO", "outside three standard errors")
        assert report.passed and len(report.warnings) == 1

    def test_max_violation(self, report):
        report.require("DIAG", 2e-9, 1e-9, "diagonal")
        assert report.max_violation == pytest.approx(2.0)

    def test_extend(self, report):
        other = CheckReport(subject="other")
        other.warn("X", "note")
        report.extend(other)
        assert len(report.findings) == 2

    def test_summary_and_dict(self, report):
        assert "INVARIANT CHECKS: sample" in report.summary()
        payload = report.to_dict()
        assert payload["passed"] is True
        assert payload["findings"][0]["code"] == "RECON"


class TestIcons:
    def test_ascii_stream(self, monkeypatch):
        monkeypatch.delenv("PYTHONIOENCODING", raising=False)
        stream = io.TextIOWrapper(io.BytesIO(), encoding="cp1252")
        assert not supports_unicode(stream)

    def test_utf8_stream(self, monkeypatch):
        monkeypatch.delenv("PYTHONIOENCODING", raising=False)
        assert supports_unicode(io.TextIOWrapper(io.BytesIO(), encoding="utf-8"))

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("PYTHONIOENCODING", "utf-8")
        assert supports_unicode(io.TextIOWrapper(io.BytesIO(), encoding="cp1252"))

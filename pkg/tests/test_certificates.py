"""Certificate assembly and canonical serialization."""

import orjson

from app.models.schemas import Certificate, CertificateStep
from app.services.certificate_builder import CertificateBuilder, summarize
from app.utils.serialization import (
    canonical_json,
    certificate_digest,
    certificate_to_json,
    certificate_to_text,
    sha256_digest,
)


def _cert(ok=True, claim="claim"):
    builder = CertificateBuilder(claim)
    builder.check("first", True, {"n": 1})
    builder.check("second", ok)
    return builder.build(extra="value")


class TestBuilder:
    def test_status_follows_steps(self):
        assert _cert().status == "pass"
        failed = _cert(ok=False)
        assert failed.status == "fail"
        assert [step.desc for step in failed.failed_steps] == ["second"]

    def test_metadata(self):
        cert = _cert()
        assert cert.metadata["extra"] == "value"
        assert set(cert.metadata["conventions"]) == {
            "twist_direction",
            "lk_convention",
            "cw_convention",
            "word_convention",
        }
        assert cert.metadata["digest"] == certificate_digest(cert)
        assert cert.metadata["timings"]["elapsed_ms"] >= 0

    def test_include_records_sub_verdict(self):
        builder = CertificateBuilder("outer")
        assert not builder.include(_cert(ok=False, claim="inner"))
        step = builder.steps[0]
        assert step.desc == "inner"
        assert step.witness["failed"] == ["second"]

    def test_summarize(self):
        summary = summarize("all", [_cert(), _cert(claim="other")])
        assert summary.passed
        assert [step.desc for step in summary.steps] == ["claim", "other"]
        assert not summarize("all", [_cert(), _cert(ok=False)]).passed


class TestSerialization:
    def test_canonical_json_sorts_keys(self):
        assert canonical_json({"b": 1, "a": [1, 2]}) == b'{"a":[1,2],"b":1}'

    def test_digest_ignores_timings(self):
        first, second = _cert(), _cert()
        assert first.metadata["digest"] == second.metadata["digest"]
        assert sha256_digest({"x": 1}) == sha256_digest({"x": 1})
        assert sha256_digest({"x": 1}) != sha256_digest({"x": 2})

    def test_json_schema(self):
        data = orjson.loads(certificate_to_json(_cert()))
        assert set(data) == {"claim", "status", "steps", "metadata"}
        assert data["steps"][0] == {"desc": "first", "ok": True, "witness": {"n": 1}}
        assert Certificate.model_validate(data).passed

    def test_text_report(self):
        text = certificate_to_text(_cert(ok=False))
        lines = text.splitlines()
        assert lines[0] == "[FAIL] claim"
        assert lines[1] == "  ok  first"
        assert lines[2] == "  BAD second"
        assert lines[3].startswith("  digest ")

    def test_step_model(self):
        step = CertificateStep(desc="d", ok=False)
        assert step.witness is None

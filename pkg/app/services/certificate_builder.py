import time
from typing import Any, Iterable, List, Optional

from app.core.config import settings
from app.core.logging import logger
from app.models.schemas import Certificate, CertificateStep
from app.utils.serialization import certificate_digest


class CertificateBuilder:
    """Collects checked steps for one claim and seals them into a Certificate."""

    def __init__(self, claim: str):
        self.claim = claim
        self.steps: List[CertificateStep] = []
        self._started = time.perf_counter()
        logger.info(f"Certificate started: {claim}")

    @property
    def ok(self) -> bool:
        return all(step.ok for step in self.steps)

    def check(self, desc: str, ok: bool, witness: Any = None) -> bool:
        ok = bool(ok)
        self.steps.append(CertificateStep(desc=desc, ok=ok, witness=witness))
        if ok:
            logger.debug(f"{self.claim}: {desc}")
        else:
            logger.warning(f"{self.claim}: check failed: {desc}")
        return ok

    def include(self, cert: Certificate, desc: Optional[str] = None) -> bool:
        """Record a sub-certificate's verdict as one step."""
        witness = {
            "claim": cert.claim,
            "steps": len(cert.steps),
            "failed": [step.desc for step in cert.failed_steps],
            "digest": cert.metadata.get("digest"),
        }
        return self.check(desc or cert.claim, cert.passed, witness)

    def extend(self, certs: Iterable[Certificate]) -> bool:
        return all([self.include(cert) for cert in certs])

    def build(self, **metadata: Any) -> Certificate:
        status = "pass" if self.ok else "fail"
        cert = Certificate(claim=self.claim, status=status, steps=self.steps)
        cert.metadata = {
            "conventions": settings.conventions(),
            **metadata,
            "digest": certificate_digest(cert),
            "timings": {"elapsed_ms": round((time.perf_counter() - self._started) * 1000, 3)},
        }
        logger.info(f"Certificate finished: {self.claim} -> {status}")
        return cert


def summarize(claim: str, certs: Iterable[Certificate]) -> Certificate:
    """Aggregate certificate whose steps are the given verdicts, in order."""
    builder = CertificateBuilder(claim)
    builder.extend(certs)
    return builder.build()

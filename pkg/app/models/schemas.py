from typing import List, Dict, Any, Optional, Literal
from pydantic import BaseModel, Field


class CertificateStep(BaseModel):
    """One checked predicate inside a certificate."""
    desc: str = Field(..., description="What was checked")
    ok: bool = Field(..., description="Whether the predicate holds")
    witness: Any = Field(None, description="Data supporting the verdict")


class Certificate(BaseModel):
    """Structured verification record."""
    claim: str = Field(..., description="Claim identifier, e.g. 'PMod(1,1,1) ≅ B4'")
    status: Literal["pass", "fail"] = Field(..., description="pass iff every step holds")
    steps: List[CertificateStep] = Field(default_factory=list, description="Checked steps in order")
    metadata: Dict[str, Any] = Field(default_factory=dict, description="Conventions, digest and timings")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def failed_steps(self) -> List[CertificateStep]:
        return [step for step in self.steps if not step.ok]


class CertificateBundle(BaseModel):
    """Several certificates and the aggregate verdict over them."""
    summary: Certificate
    certificates: List[Certificate] = Field(default_factory=list)


class VerifyRequest(BaseModel):
    """Request body for POST /verify/{target}."""
    g: Optional[int] = Field(None, ge=0, description="Genus (row target only)")
    b: Optional[int] = Field(None, ge=0, description="Boundary components (row target only)")
    n: Optional[int] = Field(None, ge=0, description="Punctures (row target only)")
    bound: Optional[int] = Field(None, ge=2, description="Genus-0 desk-scale bound on m+n")


class NormalFormRequest(BaseModel):
    """Request body for POST /normal-form."""
    group: str = Field(..., description="a3, b4, d4 or bN")
    word: str = Field(..., description="Word in the group's atoms; ( ... )^k allowed")


class NormalFormResponse(BaseModel):
    """Garside normal form of a word."""
    group: str
    atoms: List[str]
    word: str
    inf: int = Field(..., description="Exponent of the fundamental element")
    factors: List[List[int]] = Field(..., description="Simple factors as signed permutation tables")
    text: str = Field(..., description="Rendered normal form, e.g. 'Δ^1 · []'")
    delta_power: Optional[int] = Field(None, description="k when the word equals Δ^k")


class HealthCheckResponse(BaseModel):
    """Response model for health check endpoint."""
    status: str = Field(..., description="Service status")
    timestamp: str = Field(..., description="Response timestamp")
    version: str = Field(..., description="API version")
    dependencies: Dict[str, str] = Field(..., description="Status of dependencies")


class ErrorResponse(BaseModel):
    """Response model for errors."""
    error: str = Field(..., description="Error type")
    message: str = Field(..., description="Error message")
    details: Optional[Dict[str, Any]] = Field(None, description="Additional error details")

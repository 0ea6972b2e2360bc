from fastapi import APIRouter, HTTPException, status

from app.algebra.coxeter import system_by_name
from app.algebra.garside import delta_power_of, normal_form
from app.algebra.mcg import SurfaceTriple
from app.core.exceptions import GroupCertError
from app.core.logging import logger
from app.models.schemas import (
    Certificate,
    ErrorResponse,
    NormalFormRequest,
    NormalFormResponse,
    VerifyRequest,
)
from app.services.verify_service import verify_service
from app.utils.word_sugar import parse_sugared

router = APIRouter()

VERIFY_TARGETS = ("all", "row", "eq4", "eq5", "stars", "centers", "ht")


@router.post(
    "/verify/{target}",
    response_model=Certificate,
    responses={
        400: {"model": ErrorResponse},
        404: {"model": ErrorResponse},
        500: {"model": ErrorResponse}
    },
    summary="Build a certificate",
    description="Run one verification target (all, row, eq4, eq5, stars, centers, ht) and return its certificate."
)
def verify(target: str, request: VerifyRequest = VerifyRequest()):
    """
    Build the certificate for `target`; `row` needs g, b and n in the body.
    """
    if target not in VERIFY_TARGETS:
        raise HTTPException(
            status_code=status.HTTP_404_NOT_FOUND,
            detail=f"Unknown verification target {target!r}; expected one of {', '.join(VERIFY_TARGETS)}"
        )
    try:
        logger.info(f"Verification requested: {target}")
        if target == "all":
            return verify_service.verify_all(request.bound)
        if target == "row":
            if request.g is None or request.b is None or request.n is None:
                raise HTTPException(
                    status_code=status.HTTP_400_BAD_REQUEST,
                    detail="Row verification needs g, b and n"
                )
            return verify_service.verify_row(SurfaceTriple(request.g, request.b, request.n), request.bound)
        if target in ("eq4", "eq5"):
            return verify_service.verify_word_identities((target,))
        if target == "stars":
            return verify_service.verify_star_identities()
        if target == "centers":
            return verify_service.verify_center_claims()
        return verify_service.hamidi_tehrani()

    except HTTPException:
        raise
    except GroupCertError as e:
        logger.warning(f"Verification input rejected: {str(e)}")
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    except Exception as e:
        logger.error(f"Verification failed unexpectedly: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Verification failed: {str(e)}"
        )


@router.post(
    "/normal-form",
    response_model=NormalFormResponse,
    responses={
        400: {"model": ErrorResponse},
        500: {"model": ErrorResponse}
    },
    summary="Garside normal form",
    description="Left-greedy normal form of a word in B_n or A(D4)."
)
def compute_normal_form(request: NormalFormRequest):
    try:
        system = system_by_name(request.group)
        w = parse_sugared(request.word, system.atoms)
        nf = normal_form(system, w)
        return NormalFormResponse(
            group=request.group,
            atoms=list(system.atoms),
            word=str(w),
            inf=nf.inf,
            factors=[list(f) for f in nf.factors],
            text=nf.render(system),
            delta_power=delta_power_of(system, w),
        )
    except GroupCertError as e:
        logger.warning(f"Normal form input rejected: {str(e)}")
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    except Exception as e:
        logger.error(f"Normal form failed unexpectedly: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Normal form failed: {str(e)}"
        )

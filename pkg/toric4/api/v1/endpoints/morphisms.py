from fastapi import APIRouter

from toric4.api.v1.errors import to_http
from toric4.schemas.morphism import MorphismRequest
from toric4.schemas.utils import Response
from toric4.services import charpair, reports

router = APIRouter(prefix="/morphisms", tags=["morphisms"])


@router.post("/lift", response_model=Response)
async def lift_morphism(request: MorphismRequest):
    """Lifting of the first morphism in the request."""
    try:
        report = reports.lift_report(charpair.parse_pair(request.edges), request.morphisms[0])
    except Exception as exc:
        raise to_http(exc)
    return Response.report("lift", reports.jsonable(report))


@router.post("/morph", response_model=Response)
async def morph_pipeline(request: MorphismRequest):
    try:
        pair = charpair.promote(charpair.parse_degenerate(request.edges))
        report = reports.morph_report(pair, request.morphisms)
    except Exception as exc:
        raise to_http(exc)
    return Response.report("morph", reports.jsonable(report))

from fastapi import APIRouter, HTTPException

from toric4.api.v1.errors import to_http
from toric4.models.ring import RingSpec
from toric4.schemas.pair import CupRequest, GroupsRequest, NormalizeRequest, OracleRequest, PairDocument
from toric4.schemas.utils import Response
from toric4.services import charpair, reports

router = APIRouter(prefix="/pairs", tags=["pairs"])


@router.post("/validate", response_model=Response)
async def validate_pair(request: PairDocument):
    try:
        report, ok = reports.validate_report(request.edges)
    except Exception as exc:
        raise to_http(exc)
    return Response(
        message="valid characteristic pair" if ok else "not a characteristic pair",
        status="success" if ok else "failure",
        data=reports.jsonable(report),
    )


@router.post("/groups", response_model=Response)
async def cohomology_groups(request: GroupsRequest):
    try:
        report = reports.groups_report(charpair.parse_pair(request.edges), RingSpec.parse(request.ring))
    except Exception as exc:
        raise to_http(exc)
    return Response.report("groups", reports.jsonable(report))


@router.post("/cup", response_model=Response)
async def cup_products(request: CupRequest):
    try:
        pair = charpair.parse_pair(request.edges)
        report = reports.cup_report(pair, RingSpec.parse(request.ring), request.theorem, request.index)
    except Exception as exc:
        raise to_http(exc)
    return Response.report("cup", reports.jsonable(report))


@router.post("/oracle", response_model=Response)
async def oracle_check(request: OracleRequest):
    try:
        report = reports.oracle_report(charpair.parse_pair(request.edges), request.index)
    except Exception as exc:
        raise to_http(exc)
    if not report["agree"]:
        raise HTTPException(status_code=500, detail=reports.jsonable(report))
    return Response.report("oracle", reports.jsonable(report))


@router.post("/normalize", response_model=Response)
async def normalize_pair(request: NormalizeRequest):
    try:
        pair = charpair.parse_pair(request.edges)
        report = reports.normalize_report(pair, request.flavor, request.index, request.shear)
    except Exception as exc:
        raise to_http(exc)
    return Response.report("normalize", reports.jsonable(report))

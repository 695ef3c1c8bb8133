from fastapi import HTTPException, status
from loguru import logger

from toric4.core.exceptions import PreconditionError, ToricError
from toric4.services.reports import jsonable


def to_http(exc: Exception) -> HTTPException:
    """Map library errors onto HTTP status codes: input 400, precondition 422, anything else 500."""
    if isinstance(exc, PreconditionError):
        return HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=jsonable(exc.to_dict()))
    if isinstance(exc, ToricError):
        return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=jsonable(exc.to_dict()))
    if isinstance(exc, ValueError):
        return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(exc))
    logger.error(f"unexpected error: {exc!r}")
    return HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail="Internal server error")

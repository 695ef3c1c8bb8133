from fastapi import FastAPI

from toric4.api.v1.endpoints import morphisms, pairs
from toric4.core.config import settings
from toric4.core.logging import configure_logging

configure_logging("DEBUG" if settings.DEBUG else None)

app = FastAPI(title=settings.APP_NAME)

app.include_router(router=pairs.router)
app.include_router(router=morphisms.router)


@app.get("/")
async def root():
    return {"message": f"{settings.APP_NAME} is running"}

from typing import Literal, Optional

from pydantic import BaseModel


class Response(BaseModel):
    """Envelope returned by every HTTP endpoint; ``data`` holds the same report the CLI prints."""

    message: Optional[str] = None
    status: Literal["success", "failure"] = "success"
    data: Optional[dict] = None

    @classmethod
    def report(cls, command: str, data: dict) -> "Response":
        return cls(message=f"{command} completed", data=data)

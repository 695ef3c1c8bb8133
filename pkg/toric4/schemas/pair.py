from typing import List, Literal, Optional

from pydantic import BaseModel, StrictInt, field_validator


class PairDocument(BaseModel):
    edges: List[List[StrictInt]]

    @field_validator("edges")
    @classmethod
    def check_edges(cls, edges):
        for i, edge in enumerate(edges, start=1):
            if len(edge) != 2:
                raise ValueError(f"edge {i} must have exactly two integer entries")
        return edges


class GroupsRequest(PairDocument):
    ring: str = "z"


class CupRequest(PairDocument):
    ring: str = "z"
    theorem: Literal["auto", "smooth", "triangle", "pid"] = "auto"
    index: Optional[StrictInt] = None


class OracleRequest(PairDocument):
    index: Optional[StrictInt] = None


class NormalizeRequest(PairDocument):
    flavor: Literal["auto", "smooth", "half"] = "auto"
    index: Optional[StrictInt] = None
    shear: Optional[StrictInt] = None

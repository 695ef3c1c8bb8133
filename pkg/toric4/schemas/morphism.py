from typing import List, Literal, Optional

from pydantic import BaseModel, Field, StrictInt, model_validator

from toric4.models.pair import UnimodularMatrix2


class MorphismDocument(BaseModel):
    type: Literal["contract", "bend", "rescale", "basis_change", "custom"]
    rho: Optional[List[StrictInt]] = None
    i: Optional[StrictInt] = None
    U: Optional[List[List[StrictInt]]] = None
    psi: Optional[List[List[StrictInt]]] = None

    @model_validator(mode="after")
    def check_fields(self):
        required = {
            "contract": ["rho"],
            "bend": ["i"],
            "rescale": ["i"],
            "basis_change": ["U"],
            "custom": ["rho", "psi"],
        }[self.type]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"morphism of type '{self.type}' needs {', '.join(missing)}")
        for name in ("U", "psi"):
            rows = getattr(self, name)
            if rows is not None and (len(rows) != 2 or any(len(row) != 2 for row in rows)):
                raise ValueError(f"{name} must be a 2x2 integer matrix")
        return self

    def unimodular(self) -> UnimodularMatrix2:
        return UnimodularMatrix2.from_rows(self.U)


class MorphismRequest(BaseModel):
    edges: List[List[StrictInt]]
    morphisms: List[MorphismDocument] = Field(min_length=1)

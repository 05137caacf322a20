from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from gaborbench.models.window import WindowKind


class FrameSetPayload(BaseModel):
    M: int = Field(..., ge=1)
    points: List[Tuple[int, int]]


class WindowPayload(BaseModel):
    M: int = Field(..., ge=1)
    kind: WindowKind
    seed: Optional[int] = None
    re: List[float]
    im: List[float]

    @model_validator(mode="after")
    def lengths_match(self):
        if len(self.re) != self.M or len(self.im) != self.M:
            raise ValueError("re and im must both have length M")
        return self

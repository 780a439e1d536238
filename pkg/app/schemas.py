from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from app.solver.rootsys import Variant


def rational(value) -> str:
    """Fraction -> 'p/q', always with a denominator."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


# -- requests -------------------------------------------------------------

class ElementRequest(BaseModel):
    type: str = Field(..., description="Type letter ('A') or full spec ('A5')")
    rank: Optional[int] = Field(None, ge=1, description="Rank, unless given in `type`")
    weight: int = Field(..., ge=1, description="Index of the (co)minuscule fundamental weight")
    variant: Variant = Variant.MINUSCULE
    word: str = Field("", description="Comma-separated reduced word, e.g. '3,1,2,5,4,3'")
    ordering: Optional[str] = Field(None, description="Comma-separated peak ordering")
    max_peaks: Optional[int] = Field(None, ge=1)


class PeelRequest(ElementRequest):
    divisor_class: str = Field(..., description="Comma-separated rationals over the peaks, e.g. '2,1/2,0'")


class VerifyRequest(BaseModel):
    type: str
    rank: Optional[int] = Field(None, ge=1)
    weight: int = Field(..., ge=1)
    variant: Variant = Variant.MINUSCULE
    samples: Optional[int] = Field(None, ge=0)
    seed: Optional[int] = Field(None, ge=0)


# -- responses ------------------------------------------------------------

class WeightsOut(BaseModel):
    root_system: str
    cartan: List[List[int]]
    highest_root: List[str]
    minuscule: List[int]
    cominuscule: List[int]


class ElementsOut(BaseModel):
    root_system: str
    weight: int
    variant: Variant
    count: int
    elements: List[List[int]]


class ElementOut(BaseModel):
    """A Schubert variety: root system, weight and a reduced word."""
    type: str
    rank: int
    weight: int
    variant: Variant
    word: List[int]


class VertexOut(BaseModel):
    index: int
    color: int
    height: int
    peak: bool
    hole: bool
    # next and previous vertex of the same color
    successor: Optional[int]
    predecessor: Optional[int]


class QuiverOut(ElementOut):
    vertices: List[VertexOut]
    arrows: List[List[int]]
    canonical_word: List[int]
    peaks: List[int]
    holes: List[int]


class DecompositionOut(BaseModel):
    orderings: List[List[int]]
    parts: List[List[int]]
    words: List[List[int]]
    neat: bool
    smooth: bool
    ih_small: bool
    ordering: List[int]
    minimal_vertices: List[int]


class ClassificationOut(BaseModel):
    element: ElementOut
    decompositions: List[DecompositionOut]
    counts: Dict[str, int]
    peaks: List[int]
    heights: List[int]
    holes: List[int]


class ConeOut(BaseModel):
    basis: str
    peaks: List[int]
    generators: List[List[str]]
    simplicial: bool = True


class NefConeOut(BaseModel):
    ordering: List[int]
    parts: List[List[int]]
    minimal_vertices: List[int]
    cone: ConeOut


class ConesOut(BaseModel):
    root_system: str
    weight: int
    variant: Variant
    word: List[int]
    effective: ConeOut
    nef: List[NefConeOut]


class PeelStepOut(BaseModel):
    vertex: int
    coefficient: str


class PeelOut(BaseModel):
    word: List[int]
    divisor_class: List[str]
    ordering: List[int]
    parts: List[List[int]]
    minimal_vertices: List[int]
    steps: List[PeelStepOut]


class CheckOut(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class SuiteOut(BaseModel):
    root_system: str
    weight: int
    variant: Variant
    elements: int
    ok: bool
    checks: List[CheckOut]


class JobOut(BaseModel):
    job_id: str
    status: Optional[str]
    created_at: Optional[float]
    updated_at: Optional[float]
    payload: Dict[str, Any]
    result: Optional[Dict[str, Any]] = None

# app/service.py
"""Payload builders shared by the CLI and the HTTP routes."""
import logging
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from app.errors import InputError
from app.schemas import (
    CheckOut,
    ClassificationOut,
    ConeOut,
    ConesOut,
    DecompositionOut,
    ElementOut,
    ElementsOut,
    NefConeOut,
    PeelOut,
    PeelStepOut,
    QuiverOut,
    SuiteOut,
    VertexOut,
    WeightsOut,
    rational,
)
from app.solver.decomp import ClassificationReport, decompose, enumerate_decompositions
from app.solver.divisors import ConeDescription, effective_cone, nef_cone, peel
from app.solver.quiver import MinusculeQuiver, build_quiver, canonical_word, heights, holes, peaks
from app.solver.rootsys import (
    TYPE_RE,
    RootSystemData,
    Variant,
    build_root_system,
    cominuscule_weights,
    highest_root,
    minuscule_weights,
    parse_type,
    root_coefficients,
)
from app.solver.verify import SuiteReport
from app.solver.weyl import enumerate_minuscule, parse_word, require_reduced, require_weight

logger = logging.getLogger(__name__)


def resolve_root_system(type_text: str, rank: Optional[int] = None) -> RootSystemData:
    """'A5', or 'A' together with rank=5."""
    text = (type_text or "").strip()
    if TYPE_RE.match(text):
        letter, parsed_rank = parse_type(text)
        if rank is not None and rank != parsed_rank:
            raise InputError(f"type '{text}' conflicts with rank {rank}")
        return build_root_system(letter, parsed_rank)
    if rank is None:
        raise InputError(f"type '{text}' needs a rank")
    return build_root_system(text, rank)


def parse_ordering(text: Optional[str]) -> Optional[Tuple[int, ...]]:
    if text is None or not text.strip():
        return None
    return parse_word(text)


def parse_class(text: str) -> Tuple[Fraction, ...]:
    """'2,1/2,0' -> (2, 1/2, 0)."""
    stripped = (text or "").strip().strip("[]()")
    if not stripped:
        return ()
    try:
        return tuple(Fraction(tok.strip()) for tok in stripped.split(","))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"invalid divisor class '{text}': expected comma-separated rationals")


def load_quiver(type_text: str, rank: Optional[int], weight: int, variant: Variant, word: str) -> MinusculeQuiver:
    rs = resolve_root_system(type_text, rank)
    variant = Variant(variant)
    require_weight(rs, weight, variant)
    parsed = require_reduced(rs, parse_word(word))
    return build_quiver(rs, parsed, weight, variant)


# -- payloads --------------------------------------------------------------

def weights_payload(rs: RootSystemData) -> WeightsOut:
    return WeightsOut(
        root_system=rs.name,
        cartan=[list(row) for row in rs.cartan],
        highest_root=[rational(c) for c in root_coefficients(rs, highest_root(rs))],
        minuscule=sorted(minuscule_weights(rs)),
        cominuscule=sorted(cominuscule_weights(rs)),
    )


def elements_payload(rs: RootSystemData, weight: int, variant: Variant) -> ElementsOut:
    elements = enumerate_minuscule(rs, weight, variant)
    return ElementsOut(
        root_system=rs.name,
        weight=weight,
        variant=Variant(variant),
        count=len(elements),
        elements=[list(w.word) for w in elements],
    )


def element_payload(q: MinusculeQuiver) -> ElementOut:
    return ElementOut(
        type=q.rs.type_letter,
        rank=q.rs.rank,
        weight=q.weight,
        variant=q.variant,
        word=list(q.word),
    )


def quiver_payload(q: MinusculeQuiver) -> QuiverOut:
    h = heights(q)
    tops, gaps = peaks(q), holes(q)
    return QuiverOut(
        **element_payload(q).model_dump(),
        vertices=[
            VertexOut(
                index=v,
                color=q.color(v),
                height=h[v],
                peak=v in tops,
                hole=v in gaps,
                successor=q.successor(v),
                predecessor=q.predecessor(v),
            )
            for v in q.vertices
        ],
        arrows=[[a, b] for a, b in sorted(q.arrows)],
        canonical_word=list(canonical_word(q)),
        peaks=sorted(tops),
        holes=sorted(gaps),
    )


def classification_payload(report: ClassificationReport) -> ClassificationOut:
    q = report.base
    h = heights(q)
    return ClassificationOut(
        element=element_payload(q),
        decompositions=[
            DecompositionOut(
                orderings=[list(o) for o in d.orderings],
                parts=[list(p) for p in d.parts],
                words=[list(w) for w in d.part_words],
                neat=d.neat,
                smooth=d.smooth,
                ih_small=d.ih_small,
                ordering=list(d.ordering),
                minimal_vertices=list(d.minimal_vertices),
            )
            for d in report.decompositions
        ],
        counts=report.counts,
        peaks=sorted(peaks(q)),
        heights=[h[v] for v in q.vertices],
        holes=sorted(holes(q)),
    )


def cone_payload(cone: ConeDescription) -> ConeOut:
    return ConeOut(
        basis=cone.basis.value,
        peaks=list(cone.peaks),
        generators=[[rational(c) for c in g.coords] for g in cone.generators],
        simplicial=cone.simplicial,
    )


def cones_payload(q: MinusculeQuiver, ordering: Optional[Sequence[int]] = None,
                  max_peaks: Optional[int] = None) -> ConesOut:
    if ordering is not None:
        decompositions = [decompose(q, ordering)]
    else:
        decompositions = enumerate_decompositions(q, max_peaks)
    return ConesOut(
        root_system=q.rs.name,
        weight=q.weight,
        variant=q.variant,
        word=list(q.word),
        effective=cone_payload(effective_cone(q)),
        nef=[
            NefConeOut(
                ordering=list(d.ordering),
                parts=[list(p) for p in d.parts],
                minimal_vertices=list(d.minimal_vertices),
                cone=cone_payload(nef_cone(d)),
            )
            for d in decompositions
        ],
    )


def peel_payload(q: MinusculeQuiver, divisor_class: Sequence[Fraction]) -> PeelOut:
    trace = peel(q, divisor_class)
    return PeelOut(
        word=list(q.word),
        divisor_class=[rational(c) for c in divisor_class],
        ordering=list(trace.ordering),
        parts=[list(p) for p in trace.parts],
        minimal_vertices=list(trace.minimal_vertices),
        steps=[PeelStepOut(vertex=v, coefficient=rational(mu)) for v, mu in trace.steps],
    )


def suite_payload(report: SuiteReport) -> SuiteOut:
    return SuiteOut(
        root_system=report.root_system,
        weight=report.weight,
        variant=report.variant,
        elements=report.elements,
        ok=report.ok,
        checks=[CheckOut(name=c.name, passed=c.passed, detail=c.detail) for c in report.checks],
    )

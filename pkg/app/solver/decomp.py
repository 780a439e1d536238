# app/solver/decomp.py
"""
Peak decompositions of a quiver and the classification of Q-factorializations
(one per distinct decomposition) and IH-small resolutions (neat and smooth).
"""
import itertools
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from app.config import get_settings
from app.errors import InputError, InvariantViolation, ResourceLimitError
from app.solver.quiver import MinusculeQuiver, heights, holes, induced_subquiver, peaks
from app.solver.weyl import Word, is_reduced

logger = logging.getLogger(__name__)

Part = Tuple[int, ...]


def _peaks_within(q: MinusculeQuiver, within: FrozenSet[int]) -> FrozenSet[int]:
    return frozenset(v for v in within if not any(u in within for u in q.graph.predecessors(v)))


def _sinks_within(q: MinusculeQuiver, within: FrozenSet[int]) -> FrozenSet[int]:
    return frozenset(v for v in within if not any(u in within for u in q.graph.successors(v)))


def _split(q: MinusculeQuiver, within: FrozenSet[int], p: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    tops = _peaks_within(q, within)
    if p not in tops:
        raise InputError(f"vertex {p} is not a peak of {sorted(within)}")
    remainder = frozenset()
    for other in tops - {p}:
        remainder |= q.down_set(other)
    return within - remainder, remainder


def split_at_peak(q: MinusculeQuiver, p: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """(Q_w(p), hat Q_w(p)): the part owned by p and everything below another peak."""
    return _split(q, frozenset(q.vertices), p)


def _check_ordering(q: MinusculeQuiver, ordering: Sequence[int]) -> Tuple[int, ...]:
    ordering = tuple(ordering)
    if sorted(ordering) != sorted(peaks(q)):
        raise InputError(
            f"ordering {list(ordering)} is not a permutation of the peaks {sorted(peaks(q))}"
        )
    return ordering


def partition(q: MinusculeQuiver, ordering: Sequence[int]) -> Tuple[Tuple[Part, ...], Tuple[int, ...]]:
    """Iterated splits along the ordering: the parts and their minimal vertices."""
    ordering = _check_ordering(q, ordering)
    current = frozenset(q.vertices)
    parts: List[Part] = []
    minima: List[int] = []
    for p in ordering:
        part, current = _split(q, current, p)
        part_peaks = _peaks_within(q, part)
        part_sinks = _sinks_within(q, part)
        if len(part_peaks) != 1 or len(part_sinks) != 1:
            raise InvariantViolation(
                f"part {sorted(part)} of {q.describe()} has peaks {sorted(part_peaks)} "
                f"and minimal vertices {sorted(part_sinks)}"
            )
        parts.append(tuple(sorted(part)))
        minima.append(next(iter(part_sinks)))
    if current:
        raise InvariantViolation(f"vertices {sorted(current)} left over after splitting {q.describe()}")
    return tuple(parts), tuple(minima)


@dataclass(frozen=True)
class PeakDecomposition:
    base: MinusculeQuiver
    orderings: Tuple[Tuple[int, ...], ...]
    parts: Tuple[Part, ...]
    part_words: Tuple[Word, ...]
    minimal_vertices: Tuple[int, ...]
    neat: bool
    smooth: bool

    @property
    def ordering(self) -> Tuple[int, ...]:
        return self.orderings[0]

    @property
    def key(self) -> Tuple[Part, ...]:
        return self.parts

    @property
    def ih_small(self) -> bool:
        return self.neat and self.smooth


def part_quiver(d: PeakDecomposition, t: int) -> MinusculeQuiver:
    return induced_subquiver(d.base, d.parts[t])[0]


def _part_is_smooth(q: MinusculeQuiver, part: Part) -> bool:
    sub, _ = induced_subquiver(q, part)
    return not holes(sub)


def _neat(q: MinusculeQuiver, ordering: Sequence[int]) -> bool:
    h = heights(q)
    return all(h[a] <= h[b] for a, b in zip(ordering, ordering[1:]))


def decompose(q: MinusculeQuiver, ordering: Sequence[int]) -> PeakDecomposition:
    ordering = _check_ordering(q, ordering)
    parts, minima = partition(q, ordering)
    words = tuple(tuple(q.color(v) for v in part) for part in parts)
    if sum(len(w) for w in words) != len(q):
        raise InvariantViolation(f"part lengths of {q.describe()} do not add up to l(w)")
    for w in words:
        if not is_reduced(q.rs, w):
            raise InvariantViolation(f"part word {list(w)} of {q.describe()} is not reduced")
    return PeakDecomposition(
        base=q,
        orderings=(ordering,),
        parts=parts,
        part_words=words,
        minimal_vertices=minima,
        neat=_neat(q, ordering),
        smooth=all(_part_is_smooth(q, part) for part in parts),
    )


def is_neat(d: PeakDecomposition) -> bool:
    return _neat(d.base, d.ordering)


def is_smooth(d: PeakDecomposition) -> bool:
    return all(_part_is_smooth(d.base, part) for part in d.parts)


def enumerate_decompositions(q: MinusculeQuiver, max_peaks: Optional[int] = None) -> List[PeakDecomposition]:
    bound = max_peaks if max_peaks is not None else get_settings().max_peaks
    tops = sorted(peaks(q))
    if len(tops) > bound:
        raise ResourceLimitError(f"{q.describe()} has {len(tops)} peaks, above the bound {bound}")

    found: Dict[Tuple[Part, ...], PeakDecomposition] = {}
    for ordering in itertools.permutations(tops):
        parts, _ = partition(q, ordering)
        if parts in found:
            known = found[parts]
            found[parts] = replace(known, orderings=known.orderings + (ordering,))
            continue
        found[parts] = decompose(q, ordering)
    result = [found[key] for key in sorted(found)]
    logger.debug(
        "%s: %d orderings, %d distinct decompositions",
        q.describe(), math.factorial(len(tops)), len(result),
    )
    return result


@dataclass(frozen=True)
class ClassificationReport:
    base: MinusculeQuiver
    decompositions: Tuple[PeakDecomposition, ...] = field(default_factory=tuple)

    @property
    def qfact(self) -> int:
        return len(self.decompositions)

    @property
    def ih_small(self) -> int:
        return sum(1 for d in self.decompositions if d.ih_small)

    @property
    def counts(self) -> Dict[str, int]:
        return {
            "qfact": self.qfact,
            "ih_small": self.ih_small,
            "neat": sum(1 for d in self.decompositions if d.neat),
            "smooth": sum(1 for d in self.decompositions if d.smooth),
        }


def classify(q: MinusculeQuiver, max_peaks: Optional[int] = None) -> ClassificationReport:
    report = ClassificationReport(base=q, decompositions=tuple(enumerate_decompositions(q, max_peaks)))
    logger.info("%s: %d Q-factorializations, %d IH-small", q.describe(), report.qfact, report.ih_small)
    return report

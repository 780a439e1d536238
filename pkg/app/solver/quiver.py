# app/solver/quiver.py
"""
The quiver Q_w of a reduced word (vertices 1..r, colored by simple roots).

There is an arrow i -> j when <b_i^v, b_j> != 0 and i < j < s(i), s(i) being the
next occurrence of the color of i. The order generated by the arrows reads
i >= j ("i lies above j"), so peaks are sources and vertex r is the bottom.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from app.errors import InputError, InvariantViolation
from app.solver.rootsys import RootSystemData, Variant
from app.solver.weyl import Word, check_word, format_word, is_minuscule_element

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinusculeQuiver:
    rs: RootSystemData
    variant: Variant
    weight: int
    word: Word

    # -- combinatorial data read off the word --------------------------

    def __len__(self) -> int:
        return len(self.word)

    @property
    def vertices(self) -> range:
        return range(1, len(self.word) + 1)

    def color(self, i: int) -> int:
        return self.word[i - 1]

    def pairing(self, i: int, j: int) -> int:
        """<b_i^v, b_j>, read in the dual system for the cominuscule variant."""
        return self.rs.pairing_in(self.color(i), self.color(j), self.variant)

    @cached_property
    def successors(self) -> Dict[int, Optional[int]]:
        nxt: Dict[int, Optional[int]] = {}
        last_seen: Dict[int, int] = {}
        for i in reversed(self.vertices):
            nxt[i] = last_seen.get(self.color(i))
            last_seen[self.color(i)] = i
        return nxt

    @cached_property
    def predecessors(self) -> Dict[int, Optional[int]]:
        prev: Dict[int, Optional[int]] = {}
        last_seen: Dict[int, int] = {}
        for i in self.vertices:
            prev[i] = last_seen.get(self.color(i))
            last_seen[self.color(i)] = i
        return prev

    def successor(self, i: int) -> Optional[int]:
        return self.successors[i]

    def predecessor(self, i: int) -> Optional[int]:
        return self.predecessors[i]

    @cached_property
    def arrows(self) -> FrozenSet[Tuple[int, int]]:
        out = set()
        r = len(self.word)
        for i in self.vertices:
            stop = self.successor(i) or r + 1
            for j in range(i + 1, stop):
                if self.pairing(i, j) != 0:
                    out.add((i, j))
        return frozenset(out)

    @cached_property
    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.arrows)
        return g

    # -- order ---------------------------------------------------------

    def down_set(self, v: int) -> FrozenSet[int]:
        return frozenset(nx.descendants(self.graph, v)) | {v}

    def up_set(self, v: int) -> FrozenSet[int]:
        return frozenset(nx.ancestors(self.graph, v)) | {v}

    def is_above(self, i: int, j: int) -> bool:
        """i >= j in the quiver order."""
        return i == j or nx.has_path(self.graph, i, j)

    def targets(self, i: int) -> List[int]:
        return sorted(self.graph.successors(i))

    def minimal_vertices(self) -> FrozenSet[int]:
        return frozenset(v for v in self.vertices if self.graph.out_degree(v) == 0)

    def describe(self) -> str:
        return f"{self.rs.name} {self.variant.value} omega_{self.weight} word [{format_word(self.word)}]"


def quiver_from_word(rs: RootSystemData, word: Sequence[int], weight: int, variant: Variant) -> MinusculeQuiver:
    """Unchecked construction; any word over the simple indices."""
    return MinusculeQuiver(rs=rs, variant=Variant(variant), weight=rs.check_index(weight), word=check_word(rs, word))


def build_quiver(rs: RootSystemData, word: Sequence[int], weight: int, variant: Variant) -> MinusculeQuiver:
    variant = Variant(variant)
    if not is_minuscule_element(rs, word, weight, variant):
        raise InputError(
            f"word {format_word(word)} is not {variant.value} for omega_{weight} in {rs.name}: "
            "not a minimal coset representative"
        )
    q = quiver_from_word(rs, word, weight, variant)
    logger.debug("built quiver %s with %d arrows", q.describe(), len(q.arrows))
    return q


def peaks(q: MinusculeQuiver) -> FrozenSet[int]:
    return frozenset(v for v in q.vertices if q.graph.in_degree(v) == 0)


def heights(q: MinusculeQuiver) -> Dict[int, int]:
    """h(i) = 1 + length of the longest arrow path from i down to the bottom vertex."""
    h: Dict[int, int] = {}
    # arrows always increase the index
    for i in reversed(q.vertices):
        h[i] = 1 + max((h[j] for j in q.graph.successors(i)), default=0)
    return h


def check_minuscule_shape(q: MinusculeQuiver) -> bool:
    """
    Shape conditions on the colored quiver of a word:
    the bottom color is the weight; a vertex without successor has exactly one
    target with pairing -1; a vertex with successor has two targets with
    pairing -1 or one target with pairing -2.
    """
    r = len(q)
    if r == 0:
        return True
    if q.color(r) != q.weight:
        return False
    for i in range(1, r):
        targets = q.targets(i)
        values = sorted(q.pairing(i, k) for k in targets)
        if q.successor(i) is None:
            if values != [-1]:
                return False
        elif values not in ([-1, -1], [-2]):
            return False
    return True


def _always_smooth(q: MinusculeQuiver) -> bool:
    # minuscule type C Schubert varieties are projective spaces
    return q.rs.type_letter == "C" and q.variant == Variant.MINUSCULE


def is_hole(q: MinusculeQuiver, h: int) -> bool:
    if q.predecessor(h) is not None:
        return False
    glued = quiver_from_word(q.rs, (q.color(h),) + q.word, q.weight, q.variant)
    return check_minuscule_shape(glued)


def holes(q: MinusculeQuiver) -> FrozenSet[int]:
    """Vertices without predecessor whose color can be glued on top of Q_w."""
    if _always_smooth(q):
        return frozenset()
    return frozenset(h for h in q.vertices if is_hole(q, h))


def remove_maximal_vertex(q: MinusculeQuiver, v: int) -> MinusculeQuiver:
    if v not in peaks(q):
        raise InputError(f"vertex {v} is not a peak of {q.describe()}")
    word = q.word[: v - 1] + q.word[v:]
    smaller = quiver_from_word(q.rs, word, q.weight, q.variant)
    if not check_minuscule_shape(smaller):
        raise InvariantViolation(f"removing peak {v} from {q.describe()} broke the quiver shape")
    return smaller


def canonical_word(q: MinusculeQuiver) -> Word:
    """Lexicographically smallest color sequence over linear extensions, larger vertices first."""
    order = nx.lexicographical_topological_sort(q.graph, key=lambda v: (q.color(v), v))
    return tuple(q.color(v) for v in order)


def induced_subquiver(q: MinusculeQuiver, vertices: Iterable[int]) -> Tuple[MinusculeQuiver, Dict[int, int]]:
    """
    Quiver of the word read off `vertices` in ascending order; its weight is the
    color of its last vertex. Returns the part quiver and the map from its
    vertices back to vertices of q.
    """
    chosen = sorted(vertices)
    if not chosen:
        raise InputError("cannot build the quiver of an empty vertex set")
    back = {k + 1: v for k, v in enumerate(chosen)}
    word = tuple(q.color(v) for v in chosen)
    part = quiver_from_word(q.rs, word, word[-1], q.variant)
    expected = {(a, b) for (a, b) in q.arrows if a in back.values() and b in back.values()}
    mapped = {(back[a], back[b]) for (a, b) in part.arrows}
    if mapped != expected:
        raise InvariantViolation(f"part {chosen} of {q.describe()} is not an induced subquiver")
    return part, back

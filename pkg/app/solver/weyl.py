# app/solver/weyl.py
"""
Weyl group words and brute-force oracles.

Convention: position 1 of a word is the leftmost factor, w = s_{b_1} ... s_{b_r},
and w acts on the left, so the rightmost letter is applied first.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from app.config import get_settings
from app.errors import InputError, ResourceLimitError
from app.solver.rootsys import (
    RootSystemData,
    Variant,
    Vector,
    is_positive,
    pairing,
    simple_reflection,
    weights_for,
)

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]

# order of s_i s_j from the product of the two Cartan entries
_BRAID_ORDER = {0: 2, 1: 3, 2: 4, 3: 6}


@dataclass(frozen=True)
class WeylWord:
    rs: RootSystemData
    word: Word

    def __post_init__(self):
        check_word(self.rs, self.word)

    @classmethod
    def parse(cls, rs: RootSystemData, text: str) -> "WeylWord":
        return cls(rs, parse_word(text))

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return format_word(self.word)


def parse_word(text: str) -> Word:
    """'3,1,2' -> (3, 1, 2); blank text is the empty word."""
    if text is None:
        raise InputError("missing word")
    stripped = text.strip().strip("[]()")
    if not stripped:
        return ()
    try:
        return tuple(int(tok) for tok in stripped.replace(" ", "").split(",") if tok != "")
    except ValueError:
        raise InputError(f"invalid word '{text}': expected comma-separated 1-based indices")


def format_word(word: Sequence[int]) -> str:
    return ",".join(str(i) for i in word)


def check_word(rs: RootSystemData, word: Sequence[int]) -> Word:
    for i in word:
        rs.check_index(i)
    return tuple(word)


def act_on_vector(rs: RootSystemData, word: Sequence[int], v: Sequence) -> Vector:
    out = tuple(v)
    for i in reversed(check_word(rs, word)):
        out = simple_reflection(rs, i, out)
    return out


def prefix_roots(rs: RootSystemData, word: Sequence[int]) -> List[Vector]:
    """gamma_i = s_{b_1} ... s_{b_{i-1}}(b_i) for every position i."""
    word = check_word(rs, word)
    return [act_on_vector(rs, word[:k], rs.simple_root(b)) for k, b in enumerate(word)]


def is_reduced(rs: RootSystemData, word: Sequence[int]) -> bool:
    return all(is_positive(rs, g) for g in prefix_roots(rs, word))


def length(rs: RootSystemData, word: Sequence[int]) -> int:
    """Number of positive roots sent to negative roots."""
    word = check_word(rs, word)
    return sum(1 for beta in rs.positive_roots if not is_positive(rs, act_on_vector(rs, word, beta)))


def element_key(rs: RootSystemData, word: Sequence[int]) -> Vector:
    """w(rho); rho is regular so this determines w."""
    return act_on_vector(rs, word, rs.rho)


def require_reduced(rs: RootSystemData, word: Sequence[int]) -> Word:
    word = check_word(rs, word)
    if not is_reduced(rs, word):
        raise InputError(f"word {format_word(word)} is not reduced in {rs.name}")
    return word


def require_weight(rs: RootSystemData, weight: int, variant: Variant) -> int:
    variant = Variant(variant)
    rs.check_index(weight)
    if weight not in weights_for(rs, variant):
        raise InputError(f"omega_{weight} is not {variant.value} for {rs.name}")
    return weight


def is_minuscule_element(rs: RootSystemData, word: Sequence[int], weight: int, variant: Variant) -> bool:
    """
    True iff w is the minimal representative of its coset in W/W_P, i.e. w(alpha)
    is positive for every simple alpha orthogonal to omega.
    """
    require_weight(rs, weight, variant)
    word = require_reduced(rs, word)
    return all(
        is_positive(rs, act_on_vector(rs, word, rs.simple_root(j)))
        for j in rs.indices
        if j != weight
    )


def _orbit_words(rs: RootSystemData, start: Vector) -> Dict[Vector, Word]:
    """
    BFS over W.start; each orbit point gets a reduced word of minimal length.
    s_i raises the length exactly when <alpha_i^v, mu> > 0.
    """
    words: Dict[Vector, Word] = {tuple(start): ()}
    frontier = [tuple(start)]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in rs.indices:
                if pairing(rs, rs.simple_root(i), mu) > 0:
                    image = simple_reflection(rs, i, mu)
                    if image not in words:
                        words[image] = (i,) + words[mu]
                        nxt.append(image)
        frontier = nxt
    return words


def heap_graph(rs: RootSystemData, word: Sequence[int]) -> nx.DiGraph:
    """Positions 1..r with an edge i -> j (i < j) whenever b_i and b_j do not commute."""
    g = nx.DiGraph()
    g.add_nodes_from(range(1, len(word) + 1))
    for i in range(len(word)):
        for j in range(i + 1, len(word)):
            if rs.cartan[word[i] - 1][word[j] - 1] != 0:
                g.add_edge(i + 1, j + 1)
    return g


def commutation_normal_form(rs: RootSystemData, word: Sequence[int]) -> Word:
    """Lexicographically smallest word reachable by commuting adjacent letters."""
    word = check_word(rs, word)
    order = nx.lexicographical_topological_sort(heap_graph(rs, word), key=lambda v: (word[v - 1], v))
    return tuple(word[v - 1] for v in order)


def enumerate_minuscule(rs: RootSystemData, weight: int, variant: Variant) -> List[WeylWord]:
    """All minimal coset representatives of W/W_P for a (co)minuscule weight."""
    require_weight(rs, weight, variant)
    orbit = _orbit_words(rs, rs.fundamental_weight(weight))
    words = sorted({commutation_normal_form(rs, w) for w in orbit.values()}, key=lambda w: (len(w), w))
    logger.debug("%s omega_%d: %d coset representatives", rs.name, weight, len(words))
    return [WeylWord(rs, w) for w in words]


def enumerate_group(rs: RootSystemData, max_length: Optional[int] = None) -> List[Word]:
    """One reduced word per element of W, via the regular orbit of rho."""
    bound = max_length if max_length is not None else get_settings().max_word_length
    if len(rs.positive_roots) > bound:
        raise ResourceLimitError(
            f"{rs.name} has elements of length {len(rs.positive_roots)} > bound {bound}"
        )
    words = sorted(_orbit_words(rs, rs.rho).values(), key=lambda w: (len(w), w))
    logger.debug("%s: |W| = %d", rs.name, len(words))
    return words


def _braid_moves(rs: RootSystemData, word: Word) -> Iterable[Word]:
    for pos in range(len(word)):
        i = word[pos]
        for j in rs.indices:
            if j == i:
                continue
            m = _BRAID_ORDER[rs.cartan[i - 1][j - 1] * rs.cartan[j - 1][i - 1]]
            if pos + m > len(word):
                continue
            pattern = tuple(i if k % 2 == 0 else j for k in range(m))
            if word[pos:pos + m] == pattern:
                swapped = tuple(j if k % 2 == 0 else i for k in range(m))
                yield word[:pos] + swapped + word[pos + m:]


def all_reduced_words(rs: RootSystemData, word: Sequence[int], max_length: Optional[int] = None) -> Set[Word]:
    """Every reduced word of the element, by exhaustive braid moves (Matsumoto)."""
    word = require_reduced(rs, word)
    bound = max_length if max_length is not None else get_settings().max_word_length
    if len(word) > bound:
        raise ResourceLimitError(f"word of length {len(word)} exceeds the oracle bound {bound}")
    seen = {word}
    queue = deque([word])
    while queue:
        current = queue.popleft()
        for other in _braid_moves(rs, current):
            if other not in seen:
                seen.add(other)
                queue.append(other)
    return seen


def canonical_word(rs: RootSystemData, word: Sequence[int], max_length: Optional[int] = None) -> Word:
    """Lexicographically smallest reduced word of the element."""
    return min(all_reduced_words(rs, word, max_length))


def left_multiply(rs: RootSystemData, i: int, word: Sequence[int]) -> Word:
    """A reduced word for s_i w, given a reduced word for w."""
    word = check_word(rs, word)
    candidate = (rs.check_index(i),) + word
    if is_reduced(rs, candidate):
        return candidate
    # exchange property: s_i w is w with one letter deleted
    target = element_key(rs, candidate)
    for k in range(len(word)):
        shorter = word[:k] + word[k + 1:]
        if element_key(rs, shorter) == target:
            return shorter
    raise InputError(f"word {format_word(word)} is not reduced in {rs.name}")


def _bruhat(rs: RootSystemData, u: Word, w: Word) -> bool:
    if len(u) > len(w):
        return False
    if not w:
        return not u
    s, rest = w[0], w[1:]
    if u and not is_reduced(rs, (s,) + u):
        return _bruhat(rs, left_multiply(rs, s, u), rest)
    return _bruhat(rs, u, rest)


def bruhat_leq(rs: RootSystemData, u: Sequence[int], w: Sequence[int]) -> bool:
    """
    u <= w in the Bruhat order, via the lifting property on the first letter
    s of w: u <= w iff su <= sw when su < u, and u <= sw otherwise.
    """
    return _bruhat(rs, require_reduced(rs, u), require_reduced(rs, w))

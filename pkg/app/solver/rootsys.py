# app/solver/rootsys.py
"""
Exact simple root systems in the Bourbaki Euclidean realization.

Every coordinate is a Fraction; pairings <a^v, b> = 2(a,b)/(a,a) are computed
geometrically and asserted integral.
"""
import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, List, Sequence, Tuple

import sympy

from app.errors import InputError, InvariantViolation

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]
# a root is just a vector known to lie in R
RootVector = Vector

TYPE_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")

_HALF = Fraction(1, 2)


class Variant(str, Enum):
    MINUSCULE = "minuscule"
    COMINUSCULE = "cominuscule"


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def scale(c, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def _unit(dim: int, entries: Dict[int, Fraction]) -> Vector:
    """Vector with the given 1-based coordinates set."""
    out = [Fraction(0)] * dim
    for k, val in entries.items():
        out[k - 1] = Fraction(val)
    return tuple(out)


def _chain(dim: int, n: int) -> List[Vector]:
    """alpha_i = e_i - e_{i+1} for i in [1, n]."""
    return [_unit(dim, {i: 1, i + 1: -1}) for i in range(1, n + 1)]


def _e8_simple_roots() -> List[Vector]:
    first = tuple([_HALF] + [-_HALF] * 6 + [_HALF])
    return [
        first,
        _unit(8, {1: 1, 2: 1}),
        _unit(8, {1: -1, 2: 1}),
        _unit(8, {2: -1, 3: 1}),
        _unit(8, {3: -1, 4: 1}),
        _unit(8, {4: -1, 5: 1}),
        _unit(8, {5: -1, 6: 1}),
        _unit(8, {6: -1, 7: 1}),
    ]


def _simple_roots(letter: str, n: int) -> List[Vector]:
    if letter == "A":
        return _chain(n + 1, n)
    if letter == "B":
        return _chain(n, n - 1) + [_unit(n, {n: 1})]
    if letter == "C":
        return _chain(n, n - 1) + [_unit(n, {n: 2})]
    if letter == "D":
        return _chain(n, n - 1) + [_unit(n, {n - 1: 1, n: 1})]
    if letter == "E":
        return _e8_simple_roots()[:n]
    if letter == "F":
        return [
            _unit(4, {2: 1, 3: -1}),
            _unit(4, {3: 1, 4: -1}),
            _unit(4, {4: 1}),
            (_HALF, -_HALF, -_HALF, -_HALF),
        ]
    # G2 lives in the sum-zero plane of Q^3
    return [_unit(3, {1: 1, 2: -1}), _unit(3, {1: -2, 2: 1, 3: 1})]


_VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def parse_type(text: str) -> Tuple[str, int]:
    """'C4' / 'e6' -> ('C', 4)."""
    m = TYPE_RE.match(text or "")
    if not m:
        raise InputError(f"invalid root system '{text}': expected a letter A-G followed by a rank")
    return m.group(1).upper(), int(m.group(2))


@dataclass(frozen=True)
class RootSystemData:
    type_letter: str
    rank: int
    simple_roots: Tuple[Vector, ...]
    cartan: Tuple[Tuple[int, ...], ...]
    fundamental_weights: Tuple[Vector, ...]

    @property
    def name(self) -> str:
        return f"{self.type_letter}{self.rank}"

    @property
    def indices(self) -> range:
        return range(1, self.rank + 1)

    def simple_root(self, i: int) -> Vector:
        self.check_index(i)
        return self.simple_roots[i - 1]

    def fundamental_weight(self, j: int) -> Vector:
        self.check_index(j)
        return self.fundamental_weights[j - 1]

    def check_index(self, i: int) -> int:
        if not isinstance(i, int) or not 1 <= i <= self.rank:
            raise InputError(f"simple root index {i} out of range [1, {self.rank}] for {self.name}")
        return i

    @cached_property
    def zero(self) -> Vector:
        return tuple(Fraction(0) for _ in self.simple_roots[0])

    @cached_property
    def rho(self) -> Vector:
        out = self.zero
        for w in self.fundamental_weights:
            out = add(out, w)
        return out

    @cached_property
    def roots(self) -> FrozenSet[Vector]:
        found = set(self.simple_roots)
        frontier = list(self.simple_roots)
        while frontier:
            nxt = []
            for v in frontier:
                for i in self.indices:
                    image = simple_reflection(self, i, v)
                    if image not in found:
                        found.add(image)
                        nxt.append(image)
            frontier = nxt
        logger.debug("%s: %d roots", self.name, len(found))
        return frozenset(found)

    @cached_property
    def positive_roots(self) -> Tuple[Vector, ...]:
        pos = [v for v in self.roots if is_positive(self, v)]
        pos.sort(key=lambda v: (sum(root_coefficients(self, v)), root_coefficients(self, v)))
        return tuple(pos)

    def pairing_in(self, i: int, j: int, variant: Variant = Variant.MINUSCULE) -> int:
        """
        <alpha_i^v, alpha_j> for the minuscule variant; the cominuscule variant
        reads the transposed matrix, i.e. the pairing in the dual root system.
        """
        if variant == Variant.COMINUSCULE:
            return self.cartan[j - 1][i - 1]
        return self.cartan[i - 1][j - 1]


def _exact_ratio(num: Fraction, den: Fraction, what: str) -> int:
    value = 2 * num / den
    if value.denominator != 1:
        raise InvariantViolation(f"non-integral pairing {value} for {what}")
    return int(value)


def pairing(rs: RootSystemData, gamma: Sequence[Fraction], delta: Sequence[Fraction]) -> int:
    """<gamma^v, delta> = 2(gamma, delta)/(gamma, gamma), exact."""
    norm = dot(gamma, gamma)
    if norm == 0:
        raise InputError("cannot pair against the zero vector: not a root")
    return _exact_ratio(dot(gamma, delta), norm, f"{rs.name} pairing")


def simple_reflection(rs: RootSystemData, i: int, v: Sequence[Fraction]) -> Vector:
    """s_i(v) = v - <alpha_i^v, v> alpha_i."""
    alpha = rs.simple_root(i)
    c = pairing(rs, alpha, v)
    if c == 0:
        return tuple(v)
    return tuple(a - c * b for a, b in zip(v, alpha))


def root_coefficients(rs: RootSystemData, v: Sequence[Fraction]) -> Vector:
    """
    Coefficients of v (in the span of the roots) on the simple roots:
    c_i = 2(v, omega_i)/(alpha_i, alpha_i).
    """
    return tuple(
        2 * dot(v, w) / dot(a, a) for a, w in zip(rs.simple_roots, rs.fundamental_weights)
    )


def from_coefficients(rs: RootSystemData, coeffs: Sequence) -> Vector:
    out = rs.zero
    for c, a in zip(coeffs, rs.simple_roots):
        if c:
            out = add(out, scale(Fraction(c), a))
    return out


def is_positive(rs: RootSystemData, v: Sequence[Fraction]) -> bool:
    coeffs = root_coefficients(rs, v)
    return any(c != 0 for c in coeffs) and all(c >= 0 for c in coeffs)


def _fundamental_weights(simple: List[Vector], cartan: List[List[int]]) -> List[Vector]:
    # omega_i = sum_j M[i, j] alpha_j with M = (C^T)^{-1}
    inverse = sympy.Matrix(cartan).T.inv()
    dim = len(simple[0])
    weights = []
    for i in range(len(simple)):
        vec = [Fraction(0)] * dim
        for j, alpha in enumerate(simple):
            coeff = sympy.Rational(inverse[i, j])
            if coeff == 0:
                continue
            c = Fraction(int(coeff.p), int(coeff.q))
            vec = [x + c * a for x, a in zip(vec, alpha)]
        weights.append(tuple(vec))
    return weights


@lru_cache(maxsize=None)
def build_root_system(type_letter: str, rank: int) -> RootSystemData:
    letter = str(type_letter).strip().upper()
    if letter not in _VALID_RANKS or not isinstance(rank, int) or not _VALID_RANKS[letter](rank):
        raise InputError(f"invalid root system type ({type_letter}, {rank})")

    simple = _simple_roots(letter, rank)
    cartan = [
        [_exact_ratio(dot(a, b), dot(a, a), f"{letter}{rank} Cartan entry") for b in simple]
        for a in simple
    ]
    for i, row in enumerate(cartan):
        if row[i] != 2 or any(x not in (0, -1, -2, -3) for j, x in enumerate(row) if j != i):
            raise InvariantViolation(f"{letter}{rank}: malformed Cartan row {row}")

    weights = _fundamental_weights(simple, cartan)
    rs = RootSystemData(
        type_letter=letter,
        rank=rank,
        simple_roots=tuple(simple),
        cartan=tuple(tuple(row) for row in cartan),
        fundamental_weights=tuple(weights),
    )
    for i in rs.indices:
        for j in rs.indices:
            if pairing(rs, rs.simple_root(i), rs.fundamental_weight(j)) != (1 if i == j else 0):
                raise InvariantViolation(f"{rs.name}: omega_{j} is not dual to alpha_{i}^v")
    return rs


def root_system_from_spec(text: str) -> RootSystemData:
    return build_root_system(*parse_type(text))


def highest_root(rs: RootSystemData) -> RootVector:
    top = rs.positive_roots[-1]
    for beta in rs.positive_roots:
        diff = root_coefficients(rs, tuple(a - b for a, b in zip(top, beta)))
        if any(c < 0 for c in diff):
            raise InvariantViolation(f"{rs.name}: no unique highest root")
    return top


def minuscule_weights(rs: RootSystemData) -> FrozenSet[int]:
    """Indices j with <beta^v, omega_j> <= 1 for every positive root beta."""
    return frozenset(
        j
        for j in rs.indices
        if all(pairing(rs, beta, rs.fundamental_weight(j)) <= 1 for beta in rs.positive_roots)
    )


def cominuscule_weights(rs: RootSystemData) -> FrozenSet[int]:
    """Indices j whose simple root has coefficient 1 in the highest root."""
    theta = root_coefficients(rs, highest_root(rs))
    return frozenset(j for j in rs.indices if theta[j - 1] == 1)


def weights_for(rs: RootSystemData, variant: Variant) -> FrozenSet[int]:
    if Variant(variant) == Variant.COMINUSCULE:
        return cominuscule_weights(rs)
    return minuscule_weights(rs)

# app/solver/divisors.py
"""
Divisor classes on the intermediate varieties, combinatorially.

Classes live either in the xi-basis (one coordinate per quiver vertex) or in
the dhat-basis (one coordinate per peak, peaks in ascending order). Nef cones
are spanned by the pushforwards of L_m for the part-minimal vertices m; the
effective cone is the nonnegative orthant.
"""
import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from app.config import get_settings
from app.errors import InputError, InvariantViolation
from app.solver.decomp import PeakDecomposition, enumerate_decompositions, partition
from app.solver.quiver import MinusculeQuiver, peaks, quiver_from_word
from app.solver.rootsys import RootSystemData, RootVector, pairing
from app.solver.weyl import Word, prefix_roots, require_reduced

logger = logging.getLogger(__name__)


class Basis(str, Enum):
    XI = "xi"
    DHAT = "dhat"


@dataclass(frozen=True)
class DivisorClass:
    basis: Basis
    labels: Tuple[int, ...]
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.coords):
            raise InputError(f"{len(self.coords)} coordinates for a basis of dimension {len(self.labels)}")

    @classmethod
    def of(cls, basis: Basis, labels: Sequence[int], coords: Sequence) -> "DivisorClass":
        return cls(Basis(basis), tuple(labels), tuple(Fraction(c) for c in coords))

    def coordinate(self, label: int) -> Fraction:
        return self.coords[self.labels.index(label)]

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def _same_space(self, other: "DivisorClass") -> None:
        if (self.basis, self.labels) != (other.basis, other.labels):
            raise InputError("divisor classes live in different bases")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same_space(other)
        return replace_coords(self, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._same_space(other)
        return replace_coords(self, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scaled(self, c) -> "DivisorClass":
        return replace_coords(self, tuple(Fraction(c) * a for a in self.coords))


def replace_coords(d: DivisorClass, coords: Tuple[Fraction, ...]) -> DivisorClass:
    return DivisorClass(d.basis, d.labels, coords)


def _to_sympy(rows: Sequence[Sequence[Fraction]]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in rows])


def _to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class ConeDescription:
    basis: Basis
    peaks: Tuple[int, ...]
    generators: Tuple[DivisorClass, ...]
    simplicial: bool = True

    @property
    def matrix(self) -> sympy.Matrix:
        """Generators as columns."""
        return _to_sympy([g.coords for g in self.generators]).T

    def facet_normals(self) -> List[Tuple[Fraction, ...]]:
        """Rows h_k of the inverse generator matrix, h_k . g_l = [k == l]."""
        inverse = self.matrix.inv()
        return [tuple(_to_fraction(x) for x in inverse.row(k)) for k in range(inverse.rows)]

    def contains(self, d: DivisorClass) -> bool:
        return all(sum(h * c for h, c in zip(normal, d.coords)) >= 0 for normal in self.facet_normals())


# -- gamma roots and lambda coefficients ---------------------------------

def gamma_roots(rs: RootSystemData, word: Sequence[int]) -> List[RootVector]:
    return prefix_roots(rs, require_reduced(rs, word))


@lru_cache(maxsize=256)
def _gamma_matrix(rs: RootSystemData, word: Word) -> Tuple[Tuple[int, ...], ...]:
    gammas = gamma_roots(rs, word)
    return tuple(tuple(pairing(rs, gi, gj) for gj in gammas) for gi in gammas)


def gamma_pairings(rs: RootSystemData, word: Sequence[int], require_nonnegative: bool = False) -> Tuple[Tuple[int, ...], ...]:
    """
    Matrix of <gamma_i^v, gamma_j>. With require_nonnegative, a negative entry
    is an invariant violation (expected on (co)minuscule words).
    """
    matrix = _gamma_matrix(rs, tuple(word))
    if require_nonnegative:
        for i, row in enumerate(matrix, start=1):
            for j, value in enumerate(row, start=1):
                if value < 0:
                    raise InvariantViolation(f"<gamma_{i}^v, gamma_{j}> = {value} < 0 for word {list(word)}")
    return matrix


@lru_cache(maxsize=256)
def _order_quiver(rs: RootSystemData, word: Word) -> MinusculeQuiver:
    # only the arrows matter here; they do not depend on weight or variant
    return quiver_from_word(rs, word, word[-1], "minuscule")


def lambda_coeffs(rs: RootSystemData, word: Sequence[int], i: int) -> Dict[int, int]:
    """
    L_i = sum_{k >= i} lambda^k_i xi_k with
    lambda^k_i = [b_k = b_i] + sum over j in (k, i] with b_j = b_i of <gamma_k^v, gamma_j>.
    """
    word = require_reduced(rs, word)
    if not 1 <= i <= len(word):
        raise InputError(f"vertex {i} out of range [1, {len(word)}]")
    matrix = _gamma_matrix(rs, word)
    q = _order_quiver(rs, word)
    color = word[i - 1]
    out: Dict[int, int] = {}
    for k in sorted(q.up_set(i)):
        value = 1 if word[k - 1] == color else 0
        value += sum(matrix[k - 1][j - 1] for j in range(k + 1, i + 1) if word[j - 1] == color)
        out[k] = value
    return out


def line_bundle_xi(rs: RootSystemData, word: Sequence[int], i: int) -> DivisorClass:
    """L_i in the xi-basis of the Bott-Samelson variety, one coordinate per letter."""
    coeffs = lambda_coeffs(rs, word, i)
    labels = tuple(range(1, len(word) + 1))
    return DivisorClass.of(Basis.XI, labels, [coeffs.get(k, 0) for k in labels])


def pushforward_to_dhat(rs: RootSystemData, word: Sequence[int], q: MinusculeQuiver, i: int) -> DivisorClass:
    """L_i restricted to the peaks: coordinates lambda^p_i, zero for peaks not above i."""
    if i not in q.vertices:
        raise InputError(f"vertex {i} is not a vertex of {q.describe()}")
    bundle = line_bundle_xi(rs, word, i)
    labels = tuple(sorted(peaks(q)))
    return DivisorClass.of(Basis.DHAT, labels, [bundle.coordinate(p) for p in labels])


def _pushforward(q: MinusculeQuiver, i: int) -> DivisorClass:
    return pushforward_to_dhat(q.rs, q.word, q, i)


def effective_cone(q: MinusculeQuiver) -> ConeDescription:
    labels = tuple(sorted(peaks(q)))
    units = tuple(
        DivisorClass.of(Basis.DHAT, labels, [1 if p == k else 0 for p in labels]) for k in labels
    )
    return ConeDescription(basis=Basis.DHAT, peaks=labels, generators=units)


def _nef_generators(q: MinusculeQuiver, minima: Sequence[int]) -> Tuple[DivisorClass, ...]:
    gens = tuple(_pushforward(q, m) for m in minima)
    for m, g in zip(minima, gens):
        if not g.is_effective():
            raise InvariantViolation(f"L_{m} of {q.describe()} is not effective: {g.coords}")
    return gens


def nef_cone(d: PeakDecomposition) -> ConeDescription:
    q = d.base
    gens = _nef_generators(q, d.minimal_vertices)
    cone = ConeDescription(basis=Basis.DHAT, peaks=tuple(sorted(peaks(q))), generators=gens)
    if gens and cone.matrix.det() == 0:
        raise InvariantViolation(f"nef generators of {q.describe()} for {d.ordering} are singular")
    return cone


# -- peeling --------------------------------------------------------------

@dataclass(frozen=True)
class PeelTrace:
    ordering: Tuple[int, ...]
    steps: Tuple[Tuple[int, Fraction], ...]
    parts: Tuple[Tuple[int, ...], ...]
    minimal_vertices: Tuple[int, ...]


def _as_dhat(q: MinusculeQuiver, d) -> DivisorClass:
    labels = tuple(sorted(peaks(q)))
    if isinstance(d, DivisorClass):
        if d.basis != Basis.DHAT or d.labels != labels:
            raise InputError(f"divisor class must be given in the dhat-basis over peaks {list(labels)}")
        return d
    coords = tuple(Fraction(c) for c in d)
    if len(coords) != len(labels):
        raise InputError(f"expected {len(labels)} coordinates (peaks {list(labels)}), got {len(coords)}")
    return DivisorClass(Basis.DHAT, labels, coords)


def peel(q: MinusculeQuiver, d) -> PeelTrace:
    """
    Write an effective class as a nonnegative combination of nef generators of
    one decomposition: repeatedly take the smallest minimal vertex i0 of the
    vertices not below a zero peak, subtract the largest multiple of L_{i0}
    keeping the class effective, and order the peaks so that later zeroed
    peaks come first.
    """
    current = _as_dhat(q, d)
    if not current.is_effective():
        raise InputError(f"divisor class {[str(c) for c in current.coords]} is not effective")
    target = current
    labels = current.labels

    initially_zero = sorted(p for p in labels if current.coordinate(p) == 0)
    zero = set(initially_zero)
    blocks: List[List[int]] = []
    steps: List[Tuple[int, Fraction]] = []

    while len(zero) < len(labels):
        below_zero = set()
        for p in zero:
            below_zero |= q.down_set(p)
        remaining = [v for v in q.vertices if v not in below_zero]
        i0 = min(v for v in remaining if not any(u in remaining for u in q.graph.successors(v)))
        bundle = _pushforward(q, i0)
        ratios = [
            current.coordinate(p) / bundle.coordinate(p)
            for p in labels
            if p not in zero and bundle.coordinate(p) > 0
        ]
        if not ratios:
            raise InvariantViolation(f"L_{i0} of {q.describe()} meets no nonzero peak")
        mu = min(ratios)
        current = current - bundle.scaled(mu)
        newly = sorted(p for p in labels if p not in zero and current.coordinate(p) == 0)
        if not newly or not current.is_effective():
            raise InvariantViolation(f"peel step at vertex {i0} of {q.describe()} zeroed no peak")
        logger.debug("peel %s: i0=%d mu=%s zeroes %s", q.describe(), i0, mu, newly)
        zero.update(newly)
        blocks.append(newly)
        steps.append((i0, mu))

    ordering = tuple(p for block in reversed(blocks) for p in block) + tuple(initially_zero)
    parts, minima = partition(q, ordering)

    # soundness: the steps use generators of the emitted decomposition and sum to the input
    total = target.scaled(0)
    for i0, mu in steps:
        if i0 not in minima or mu < 0:
            raise InvariantViolation(f"peel of {q.describe()} used L_{i0} outside the nef cone of {ordering}")
        total = total + _pushforward(q, i0).scaled(mu)
    if total != target:
        raise InvariantViolation(f"peel of {q.describe()} does not reproduce the input class")
    return PeelTrace(ordering=ordering, steps=tuple(steps), parts=parts, minimal_vertices=minima)


# -- Mori dream cover -----------------------------------------------------

@dataclass
class MdsCoverReport:
    peaks: Tuple[int, ...]
    cones: int
    chambers: int = 0
    points_checked: int = 0
    generators_in_orthant: bool = True
    uncovered: List[Tuple[str, ...]] = field(default_factory=list)
    exact_cover: Optional[bool] = None
    interiors_disjoint: Optional[bool] = None

    def failed_checks(self) -> List[str]:
        failed = []
        if not self.generators_in_orthant:
            failed.append("generators outside the orthant")
        if self.uncovered:
            failed.append(f"{len(self.uncovered)} uncovered points, first {list(self.uncovered[0])}")
        if self.interiors_disjoint is False:
            failed.append("overlapping nef cones")
        if self.exact_cover is False:
            failed.append("chamber volumes do not fill the orthant")
        return failed

    @property
    def ok(self) -> bool:
        return not self.failed_checks()


def distinct_cones(cones: Sequence[ConeDescription]) -> List[ConeDescription]:
    """Nef cones up to equality of generator sets, first occurrence kept."""
    seen = set()
    out = []
    for cone in cones:
        key = frozenset(g.coords for g in cone.generators)
        if key not in seen:
            seen.add(key)
            out.append(cone)
    return out


def _normalized_volume(cone: ConeDescription) -> Fraction:
    """Volume of the cone's slice of the standard simplex, relative to the simplex."""
    volume = abs(_to_fraction(cone.matrix.det()))
    for g in cone.generators:
        volume /= sum(g.coords)
    return volume


def _candidate_normals(a: ConeDescription, b: ConeDescription) -> List[Tuple[Fraction, ...]]:
    normals = a.facet_normals() + b.facet_normals()
    if len(a.peaks) == 3:
        # planes through one edge of each cone
        for ga in a.generators:
            for gb in b.generators:
                n = _to_sympy([ga.coords]).cross(_to_sympy([gb.coords]))
                if any(n):
                    normals.append(tuple(_to_fraction(x) for x in n))
    return normals


def cones_separated(a: ConeDescription, b: ConeDescription) -> bool:
    """A hyperplane through the origin with a on one closed side and b on the other."""
    for normal in _candidate_normals(a, b):
        sa = [sum(h * c for h, c in zip(normal, g.coords)) for g in a.generators]
        sb = [sum(h * c for h, c in zip(normal, g.coords)) for g in b.generators]
        if (max(sa) <= 0 <= min(sb)) or (max(sb) <= 0 <= min(sa)):
            return True
    return False


def _sample_points(labels: Tuple[int, ...], count: int, seed: int) -> List[Tuple[Fraction, ...]]:
    rng = random.Random(seed)
    points = []
    for _ in range(count):
        points.append(tuple(Fraction(rng.randint(0, 24), rng.randint(1, 12)) for _ in labels))
    return points


def verify_mds_cover(q: MinusculeQuiver, samples: Optional[int] = None, seed: Optional[int] = None,
                     max_peaks: Optional[int] = None) -> MdsCoverReport:
    """Check Eff = union of the nef cones of all decompositions."""
    settings = get_settings()
    samples = settings.sample_count if samples is None else samples
    seed = settings.seed if seed is None else seed

    decompositions = enumerate_decompositions(q, max_peaks)
    cones = [nef_cone(d) for d in decompositions]
    chambers = distinct_cones(cones)
    labels = tuple(sorted(peaks(q)))
    s = len(labels)
    report = MdsCoverReport(peaks=labels, cones=len(cones), chambers=len(chambers))

    report.generators_in_orthant = all(g.is_effective() for c in cones for g in c.generators)

    points = [g.coords for c in cones for g in c.generators]
    points += [g.coords for g in effective_cone(q).generators]
    if s > 1:
        for k in range(s):
            points.append(tuple(Fraction(0) if j == k else Fraction(1, s - 1) for j in range(s)))
    points += _sample_points(labels, samples, seed)

    for point in points:
        try:
            peel(q, point)
        except InvariantViolation as exc:
            logger.warning("uncovered point %s: %s", point, exc)
            report.uncovered.append(tuple(str(c) for c in point))
    report.points_checked = len(points)

    if s <= 3 and chambers:
        report.interiors_disjoint = all(cones_separated(a, b) for a, b in combinations(chambers, 2))
        volume = sum(_normalized_volume(c) for c in chambers)
        report.exact_cover = report.generators_in_orthant and report.interiors_disjoint and volume == 1
    logger.info(
        "%s: %d nef cones in %d chambers, %d points peeled, exact cover %s",
        q.describe(), len(cones), len(chambers), report.points_checked, report.exact_cover,
    )
    return report

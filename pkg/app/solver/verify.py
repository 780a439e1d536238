# app/solver/verify.py
"""
Invariant suite over one (co)minuscule quotient W/W_P.

Every check runs in isolation: a library error inside a check marks that check
as failed and the suite moves on.
"""
import logging
import math
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, List, Optional, Tuple

import networkx as nx

from app.config import Settings, get_settings
from app.errors import QFactError, ResourceLimitError
from app.solver.decomp import enumerate_decompositions, partition
from app.solver.divisors import (
    gamma_pairings,
    lambda_coeffs,
    nef_cone,
    pushforward_to_dhat,
    verify_mds_cover,
)
from app.solver.quiver import (
    build_quiver,
    canonical_word,
    check_minuscule_shape,
    heights,
    peaks,
    remove_maximal_vertex,
)
from app.solver.rootsys import (
    RootSystemData,
    Variant,
    cominuscule_weights,
    minuscule_weights,
    pairing,
)
from app.solver.weyl import (
    Word,
    all_reduced_words,
    bruhat_leq,
    commutation_normal_form,
    element_key,
    enumerate_minuscule,
    is_minuscule_element,
    is_reduced,
    length,
)

logger = logging.getLogger(__name__)

# pairwise order checks are cubic in the quotient size
MAX_ORDER_CHECK = 32


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    root_system: str
    weight: int
    variant: Variant
    elements: int = 0
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]


def expected_root_count(rs: RootSystemData) -> int:
    n = rs.rank
    return {
        "A": n * (n + 1),
        "B": 2 * n * n,
        "C": 2 * n * n,
        "D": 2 * n * (n - 1),
        "E": {6: 72, 7: 126, 8: 240}.get(n, 0),
        "F": 48,
        "G": 12,
    }[rs.type_letter]


def expected_weights(rs: RootSystemData, variant: Variant) -> frozenset:
    """Classical tables of (co)minuscule fundamental weights, Bourbaki labels."""
    n = rs.rank
    letter = rs.type_letter
    if letter == "A":
        return frozenset(range(1, n + 1))
    if letter == "B":
        return frozenset({n} if variant == Variant.MINUSCULE else {1})
    if letter == "C":
        return frozenset({1} if variant == Variant.MINUSCULE else {n})
    if letter == "D":
        return frozenset({1, n - 1, n})
    if letter == "E" and n == 6:
        return frozenset({1, 6})
    if letter == "E" and n == 7:
        return frozenset({7})
    return frozenset()


# -- individual suites ---------------------------------------------------

def _rootsys_checks(rs: RootSystemData, variant: Variant) -> Dict[str, Callable[[], Tuple[bool, str]]]:
    def cartan():
        bad = [
            (i, j)
            for i, j in product(rs.indices, repeat=2)
            if rs.cartan[i - 1][j - 1] != pairing(rs, rs.simple_root(i), rs.simple_root(j))
        ]
        return not bad, f"mismatched entries {bad}" if bad else f"{rs.rank}x{rs.rank} entries"

    def duality():
        bad = [
            (i, j)
            for i, j in product(rs.indices, repeat=2)
            if pairing(rs, rs.simple_root(i), rs.fundamental_weight(j)) != (1 if i == j else 0)
        ]
        return not bad, f"non-dual pairs {bad}" if bad else "omega dual to the simple coroots"

    def root_count():
        found, expected = len(rs.roots), expected_root_count(rs)
        return found == expected, f"{found} roots, expected {expected}"

    def weight_table():
        table = minuscule_weights(rs) if variant == Variant.MINUSCULE else cominuscule_weights(rs)
        expected = expected_weights(rs, variant)
        return table == expected, f"{sorted(table)} vs table {sorted(expected)}"

    return {
        "rootsys.cartan": cartan,
        "rootsys.duality": duality,
        "rootsys.root_count": root_count,
        "rootsys.weight_table": weight_table,
    }


def _weyl_checks(rs: RootSystemData, weight: int, variant: Variant, words: List[Word]):
    def elements():
        bad = [w for w in words if not (is_reduced(rs, w) and is_minuscule_element(rs, w, weight, variant))]
        keys = {element_key(rs, w) for w in words}
        ok = not bad and len(keys) == len(words)
        return ok, f"{len(words)} elements, {len(keys)} distinct, {len(bad)} invalid"

    def lengths():
        bad = [w for w in words if length(rs, w) != len(w)]
        return not bad, f"length disagrees on {len(bad)} words"

    def bruhat_order():
        if len(words) > MAX_ORDER_CHECK:
            return True, f"skipped: {len(words)} elements"
        leq = {(u, w): bruhat_leq(rs, u, w) for u, w in product(words, repeat=2)}
        reflexive = all(leq[w, w] for w in words)
        antisymmetric = all(not (leq[u, w] and leq[w, u]) for u, w in product(words, repeat=2) if u != w)
        transitive = all(
            leq[u, x] for u, w, x in product(words, repeat=3) if leq[u, w] and leq[w, x]
        )
        return reflexive and antisymmetric and transitive, (
            f"reflexive={reflexive} antisymmetric={antisymmetric} transitive={transitive}"
        )

    return {"weyl.elements": elements, "weyl.length": lengths, "weyl.bruhat_partial_order": bruhat_order}


def _quiver_checks(rs: RootSystemData, weight: int, variant: Variant, words: List[Word], settings: Settings):
    quivers = [build_quiver(rs, w, weight, variant) for w in words]

    def shape():
        bad = [q.word for q in quivers if not check_minuscule_shape(q)]
        return not bad, f"shape fails on {bad}" if bad else f"{len(quivers)} quivers"

    def structure():
        bad = []
        for q in quivers:
            if not q.word:
                continue
            h = heights(q)
            ok = (
                nx.is_weakly_connected(q.graph)
                and q.minimal_vertices() == {len(q)}
                and h[len(q)] == 1
                and all(h[a] > h[b] for a, b in q.arrows)
            )
            if not ok:
                bad.append(q.word)
        return not bad, f"bad connectivity or heights on {bad}" if bad else "connected, unique bottom vertex"

    def unique_quiver():
        checked = 0
        bad = []
        for q in quivers:
            if len(q) > settings.max_word_length:
                continue
            checked += 1
            expected = canonical_word(q)
            for other in all_reduced_words(rs, q.word, settings.max_word_length):
                if canonical_word(build_quiver(rs, other, weight, variant)) != expected:
                    bad.append(other)
        return not bad, f"{checked} elements, differing words {bad}" if bad else f"{checked} elements"

    def bruhat_agreement():
        if len(words) > MAX_ORDER_CHECK:
            return True, f"skipped: {len(words)} elements"
        covers = nx.DiGraph()
        covers.add_nodes_from(words)
        for q in quivers:
            for v in peaks(q):
                smaller = remove_maximal_vertex(q, v)
                covers.add_edge(q.word, commutation_normal_form(rs, smaller.word))
        closure = nx.transitive_closure(covers, reflexive=True)
        bad = [
            (u, w)
            for u, w in product(words, repeat=2)
            if closure.has_edge(w, u) != bruhat_leq(rs, u, w)
        ]
        return not bad, f"{len(bad)} disagreeing pairs" if bad else f"{covers.number_of_edges()} covers"

    return {
        "quiver.shape": shape,
        "quiver.structure": structure,
        "quiver.unique_quiver": unique_quiver,
        "quiver.bruhat_agreement": bruhat_agreement,
    }, quivers


def _decomp_checks(quivers, settings: Settings):
    def decompositions():
        total = 0
        for q in quivers:
            found = enumerate_decompositions(q, settings.max_peaks)
            orderings = 0
            for d in found:
                for ordering in d.orderings:
                    if partition(q, ordering)[0] != d.parts:
                        return False, f"ordering {ordering} of {q.describe()} gives other parts"
                orderings += len(d.orderings)
                if sum(len(w) for w in d.part_words) != len(q):
                    return False, f"part lengths of {q.describe()} do not add up"
            keys = {d.key for d in found}
            if len(keys) != len(found):
                return False, f"duplicate decompositions of {q.describe()}"
            expected = math.factorial(len(peaks(q)))
            if orderings != expected:
                return False, f"{orderings} orderings recorded for {q.describe()}, expected {expected}"
            total += len(found)
        return True, f"{total} decompositions"

    return {"decomp.decompositions": decompositions}


def _divisor_checks(quivers, settings: Settings):
    def positivity():
        for q in quivers:
            gamma_pairings(q.rs, q.word, require_nonnegative=True)
            for i in q.vertices:
                coeffs = lambda_coeffs(q.rs, q.word, i)
                if any(c < 0 for c in coeffs.values()):
                    return False, f"negative lambda for vertex {i} of {q.describe()}"
        return True, f"{len(quivers)} words"

    def basis_independence():
        for q in quivers:
            for d in enumerate_decompositions(q, settings.max_peaks):
                cone = nef_cone(d)
                for m, g in zip(d.minimal_vertices, cone.generators):
                    if g != pushforward_to_dhat(q.rs, q.word, q, m):
                        return False, f"L_{m} differs across decompositions of {q.describe()}"
        return True, "pushforwards agree"

    def mds_cover():
        bad = []
        for q in quivers:
            report = verify_mds_cover(q, settings.sample_count, settings.seed, settings.max_peaks)
            if not report.ok:
                bad.append(f"{list(q.word)}: {'; '.join(report.failed_checks())}")
        if bad:
            return False, " | ".join(bad)
        return True, f"{len(quivers)} quivers covered"

    return {
        "divisors.positivity": positivity,
        "divisors.basis_independence": basis_independence,
        "divisors.mds_cover": mds_cover,
    }


def _run(report: SuiteReport, checks: Dict[str, Callable[[], Tuple[bool, str]]]) -> None:
    for name, check in checks.items():
        try:
            passed, detail = check()
        except QFactError as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        if not passed:
            logger.warning("check %s failed: %s", name, detail)
        report.checks.append(CheckResult(name=name, passed=passed, detail=detail))


def run_suite(rs: RootSystemData, weight: int, variant: Variant,
              settings: Optional[Settings] = None) -> SuiteReport:
    settings = settings or get_settings()
    variant = Variant(variant)
    if rs.rank > settings.max_rank:
        raise ResourceLimitError(f"{rs.name} exceeds the rank bound {settings.max_rank}")

    words = [w.word for w in enumerate_minuscule(rs, weight, variant)]
    report = SuiteReport(root_system=rs.name, weight=weight, variant=variant, elements=len(words))

    _run(report, _rootsys_checks(rs, variant))
    _run(report, _weyl_checks(rs, weight, variant, words))
    quiver_checks, quivers = _quiver_checks(rs, weight, variant, words, settings)
    _run(report, quiver_checks)
    _run(report, _decomp_checks(quivers, settings))
    _run(report, _divisor_checks(quivers, settings))

    logger.info(
        "suite %s omega_%d %s: %d/%d checks passed",
        rs.name, weight, variant.value, len(report.checks) - len(report.failures), len(report.checks),
    )
    return report

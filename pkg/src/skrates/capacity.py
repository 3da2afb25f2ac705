"""Omniscience rate, secrecy capacity, and capacity-curve sanity checks.

R_CO is the optimum of the omniscience LP (one constraint per proper
nonempty vertex subset); the unconstrained capacity is C_S = H(Z_V) - R_CO,
cross-checked against the full-source MMI, which must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .entropy import EntropyOracle
from .errors import ConsistencyError, DomainError
from .lp import OPTIMAL, LinearProgram, solve
from .mmi import mmi
from .source import HypergraphSource, Partition

RCO_MAX_VERTICES = 16


@dataclass(frozen=True)
class CapacityReport:
    H_V: Fraction
    R_CO: Fraction
    R_CO_point: dict[str, Fraction]
    C_S: Fraction
    mmi_crosscheck: Fraction
    fundamental: Partition


def proper_subsets(vertices: Sequence[str]):
    """Nonempty proper subsets of V, by size then lexicographic order."""
    for size in range(1, len(vertices)):
        yield from (frozenset(c) for c in combinations(vertices, size))


def rco(source: HypergraphSource) -> tuple[Fraction, dict[str, Fraction]]:
    """Smallest total rate for omniscience, with a vector attaining it.

    min r(V) subject to r(B) >= H(Z_B | Z_{V\\B}) for all nonempty B != V,
    r >= 0. The returned vector is the lexicographically smallest optimum
    under canonical vertex order.
    """
    if source.m > RCO_MAX_VERTICES:
        raise DomainError(f"omniscience LP capped at m <= {RCO_MAX_VERTICES}")
    oracle = EntropyOracle(source)
    n = source.m
    constraints = []
    for B in proper_subsets(source.vertices):
        row = tuple(Fraction(int(v in B)) for v in source.vertices)
        constraints.append((row, ">=", oracle.cond_entropy(B)))
    lp = LinearProgram.of([Fraction(1)] * n, "min", constraints)
    sol = solve(lp)
    if sol.status != OPTIMAL:
        raise ConsistencyError(f"omniscience LP came back {sol.status}")
    return sol.value, dict(zip(source.vertices, sol.point))


def capacity(source: HypergraphSource) -> CapacityReport:
    """Full capacity report; raises ConsistencyError if H - R_CO != MMI."""
    H_V = EntropyOracle(source).entropy(source.vertices)
    R_CO, point = rco(source)
    result = mmi(source, source.vertices)
    C_S = H_V - R_CO
    if C_S != result.value:
        raise ConsistencyError(
            f"capacity mismatch: H - R_CO = {C_S} but MMI = {result.value}"
        )
    return CapacityReport(H_V, R_CO, point, C_S, result.value, result.fundamental)


def check_concavity(curve: Sequence[tuple[Fraction, Fraction]]) -> bool:
    """True iff the piecewise-linear curve is non-decreasing and concave.

    Input must be sorted strictly increasing in the first coordinate.
    """
    rs = [Fraction(r) for r, _ in curve]
    cs = [Fraction(c) for _, c in curve]
    if any(r2 <= r1 for r1, r2 in zip(rs, rs[1:])):
        raise DomainError("curve samples must be sorted with distinct R values")
    if any(c2 < c1 for c1, c2 in zip(cs, cs[1:])):
        return False
    slopes = [(c2 - c1) / (r2 - r1) for (r1, c1), (r2, c2) in zip(zip(rs, cs), zip(rs[1:], cs[1:]))]
    return all(s2 <= s1 for s1, s2 in zip(slopes, slopes[1:]))

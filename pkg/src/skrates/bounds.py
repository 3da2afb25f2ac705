"""Converse bounds on discussion rates and the aggregated outer region.

Two certificate families, both exact:

  * partition bounds: for any B with |B| > 1 and partition P of B,
      r(V \\ B) >= (|P| - 1) [r_K - I_P(Z_B)]
  * weight bounds (hypergraphical): for any partition P of V,
      alpha(P) r(V) >= [1 - alpha(P)] r_K,
    with alpha(P) = (max over edges of blocks intersected - 1) / (|P| - 1).

Every certificate stores its inequality in the >=-normal form
row_rk * r_K + sum_i row_i * r_i >= rhs, reproducible from (kind, B, P).
The aggregated outer region is everything the enumerated certificates allow;
it is an upper bound on the achievable region, exact for tree PINs and for
the PIN capacity curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .capacity import capacity
from .entropy import EntropyOracle
from .errors import ConsistencyError, DomainError
from .lp import INFEASIBLE, OPTIMAL, LinearProgram, solve
from .mmi import mmi, partition_info
from .source import (
    HypergraphSource,
    Partition,
    RatePoint,
    enumerate_partitions,
    weight_function,
)

OUTER_MAX_VERTICES = 10

FEASIBLE = "feasible-under-outer-bound"
VIOLATED = "violated"


@dataclass(frozen=True)
class BoundCertificate:
    """One converse inequality with enough data to rebuild it from scratch."""

    kind: str  # "thm1" | "thm3"
    B: frozenset[str] | None  # thm1 only
    P: Partition
    data: tuple[Fraction, ...]  # thm1: (|P|-1, I_P(Z_B)); thm3: (alpha,)
    row_rk: Fraction
    row: dict[str, Fraction]
    rhs: Fraction

    def evaluate(self, point: RatePoint) -> Fraction:
        return self.row_rk * point.r_K + sum(
            (c * point.r[v] for v, c in self.row.items()), Fraction(0)
        )

    def violated_by(self, point: RatePoint) -> bool:
        return self.evaluate(point) < self.rhs

    @property
    def vacuous(self) -> bool:
        """Satisfied by every nonnegative point, so it never constrains."""
        return self.rhs <= 0 and self.row_rk >= 0 and all(c >= 0 for c in self.row.values())

    def to_json_dict(self) -> dict:
        from .rationals import format_rational as fr

        out = {"kind": self.kind}
        if self.B is not None:
            out["B"] = sorted(self.B)
        out["partition"] = self.P.to_lists()
        if self.kind == "thm1":
            out["groups_minus_one"] = fr(self.data[0])
            out["partition_info"] = fr(self.data[1])
        else:
            out["alpha"] = fr(self.data[0])
        out["inequality"] = {
            "r_K": fr(self.row_rk),
            "r": {v: fr(c) for v, c in sorted(self.row.items())},
            "rhs": fr(self.rhs),
        }
        return out


@dataclass(frozen=True)
class OuterRegionQuery:
    point: RatePoint
    verdict: str
    violations: tuple[BoundCertificate, ...]


def partition_certificate(
    source: HypergraphSource, B: Iterable[str], P: Partition, oracle: EntropyOracle | None = None
) -> BoundCertificate:
    B = source.check_subset(B)
    if len(B) < 2:
        raise DomainError("partition bound needs |B| >= 2")
    k = Fraction(len(P) - 1)
    info = partition_info(source, B, P, oracle)
    row = {v: Fraction(int(v not in B)) for v in source.vertices}
    return BoundCertificate(
        "thm1", B, P, (k, info), -k, row, -k * info
    )


def weight_certificate(source: HypergraphSource, P: Partition) -> BoundCertificate:
    a = alpha(source, P)
    row = {v: a for v in source.vertices}
    return BoundCertificate("thm3", None, P, (a,), -(1 - a), row, Fraction(0))


def thm1_bound(
    source: HypergraphSource, B: Iterable[str], P: Partition, r_K: Fraction
) -> Fraction:
    """Lower bound on r(V \\ B); may be negative, in which case it is vacuous."""
    cert = partition_certificate(source, B, P)
    k, info = cert.data
    return k * (Fraction(r_K) - info)


def corollary_bound(source: HypergraphSource, B: Iterable[str], r_K: Fraction) -> Fraction:
    """thm1_bound at the fundamental partition of Z_B (so I_P = MMI)."""
    B = source.check_subset(B)
    result = mmi(source, B)
    return thm1_bound(source, B, result.fundamental, r_K)


def alpha(source: HypergraphSource, P: Partition) -> Fraction:
    """Fraction of the total rate forced public; 0 only for disconnected supports."""
    if P.ground != source.vertex_set:
        raise DomainError("alpha needs a partition of the full vertex set")
    blocks = P.block_sets()
    crossed = 1  # an edgeless source crosses nothing
    for e in source.edges:
        crossed = max(crossed, sum(1 for C in blocks if C & e.on))
    return Fraction(crossed - 1, len(P) - 1)


def thm3_bound(
    source: HypergraphSource, P: Partition, point: RatePoint
) -> tuple[bool, BoundCertificate]:
    """Exact check of the weight bound at a point; returns (satisfied, cert)."""
    cert = weight_certificate(source, P)
    return (not cert.violated_by(point)), cert


@dataclass(frozen=True)
class TreePinRegion:
    """Exact achievable region when supp(c) is a spanning tree."""

    C_S: Fraction
    degrees: dict[str, int]

    def contains(self, point: RatePoint) -> bool:
        if not 0 <= point.r_K <= self.C_S:
            return False
        return all(
            point.r[v] >= (d - 1) * point.r_K for v, d in self.degrees.items()
        )


def tree_pin_region(source: HypergraphSource) -> TreePinRegion:
    if not source.is_pin():
        raise DomainError("not a PIN")
    c = weight_function(source)
    support = c.support
    deg = source.support_degrees()
    edges = [tuple(sorted(B)) for B in support]
    if len(edges) != source.m - 1 or not _connected(source.vertices, edges):
        raise DomainError("supp(c) is not a spanning tree")
    return TreePinRegion(min(c(B) for B in support), deg)


def _connected(vertices, pairs) -> bool:
    if not pairs:
        return len(vertices) <= 1
    adj = {v: set() for v in vertices}
    for a, b in pairs:
        adj[a].add(b)
        adj[b].add(a)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(vertices)


def tree_pin_check(source: HypergraphSource, point: RatePoint) -> bool:
    return tree_pin_region(source).contains(point)


def pin_capacity_curve(source: HypergraphSource, R: Fraction) -> Fraction:
    """Exact C_S(R) for a PIN with at least 3 users: min{R/(m-2), C_S}."""
    if not source.is_pin():
        raise DomainError("not a PIN")
    if source.m < 3:
        raise DomainError("the PIN capacity curve needs at least 3 users")
    R = Fraction(R)
    if R < 0:
        raise DomainError("discussion budget must be nonnegative")
    C_S = capacity(source).C_S
    return min(R / (source.m - 2), C_S)


def pin_communication_complexity(source: HypergraphSource) -> Fraction:
    """R_S = (m - 2) C_S for a PIN with at least 3 users."""
    if not source.is_pin():
        raise DomainError("not a PIN")
    if source.m < 3:
        raise DomainError("the PIN capacity curve needs at least 3 users")
    return (source.m - 2) * capacity(source).C_S


def _check_cap(source: HypergraphSource, max_vertices: int):
    if source.m > max_vertices:
        raise DomainError(
            f"certificate enumeration capped at m <= {max_vertices} vertices"
        )


def generate_certificates(
    source: HypergraphSource, max_vertices: int = OUTER_MAX_VERTICES
) -> Iterator[BoundCertificate]:
    """Every thm1 certificate (B by size then lex, P in RGS order), then thm3."""
    _check_cap(source, max_vertices)
    yield from _certificate_list(source, max_vertices)


@lru_cache(maxsize=32)
def _certificate_list(source: HypergraphSource, max_vertices: int):
    oracle = EntropyOracle(source)
    certs = []
    for size in range(2, source.m + 1):
        for combo in combinations(source.vertices, size):
            B = frozenset(combo)
            for P in enumerate_partitions(B):
                certs.append(partition_certificate(source, B, P, oracle))
    for P in enumerate_partitions(source.vertices):
        certs.append(weight_certificate(source, P))
    return tuple(certs)


def outer_check(
    source: HypergraphSource, point: RatePoint, max_vertices: int = OUTER_MAX_VERTICES
) -> OuterRegionQuery:
    """Test a point against every certificate; collect all violations."""
    if set(point.r) != set(source.vertices):
        raise DomainError("rate point must assign a rate to every vertex")
    violations = tuple(
        cert
        for cert in generate_certificates(source, max_vertices)
        if cert.violated_by(point)
    )
    return OuterRegionQuery(point, VIOLATED if violations else FEASIBLE, violations)


@lru_cache(maxsize=128)
def _lp_rows(source: HypergraphSource, max_vertices: int):
    """Non-vacuous certificate rows with dominated rows removed.

    Kept rows imply every dropped one over the nonnegative orthant, so LPs
    constrained by them have the same feasible set as with the full list:
    for fixed (B, |P|) only the smallest I_P binds; weight rows
    r(V) >= beta r_K are implied by the largest beta.
    """
    best_info: dict[tuple[frozenset, int], Fraction] = {}
    best_beta = None
    rk_nonpositive = False
    oracle = EntropyOracle(source)
    for size in range(2, source.m + 1):
        for combo in combinations(source.vertices, size):
            B = frozenset(combo)
            for P in enumerate_partitions(B):
                info = partition_info(source, B, P, oracle)
                key = (B, len(P))
                if key not in best_info or info < best_info[key]:
                    best_info[key] = info
    for P in enumerate_partitions(source.vertices):
        a = alpha(source, P)
        if a == 0:
            rk_nonpositive = True
        elif a < 1:
            beta = (1 - a) / a
            if best_beta is None or beta > best_beta:
                best_beta = beta
    rows = []
    for (B, nblocks), info in sorted(
        best_info.items(), key=lambda kv: (len(kv[0][0]), sorted(kv[0][0]), kv[0][1])
    ):
        k = Fraction(nblocks - 1)
        row = [-k] + [Fraction(int(v not in B)) for v in source.vertices]
        rows.append((tuple(row), ">=", -k * info))
    if best_beta is not None:
        row = [-best_beta] + [Fraction(1)] * source.m
        rows.append((tuple(row), ">=", Fraction(0)))
    if rk_nonpositive:
        row = [Fraction(-1)] + [Fraction(0)] * source.m
        rows.append((tuple(row), ">=", Fraction(0)))
    return tuple(rows)


def outer_capacity_curve(
    source: HypergraphSource, R: Fraction, max_vertices: int = OUTER_MAX_VERTICES
) -> Fraction:
    """Upper bound on C_S(R): max r_K over the outer region with r(V) <= R."""
    _check_cap(source, max_vertices)
    R = Fraction(R)
    if R < 0:
        raise DomainError("discussion budget must be nonnegative")
    rows = _lp_rows(source, max_vertices)
    budget = (tuple([Fraction(0)] + [Fraction(1)] * source.m), "<=", R)
    objective = [Fraction(1)] + [Fraction(0)] * source.m
    lp = LinearProgram.of(objective, "max", list(rows) + [budget])
    sol = solve(lp, lex=False)
    if sol.status != OPTIMAL:
        raise ConsistencyError(f"outer-curve LP came back {sol.status}")
    return sol.value


def outer_min_rate(
    source: HypergraphSource, r_K: Fraction, max_vertices: int = OUTER_MAX_VERTICES
) -> Fraction:
    """Smallest r(V) the certificates allow at a fixed key rate.

    Raises DomainError if the outer region is empty at this r_K (key rate
    above every certificate's ceiling).
    """
    _check_cap(source, max_vertices)
    r_K = Fraction(r_K)
    rows = []
    for row, rel, rhs in _lp_rows(source, max_vertices):
        rows.append((row[1:], rel, rhs - row[0] * r_K))
    objective = [Fraction(1)] * source.m
    lp = LinearProgram.of(objective, "min", rows)
    sol = solve(lp, lex=False)
    if sol.status == INFEASIBLE:
        raise DomainError(f"outer region is empty at r_K = {r_K}")
    if sol.status != OPTIMAL:
        raise ConsistencyError(f"outer min-rate LP came back {sol.status}")
    return sol.value

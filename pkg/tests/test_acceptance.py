"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines. Random
instances use fixed seeds so every run checks the same frozen values; all
comparisons are exact rational equality unless stated otherwise.
"""

import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations, product

import pytest

from oracles import (
    random_connected_pin,
    random_coverage_oracle,
    random_hypergraph,
    random_tree_pin,
)
from skrates.bounds import (
    FEASIBLE,
    VIOLATED,
    alpha,
    generate_certificates,
    outer_capacity_curve,
    outer_check,
    outer_min_rate,
    pin_capacity_curve,
    pin_communication_complexity,
    thm1_bound,
    tree_pin_region,
)
from skrates.capacity import capacity, rco
from skrates.entropy import EntropyOracle
from skrates.greedy import (
    CoverMeasure,
    greedy_mu,
    greedy_value,
    laminate,
    thm3_weights,
)
from skrates.lp import OPTIMAL, LinearProgram, solve
from skrates.mmi import mmi
from skrates.packing import max_packing, packing_to_rates
from skrates.protocol import build_tree_protocol, measured_rates, verify_protocol
from skrates.source import Partition, RatePoint, singletons


@contextmanager
def criterion(number: int, budget_s: float, label: str):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number}: FAIL - {label}")
        raise
    elapsed = time.monotonic() - start
    assert elapsed < budget_s, f"criterion {number} took {elapsed:.2f}s (budget {budget_s}s)"
    print(f"ACCEPTANCE {number}: PASS - {label} ({elapsed:.2f}s)")


def rp(r_K, rates):
    return RatePoint(Fraction(r_K), {k: Fraction(v) for k, v in rates.items()})


def test_criterion_1_motivating(motivating):
    with criterion(1, 1.0, "motivating PIN capacity, region, and curve"):
        rep = capacity(motivating)
        assert rep.C_S == 1
        assert rep.R_CO == 2
        assert rep.fundamental == Partition.of([["1"], ["2", "3"]])

        grid_rk = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(9, 8)]
        grid_r2 = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]
        grid_r13 = [(Fraction(0), Fraction(0)), (Fraction(1, 4), Fraction(1, 2))]
        points = list(product(grid_rk, grid_r2, grid_r13))[:50]
        assert len(points) == 50
        for r_K, r_2, (r_1, r_3) in points:
            point = rp(r_K, {"1": r_1, "2": r_2, "3": r_3})
            in_region = r_K <= 1 and r_2 >= r_K
            verdict = outer_check(motivating, point).verdict
            assert verdict == (FEASIBLE if in_region else VIOLATED)

        for R in (0, Fraction(1, 2), 1, 2):
            assert outer_capacity_curve(motivating, R) == min(Fraction(R), Fraction(1))


def test_criterion_2_triangle(triangle):
    with criterion(2, 1.0, "triangle PIN capacity, alpha, curve, packing"):
        rep = capacity(triangle)
        assert rep.C_S == Fraction(3, 2) and rep.R_CO == Fraction(3, 2)
        assert alpha(triangle, singletons(triangle.vertices)) == Fraction(1, 2)
        for r_K in (Fraction(1, 2), 1, Fraction(3, 2)):
            assert outer_min_rate(triangle, r_K) == r_K  # r(V) >= r_K
        for R in (0, 1, Fraction(3, 2), 4):
            assert outer_capacity_curve(triangle, R) == min(Fraction(R), Fraction(3, 2))
            assert pin_capacity_curve(triangle, R) == min(Fraction(R), Fraction(3, 2))
        assert pin_communication_complexity(triangle) == Fraction(3, 2)
        value, packing = max_packing(triangle)
        assert value == Fraction(3, 2)
        assert packing_to_rates(packing) == rp(
            Fraction(3, 2), {v: Fraction(1, 2) for v in triangle.vertices}
        )


def test_criterion_3_pin_curve_random():
    with criterion(3, 30.0, "PIN capacity curve on 20 random connected PINs"):
        rng = random.Random(20260301)
        for _ in range(20):
            src = random_connected_pin(rng, rng.randint(3, 6), max_weight=3)
            C_S = capacity(src).C_S
            for R in (0, Fraction(1, 2), 1, Fraction(7, 3), 9):
                expected = min(Fraction(R) / (src.m - 2), C_S)
                assert outer_capacity_curve(src, R) == expected
            point = packing_to_rates(max_packing(src, crosscheck=False)[1])
            assert point.total() == (src.m - 2) * point.r_K


def test_criterion_4_tree_pins_random():
    with criterion(4, 10.0, "tree-PIN region on 10 random tree-PINs"):
        rng = random.Random(20260402)
        for _ in range(10):
            src = random_tree_pin(rng, rng.randint(3, 7), max_weight=3)
            region = tree_pin_region(src)
            rep = capacity(src)
            assert rep.C_S == region.C_S  # min supp(c) edge weight
            value, packing = max_packing(src, crosscheck=False)
            assert value == rep.C_S
            point = packing_to_rates(packing)
            for v in src.vertices:
                assert point.r[v] == (region.degrees[v] - 1) * region.C_S
            assert outer_check(src, point).verdict == FEASIBLE
            for v in src.vertices:
                if point.r[v] == 0:
                    continue
                bumped = dict(point.r)
                bumped[v] -= Fraction(1, 100)
                assert outer_check(src, RatePoint(point.r_K, bumped)).verdict == VIOLATED


def test_criterion_5_duality_random():
    with criterion(5, 30.0, "MMI equals max packing on 30 random connected PINs"):
        rng = random.Random(20260503)
        for _ in range(30):
            src = random_connected_pin(rng, rng.randint(2, 6))
            value, _ = max_packing(src, crosscheck=False)
            assert value == mmi(src, src.vertices).value


def test_criterion_6_looseness_examples(three_user_hyper, six_user_hyper):
    with criterion(6, 60.0, "hypergraph examples where each bound family is loose"):
        P = Partition.of([["1"], ["3"]])
        for r_K in (0, 1, Fraction(3, 2), 2):
            assert thm1_bound(three_user_hyper, ["1", "3"], P, r_K) == Fraction(r_K) - 1
        thm3_certs = [
            c for c in generate_certificates(three_user_hyper) if c.kind == "thm3"
        ]
        assert thm3_certs and all(c.vacuous for c in thm3_certs)
        assert all(c.data[0] == 1 for c in thm3_certs)  # alpha = 1 everywhere
        assert capacity(three_user_hyper).C_S == 2

        assert outer_min_rate(six_user_hyper, 1) == 1


def test_criterion_7_protocols(motivating, triangle):
    with criterion(7, 30.0, "protocol verification, exact and simulated rates"):
        from skrates.packing import TreePacking

        packing = TreePacking(motivating, ((("a", "b"), Fraction(1)),))
        proto = build_tree_protocol(motivating, packing, 1)
        assert proto.total_bits == 3
        report = verify_protocol(motivating, proto, exhaustive=True)
        assert report.verdict == "perfect"
        assert report.key_equivocation_bits == 1
        assert report.exhaustive_uniform is True  # agrees with the rank route

        _, tri_packing = max_packing(triangle)
        tri_proto = build_tree_protocol(triangle, tri_packing, 2)
        assert tri_proto.total_bits == 6
        tri_report = verify_protocol(triangle, tri_proto, exhaustive=True)
        assert tri_report.key_bits == 3
        assert tri_report.message_bits == {"1": 1, "2": 1, "3": 1}
        assert tri_report.verdict == "perfect" and tri_report.exhaustive_uniform

        rng = random.Random(20260704)
        for _ in range(10):
            src = random_connected_pin(rng, rng.randint(3, 6))
            _, packing = max_packing(src, crosscheck=False)
            n = (
                math.lcm(*(eta.denominator for _, eta in packing.trees))
                if packing.trees
                else 1
            )
            proto = build_tree_protocol(src, packing, n)
            assert verify_protocol(src, proto).verdict == "perfect"
            rates = measured_rates(proto)
            assert rates == packing_to_rates(packing)
            assert outer_check(src, rates).verdict == FEASIBLE


def test_criterion_8_greedy(triangle):
    with criterion(8, 60.0, "greedy optimum, triangle chain, lamination"):
        rng = random.Random(20260805)
        for _ in range(100):
            oracle = random_coverage_oracle(rng, rng.randint(1, 5))
            w = {s: Fraction(rng.randint(0, 4), rng.choice([1, 2])) for s in oracle.ground}
            got = greedy_value(oracle, w, verify=False)
            sets = [
                frozenset(c)
                for r in range(len(oracle.ground) + 1)
                for c in combinations(oracle.ground, r)
            ]
            lp = LinearProgram.of(
                [oracle(B) for B in sets],
                "min",
                [
                    (
                        tuple(Fraction(int(s in B)) for B in sets),
                        "==",
                        w[s],
                    )
                    for s in oracle.ground
                ],
            )
            sol = solve(lp, lex=False)
            assert sol.status == OPTIMAL and got == sol.value

        ground, w = thm3_weights(triangle, singletons(triangle.vertices))
        mu = greedy_mu(ground, w)
        assert dict(mu.values) == {
            frozenset(["0"]): Fraction(1),
            frozenset(["0", "e:a", "e:b", "e:c"]): Fraction(1),
            frozenset(ground): Fraction(1),
        }

        for _ in range(100):
            oracle = random_coverage_oracle(rng, 4)
            values = {}
            for _ in range(rng.randint(1, 5)):
                B = frozenset(rng.sample(oracle.ground, rng.randint(1, 4)))
                values[B] = values.get(B, Fraction(0)) + Fraction(rng.randint(1, 3), rng.choice([1, 2]))
            mu = CoverMeasure(oracle.ground, values)
            out = laminate(oracle, mu)
            assert out.marginals() == mu.marginals()
            assert out.objective(oracle) <= mu.objective(oracle)


def test_criterion_9_structural():
    with criterion(9, 60.0, "submodularity, lattice closure, R_CO identity"):
        rng = random.Random(20260906)
        for _ in range(8):
            src = random_hypergraph(rng, rng.randint(2, 6))
            oracle = EntropyOracle(src)
            subsets = [
                frozenset(c)
                for r in range(src.m + 1)
                for c in combinations(src.vertices, r)
            ]
            values = {B: oracle.entropy(B) for B in subsets}
            for B1 in subsets:
                for B2 in subsets:
                    assert values[B1] + values[B2] >= values[B1 & B2] + values[B1 | B2]

        for _ in range(8):
            src = random_hypergraph(rng, rng.randint(3, 6))
            result = mmi(src, src.vertices)
            optimal = set(result.optimal_partitions)
            for P1 in optimal:
                for P2 in optimal:
                    assert P1.meet(P2) in optimal
            assert result.fundamental in optimal
            assert all(result.fundamental.refines(P) for P in optimal)

        for _ in range(30):
            src = random_hypergraph(rng, rng.randint(2, 6), max_edges=8)
            value, _ = rco(src)
            oracle = EntropyOracle(src)
            assert value == oracle.entropy(src.vertices) - mmi(src, src.vertices).value

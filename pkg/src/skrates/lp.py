"""Dense exact-rational simplex.

Two-phase tableau method over fractions.Fraction with Bland's anti-cycling
rule (smallest eligible column enters; ties on the ratio test break toward
the smallest basic variable index), so the pivot sequence is a deterministic
function of the input. All variables are nonnegative; relations are "<=",
">=", "==". No floating point anywhere.

Degenerate optima: with lex=True (the default) the returned point is the
lexicographically smallest optimal point, obtained by exact sequential
refinement over the optimal face (fix the optimal value, then minimize x_0,
fix it, minimize x_1, ...). The refined point is an extreme point of the
feasible region, so it is still a basic solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError

Row = tuple[Fraction, ...]
RELATIONS = ("<=", ">=", "==")

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    objective: Row
    sense: str  # "min" | "max"
    constraints: tuple[tuple[Row, str, Fraction], ...]

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise DomainError(f"bad sense {self.sense!r}")
        n = len(self.objective)
        for row, rel, _ in self.constraints:
            if len(row) != n:
                raise DomainError("constraint row length does not match objective")
            if rel not in RELATIONS:
                raise DomainError(f"bad relation {rel!r}")

    @classmethod
    def of(cls, objective, sense, constraints) -> "LinearProgram":
        obj = tuple(Fraction(c) for c in objective)
        cons = tuple(
            (tuple(Fraction(a) for a in row), rel, Fraction(rhs))
            for row, rel, rhs in constraints
        )
        return cls(obj, sense, cons)


@dataclass(frozen=True)
class LpSolution:
    status: str
    value: Fraction | None
    point: tuple[Fraction, ...] | None


def _pivot(rows, cost, basis, r, c):
    prow = rows[r]
    piv = prow[c]
    if piv != 1:
        prow = [x / piv for x in prow]
        rows[r] = prow
    nonzero = [j for j, y in enumerate(prow) if y]
    for i, row in enumerate(rows):
        if i != r and row[c]:
            f = row[c]
            for j in nonzero:
                row[j] -= f * prow[j]
    if cost[c]:
        f = cost[c]
        for j in nonzero:
            cost[j] -= f * prow[j]
    basis[r] = c


def _run_simplex(rows, cost, basis, ncols):
    """Minimize until no negative reduced cost; Bland's rule throughout."""
    while True:
        enter = next((j for j in range(ncols) if cost[j] < 0), None)
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return UNBOUNDED
        _pivot(rows, cost, basis, leave, enter)


def _solve_min(objective: Sequence[Fraction], constraints) -> LpSolution:
    """Minimize objective over the constraints; core two-phase routine."""
    n = len(objective)
    norm = []
    for row, rel, rhs in constraints:
        row = list(row)
        if rhs < 0:
            row = [-a for a in row]
            rhs = -rhs
            rel = {"<=": ">=", ">=": "<=", "==": "=="}[rel]
        norm.append((row, rel, rhs))

    nslack = sum(1 for _, rel, _ in norm if rel != "==")
    nart = sum(1 for _, rel, _ in norm if rel != "<=")
    ncols = n + nslack + nart
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    art_cols: list[int] = []
    s = n
    a = n + nslack
    for row, rel, rhs in norm:
        full = list(row) + [Fraction(0)] * (nslack + nart) + [rhs]
        if rel == "<=":
            full[s] = Fraction(1)
            basis.append(s)
            s += 1
        elif rel == ">=":
            full[s] = Fraction(-1)
            s += 1
            full[a] = Fraction(1)
            basis.append(a)
            art_cols.append(a)
            a += 1
        else:
            full[a] = Fraction(1)
            basis.append(a)
            art_cols.append(a)
            a += 1
        rows.append(full)

    if art_cols:
        cost = [Fraction(0)] * ncols + [Fraction(0)]
        for c in art_cols:
            cost[c] = Fraction(1)
        for i, b in enumerate(basis):
            if cost[b]:
                f = cost[b]
                cost = [x - f * y for x, y in zip(cost, rows[i])]
        _run_simplex(rows, cost, basis, ncols)
        if -cost[-1] != 0:
            return LpSolution(INFEASIBLE, None, None)
        art_set = set(art_cols)
        keep = []
        for i in range(len(rows)):
            if basis[i] in art_set:
                piv = next(
                    (j for j in range(n + nslack) if rows[i][j] != 0), None
                )
                if piv is None:
                    continue  # redundant constraint row
                _pivot(rows, cost, basis, i, piv)
            keep.append(i)
        rows = [rows[i] for i in keep]
        basis = [basis[i] for i in keep]
        for i in range(len(rows)):
            rows[i] = rows[i][: n + nslack] + [rows[i][-1]]

    ncols = n + nslack
    cost = list(objective) + [Fraction(0)] * nslack + [Fraction(0)]
    for i, b in enumerate(basis):
        if cost[b]:
            f = cost[b]
            cost = [x - f * y for x, y in zip(cost, rows[i])]
    status = _run_simplex(rows, cost, basis, ncols)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, None, None)
    point = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            point[b] = rows[i][-1]
    return LpSolution(OPTIMAL, -cost[-1], tuple(point))


def solve(lp: LinearProgram, lex: bool = True) -> LpSolution:
    """Solve the LP; see module docstring for determinism guarantees."""
    lp = LinearProgram.of(lp.objective, lp.sense, lp.constraints)
    sign = Fraction(-1) if lp.sense == "max" else Fraction(1)
    objective = tuple(sign * c for c in lp.objective)
    sol = _solve_min(objective, lp.constraints)
    if sol.status != OPTIMAL:
        return sol
    value = sign * sol.value
    if not lex:
        return LpSolution(OPTIMAL, value, sol.point)

    n = len(lp.objective)
    fixed = list(lp.constraints) + [(lp.objective, "==", value)]
    point = []
    for j in range(n):
        unit = tuple(Fraction(int(k == j)) for k in range(n))
        step = _solve_min(unit, fixed)
        if step.status != OPTIMAL:
            raise DomainError("optimal face is unbounded below in a coordinate")
        point.append(step.value)
        fixed.append((unit, "==", step.value))
    return LpSolution(OPTIMAL, value, tuple(point))

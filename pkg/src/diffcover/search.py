"""Deterministic backtracking searches.

Third-column search: depth-first over rows with two difference-occupancy
tables (one per constrained column pair) and candidate values tried in
ascending order, so the solution list is in lexicographic order.  The
difference capacities are 0 for the zero residue, 2 for n/2, 1 otherwise.

HDM search: columns 1 and 2 are assigned jointly row by row; the next row
is the pending one with the fewest remaining (value, value) options, with
ties and candidates resolved in ascending order.  Row choice affects only
speed, never the set of solutions, and is deterministic.

Searches never self-certify; callers verify outputs independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .core import DesignError, Kind, ResidueArray
from .tables import odd_even_column
from .verify import BadHole

StatusFn = Callable[[dict[str, int]], None]


class BudgetExhausted(DesignError):
    """Node budget ran out before any result was found."""


class InfeasibleFixedColumns(DesignError):
    """The fixed column pair violates the difference profile."""


class OrderTooLarge(DesignError):
    """Exhaustive enumeration is limited to orders up to 12."""


class NoSolution(DesignError):
    """The full search space was exhausted without a solution."""


@dataclass(frozen=True)
class SearchConfig:
    """Deterministic search parameters.  ``col0``/``col1`` default to the
    identity and the odd-then-even pattern."""

    order: int
    col0: tuple[int, ...] | None = None
    col1: tuple[int, ...] | None = None
    node_budget: int = 10**9
    result_limit: int | None = None
    status_interval: int = 0

    def __post_init__(self) -> None:
        if self.node_budget < 1:
            raise ValueError(f"node budget must be positive, got {self.node_budget}")
        if self.result_limit is not None and self.result_limit < 1:
            raise ValueError(f"result limit must be positive, got {self.result_limit}")


class _Budget(Exception):
    pass


def _difference_caps(n: int) -> list[int]:
    caps = [1] * n
    caps[0] = 0
    caps[n // 2] = 2
    return caps


def _fixed_columns(cfg: SearchConfig) -> tuple[tuple[int, ...], tuple[int, ...]]:
    n = cfg.order
    col0 = cfg.col0 if cfg.col0 is not None else tuple(range(n))
    col1 = cfg.col1 if cfg.col1 is not None else odd_even_column(n)
    for name, col in (("col0", col0), ("col1", col1)):
        if sorted(col) != list(range(n)):
            raise ValueError(f"{name} must be a permutation of the residues")
    return col0, col1


def search_third_column(cfg: SearchConfig, status: StatusFn | None = None) -> list[tuple[int, ...]]:
    """All third columns completing the fixed pair to a strict reduced
    DCA(4, n+1; n), in lexicographic order, up to ``result_limit``.

    Raises BudgetExhausted only when the budget runs out with nothing
    found; a partial list is returned otherwise.
    """
    n = cfg.order
    if n % 2 or n < 2:
        raise ValueError(f"order must be even and positive, got {n}")
    col0, col1 = _fixed_columns(cfg)
    caps = _difference_caps(n)
    pair_counts = [0] * n
    for x, y in zip(col1, col0):
        pair_counts[(x - y) % n] += 1
    if pair_counts != caps:
        raise InfeasibleFixedColumns("fixed columns do not satisfy the difference profile")

    cnt0 = [0] * n
    cnt1 = [0] * n
    column = [0] * n
    solutions: list[tuple[int, ...]] = []
    nodes = 0
    limit = cfg.result_limit
    budget = cfg.node_budget
    interval = cfg.status_interval

    def report(depth: int) -> None:
        if status is not None and interval and nodes % interval == 0:
            status({"nodes": nodes, "depth": depth, "solutions": len(solutions)})

    def dfs(i: int, used: int) -> bool:
        nonlocal nodes
        if i == n:
            solutions.append(tuple(column))
            return limit is not None and len(solutions) >= limit
        for v in range(n):
            if used >> v & 1:
                continue
            d0 = (v - col0[i]) % n
            if cnt0[d0] == caps[d0]:
                continue
            d1 = (v - col1[i]) % n
            if cnt1[d1] == caps[d1]:
                continue
            nodes += 1
            if nodes > budget:
                raise _Budget
            report(i)
            column[i] = v
            cnt0[d0] += 1
            cnt1[d1] += 1
            done = dfs(i + 1, used | (1 << v))
            cnt0[d0] -= 1
            cnt1[d1] -= 1
            if done:
                return True
        return False

    try:
        dfs(0, 0)
    except _Budget:
        if not solutions:
            raise BudgetExhausted(f"no solution within {budget} nodes") from None
    if status is not None:
        status({"nodes": nodes, "depth": n, "solutions": len(solutions)})
    return solutions


def enumerate_third_columns(
    order: int,
    col0: tuple[int, ...] | None = None,
    col1: tuple[int, ...] | None = None,
) -> list[tuple[int, ...]]:
    """Every admissible third column by brute force over all permutations
    of the residues; the independent oracle for the pruned search."""
    if order > 12:
        raise OrderTooLarge(f"exhaustive enumeration capped at order 12, got {order}")
    if order % 2 or order < 2:
        raise ValueError(f"order must be even and positive, got {order}")
    cfg = SearchConfig(order, col0=col0, col1=col1)
    c0, c1 = _fixed_columns(cfg)
    caps = _difference_caps(order)
    out = []
    for perm in itertools.permutations(range(order)):
        cnt0 = [0] * order
        cnt1 = [0] * order
        ok = True
        for i, v in enumerate(perm):
            d0 = (v - c0[i]) % order
            cnt0[d0] += 1
            if cnt0[d0] > caps[d0]:
                ok = False
                break
            d1 = (v - c1[i]) % order
            cnt1[d1] += 1
            if cnt1[d1] > caps[d1]:
                ok = False
                break
        if ok:
            out.append(perm)
    return out


def search_hdm(
    n: int, h: int, cfg: SearchConfig | None = None, status: StatusFn | None = None
) -> ResidueArray:
    """First cyclic HDM(4, n; h) found, with the last column all zero and
    the first column the non-hole residues ascending (both lossless row
    and column normalizations).

    Raises NoSolution when the space is exhausted, BudgetExhausted when
    the node budget of ``cfg`` runs out first.
    """
    if h < 1 or h >= n or n % h:
        raise BadHole(f"hole {h} must divide order {n} with 1 <= h < n")
    budget = cfg.node_budget if cfg is not None else 10**9
    interval = cfg.status_interval if cfg is not None else 0
    u = n // h
    hole = {j * u for j in range(h)}
    nonhole = [v for v in range(n) if v not in hole]
    full = (1 << n) - 1
    nonhole_mask = 0
    for v in nonhole:
        nonhole_mask |= 1 << v

    def rot(x: int, s: int) -> int:
        s %= n
        return ((x << s) | (x >> (n - s))) & full

    col1: dict[int, int] = {}
    col2: dict[int, int] = {}
    nodes = 0

    def report(depth: int) -> None:
        if status is not None and interval and nodes % interval == 0:
            status({"nodes": nodes, "depth": depth, "solutions": 0})

    def dfs(pending: list[int], free1: int, free2: int, fd10: int, fd20: int, fd21: int) -> bool:
        nonlocal nodes
        if not pending:
            return True
        # Most-constrained row first: fewest (b, c) candidate combinations.
        best = -1
        best_score = -1
        best_mb = best_mc = 0
        for a in pending:
            mb = rot(fd10, a) & free1
            if not mb:
                return False
            mc = rot(fd20, a) & free2
            if not mc:
                return False
            score = mb.bit_count() * mc.bit_count()
            if best_score < 0 or score < best_score:
                best, best_score, best_mb, best_mc = a, score, mb, mc
        a = best
        rest = [x for x in pending if x != a]
        depth = len(col1)
        mb = best_mb
        while mb:
            b = mb & -mb
            mb ^= b
            bv = b.bit_length() - 1
            nodes += 1
            if nodes > budget:
                raise _Budget
            report(depth)
            mc = best_mc & rot(fd21, bv)
            while mc:
                c = mc & -mc
                mc ^= c
                cv = c.bit_length() - 1
                nodes += 1
                if nodes > budget:
                    raise _Budget
                col1[a] = bv
                col2[a] = cv
                if dfs(
                    rest,
                    free1 ^ b,
                    free2 ^ c,
                    fd10 ^ (1 << ((bv - a) % n)),
                    fd20 ^ (1 << ((cv - a) % n)),
                    fd21 ^ (1 << ((cv - bv) % n)),
                ):
                    return True
                del col1[a], col2[a]
        return False

    try:
        found = dfs(nonhole, nonhole_mask, nonhole_mask, nonhole_mask, nonhole_mask, nonhole_mask)
    except _Budget:
        raise BudgetExhausted(f"no HDM(4,{n};{h}) within {budget} nodes") from None
    if status is not None:
        status({"nodes": nodes, "depth": n - h, "solutions": int(found)})
    if not found:
        raise NoSolution(f"no cyclic HDM(4,{n};{h}) with the fixed normalizations")
    rows = [(a, col1[a], col2[a], 0) for a in nonhole]
    return ResidueArray.from_rows(Kind.HDM, n, rows, hole=h)

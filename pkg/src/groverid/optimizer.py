"""Exact minimal schemes at small N.

Two exact searches: a branch-and-bound set cover over the canonical
blocks for the minimal product scheme, and a rational LP feasibility
test over composition masses for the existence of a t-copy entangled
scheme.  Both are deterministic and return verifiable witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .discrimination import CanonicalBlock, all_pairs, block_graph, candidate_blocks
from .exceptions import IndistinguishableError, ResourceCapError
from .oracle import DEFAULT_MAX_COMPOSITIONS, enumerate_compositions, tau_parity
from .schemes import (
    WeightProfile,
    construct_product_scheme,
    general_lower_bound,
)
from .simplex import HALF, ONE, phase1_feasible

#: Largest n the exhaustive cover search accepts by default.
DEFAULT_COVER_CAP = 9


@dataclass(frozen=True)
class CoverInstance:
    """Set-cover instance: all C(n,2) pairs as the universe and every
    canonical block as a candidate, in the fixed pair < quad < star order."""

    n: int
    candidates: tuple[CanonicalBlock, ...]
    masks: tuple[int, ...]

    @classmethod
    def build(cls, n: int) -> "CoverInstance":
        pair_bit = {p: k for k, p in enumerate(all_pairs(n))}
        candidates = tuple(candidate_blocks(n))
        masks = []
        for block in candidates:
            mask = 0
            for edge in block_graph(block).edges:
                mask |= 1 << pair_bit[edge]
            masks.append(mask)
        return cls(n, candidates, tuple(masks))


@dataclass(frozen=True)
class CoverSolution:
    t: int
    blocks: tuple[CanonicalBlock, ...]
    nodes_explored: int


@dataclass(frozen=True)
class LpStats:
    variables: int
    constraints: int
    pivots: int


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: WeightProfile | None
    phase1_objective: Fraction
    stats: LpStats


def min_product_cover(n: int, max_n: int = DEFAULT_COVER_CAP) -> CoverSolution:
    """Exact minimum number of canonical blocks covering the complete
    graph on n, with a deterministic witness.

    Branch and bound: starts from the grouping construction as the
    incumbent, always branches on the uncovered pair with the fewest
    covering candidates, and prunes on ceil(uncovered / max coverage).
    Failed subproblems are memoized by their uncovered-pair set.
    """
    if n < 3:
        if n == 2:
            raise IndistinguishableError("no scheme exists for n=2")
        raise ValueError(f"cover search needs n >= 3, got {n}")
    if n > max_n:
        raise ResourceCapError(f"cover search capped at n <= {max_n}, got {n}")

    inst = CoverInstance.build(n)
    npairs = n * (n - 1) // 2
    universe = (1 << npairs) - 1
    cover_lists: list[list[int]] = [[] for _ in range(npairs)]
    for c, mask in enumerate(inst.masks):
        bits = mask
        while bits:
            low = bits & -bits
            cover_lists[low.bit_length() - 1].append(c)
            bits ^= low
    # Static branching order: fewest covering candidates first.
    pair_order = sorted(range(npairs), key=lambda b: (len(cover_lists[b]), b))
    max_cover = max(6, 2 * (n - 2), n - 1)

    best_blocks = list(construct_product_scheme(n).blocks)
    best_t = len(best_blocks)
    nodes = 0
    failed: dict[int, int] = {}
    chosen: list[int] = []

    def dfs(uncovered: int) -> None:
        nonlocal best_t, best_blocks, nodes
        nodes += 1
        if uncovered == 0:
            if len(chosen) < best_t:
                best_t = len(chosen)
                best_blocks = [inst.candidates[c] for c in chosen]
            return
        budget = best_t - 1 - len(chosen)
        if budget <= 0:
            return
        if -(-uncovered.bit_count() // max_cover) > budget:
            return
        if failed.get(uncovered, -1) >= budget:
            return
        entry_best = best_t
        branch_bit = next(b for b in pair_order if uncovered >> b & 1)
        for c in cover_lists[branch_bit]:
            chosen.append(c)
            dfs(uncovered & ~inst.masks[c])
            chosen.pop()
        if best_t == entry_best and failed.get(uncovered, -1) < budget:
            failed[uncovered] = budget

    dfs(universe)
    return CoverSolution(t=best_t, blocks=tuple(best_blocks), nodes_explored=nodes)


def entangled_feasible(
    n: int, t: int, max_compositions: int = DEFAULT_MAX_COMPOSITIONS
) -> FeasibilityResult:
    """Decide whether a t-copy parallel scheme exists for n oracles.

    The scheme exists exactly when rational masses on compositions can
    give every pair an odd-parity mass of 1/2 while summing to 1; the
    decision is an exact phase-1 LP over the composition variables.
    """
    if n < 2:
        raise ValueError(f"feasibility needs n >= 2, got {n}")
    comps = enumerate_compositions(n, t, max_compositions)
    rows: list[list[Fraction]] = [[ONE] * len(comps)]
    rhs: list[Fraction] = [ONE]
    for i, j in all_pairs(n):
        rows.append([ONE if tau_parity(c, i, j) == 1 else Fraction(0) for c in comps])
        rhs.append(HALF)
    result = phase1_feasible(rows, rhs)
    stats = LpStats(variables=len(comps), constraints=len(rows), pivots=result.pivots)
    witness = None
    if result.feasible:
        witness = WeightProfile(
            n, t, {c: q for c, q in zip(comps, result.x) if q}
        )
    return FeasibilityResult(
        feasible=result.feasible,
        witness=witness,
        phase1_objective=result.objective,
        stats=stats,
    )


def min_entangled_t(
    n: int, t_max: int, max_compositions: int = DEFAULT_MAX_COMPOSITIONS
) -> int | None:
    """Smallest t <= t_max with a feasible t-copy scheme, scanning upward
    from the closed-form lower bound; None when every t is infeasible."""
    if t_max < 1:
        raise ValueError(f"t_max must be >= 1, got {t_max}")
    for t in range(max(1, general_lower_bound(n)), t_max + 1):
        if entangled_feasible(n, t, max_compositions).feasible:
            return t
    return None

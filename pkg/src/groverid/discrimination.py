"""Single-copy discrimination power.

A one-copy input state tells two phase oracles i and j apart exactly
when its squared moduli on i and j sum to 1/2.  The pairs a state can
discriminate form its discrimination graph, and three canonical block
states (quad, pair, star) dominate everything a single copy can do: any
nontrivial state can be replaced by one of them without losing edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .amplitude import (
    FLOAT_TOL,
    AmpValue,
    SqrtRational,
    value_mag2,
    value_to_complex,
)
from .exceptions import TrivialStateError

Edge = tuple[int, int]


def all_pairs(n: int) -> list[Edge]:
    """All unordered index pairs (i, j) with 1 <= i < j <= n, lexicographic."""
    return list(itertools.combinations(range(1, n + 1), 2))


class SingleCopyState:
    """One-copy state p_1 |1> + ... + p_N |N|, dense over 1..N.

    Exact when every amplitude is a SqrtRational, otherwise complex
    floats with the usual 1e-9 normalization tolerance.
    """

    __slots__ = ("n", "amps", "exact")

    def __init__(self, n: int, amps: Sequence[AmpValue] | Mapping[int, AmpValue]):
        if n < 1:
            raise ValueError(f"dimension must be >= 1, got {n}")
        if isinstance(amps, Mapping):
            for i in amps:
                if not 1 <= i <= n:
                    raise ValueError(f"index {i} out of range 1..{n}")
            values = [amps.get(i, SqrtRational.zero()) for i in range(1, n + 1)]
        else:
            values = list(amps)
            if len(values) != n:
                raise ValueError(f"expected {n} amplitudes, got {len(values)}")
        exact = all(isinstance(v, SqrtRational) for v in values)
        if not exact:
            values = [value_to_complex(v) for v in values]
        self.n = n
        self.amps = tuple(values)
        self.exact = exact
        norm = sum(value_mag2(v) for v in values)
        if exact:
            if norm != 1:
                raise ValueError(f"exact state has squared norm {norm}, expected 1")
        elif abs(norm - 1.0) > FLOAT_TOL:
            raise ValueError(f"state has squared norm {norm!r}, expected 1 +/- {FLOAT_TOL}")

    def mag2(self, i: int) -> Fraction | float:
        if not 1 <= i <= self.n:
            raise ValueError(f"index {i} out of range 1..{self.n}")
        return value_mag2(self.amps[i - 1])

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "float"
        return f"SingleCopyState(n={self.n}, {mode})"


@dataclass(frozen=True)
class DiscriminationGraph:
    """Undirected graph on vertices 1..n whose edges are the oracle pairs
    a state can discriminate."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        for i, j in self.edges:
            if not (1 <= i < j <= self.n):
                raise ValueError(f"edge ({i}, {j}) invalid for n={self.n}")

    @classmethod
    def of(cls, n: int, edges: Iterable[Edge]) -> "DiscriminationGraph":
        normalized = frozenset((min(i, j), max(i, j)) for i, j in edges)
        return cls(n, normalized)

    @classmethod
    def complete(cls, n: int) -> "DiscriminationGraph":
        return cls(n, frozenset(all_pairs(n)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


@dataclass(frozen=True)
class CanonicalBlock:
    """One of the three canonical one-copy blocks on ambient dimension n.

    kind "quad":  amplitude 1/2 on four distinct indices.
    kind "pair":  amplitude 1/sqrt(2) on two distinct indices.
    kind "star":  amplitude sqrt((n-3)/(2(n-2))) on its center and
                  sqrt(1/(2(n-2))) on every other index (n >= 3).
    """

    kind: str
    indices: tuple[int, ...]
    n: int

    _SIZES = {"quad": 4, "pair": 2, "star": 1}
    _MIN_N = {"quad": 4, "pair": 2, "star": 3}

    def __post_init__(self):
        if self.kind not in self._SIZES:
            raise ValueError(f"unknown block kind {self.kind!r}")
        if self.n < self._MIN_N[self.kind]:
            raise ValueError(f"{self.kind} block needs n >= {self._MIN_N[self.kind]}")
        if len(self.indices) != self._SIZES[self.kind]:
            raise ValueError(f"{self.kind} block needs {self._SIZES[self.kind]} indices")
        if len(set(self.indices)) != len(self.indices):
            raise ValueError(f"block indices must be distinct: {self.indices}")
        if any(not 1 <= i <= self.n for i in self.indices):
            raise ValueError(f"block indices {self.indices} out of range 1..{self.n}")
        if self.indices != tuple(sorted(self.indices)):
            raise ValueError("block indices must be sorted ascending")

    @classmethod
    def quad(cls, a: int, b: int, c: int, d: int, n: int) -> "CanonicalBlock":
        return cls("quad", tuple(sorted((a, b, c, d))), n)

    @classmethod
    def pair(cls, i: int, j: int, n: int) -> "CanonicalBlock":
        return cls("pair", tuple(sorted((i, j))), n)

    @classmethod
    def star(cls, i: int, n: int) -> "CanonicalBlock":
        return cls("star", (i,), n)


def copy_discriminates(s: SingleCopyState, i: int, j: int) -> bool:
    """True when the state's squared moduli on i and j sum to exactly 1/2
    (within 1e-9 in float mode)."""
    if i == j:
        raise ValueError("pair indices must be distinct")
    total = s.mag2(i) + s.mag2(j)
    if s.exact:
        return total == Fraction(1, 2)
    return abs(total - 0.5) <= FLOAT_TOL


def discrimination_graph(s: SingleCopyState) -> DiscriminationGraph:
    """Edge set of all pairs the state discriminates."""
    edges = [(i, j) for i, j in all_pairs(s.n) if copy_discriminates(s, i, j)]
    return DiscriminationGraph.of(s.n, edges)


def block_state(b: CanonicalBlock) -> SingleCopyState:
    """The canonical state of a block, squared moduli stored exactly."""
    n = b.n
    if b.kind == "quad":
        amp = SqrtRational.sqrt(Fraction(1, 4))
        return SingleCopyState(n, {i: amp for i in b.indices})
    if b.kind == "pair":
        amp = SqrtRational.sqrt(Fraction(1, 2))
        return SingleCopyState(n, {i: amp for i in b.indices})
    center = b.indices[0]
    center_amp = SqrtRational.sqrt(Fraction(n - 3, 2 * (n - 2)))
    rest_amp = SqrtRational.sqrt(Fraction(1, 2 * (n - 2)))
    amps = {i: rest_amp for i in range(1, n + 1)}
    amps[center] = center_amp
    return SingleCopyState(n, amps)


def block_graph(b: CanonicalBlock) -> DiscriminationGraph:
    """Combinatorial shortcut for discrimination_graph(block_state(b)).

    At n=4 the star's amplitudes coincide with the uniform quad, so its
    true graph is the full K4 rather than the nominal star shape.
    """
    n = b.n
    if b.kind == "quad":
        return DiscriminationGraph.of(n, itertools.combinations(b.indices, 2))
    if b.kind == "pair":
        i, j = b.indices
        edges = [(i, k) for k in range(1, n + 1) if k not in (i, j)]
        edges += [(j, k) for k in range(1, n + 1) if k not in (i, j)]
        return DiscriminationGraph.of(n, edges)
    if n == 4:
        return DiscriminationGraph.complete(4)
    center = b.indices[0]
    edges = [(center, k) for k in range(1, n + 1) if k != center]
    return DiscriminationGraph.of(n, edges)


def candidate_blocks(n: int) -> Iterator[CanonicalBlock]:
    """All canonical blocks on dimension n in the fixed deterministic
    order: pairs, then quads, then stars, lexicographic indices."""
    for i, j in all_pairs(n):
        yield CanonicalBlock.pair(i, j, n)
    if n >= 4:
        for quad in itertools.combinations(range(1, n + 1), 4):
            yield CanonicalBlock("quad", quad, n)
    if n >= 3:
        for i in range(1, n + 1):
            yield CanonicalBlock.star(i, n)


def canonicalize(s: SingleCopyState) -> CanonicalBlock:
    """Replace a nontrivial state by a canonical block that discriminates
    at least the same pairs; first match in the fixed block order."""
    graph = discrimination_graph(s)
    if not graph.edges:
        raise TrivialStateError("state discriminates no pair")
    for block in candidate_blocks(s.n):
        if graph.edges <= block_graph(block).edges:
            return block
    raise ValueError("no canonical block covers the state's graph")


def is_complete_cover(graphs: Iterable[DiscriminationGraph], n: int) -> bool:
    """True when the union of the edge sets is the complete graph on n."""
    union: set[Edge] = set()
    for g in graphs:
        if g.n != n:
            raise ValueError(f"graph on {g.n} vertices mixed into cover for n={n}")
        union |= g.edges
    return len(union) == n * (n - 1) // 2

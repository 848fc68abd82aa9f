"""Scheme construction, verification, and closed-form bounds.

A product scheme is a list of one-copy blocks whose discrimination
graphs must jointly cover the complete graph.  An entangled scheme is
summarized by a weight profile: exact rational masses on compositions,
valid exactly when every pair's odd-parity mass equals 1/2.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .amplitude import FLOAT_TOL, AmpValue, SqrtRational, value_to_complex
from .discrimination import (
    CanonicalBlock,
    DiscriminationGraph,
    SingleCopyState,
    all_pairs,
    block_graph,
    block_state,
    discrimination_graph,
)
from .exceptions import IndistinguishableError, ResourceCapError
from .oracle import AmpState, Composition, overlap, tau_parity

#: Default cap on the tuple count of an expanded tensor state.
DEFAULT_MAX_TUPLES = 1_000_000

Block = Union[CanonicalBlock, SingleCopyState]


class ProductScheme:
    """Ordered list of one-copy blocks; the input state is their tensor
    product.  An empty scheme is allowed only for n=1, where there is
    nothing to discriminate."""

    __slots__ = ("n", "blocks")

    def __init__(self, n: int, blocks: Sequence[Block]):
        if n < 1:
            raise ValueError(f"dimension must be >= 1, got {n}")
        blocks = tuple(blocks)
        if not blocks and n != 1:
            raise ValueError("empty scheme is only valid for n=1")
        for b in blocks:
            if not isinstance(b, (CanonicalBlock, SingleCopyState)):
                raise TypeError(f"unsupported block type {type(b).__name__}")
            if b.n != n:
                raise ValueError(f"block on dimension {b.n} in scheme for n={n}")
        self.n = n
        self.blocks = blocks

    @property
    def t(self) -> int:
        return len(self.blocks)

    def __repr__(self) -> str:
        return f"ProductScheme(n={self.n}, t={self.t})"


class WeightProfile:
    """Exact rational masses on compositions for a t-copy entangled
    scheme; masses are nonnegative and sum to exactly 1."""

    __slots__ = ("n", "t", "weights")

    def __init__(self, n: int, t: int, weights: Mapping[Composition, Fraction]):
        if n < 1 or t < 1:
            raise ValueError("need n >= 1 and t >= 1")
        store: dict[Composition, Fraction] = {}
        for comp, q in weights.items():
            q = Fraction(q)
            if comp.n != n:
                raise ValueError(f"composition {comp.counts} has {comp.n} slots, expected {n}")
            if comp.t != t:
                raise ValueError(f"composition {comp.counts} sums to {comp.t}, expected {t}")
            if q < 0:
                raise ValueError(f"negative mass {q} on {comp.counts}")
            if q:
                store[comp] = q
        total = sum(store.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"masses sum to {total}, expected exactly 1")
        self.n = n
        self.t = t
        self.weights = store

    def __repr__(self) -> str:
        return f"WeightProfile(n={self.n}, t={self.t}, {len(self.weights)} compositions)"


Scheme = Union[ProductScheme, WeightProfile]


@dataclass(frozen=True)
class PairDefect:
    pair: tuple[int, int]
    defect: Fraction | float | None


@dataclass(frozen=True)
class SchemeReport:
    """Verification verdict; valid exactly when no pair fails."""

    valid: bool
    method: str
    failing_pairs: tuple[PairDefect, ...]

    def __post_init__(self):
        if self.valid != (not self.failing_pairs):
            raise ValueError("valid must match emptiness of failing_pairs")


def scheme_block_graph(b: Block) -> DiscriminationGraph:
    if isinstance(b, CanonicalBlock):
        return block_graph(b)
    return discrimination_graph(b)


def scheme_block_state(b: Block) -> SingleCopyState:
    if isinstance(b, CanonicalBlock):
        return block_state(b)
    return b


def construct_product_scheme(n: int) -> ProductScheme:
    """The grouping construction: split 1..n into groups of three, give
    each group {a, b, c} the blocks <a,b> and <a,c>, and cover a leftover
    of one or two elements with one extra pair block apiece anchored at 1.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if n == 1:
        return ProductScheme(1, [])
    if n == 2:
        raise IndistinguishableError(
            "the two oracles on n=2 differ only by a global phase; "
            "no scheme with any number of copies exists"
        )
    blocks: list[CanonicalBlock] = []
    for g in range(n // 3):
        a = 3 * g + 1
        blocks.append(CanonicalBlock.pair(a, a + 1, n))
        blocks.append(CanonicalBlock.pair(a, a + 2, n))
    if n % 3 == 1:
        blocks.append(CanonicalBlock.pair(1, n, n))
    elif n % 3 == 2:
        blocks.append(CanonicalBlock.pair(1, n - 1, n))
        blocks.append(CanonicalBlock.pair(1, n, n))
    return ProductScheme(n, blocks)


def construction_size(n: int) -> int:
    """Copy count of the grouping construction: 2*floor(n/3) + (n mod 3)."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if n == 1:
        return 0
    if n == 2:
        raise IndistinguishableError("no scheme exists for n=2")
    return 2 * (n // 3) + n % 3


def verify_product(
    s: ProductScheme, *, cross_check: bool = False, max_tuples: int = DEFAULT_MAX_TUPLES
) -> SchemeReport:
    """Coverage check: the blocks' graphs must union to the complete
    graph.  With cross_check, additionally expands the tensor state and
    confirms every covered pair's output overlap vanishes."""
    covered: set[tuple[int, int]] = set()
    for b in s.blocks:
        covered |= scheme_block_graph(b).edges
    failing = tuple(
        PairDefect(p, None) for p in all_pairs(s.n) if p not in covered
    )
    method = "coverage-check"
    if cross_check:
        tensor_failing = _tensor_failing_pairs(s, max_tuples=max_tuples)
        if tensor_failing != tuple(d.pair for d in failing):
            raise RuntimeError(
                "coverage check and full-tensor check disagree: "
                f"{[d.pair for d in failing]} vs {list(tensor_failing)}"
            )
        method = "full-tensor"
    return SchemeReport(valid=not failing, method=method, failing_pairs=failing)


def _tensor_failing_pairs(s: ProductScheme, *, max_tuples: int) -> tuple[tuple[int, int], ...]:
    from .oracle import GroverOracle, apply_oracle

    psi = expand_to_state(s, max_tuples=max_tuples)
    outputs = {k: apply_oracle(GroverOracle(s.n, k), psi) for k in range(1, s.n + 1)}
    failing = []
    for i, j in all_pairs(s.n):
        value = overlap(outputs[i], outputs[j])
        if isinstance(value, Fraction):
            zero = value == 0
        else:
            zero = abs(value) <= FLOAT_TOL
        if not zero:
            failing.append((i, j))
    return tuple(failing)


def verify_entangled(w: WeightProfile) -> SchemeReport:
    """Exact parity-mass check: for every pair, the mass on odd-parity
    compositions must equal exactly 1/2."""
    failing = []
    for i, j in all_pairs(w.n):
        mass = sum(
            (q for comp, q in w.weights.items() if tau_parity(comp, i, j) == 1),
            Fraction(0),
        )
        if mass != Fraction(1, 2):
            failing.append(PairDefect((i, j), mass - Fraction(1, 2)))
    return SchemeReport(valid=not failing, method="parity-mass", failing_pairs=tuple(failing))


def expand_to_state(s: Scheme, *, max_tuples: int = DEFAULT_MAX_TUPLES) -> AmpState:
    """Lift a scheme to its multi-copy input state.

    Product schemes expand to the full tensor product of their blocks.
    Weight profiles place amplitude sqrt(q) on one representative tuple
    per composition, which preserves every pair condition because the
    parity depends on a tuple only through its composition.
    """
    if isinstance(s, WeightProfile):
        amps = {
            comp.representative_tuple(): SqrtRational.sqrt(q)
            for comp, q in s.weights.items()
        }
        if len(amps) > max_tuples:
            raise ResourceCapError(f"{len(amps)} tuples exceeds cap {max_tuples}")
        return AmpState(s.n, s.t, amps)
    if not s.blocks:
        raise ValueError("an empty scheme has no input state")
    states = [scheme_block_state(b) for b in s.blocks]

    def nonzero(v: AmpValue) -> bool:
        return not v.is_zero if isinstance(v, SqrtRational) else v != 0

    supports = [
        [(i, v) for i, v in enumerate(st.amps, start=1) if nonzero(v)]
        for st in states
    ]
    count = math.prod(len(sup) for sup in supports)
    if count > max_tuples:
        raise ResourceCapError(f"{count} tuples exceeds cap {max_tuples}")
    exact = all(st.exact for st in states)
    amps: dict[tuple[int, ...], AmpValue] = {}
    for combo in itertools.product(*supports):
        key = tuple(i for i, _ in combo)
        if exact:
            value: AmpValue = SqrtRational.sqrt(Fraction(1))
            for _, v in combo:
                value = value * v
        else:
            value = complex(1)
            for _, v in combo:
                value *= value_to_complex(v)
        amps[key] = value
    return AmpState(s.n, len(states), amps)


def builtin(name: str, diag: int = 3) -> Scheme:
    """The built-in example schemes.

    n4-single:     one quad block, the only single-copy scheme (n=4).
    n5-product:    star(1) tensor quad{2,3,4,5}, two copies for n=5.
    n6-entangled:  the two-copy entangled profile for n=6, mass 1/16 on
                   every mixed pair composition plus 1/16 on one doubled
                   index (``diag``, default 3 — any index works).
    """
    if name == "n4-single":
        return ProductScheme(4, [CanonicalBlock.quad(1, 2, 3, 4, 4)])
    if name == "n5-product":
        return ProductScheme(5, [CanonicalBlock.star(1, 5), CanonicalBlock.quad(2, 3, 4, 5, 5)])
    if name == "n6-entangled":
        if not 1 <= diag <= 6:
            raise ValueError(f"diag index {diag} out of range 1..6")
        sixteenth = Fraction(1, 16)
        weights: dict[Composition, Fraction] = {}
        for i, j in all_pairs(6):
            counts = [0] * 6
            counts[i - 1] = counts[j - 1] = 1
            weights[Composition(tuple(counts))] = sixteenth
        counts = [0] * 6
        counts[diag - 1] = 2
        weights[Composition(tuple(counts))] = sixteenth
        return WeightProfile(6, 2, weights)
    raise ValueError(f"unknown builtin scheme {name!r}")


BUILTIN_NAMES = ("n4-single", "n5-product", "n6-entangled")


def general_lower_bound(n: int) -> int:
    """Smallest integer t with t >= (n - sqrt(n))/2, in exact integer
    arithmetic: t works exactly when n - 2t <= isqrt(n)."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return (n - math.isqrt(n) + 1) // 2

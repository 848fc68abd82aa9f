"""Phase oracles, multi-copy basis tuples, compositions, and inner products.

Database items are indexed 1..N externally.  A phase oracle with target
``x0`` flips the sign of the basis state ``|x0>`` and leaves every other
basis state unchanged; on a t-copy basis tuple it contributes one sign
flip per occurrence of the target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .amplitude import (
    FLOAT_TOL,
    AmpValue,
    SqrtRational,
    signed_sqrt_sum,
    value_mag2,
    value_to_complex,
)
from .exceptions import ResourceCapError

#: Default cap on the number of compositions an enumeration may produce.
DEFAULT_MAX_COMPOSITIONS = 100_000

#: An ordered multi-copy basis label a_1..a_t, entries in 1..N.
BasisTuple = tuple[int, ...]


@dataclass(frozen=True)
class GroverOracle:
    """Diagonal +/-1 phase oracle on dimension n with a single target index."""

    n: int
    target: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        if not 1 <= self.target <= self.n:
            raise ValueError(f"target {self.target} out of range 1..{self.n}")


@dataclass(frozen=True)
class Composition:
    """Multiplicity vector c_1..c_N of a basis tuple; the sufficient
    statistic for every pair-parity condition."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if not self.counts:
            raise ValueError("composition needs at least one slot")
        if any(c < 0 for c in self.counts):
            raise ValueError(f"counts must be nonnegative: {self.counts}")

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def t(self) -> int:
        return sum(self.counts)

    @property
    def l1(self) -> int:
        """Number of odd multiplicities."""
        return sum(1 for c in self.counts if c % 2 == 1)

    @property
    def l2(self) -> int:
        """Number of even multiplicities."""
        return self.n - self.l1

    def representative_tuple(self) -> BasisTuple:
        """Lexicographically smallest tuple with this composition."""
        out: list[int] = []
        for i, c in enumerate(self.counts, start=1):
            out.extend([i] * c)
        return tuple(out)


def validate_tuple(a: BasisTuple, n: int) -> None:
    if len(a) < 1:
        raise ValueError("basis tuple must have length >= 1")
    for entry in a:
        if not 1 <= entry <= n:
            raise ValueError(f"tuple entry {entry} out of range 1..{n}")


def composition_of(a: BasisTuple, n: int) -> Composition:
    """Multiplicity vector of a tuple; invariant under permuting the tuple."""
    validate_tuple(a, n)
    counts = [0] * n
    for entry in a:
        counts[entry - 1] += 1
    return Composition(tuple(counts))


def tau_parity(c: Composition, i: int, j: int) -> int:
    """Sign-exponent parity (c_i + c_j) mod 2 for the oracle pair (i, j)."""
    if i == j:
        raise ValueError("pair indices must be distinct")
    for idx in (i, j):
        if not 1 <= idx <= c.n:
            raise ValueError(f"index {idx} out of range 1..{c.n}")
    return (c.counts[i - 1] + c.counts[j - 1]) % 2


def odd_pair_count(c: Composition) -> int:
    """Number of unordered pairs (i, j) whose tau parity is odd: l1*(N-l1)."""
    return c.l1 * (c.n - c.l1)


def enumerate_compositions(
    n: int, t: int, max_compositions: int = DEFAULT_MAX_COMPOSITIONS
) -> list[Composition]:
    """All compositions of t into n nonnegative parts, descending
    lexicographic on the count vectors (so ``(t,0,..)`` first), which
    orders them by their smallest representative tuple."""
    if n < 1 or t < 1:
        raise ValueError("need n >= 1 and t >= 1")
    total = math.comb(n + t - 1, n - 1)
    if total > max_compositions:
        raise ResourceCapError(
            f"{total} compositions for n={n}, t={t} exceeds cap {max_compositions}"
        )
    out: list[Composition] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int):
        if slots == 1:
            out.append(Composition(prefix + (remaining,)))
            return
        for c in range(remaining, -1, -1):
            rec(prefix + (c,), remaining - c, slots - 1)

    rec((), t, n)
    return out


class AmpState:
    """Sparse t-copy state: a map from basis tuples to amplitudes.

    The state is exact when every amplitude is a SqrtRational; any float
    amplitude coerces the whole state to complex floats.  Instances are
    immutable after construction and safe to share.
    """

    __slots__ = ("n", "t", "amps", "exact")

    def __init__(self, n: int, t: int, amps: Mapping[BasisTuple, AmpValue]):
        if n < 1 or t < 1:
            raise ValueError("need n >= 1 and t >= 1")
        exact = all(isinstance(v, SqrtRational) for v in amps.values())
        store: dict[BasisTuple, AmpValue] = {}
        for a, v in amps.items():
            a = tuple(a)
            if len(a) != t:
                raise ValueError(f"tuple {a} has length {len(a)}, expected t={t}")
            validate_tuple(a, n)
            if exact:
                if not v.is_zero:
                    store[a] = v
            else:
                v = value_to_complex(v)
                if v != 0:
                    store[a] = v
        self.n = n
        self.t = t
        self.amps = store
        self.exact = exact
        norm = sum(value_mag2(v) for v in store.values())
        if exact:
            if norm != 1:
                raise ValueError(f"exact state has squared norm {norm}, expected 1")
        elif abs(norm - 1.0) > FLOAT_TOL:
            raise ValueError(f"state has squared norm {norm!r}, expected 1 +/- {FLOAT_TOL}")

    def mag2(self, a: BasisTuple) -> Fraction | float:
        v = self.amps.get(tuple(a))
        if v is None:
            return Fraction(0) if self.exact else 0.0
        return value_mag2(v)

    def tuples(self) -> Iterable[BasisTuple]:
        return self.amps.keys()

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "float"
        return f"AmpState(n={self.n}, t={self.t}, {len(self.amps)} tuples, {mode})"


def _check_same_shape(oracle: GroverOracle, state: AmpState) -> None:
    if oracle.n != state.n:
        raise ValueError(f"oracle dimension {oracle.n} != state dimension {state.n}")


def apply_oracle(oracle: GroverOracle, state: AmpState) -> AmpState:
    """Apply the oracle to every copy at once: the amplitude of tuple a
    picks up one sign flip per occurrence of the target in a."""
    _check_same_shape(oracle, state)
    new_amps: dict[BasisTuple, AmpValue] = {}
    for a, v in state.amps.items():
        if a.count(oracle.target) % 2 == 1:
            v = -v
        new_amps[a] = v
    return AmpState(state.n, state.t, new_amps)


def apply_oracle_to_copy(oracle: GroverOracle, state: AmpState, copy: int) -> AmpState:
    """Apply the oracle to a single copy slot (1-based); one query."""
    _check_same_shape(oracle, state)
    if not 1 <= copy <= state.t:
        raise ValueError(f"copy slot {copy} out of range 1..{state.t}")
    new_amps: dict[BasisTuple, AmpValue] = {}
    for a, v in state.amps.items():
        if a[copy - 1] == oracle.target:
            v = -v
        new_amps[a] = v
    return AmpState(state.n, state.t, new_amps)


def overlap(x: AmpState, y: AmpState) -> Fraction | complex:
    """Inner product <x|y>.

    Exact Fraction when both states are exact and the surd parts of the
    cross terms cancel to a rational (always the case for two oracle
    outputs of a common input state); complex float otherwise.
    """
    if (x.n, x.t) != (y.n, y.t):
        raise ValueError(
            f"shape mismatch: ({x.n}, {x.t}) vs ({y.n}, {y.t})"
        )
    common = x.amps.keys() & y.amps.keys()
    if x.exact and y.exact:
        terms = []
        for a in common:
            xv, yv = x.amps[a], y.amps[a]
            terms.append((xv.sign * yv.sign, xv.mag2 * yv.mag2))
        result = signed_sqrt_sum(terms)
        if isinstance(result, Fraction):
            return result
        return complex(result)
    total = 0j
    for a in common:
        total += value_to_complex(x.amps[a]).conjugate() * value_to_complex(y.amps[a])
    return total

"""End-to-end identification against a hidden oracle.

The hidden oracle is wrapped in a black box that exposes only its
dimension and per-copy application, so the identification path never
sees the target index and a run on a t-copy scheme costs exactly t
recorded applications.  Classification compares the black-box output
against the precomputed outputs of every candidate oracle; for a valid
scheme those are mutually orthogonal, so exactly one overlap has unit
magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .amplitude import FLOAT_TOL
from .discrimination import all_pairs
from .exceptions import AmbiguousClassificationError
from .oracle import AmpState, GroverOracle, apply_oracle, apply_oracle_to_copy, overlap
from .schemes import DEFAULT_MAX_TUPLES, Scheme, expand_to_state

#: Float-mode classification thresholds: accept at or above the high
#: mark, reject at or below the low mark, anything between is ambiguous.
ACCEPT_THRESHOLD = 1 - 1e-6
REJECT_THRESHOLD = 1e-6


class OracleBlackBox:
    """Query-counting wrapper that hides an oracle's target index."""

    __slots__ = ("_oracle", "calls")

    def __init__(self, oracle: GroverOracle):
        self._oracle = oracle
        self.calls = 0

    @property
    def n(self) -> int:
        return self._oracle.n

    def apply(self, state: AmpState, copy: int) -> AmpState:
        """Apply the hidden oracle to one copy slot; counts one query."""
        self.calls += 1
        return apply_oracle_to_copy(self._oracle, state, copy)


@dataclass(frozen=True)
class IdentificationRun:
    n: int
    scheme: Scheme
    hidden_queries_used: int
    identified: int
    per_candidate_overlaps: tuple[Union[Fraction, float], ...]


def run_identification(
    scheme: Scheme,
    hidden: Union[GroverOracle, OracleBlackBox],
    *,
    max_tuples: int = DEFAULT_MAX_TUPLES,
) -> IdentificationRun:
    """Run a scheme against a hidden oracle and classify the output.

    The scheme is expected to pass its verifier; running an invalid one
    surfaces as AmbiguousClassificationError, since its candidate
    outputs are not mutually orthogonal.  Query count equals the
    scheme's copy count.
    """
    box = hidden if isinstance(hidden, OracleBlackBox) else OracleBlackBox(hidden)
    if box.n != scheme.n:
        raise ValueError(f"hidden oracle dimension {box.n} != scheme dimension {scheme.n}")

    psi = expand_to_state(scheme, max_tuples=max_tuples)
    calls_before = box.calls
    out = psi
    for copy in range(1, psi.t + 1):
        out = box.apply(out, copy)
    queries = box.calls - calls_before

    magnitudes: list[Union[Fraction, float]] = []
    matches: list[int] = []
    for k in range(1, scheme.n + 1):
        candidate = apply_oracle(GroverOracle(scheme.n, k), psi)
        value = overlap(candidate, out)
        mag = abs(value)
        magnitudes.append(mag)
        if mag >= ACCEPT_THRESHOLD:
            matches.append(k)
        elif mag > REJECT_THRESHOLD:
            raise AmbiguousClassificationError(
                f"candidate {k} has overlap magnitude {float(mag)!r}, neither 0 nor 1"
            )
    if len(matches) != 1:
        raise AmbiguousClassificationError(
            f"{len(matches)} candidates matched the output, expected exactly 1"
        )
    return IdentificationRun(
        n=scheme.n,
        scheme=scheme,
        hidden_queries_used=queries,
        identified=matches[0],
        per_candidate_overlaps=tuple(magnitudes),
    )


def exhaustive_check(scheme: Scheme, *, max_tuples: int = DEFAULT_MAX_TUPLES) -> bool:
    """True when all pairwise candidate-output overlaps vanish, exactly
    where possible; equivalent to the scheme verifier's verdict."""
    psi = expand_to_state(scheme, max_tuples=max_tuples)
    outputs = {
        k: apply_oracle(GroverOracle(scheme.n, k), psi) for k in range(1, scheme.n + 1)
    }
    for i, j in all_pairs(scheme.n):
        value = overlap(outputs[i], outputs[j])
        if isinstance(value, Fraction):
            if value != 0:
                return False
        elif abs(value) > FLOAT_TOL:
            return False
    return True

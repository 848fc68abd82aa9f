"""Tests for phase oracles, compositions, and inner products."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from groverid.amplitude import SqrtRational
from groverid.exceptions import ResourceCapError
from groverid.oracle import (
    AmpState,
    Composition,
    GroverOracle,
    apply_oracle,
    apply_oracle_to_copy,
    composition_of,
    enumerate_compositions,
    odd_pair_count,
    overlap,
    tau_parity,
)


def brute_tau(a, i, j):
    """Independent parity oracle: sum of per-entry deltas, mod 2."""
    return sum((1 if ak == i else 0) + (1 if ak == j else 0) for ak in a) % 2


def brute_odd_pair_count(c):
    """Count pairs with odd parity by enumerating all of them."""
    n = c.n
    return sum(
        1
        for i, j in itertools.combinations(range(1, n + 1), 2)
        if tau_parity(c, i, j) == 1
    )


def uniform_pair_state(n, i, j):
    """(|i> + |j>) / sqrt(2) as a one-copy AmpState."""
    half = SqrtRational.sqrt(Fraction(1, 2))
    return AmpState(n, 1, {(i,): half, (j,): half})


def phi6_state(diag=3):
    """The 2-copy entangled state for n=6: (1/4)(sum_{i<j} |ij> + |kk>)."""
    amp = SqrtRational.sqrt(Fraction(1, 16))
    amps = {(i, j): amp for i, j in itertools.combinations(range(1, 7), 2)}
    amps[(diag, diag)] = amp
    return AmpState(6, 2, amps)


class TestGroverOracle:
    def test_target_in_range(self):
        GroverOracle(6, 3)
        with pytest.raises(ValueError):
            GroverOracle(6, 0)
        with pytest.raises(ValueError):
            GroverOracle(6, 7)

    def test_sign_kept_on_even_count(self):
        # |33> under target 3: the target occurs twice, sign unchanged
        state = phi6_state()
        out = apply_oracle(GroverOracle(6, 3), state)
        assert out.amps[(3, 3)] == SqrtRational.sqrt(Fraction(1, 16))

    def test_sign_flipped_on_odd_count(self):
        state = phi6_state()
        out = apply_oracle(GroverOracle(6, 3), state)
        assert out.amps[(3, 5)] == -SqrtRational.sqrt(Fraction(1, 16))

    def test_involution(self):
        rng = random.Random(7)
        for _ in range(25):
            n = rng.randint(2, 6)
            t = rng.randint(1, 3)
            state = random_float_state(rng, n, t)
            o = GroverOracle(n, rng.randint(1, n))
            back = apply_oracle(o, apply_oracle(o, state))
            assert back.amps.keys() == state.amps.keys()
            for a in state.amps:
                assert back.amps[a] == pytest.approx(state.amps[a])

    def test_per_copy_applications_compose_to_full(self):
        state = phi6_state()
        o = GroverOracle(6, 4)
        stepped = state
        for k in range(1, 3):
            stepped = apply_oracle_to_copy(o, stepped, k)
        full = apply_oracle(o, state)
        assert stepped.amps == full.amps

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            apply_oracle(GroverOracle(5, 1), phi6_state())


def random_float_state(rng, n, t, support=None):
    tuples = list(itertools.product(range(1, n + 1), repeat=t))
    if support is None:
        support = rng.randint(1, len(tuples))
    chosen = rng.sample(tuples, support)
    raw = {a: complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for a in chosen}
    norm = math.sqrt(sum(abs(v) ** 2 for v in raw.values()))
    return AmpState(n, t, {a: v / norm for a, v in raw.items()})


def random_exact_state(rng, n, t):
    """Exact state with random signed rational squared moduli."""
    tuples = list(itertools.product(range(1, n + 1), repeat=t))
    chosen = rng.sample(tuples, rng.randint(1, len(tuples)))
    weights = [Fraction(rng.randint(1, 9)) for _ in chosen]
    total = sum(weights)
    return AmpState(
        n,
        t,
        {
            a: SqrtRational.sqrt(w / total, sign=rng.choice((-1, 1)))
            for a, w in zip(chosen, weights)
        },
    )


class TestTauParity:
    def test_double_occurrence_is_even(self):
        c = composition_of((3, 3), 6)
        assert tau_parity(c, 3, 5) == 0

    def test_single_occurrence_is_odd(self):
        c = composition_of((1, 2), 3)
        assert tau_parity(c, 1, 3) == 1

    def test_matches_bruteforce_on_random_tuples(self):
        rng = random.Random(11)
        for _ in range(200):
            n = rng.randint(2, 8)
            t = rng.randint(1, 6)
            a = tuple(rng.randint(1, n) for _ in range(t))
            i, j = rng.sample(range(1, n + 1), 2)
            assert tau_parity(composition_of(a, n), i, j) == brute_tau(a, i, j)

    def test_rejects_equal_and_out_of_range_indices(self):
        c = composition_of((1, 2), 3)
        with pytest.raises(ValueError):
            tau_parity(c, 2, 2)
        with pytest.raises(ValueError):
            tau_parity(c, 1, 4)


class TestComposition:
    def test_examples(self):
        assert composition_of((1, 2, 3), 3).counts == (1, 1, 1)
        assert composition_of((3, 3), 6).counts == (0, 0, 2, 0, 0, 0)

    def test_permutation_invariance(self):
        rng = random.Random(3)
        for _ in range(50):
            n = rng.randint(2, 7)
            t = rng.randint(1, 6)
            a = [rng.randint(1, n) for _ in range(t)]
            shuffled = a[:]
            rng.shuffle(shuffled)
            assert composition_of(tuple(a), n) == composition_of(tuple(shuffled), n)
            assert composition_of(tuple(a), n) == composition_of(tuple(sorted(a)), n)

    def test_derived_counts(self):
        c = Composition((1, 0, 2, 3))
        assert c.t == 6
        assert c.l1 == 2
        assert c.l2 == 2
        assert c.representative_tuple() == (1, 3, 3, 4, 4, 4)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            Composition((1, -1))


class TestOddPairCount:
    def test_formula_examples(self):
        assert odd_pair_count(Composition((1, 1, 0, 0, 0, 0))) == 8
        assert odd_pair_count(Composition((0, 0, 2, 0, 0, 0))) == 0

    def test_exhaustive_small(self):
        for n in range(2, 9):
            for t in range(1, 5):
                for c in enumerate_compositions(n, t):
                    assert odd_pair_count(c) == brute_odd_pair_count(c)

    def test_random_bound(self):
        rng = random.Random(19)
        for _ in range(1000):
            n = rng.randint(2, 10)
            t = rng.randint(1, min(5, n // 2))
            a = tuple(rng.randint(1, n) for _ in range(t))
            c = composition_of(a, n)
            count = odd_pair_count(c)
            assert count == brute_odd_pair_count(c)
            assert count <= t * (n - t)


class TestOverlap:
    def test_self_overlap_is_one(self):
        s = uniform_pair_state(5, 1, 2)
        assert overlap(s, s) == Fraction(1)

    def test_plus_minus_orthogonal(self):
        half = SqrtRational.sqrt(Fraction(1, 2))
        plus = AmpState(2, 1, {(1,): half, (2,): half})
        minus = AmpState(2, 1, {(1,): half, (2,): -half})
        assert overlap(plus, minus) == Fraction(0)

    def test_entangled_outputs_orthogonal(self):
        # Two oracle outputs of the n=6 entangled state: exactly orthogonal.
        state = phi6_state()
        out1 = apply_oracle(GroverOracle(6, 1), state)
        out2 = apply_oracle(GroverOracle(6, 2), state)
        value = overlap(out1, out2)
        assert value == Fraction(0)

    def test_mixed_surds_fall_back_to_float(self):
        third = SqrtRational.sqrt(Fraction(1, 3))
        x = AmpState(3, 1, {(1,): third, (2,): third, (3,): third})
        y = uniform_pair_state(3, 1, 2)
        value = overlap(x, y)
        assert isinstance(value, complex)
        assert value.real == pytest.approx(2 / math.sqrt(6))

    def test_sign_rule_under_oracle_pair(self):
        # applying f_i then f_j flips a tuple's sign exactly when the
        # tuple's composition has odd parity for (i, j)
        rng = random.Random(57)
        one = SqrtRational.sqrt(Fraction(1))
        for _ in range(100):
            n = rng.randint(2, 7)
            t = rng.randint(1, 4)
            a = tuple(rng.randint(1, n) for _ in range(t))
            i, j = rng.sample(range(1, n + 1), 2)
            state = AmpState(n, t, {a: one})
            out = apply_oracle(GroverOracle(n, j), state)
            out = apply_oracle(GroverOracle(n, i), out)
            sign = out.amps[a].sign
            parity = tau_parity(composition_of(a, n), i, j)
            assert sign == (-1) ** parity

    def test_norm_preserved_under_oracles(self):
        rng = random.Random(23)
        for _ in range(20):
            n = rng.randint(2, 5)
            t = rng.randint(1, 2)
            x = random_float_state(rng, n, t)
            y = random_float_state(rng, n, t)
            o = GroverOracle(n, rng.randint(1, n))
            before = abs(overlap(x, y))
            after = abs(overlap(apply_oracle(o, x), apply_oracle(o, y)))
            assert after == pytest.approx(before, abs=1e-9)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            overlap(uniform_pair_state(5, 1, 2), uniform_pair_state(6, 1, 2))

    def test_exact_agrees_with_float_on_random_exact_states(self):
        # differential check: the exact path must compute the same value
        # the float path does, not just the same zero set
        rng = random.Random(71)
        for _ in range(60):
            n = rng.randint(2, 5)
            t = rng.randint(1, 2)
            x = random_exact_state(rng, n, t)
            y = random_exact_state(rng, n, t)
            exact = overlap(x, y)
            fx = AmpState(n, t, {a: complex(float(v)) for a, v in x.amps.items()})
            fy = AmpState(n, t, {a: complex(float(v)) for a, v in y.amps.items()})
            approx = overlap(fx, fy)
            assert complex(exact) == pytest.approx(approx, abs=1e-9)


class TestEnumerateCompositions:
    def test_counts(self):
        assert len(enumerate_compositions(6, 2)) == 21
        assert len(enumerate_compositions(7, 2)) == 28

    def test_order_for_n2_t1(self):
        comps = enumerate_compositions(2, 1)
        assert [c.counts for c in comps] == [(1, 0), (0, 1)]

    def test_descending_lexicographic_no_duplicates(self):
        comps = enumerate_compositions(4, 3)
        vectors = [c.counts for c in comps]
        assert vectors == sorted(vectors, reverse=True)
        assert len(set(vectors)) == len(vectors)
        assert all(sum(v) == 3 for v in vectors)

    def test_cap(self):
        with pytest.raises(ResourceCapError):
            enumerate_compositions(30, 30, max_compositions=1000)


class TestAmpState:
    def test_rejects_unnormalized_exact(self):
        with pytest.raises(ValueError):
            AmpState(2, 1, {(1,): SqrtRational.sqrt(Fraction(1, 2))})

    def test_rejects_unnormalized_float(self):
        with pytest.raises(ValueError):
            AmpState(2, 1, {(1,): 0.9 + 0j})

    def test_drops_exact_zeros(self):
        amps = {
            (1,): SqrtRational.sqrt(Fraction(1)),
            (2,): SqrtRational.zero(),
        }
        s = AmpState(2, 1, amps)
        assert (2,) not in s.amps
        assert s.exact

    def test_mixed_values_coerce_to_float(self):
        s = AmpState(
            2,
            1,
            {(1,): SqrtRational.sqrt(Fraction(1, 2)), (2,): complex(math.sqrt(0.5))},
        )
        assert not s.exact
        assert isinstance(s.amps[(1,)], complex)

    def test_tuple_validation(self):
        with pytest.raises(ValueError):
            AmpState(2, 2, {(1,): SqrtRational.sqrt(Fraction(1))})
        with pytest.raises(ValueError):
            AmpState(2, 1, {(3,): SqrtRational.sqrt(Fraction(1))})

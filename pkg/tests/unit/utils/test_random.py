"""Test :mod:`clevrshift.utils._random`."""

from collections import Counter

import jax.random as jr
import pytest
from hypothesis import given, settings, strategies as st
from jaxtyping import PRNGKeyArray

from clevrshift.errors import InvalidParameterError
from clevrshift.utils import RandomStream, derive_key


def same(a: PRNGKeyArray, b: PRNGKeyArray) -> bool:
    return bool((jr.key_data(a) == jr.key_data(b)).all())


class TestDeriveKey:
    def test_path_matters(self) -> None:
        assert same(derive_key(3, 0, 1), derive_key(3, 0, 1))
        assert not same(derive_key(3, 0, 1), derive_key(3, 1, 0))
        assert not same(derive_key(3, 0), derive_key(3, 0, 0))

    def test_high_bits_matter(self) -> None:
        assert not same(derive_key(1), derive_key(1 + 2**32))

    @pytest.mark.parametrize("seed", [-1, 2**64])
    def test_seed_range(self, seed: int) -> None:
        with pytest.raises(InvalidParameterError, match="seed"):
            derive_key(seed)


class TestRandomStream:
    def test_crosses_blocks(self) -> None:
        a = RandomStream(jr.key(1), block=3)
        b = RandomStream(jr.key(1), block=3)
        assert [a.uniform() for _ in range(10)] == [b.uniform() for _ in range(10)]

    @settings(max_examples=25, deadline=None)
    @given(n=st.integers(1, 50))
    def test_integer_range(self, n: int) -> None:
        s = RandomStream(jr.key(n), block=16)
        assert all(0 <= s.integer(n) < n for _ in range(20))

    def test_integer_empty(self) -> None:
        with pytest.raises(InvalidParameterError, match="empty range"):
            RandomStream(jr.key(0)).integer(0)

    def test_weighted_index_skips_zero(self) -> None:
        s = RandomStream(jr.key(0))
        picks = Counter(s.weighted_index([0.0, 1.0, 0.0, 3.0]) for _ in range(400))
        assert set(picks) == {1, 3}
        assert picks[3] > picks[1]

    def test_weighted_index_needs_mass(self) -> None:
        with pytest.raises(InvalidParameterError, match="positive total"):
            RandomStream(jr.key(0)).weighted_index([0.0, 0.0])

    def test_shuffled_is_permutation(self) -> None:
        s = RandomStream(jr.key(2))
        seq = list(range(20))
        out = s.shuffled(seq)
        assert sorted(out) == seq
        assert seq == list(range(20))

    def test_fork_ignores_consumption(self) -> None:
        a, b = RandomStream(jr.key(4)), RandomStream(jr.key(4))
        for _ in range(7):
            a.uniform()
        assert a.fork(1).uniform() == b.fork(1).uniform()
        assert a.fork(1).uniform() != a.fork(2).uniform()

    def test_bad_block(self) -> None:
        with pytest.raises(InvalidParameterError, match="block"):
            RandomStream(jr.key(0), block=0)

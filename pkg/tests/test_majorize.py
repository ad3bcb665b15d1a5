"""Tests for multiplicative majorization and the block feasibility test."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jointri.errors import DimensionMismatch, InvalidBlockSpec, NonFiniteEntries
from jointri.majorize import (
    BlockSpec,
    block_feasible,
    geometric_mean_vector,
    majorizes,
    project_product,
    violated_prefix,
)

positive_vectors = st.lists(
    st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=8,
)


class TestMajorizes:
    def test_geometric_mean_pair(self):
        assert majorizes([4, 1], [2, 2])

    def test_prefix_violation(self):
        assert not majorizes([4, 1], [8, 0.5])
        assert violated_prefix([4, 1], [8, 0.5]) == 1

    def test_product_mismatch_reports_last_index(self):
        assert violated_prefix([4, 1], [2, 1]) == 2

    def test_order_is_irrelevant(self):
        assert majorizes([1, 4], [2, 2])
        assert majorizes([4, 1, 2], [2, 2, 2])

    def test_third_prefix(self):
        # prefixes: 8 >= 4, 8*4 >= 4*4, 8*4*1 < 4*4*4 fails product at n
        assert violated_prefix([8, 4, 1], [4, 4, 4]) == 3

    def test_tolerance_admits_roundoff(self):
        assert majorizes([4, 1], [2 * (1 + 1e-12), 2 / (1 + 1e-12)])

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            majorizes([1, 2], [1, 2, 3])

    def test_nonpositive_rejected(self):
        with pytest.raises(NonFiniteEntries):
            majorizes([1, 0], [1, 0])

    def test_long_vectors_do_not_overflow(self):
        x = np.full(400, 1e300) ** 0.5
        assert majorizes(x, geometric_mean_vector(x))

    @given(positive_vectors)
    @settings(max_examples=100, deadline=None)
    def test_every_vector_majorizes_its_geometric_mean(self, x):
        assert majorizes(x, geometric_mean_vector(x))

    @given(positive_vectors)
    @settings(max_examples=100, deadline=None)
    def test_every_vector_majorizes_itself(self, x):
        assert majorizes(x, list(reversed(x)))

    def test_mutual_majorization_fails_for_a_spread_vector(self):
        assert majorizes([4, 1], [2, 2])
        assert not majorizes([2, 2], [4, 1])

    @given(
        st.lists(
            st.tuples(
                st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False),
                st.sampled_from([1.0, 1.0, 1.0, 0.5, 2.0, 1.1]),
            ),
            min_size=1,
            max_size=8,
        ),
        st.randoms(use_true_random=False),
    )
    @settings(max_examples=200, deadline=None)
    def test_mutual_majorization_means_permutation(self, pairs, random):
        x = [v for v, _ in pairs]
        y = [v * f for v, f in pairs]
        random.shuffle(y)
        if majorizes(x, y) and majorizes(y, x):
            assert np.allclose(np.log(np.sort(x)), np.log(np.sort(y)), rtol=0.0, atol=1e-6)


class TestGeometricMean:
    def test_values(self):
        assert np.allclose(geometric_mean_vector([8, 1, 1]), [2, 2, 2])

    def test_project_product(self):
        t = project_product([3, 3], [4, 1])
        assert np.isclose(np.prod(t), 4.0)
        assert np.isclose(t[0], t[1])


class TestBlockFeasible:
    def test_orders_blocks_by_per_element_ratio(self):
        # per-element ratios (2, 1.5): block 1 goes first and needs 2 <= 1.8
        spec = BlockSpec.from_block_ratios((1, 2), (2.0, 2.25))
        assert not block_feasible([1.8, 5 / 3, 1.5], spec)

    def test_feasible_split(self):
        spec = BlockSpec.from_block_ratios((1, 2), (1.8, 2.5))
        assert block_feasible([1.8, 5 / 3, 1.5], spec)

    def test_scalar_blocks_reduce_to_majorization(self):
        spec = BlockSpec(sizes=(1, 1), per_element_ratios=(2.0, 2.0))
        assert block_feasible([4, 1], spec)
        spec = BlockSpec(sizes=(1, 1), per_element_ratios=(8.0, 0.5))
        assert not block_feasible([4, 1], spec)

    def test_product_mismatch(self):
        spec = BlockSpec(sizes=(2,), per_element_ratios=(3.0,))
        assert not block_feasible([4, 1], spec)

    def test_derived_block_ratios(self):
        spec = BlockSpec(sizes=(1, 2), per_element_ratios=(2.0, 1.5))
        assert np.allclose(spec.ratios, (2.0, 2.25))
        assert spec.n == 3

    def test_inconsistent_ratios_rejected(self):
        with pytest.raises(InvalidBlockSpec):
            BlockSpec(sizes=(1, 2), per_element_ratios=(2.0, 1.5), ratios=(2.0, 3.0))

    def test_bad_sizes_rejected(self):
        with pytest.raises(InvalidBlockSpec):
            BlockSpec(sizes=(0, 2), per_element_ratios=(1.0, 1.0))

    def test_dimension_mismatch(self):
        spec = BlockSpec(sizes=(1, 1), per_element_ratios=(1.0, 1.0))
        with pytest.raises(DimensionMismatch):
            block_feasible([1, 1, 1], spec)

    def test_single_block_needs_only_the_product(self):
        spec = BlockSpec.from_block_ratios((2,), (1.0,))
        assert block_feasible([2, 0.5], spec)

    def test_two_blocks_on_the_prefix_boundary(self):
        # r = (2, 1/2): the first block needs 4 <= 4*1, the products agree
        spec = BlockSpec.from_block_ratios((2, 2), (4.0, 0.25))
        assert np.allclose(spec.per_element_ratios, (2.0, 0.5))
        assert block_feasible([4, 1, 1, 0.25], spec)

    def test_leading_block_exceeds_largest_value(self):
        spec = BlockSpec.from_block_ratios((1, 2), (8.0, 0.125))
        assert not block_feasible([2, 2, 0.25], spec)

    def test_scalar_blocks_agree_with_majorization(self, rng):
        outcomes = []
        for trial in range(500):
            n = int(rng.integers(1, 7))
            mu = np.exp(rng.normal(0.0, 1.0, n))
            log_mu = np.log(rng.permutation(mu))
            spread = rng.uniform(0.0, 1.5)
            log_r = spread * log_mu + (1 - spread) * np.mean(log_mu) + rng.normal(0.0, 0.05, n)
            r = np.exp(log_r)
            if trial % 10:
                r = project_product(r, mu)
            expected = majorizes(mu, r)
            assert block_feasible(mu, BlockSpec.from_block_ratios([1] * n, r)) == expected
            outcomes.append(expected)
        assert 0 < sum(outcomes) < len(outcomes)

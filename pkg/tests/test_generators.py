"""Instance generators: determinism, structure, and resampling."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphshare.core import Instance, TiePolicy
from graphshare.generators import (
    CYCLE7_MIN_M,
    ExhaustedAttemptsError,
    MTooSmallError,
    gen_cycle7_family,
    gen_random_connected,
    gen_random_tree,
    resample_on_tie,
)
from graphshare.instance_io import format_instance


class TestCycle7Family:
    def test_reference_member(self):
        inst = gen_cycle7_family(1000)
        assert inst.weights == (1000, 1015, 17, 7, 12, 1026, 18)
        assert inst.edges == (
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (0, 6),
        )
        assert inst.total_weight == 3095

    @pytest.mark.parametrize("m", [96, 500, 10**6])
    def test_total_is_linear_in_m(self, m):
        assert gen_cycle7_family(m).total_weight == 3 * m + 95

    def test_below_minimum_rejected(self):
        with pytest.raises(MTooSmallError):
            gen_cycle7_family(CYCLE7_MIN_M - 1)


class TestRandomTree:
    @given(
        n=st.integers(min_value=1, max_value=12),
        seed=st.integers(min_value=0, max_value=2**32),
    )
    @settings(max_examples=60, deadline=None)
    def test_structure_and_determinism(self, n, seed):
        inst = gen_random_tree(n, seed, weight_max=1000)
        assert inst.vertex_count == n
        assert len(inst.edges) == n - 1
        assert all(1 <= w <= 1000 for w in inst.weights)
        again = gen_random_tree(n, seed, weight_max=1000)
        assert format_instance(again) == format_instance(inst)

    def test_bad_args(self):
        with pytest.raises(ValueError):
            gen_random_tree(0, seed=1, weight_max=10)
        with pytest.raises(ValueError):
            gen_random_tree(5, seed=1, weight_max=4)


class TestRandomConnected:
    @given(
        n=st.integers(min_value=2, max_value=9),
        seed=st.integers(min_value=0, max_value=2**32),
        data=st.data(),
    )
    @settings(max_examples=60, deadline=None)
    def test_edge_budget(self, n, seed, data):
        cap = n * (n - 1) // 2 - (n - 1)
        extra = data.draw(st.integers(min_value=0, max_value=cap))
        inst = gen_random_connected(n, extra, seed, weight_max=10**9)
        assert len(inst.edges) == n - 1 + extra
        assert len(set(inst.edges)) == len(inst.edges)
        again = gen_random_connected(n, extra, seed, weight_max=10**9)
        assert again.weights == inst.weights and again.edges == inst.edges

    def test_extra_edges_out_of_range(self):
        with pytest.raises(ValueError):
            gen_random_connected(4, 4, seed=0, weight_max=100)
        with pytest.raises(ValueError):
            gen_random_connected(4, -1, seed=0, weight_max=100)

    def test_complete_graph_reachable(self):
        inst = gen_random_connected(5, 6, seed=7, weight_max=50)
        assert len(inst.edges) == 10


class TestResampleOnTie:
    def test_accepts_first_tie_free_draw(self):
        calls = []

        def gen(k):
            calls.append(k)
            if k < 2:
                return Instance(weights=(1, 1), edges=((0, 1),))
            return Instance(weights=(1, 2), edges=((0, 1),))

        inst, rejected = resample_on_tie(gen)
        assert rejected == 2
        assert calls == [0, 1, 2]
        assert inst.weights == (1, 2)

    def test_single_vertex_is_immediately_tie_free(self):
        inst, rejected = resample_on_tie(
            lambda k: Instance(weights=(5,), edges=())
        )
        assert rejected == 0
        assert inst.weights == (5,)

    def test_exhaustion(self):
        always_tied = lambda k: Instance(
            weights=(1, 1, 1, 1), edges=((0, 1), (1, 2), (2, 3))
        )
        with pytest.raises(ExhaustedAttemptsError):
            resample_on_tie(always_tied, attempts=5)

    def test_rejects_other_policies(self):
        with pytest.raises(ValueError):
            resample_on_tie(
                lambda k: Instance(weights=(1, 2), edges=((0, 1),)),
                policy=TiePolicy.FIRST_MOVES,
            )

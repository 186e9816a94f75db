import pytest
from hypothesis import given, settings, strategies as st

from digraph_roots.digraph import Digraph
from digraph_roots.power import power, verify_root, walk_power_oracle

from conftest import digraphs

TRI = Digraph.cycle(3)
PATH = Digraph.path(3)


@pytest.mark.parametrize("fn", [power, walk_power_oracle])
class TestPowerExamples:
    @given(d=digraphs())
    def test_first_power_is_identity(self, fn, d):
        assert fn(d, 1) == d

    def test_triangle_cubed_is_loops(self, fn):
        assert fn(TRI, 3) == Digraph(3, [(0, 0), (1, 1), (2, 2)])

    def test_path_squared_loses_arcs(self, fn):
        assert fn(PATH, 2) == Digraph(3, [(0, 2)])

    def test_loop_is_stable(self, fn):
        assert fn(Digraph(1, [(0, 0)]), 7) == Digraph(1, [(0, 0)])

    @pytest.mark.parametrize("k", [1, 2, 5])
    def test_arcless_stays_arcless(self, fn, k):
        assert fn(Digraph(4), k) == Digraph(4)

    def test_zero_rejected(self, fn):
        with pytest.raises(ValueError):
            fn(TRI, 0)


@settings(max_examples=200)
@given(digraphs(max_n=12), st.integers(1, 6))
def test_squaring_matches_walk_oracle(d, k):
    assert power(d, k) == walk_power_oracle(d, k)


@given(digraphs(max_n=8), st.integers(1, 4), st.integers(1, 4))
def test_composition_law(d, a, b):
    assert power(d, a * b) == power(power(d, a), b)


@given(st.integers(1, 7), st.integers(1, 30))
def test_complete_relation_is_fixed(n, k):
    full = Digraph(n, [(u, v) for u in range(n) for v in range(n)])
    assert power(full, k) == full


def test_huge_exponent_on_cycle():
    # 5-cycle: k = 2**31 is 3 mod 5
    assert power(Digraph.cycle(5), 2**31) == power(Digraph.cycle(5), 3)


class TestVerifyRoot:
    def test_two_cycle_squares_to_loops(self):
        assert verify_root(Digraph.cycle(2), 2, Digraph(2, [(0, 0), (1, 1)]))

    def test_single_arc_is_not_its_own_square_root(self):
        assert not verify_root(Digraph(2, [(0, 1)]), 2, Digraph(2, [(0, 1)]))

    def test_vertex_count_mismatch(self):
        with pytest.raises(ValueError):
            verify_root(Digraph(2), 2, Digraph(3))

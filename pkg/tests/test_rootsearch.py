import random

import pytest

from digraph_roots.digraph import Digraph, VertexBijection, disjoint_union, random_digraph, relabel
from digraph_roots.power import verify_root
from digraph_roots.reduction import reduce
from digraph_roots.rootsearch import (
    SearchStatus,
    backtracking_root_search,
    exhaustive_roots,
)

from conftest import all_digraphs, brute_roots

LOOP = Digraph(1, [(0, 0)])
TWO_LOOPS = Digraph(2, [(0, 0), (1, 1)])
TWO_CYCLE = Digraph(2, [(0, 1), (1, 0)])


class TestExhaustive:
    def test_single_loop(self):
        assert exhaustive_roots(LOOP, 2) == [LOOP]

    def test_single_arc_has_no_square_root(self):
        assert exhaustive_roots(Digraph(2, [(0, 1)]), 2) == []

    def test_two_loops(self):
        # bitmask order: 2-cycle is 0b0110, loops are 0b1001
        assert exhaustive_roots(TWO_LOOPS, 2) == [TWO_CYCLE, TWO_LOOPS]

    def test_refuses_large_graphs(self):
        with pytest.raises(ValueError, match="backtracking"):
            exhaustive_roots(Digraph(6), 2)

    @pytest.mark.parametrize("k", [2, 3])
    def test_matches_plain_enumeration_on_two_vertices(self, k):
        for d in all_digraphs(2):
            assert set(exhaustive_roots(d, k)) == brute_roots(d, k)

    def test_five_vertices_chunked(self):
        d = Digraph.cycle(5)
        roots = exhaustive_roots(Digraph(5, [(i, (i + 2) % 5) for i in range(5)]), 2)
        assert d in roots
        assert all(verify_root(r, 2, Digraph(5, [(i, (i + 2) % 5) for i in range(5)])) for r in roots)


class TestBacktracking:
    def test_two_loops_witness_is_an_exhaustive_root(self):
        out = backtracking_root_search(TWO_LOOPS, 2)
        assert out.status is SearchStatus.ROOT_FOUND
        assert out.witness in exhaustive_roots(TWO_LOOPS, 2)

    def test_rejects_k_one(self):
        with pytest.raises(ValueError):
            backtracking_root_search(LOOP, 1)

    def test_budget_exhaustion_is_a_status(self):
        d = reduce(LOOP, LOOP, 3).graph
        assert backtracking_root_search(d, 3).nodes > 2
        out = backtracking_root_search(d, 3, budget=2)
        assert out.status is SearchStatus.BUDGET_EXHAUSTED
        assert out.witness is None

    def test_reduction_of_non_isomorphic_vertices_has_no_root(self):
        d = reduce(LOOP, Digraph(1), 2).graph
        assert d.n == 13
        out = backtracking_root_search(d, 2, budget=10**8)
        assert out.status is SearchStatus.NO_ROOT

    def test_deterministic(self):
        d = reduce(LOOP, LOOP, 3).graph
        a = backtracking_root_search(d, 3)
        b = backtracking_root_search(d, 3)
        assert (a.status, a.witness, a.nodes, a.work_units) == (b.status, b.witness, b.nodes, b.work_units)
        assert verify_root(a.witness, 3, d)

    @pytest.mark.parametrize("k", [2, 3])
    def test_copies_always_have_roots(self, k):
        rng = random.Random(k)
        for _ in range(30):
            n = rng.randint(1, 3)
            base = random_digraph(n, rng.random(), rng)
            parts = []
            for _ in range(k):
                perm = list(range(n))
                rng.shuffle(perm)
                parts.append(relabel(base, VertexBijection(tuple(perm))))
            d, _ = disjoint_union(parts)
            out = backtracking_root_search(d, k)
            assert out.status is SearchStatus.ROOT_FOUND
            assert verify_root(out.witness, k, d)

    def test_agrees_with_exhaustive_on_random_four_vertex_graphs(self):
        rng = random.Random(4)
        for _ in range(60):
            d = random_digraph(4, rng.random(), rng)
            out = backtracking_root_search(d, 2)
            assert out.found == bool(exhaustive_roots(d, 2))

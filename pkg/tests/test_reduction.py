import pytest
from hypothesis import given, settings, strategies as st

from digraph_roots.digraph import (
    Digraph,
    VertexBijection,
    disjoint_union,
    induced,
    random_bijection,
    random_digraph,
    relabel,
    weak_components,
)
from digraph_roots.isomorphism import is_isomorphic
from digraph_roots.power import power, verify_root
from digraph_roots.reduction import (
    prop1_root,
    reduce,
    subdivide,
    subdivided_suspension,
    suspend,
    theorem2_reduction,
)

from conftest import check_reduction_instance as check_instance, digraphs

LOOP = Digraph(1, [(0, 0)])
POINT = Digraph(1)


class TestSuspend:
    def test_single_vertex(self):
        g, roles = suspend(POINT)
        # vertex 0 = a, 1 = r, 2 = s
        assert g == Digraph(3, [(1, 0), (2, 0), (0, 2)])
        assert roles == ["original", "r", "s"]

    def test_single_loop(self):
        g, _ = suspend(LOOP)
        assert g.arcs == {(0, 0), (1, 0), (2, 0), (0, 2)}

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            suspend(Digraph(0))

    @given(digraphs(min_n=1))
    def test_size_law_and_connectivity(self, d):
        g, _ = suspend(d)
        assert g.n == d.n + 2
        assert len(g.arcs) == len(d.arcs) + 3 * d.n
        assert len(weak_components(g)) == 1


class TestSubdivide:
    def test_single_arc(self):
        g, w = subdivide(Digraph(2, [(0, 1)]))
        assert g == Digraph(3, [(0, 2), (2, 1)])
        assert w.core == {0, 1} and w.arc_map == {2: (0, 1)}

    def test_loop_becomes_two_cycle(self):
        g, _ = subdivide(LOOP)
        assert g == Digraph(2, [(0, 1), (1, 0)])

    @given(digraphs())
    def test_size_law(self, d):
        g, w = subdivide(d)
        assert g.n == d.n + len(d.arcs)
        assert len(g.arcs) == 2 * len(d.arcs)
        assert w.parent == d

    @given(digraphs())
    def test_fact_one(self, d):
        g, w = subdivide(d)
        for x in w.complement:
            assert g.in_degree(x) == 1 and g.out_degree(x) == 1
        for u, v in g.arcs:
            assert (u in w.core) != (v in w.core)

    @given(digraphs())
    def test_fact_two(self, d):
        g, _ = subdivide(d)
        for a in g.vertices:
            for b in range(a + 1, g.n):
                shares_in = g.in_sets[a] & g.in_sets[b]
                shares_out = g.out_sets[a] & g.out_sets[b]
                assert not (shares_in and shares_out)


class TestReduce:
    def test_two_points(self):
        inst = reduce(POINT, POINT, 2)
        assert [len(b) for b in weak_components(inst.graph)] == [6, 6]
        assert len(inst.graph.arcs) == 12
        check_instance(inst, [(1, 0), (1, 0)])

    def test_loop_versus_point_has_thirteen_vertices(self):
        assert reduce(LOOP, POINT, 2).graph.n == 13

    @pytest.mark.parametrize("bad", [(POINT, POINT, 1), (Digraph(0), POINT, 2), (POINT, Digraph(0), 2)])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            reduce(*bad)

    @settings(max_examples=40, deadline=None)
    @given(digraphs(min_n=1, max_n=5), digraphs(min_n=1, max_n=5), st.integers(2, 4))
    def test_invariants(self, d1, d2, k):
        inst = reduce(d1, d2, k)
        sizes = [(d1.n, len(d1.arcs))] + [(d2.n, len(d2.arcs))] * (k - 1)
        check_instance(inst, sizes)

    def test_relabelled_inputs_give_isomorphic_components(self, rng):
        for _ in range(10):
            d = random_digraph(rng.randint(1, 5), 0.4, rng)
            inst = reduce(d, relabel(d, random_bijection(d.n, rng)), 3)
            comps = [induced(inst.graph, b)[0] for b in weak_components(inst.graph)]
            assert all(is_isomorphic(comps[0], c) for c in comps[1:])


class TestProp1Root:
    def test_loop_pair_gives_two_cycle(self):
        ident = VertexBijection.identity(1)
        r = prop1_root([LOOP, LOOP], [ident, ident])
        assert r == Digraph(2, [(0, 1), (1, 0)])
        assert power(r, 2) == Digraph(2, [(0, 0), (1, 1)])

    def test_arcless_point_gives_bare_path(self):
        ident = VertexBijection.identity(1)
        r = prop1_root([POINT] * 3, [ident] * 3)
        assert r == Digraph.path(3)
        assert power(r, 3) == Digraph(3)

    def test_two_cycle_pair_gives_four_cycle(self):
        two = Digraph.cycle(2)
        ident = VertexBijection.identity(2)
        r = prop1_root([two, two], [ident, ident])
        # u1=0, v1=1, u2=2, v2=3: u1 -> u2 -> v1 -> v2 -> u1
        assert r == Digraph(4, [(0, 2), (2, 1), (1, 3), (3, 0)])
        assert power(r, 2) == Digraph(4, [(0, 1), (1, 0), (2, 3), (3, 2)])

    def test_rejects_non_isomorphism(self):
        with pytest.raises(ValueError):
            prop1_root([Digraph.path(2), Digraph.path(2)], [VertexBijection((0, 1)), VertexBijection((1, 0))])

    def test_rejects_count_mismatch(self):
        with pytest.raises(ValueError):
            prop1_root([LOOP, LOOP], [VertexBijection.identity(1)])

    @settings(max_examples=60, deadline=None)
    @given(digraphs(min_n=1, max_n=6), st.sampled_from([2, 3, 5]), st.randoms(use_true_random=False))
    def test_always_a_root(self, d0, k, rnd):
        isos = [random_bijection(d0.n, rnd) for _ in range(k)]
        parts = [relabel(d0, phi) for phi in isos]
        r = prop1_root(parts, isos, reference=d0)
        assert verify_root(r, k, disjoint_union(parts)[0])


class TestComponentSplit:
    def test_two_components(self):
        a, b = Digraph.cycle(2), Digraph.path(3)
        d, _ = disjoint_union([a, b])
        e1, e2 = theorem2_reduction(d, 2)
        assert e1 == a and e2 == b

    def test_three_components(self):
        a, b, c = Digraph.cycle(2), Digraph.path(2), LOOP
        d, _ = disjoint_union([a, b, c])
        e1, e2 = theorem2_reduction(d, 3)
        assert e1 == disjoint_union([a, a])[0]
        assert e2 == disjoint_union([b, c])[0]

    def test_wrong_count(self):
        with pytest.raises(ValueError):
            theorem2_reduction(Digraph(3), 2)

    def test_split_agrees_with_pairwise_isomorphism(self, rng):
        for _ in range(40):
            k = rng.choice([2, 3])
            base = subdivided_suspension(random_digraph(rng.randint(1, 3), 0.5, rng))
            parts = [relabel(base, random_bijection(base.n, rng)) for _ in range(k)]
            if rng.random() < 0.5:
                parts[-1] = subdivided_suspension(random_digraph(rng.randint(1, 3), 0.5, rng))
            d, _ = disjoint_union(parts)
            e1, e2 = theorem2_reduction(d, k)
            comps = [induced(d, b)[0] for b in weak_components(d)]
            pairwise = all(is_isomorphic(comps[0], c) for c in comps[1:])
            assert is_isomorphic(e1, e2) == pairwise


@settings(max_examples=60, deadline=None)
@given(digraphs(min_n=1, max_n=5), digraphs(min_n=1, max_n=5))
def test_subdivided_suspension_preserves_isomorphism_type(d1, d2):
    assert is_isomorphic(d1, d2) == is_isomorphic(subdivided_suspension(d1), subdivided_suspension(d2))

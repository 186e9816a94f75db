from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from digraph_roots.digraph import Digraph

ACCEPTANCE_LINES: list[str] = []


@st.composite
def digraphs(draw, min_n: int = 0, max_n: int = 8) -> Digraph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n)]
    arcs = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return Digraph(n, arcs)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def all_digraphs(n: int):
    pairs = [(u, v) for u in range(n) for v in range(n)]
    for mask in range(1 << len(pairs)):
        yield Digraph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def brute_roots(d: Digraph, k: int) -> set[Digraph]:
    """Roots by plain enumeration with the walk oracle (no numpy, no squaring)."""
    from digraph_roots.power import walk_power_oracle

    return {r for r in all_digraphs(d.n) if walk_power_oracle(r, k) == d}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def class_instance(d0: Digraph, k: int, rnd: random.Random):
    """Scrambled (D, R) with D = k relabelled copies of the subdivided suspension of d0.

    Returns (D, R, base, placements) where ``placements[i][v]`` is the vertex
    of D playing base vertex v in copy i.
    """
    from digraph_roots.digraph import disjoint_union, random_bijection, relabel
    from digraph_roots.reduction import prop1_root, subdivided_suspension

    base = subdivided_suspension(d0)
    isos = [random_bijection(base.n, rnd) for _ in range(k)]
    parts = [relabel(base, phi) for phi in isos]
    root = prop1_root(parts, isos, reference=base)
    union, offsets = disjoint_union(parts)
    sigma = random_bijection(union.n, rnd)
    placements = [
        [sigma(off + phi(v)) for v in base.vertices] for off, phi in zip(offsets, isos)
    ]
    return relabel(union, sigma), relabel(root, sigma), base, placements


def check_reduction_instance(inst, sizes) -> None:
    """Assert the four reduction-instance invariants plus the per-copy size laws."""
    from digraph_roots.digraph import induced, weak_components
    from digraph_roots.subdivision import find_core

    g = inst.graph
    blocks = weak_components(g)
    assert len(blocks) == inst.k
    for i, block in enumerate(blocks, start=1):
        assert {inst.provenance[v].copy for v in block} == {i}
        rs = [v for v in block if inst.provenance[v].role == "r"]
        assert len(rs) == 1
        assert [v for v in block if g.in_degree(v) == 0] == rs
    assert all(g.out_degree(v) > 0 for v in g.vertices)
    for block, (n_i, m_i) in zip(blocks, sizes):
        sub, index = induced(g, block)
        witness = find_core(sub)
        assert {index[x] for x in witness.complement} == {
            v for v in block if inst.provenance[v].role == "subdivision"
        }
        for x in witness.complement:
            assert inst.provenance[index[x]].arc == tuple(index[a] for a in witness.arc_map[x])
        assert sub.n == 4 * n_i + m_i + 2
        assert len(sub.arcs) == 2 * (m_i + 3 * n_i)

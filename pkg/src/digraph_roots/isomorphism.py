"""Digraph isomorphism by colour refinement and individualisation.

Both graphs are refined together as one disjoint union so colour ids are
comparable across them. When refinement stalls with a class that still
holds several vertices per side, one vertex of the first graph is paired in
turn with each candidate of the second, both are given a fresh colour, and
the search recurses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .digraph import Digraph, VertexBijection, disjoint_union, is_isomorphism

#: Largest vertex count accepted by the n!-permutation oracle.
BRUTE_FORCE_MAX_N = 8


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    stable: bool

    @property
    def num_classes(self) -> int:
        return len(set(self.colors))

    def classes(self) -> list[list[int]]:
        buckets: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors):
            buckets.setdefault(c, []).append(v)
        return [buckets[c] for c in sorted(buckets)]

    def class_sizes(self) -> list[int]:
        return sorted(len(c) for c in self.classes())


def _canonical(keys: Sequence[object]) -> tuple[int, ...]:
    ids: dict[object, int] = {}
    return tuple(ids.setdefault(key, len(ids)) for key in keys)


def _refine(d: Digraph, colors: tuple[int, ...]) -> tuple[int, ...]:
    out_sets, in_sets = d.out_sets, d.in_sets
    while True:
        keys = [
            (
                colors[v],
                tuple(sorted(colors[w] for w in out_sets[v])),
                tuple(sorted(colors[w] for w in in_sets[v])),
            )
            for v in d.vertices
        ]
        new = _canonical(keys)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def refine_colors(d: Digraph, initial: Coloring | None = None) -> Coloring:
    """Stable 1-dimensional refinement of ``initial`` (default: loop/no-loop split)."""
    if initial is None:
        start = _canonical([d.has_arc(v, v) for v in d.vertices])
    else:
        if len(initial.colors) != d.n:
            raise ValueError("initial colouring has the wrong length")
        start = _canonical(initial.colors)
    return Coloring(_refine(d, start), stable=True)


def _search(u: Digraph, n1: int, colors: tuple[int, ...]) -> tuple[int, ...] | None:
    colors = _refine(u, colors)
    left: dict[int, list[int]] = {}
    right: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        (left if v < n1 else right).setdefault(c, []).append(v)
    if left.keys() != right.keys():
        return None
    if any(len(left[c]) != len(right[c]) for c in left):
        return None
    ambiguous = [c for c in left if len(left[c]) > 1]
    if not ambiguous:
        return tuple(right[colors[v]][0] - n1 for v in range(n1))
    # largest class first; smallest colour id breaks ties
    target = max(ambiguous, key=lambda c: (len(left[c]), -c))
    pivot = left[target][0]
    fresh = max(colors) + 1
    for candidate in right[target]:
        trial = list(colors)
        trial[pivot] = fresh
        trial[candidate] = fresh
        found = _search(u, n1, tuple(trial))
        if found is not None:
            return found
    return None


def find_isomorphism(d1: Digraph, d2: Digraph) -> VertexBijection | None:
    """An isomorphism from ``d1`` onto ``d2``, or None if the graphs are not isomorphic."""
    if d1.n != d2.n or len(d1.arcs) != len(d2.arcs):
        return None
    if d1.n == 0:
        return VertexBijection(())
    union, _ = disjoint_union([d1, d2])
    start = _canonical([union.has_arc(v, v) for v in union.vertices])
    forward = _search(union, d1.n, start)
    if forward is None:
        return None
    phi = VertexBijection(forward)
    if not is_isomorphism(phi, d1, d2):
        # equitable discrete partitions of a union always induce isomorphisms
        raise AssertionError("refinement produced a non-isomorphism")
    return phi


def is_isomorphic(d1: Digraph, d2: Digraph) -> bool:
    return find_isomorphism(d1, d2) is not None


def brute_force_isomorphic(d1: Digraph, d2: Digraph) -> bool:
    """Reference check over all n! vertex permutations."""
    if d1.n != d2.n:
        return False
    if d1.n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_MAX_N} vertices, got {d1.n}")
    if len(d1.arcs) != len(d2.arcs):
        return False
    target = d2.arcs
    for perm in itertools.permutations(range(d1.n)):
        if all((perm[u], perm[v]) in target for u, v in d1.arcs):
            return True
    return False

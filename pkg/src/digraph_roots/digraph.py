"""Immutable digraph value type and the structural queries built on it.

Vertices are the integers ``0..n-1``. Arcs are ordered pairs; loops are
allowed, multiple arcs are not. Every graph keeps two views of its arc
relation: adjacency sets for queries and one packed integer bit-row per
vertex for Boolean matrix work.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, Sequence

Arc = tuple[int, int]
Direction = Literal["out", "in"]


def iter_bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Digraph:
    """A finite digraph on vertices ``0..n-1``.

    Instances are immutable and hashable; two digraphs compare equal when
    they have the same vertex count and the same arc set.
    """

    __slots__ = ("_n", "_arcs", "__dict__")

    def __init__(self, n: int, arcs: Iterable[Arc] = ()) -> None:
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        arc_set = frozenset((int(u), int(v)) for u, v in arcs)
        for u, v in arc_set:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for {n} vertices")
        self._n = n
        self._arcs = arc_set

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> Digraph:
        """Build a digraph from packed out-rows (bit ``v`` of ``rows[u]`` is arc u->v)."""
        n = len(rows)
        limit = 1 << n
        arcs = []
        for u, row in enumerate(rows):
            if row >= limit or row < 0:
                raise ValueError(f"row {u} has bits outside 0..{n - 1}")
            arcs.extend((u, v) for v in iter_bits(row))
        g = cls(n, arcs)
        g.__dict__["out_rows"] = tuple(rows)
        return g

    @classmethod
    def empty(cls, n: int) -> Digraph:
        return cls(n, ())

    @classmethod
    def cycle(cls, n: int) -> Digraph:
        return cls(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> Digraph:
        return cls(n, ((i, i + 1) for i in range(n - 1)))

    @property
    def n(self) -> int:
        return self._n

    @property
    def arcs(self) -> frozenset[Arc]:
        return self._arcs

    @property
    def vertices(self) -> range:
        return range(self._n)

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self._arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arcs

    def __len__(self) -> int:
        return self._n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._n == other._n and self._arcs == other._arcs

    def __hash__(self) -> int:
        return hash((self._n, self._arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self._n}, arcs={self.sorted_arcs()})"

    @cached_property
    def out_sets(self) -> tuple[frozenset[int], ...]:
        buckets: list[set[int]] = [set() for _ in range(self._n)]
        for u, v in self._arcs:
            buckets[u].add(v)
        return tuple(frozenset(b) for b in buckets)

    @cached_property
    def in_sets(self) -> tuple[frozenset[int], ...]:
        buckets: list[set[int]] = [set() for _ in range(self._n)]
        for u, v in self._arcs:
            buckets[v].add(u)
        return tuple(frozenset(b) for b in buckets)

    @cached_property
    def out_rows(self) -> tuple[int, ...]:
        return tuple(bits_of(s) for s in self.out_sets)

    @cached_property
    def in_rows(self) -> tuple[int, ...]:
        return tuple(bits_of(s) for s in self.in_sets)

    def out_degree(self, v: int) -> int:
        return len(self.out_sets[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_sets[v])

    def loops(self) -> list[int]:
        return sorted(u for u, v in self._arcs if u == v)

    def reverse(self) -> Digraph:
        return Digraph(self._n, ((v, u) for u, v in self._arcs))

    def check_vertices(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            if not 0 <= v < self._n:
                raise ValueError(f"vertex {v} out of range for {self._n} vertices")


@dataclass(frozen=True)
class VertexBijection:
    """A bijection between ``0..size-1`` of a source and ``0..size-1`` of a target."""

    forward: tuple[int, ...]

    def __post_init__(self) -> None:
        fwd = tuple(int(x) for x in self.forward)
        object.__setattr__(self, "forward", fwd)
        if sorted(fwd) != list(range(len(fwd))):
            raise ValueError(f"not a bijection on 0..{len(fwd) - 1}: {fwd}")

    @classmethod
    def identity(cls, n: int) -> VertexBijection:
        return cls(tuple(range(n)))

    @classmethod
    def from_mapping(cls, mapping: dict[int, int]) -> VertexBijection:
        n = len(mapping)
        if set(mapping) != set(range(n)):
            raise ValueError("mapping is not total on 0..n-1")
        return cls(tuple(mapping[i] for i in range(n)))

    @property
    def source_size(self) -> int:
        return len(self.forward)

    @property
    def target_size(self) -> int:
        return len(self.forward)

    @cached_property
    def inverse_map(self) -> tuple[int, ...]:
        inv = [0] * len(self.forward)
        for i, j in enumerate(self.forward):
            inv[j] = i
        return tuple(inv)

    def inverse(self) -> VertexBijection:
        return VertexBijection(self.inverse_map)

    def __call__(self, v: int) -> int:
        return self.forward[v]

    def then(self, other: VertexBijection) -> VertexBijection:
        """Composition: apply ``self`` first, then ``other``."""
        if other.source_size != self.target_size:
            raise ValueError("size mismatch in composition")
        return VertexBijection(tuple(other.forward[j] for j in self.forward))


def random_digraph(n: int, density: float, rng: random.Random, loops: bool = True) -> Digraph:
    """Each of the ``n*n`` (or ``n*(n-1)`` without loops) pairs is an arc with probability ``density``."""
    arcs = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if (loops or u != v) and rng.random() < density
    ]
    return Digraph(n, arcs)


def random_bijection(n: int, rng: random.Random) -> VertexBijection:
    perm = list(range(n))
    rng.shuffle(perm)
    return VertexBijection(tuple(perm))


def iterated_neighborhood(d: Digraph, start: Iterable[int], direction: Direction, t: int) -> frozenset[int]:
    """Return ``O^t(start)`` (``direction="out"``) or ``I^t(start)`` (``"in"``)."""
    current = frozenset(start)
    d.check_vertices(current)
    if t < 0:
        raise ValueError(f"step count must be non-negative, got {t}")
    if direction == "out":
        table = d.out_sets
    elif direction == "in":
        table = d.in_sets
    else:
        raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")
    for _ in range(t):
        current = frozenset().union(*(table[v] for v in current))
        if not current:
            break
    return current


def weak_components(d: Digraph) -> list[list[int]]:
    """Weakly connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * d.n
    blocks: list[list[int]] = []
    for root in d.vertices:
        if seen[root]:
            continue
        seen[root] = True
        stack = [root]
        block = []
        while stack:
            v = stack.pop()
            block.append(v)
            for w in d.out_sets[v] | d.in_sets[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        blocks.append(sorted(block))
    return blocks


def induced(d: Digraph, vertices: Iterable[int]) -> tuple[Digraph, tuple[int, ...]]:
    """Induced subgraph on ``vertices``.

    Returns the reindexed subgraph and the tuple mapping each new index to
    the original vertex (ascending original order).
    """
    chosen = sorted(set(vertices))
    d.check_vertices(chosen)
    index = {v: i for i, v in enumerate(chosen)}
    arcs = [
        (index[u], index[v])
        for u in chosen
        for v in d.out_sets[u]
        if v in index
    ]
    return Digraph(len(chosen), arcs), tuple(chosen)


def relabel(d: Digraph, pi: VertexBijection) -> Digraph:
    """Apply ``pi`` to every vertex of ``d``."""
    if pi.source_size != d.n:
        raise ValueError(f"bijection on {pi.source_size} vertices applied to graph on {d.n}")
    f = pi.forward
    return Digraph(d.n, ((f[u], f[v]) for u, v in d.arcs))


def disjoint_union(parts: Sequence[Digraph]) -> tuple[Digraph, list[int]]:
    """Concatenate vertex blocks in order; returns the union and each part's offset."""
    if not parts:
        raise ValueError("disjoint union of an empty list")
    offsets = []
    arcs: list[Arc] = []
    total = 0
    for part in parts:
        offsets.append(total)
        arcs.extend((u + total, v + total) for u, v in part.arcs)
        total += part.n
    return Digraph(total, arcs), offsets


def is_isomorphism(phi: VertexBijection, d1: Digraph, d2: Digraph) -> bool:
    """Check ``ab in A(d1)`` iff ``phi(a)phi(b) in A(d2)`` for every pair."""
    if not (d1.n == d2.n == phi.source_size):
        return False
    if len(d1.arcs) != len(d2.arcs):
        return False
    f = phi.forward
    return all((f[u], f[v]) in d2.arcs for u, v in d1.arcs)

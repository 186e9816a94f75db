"""Constructions linking isomorphism and roots.

Vertex numbering is fixed so outputs are reproducible:

* ``suspend``: original vertices keep their indices, then ``r``, then ``s``.
* ``subdivide``: original vertices keep their indices, then one new vertex
  per arc in ascending arc order.
* ``reduce``: component blocks in copy order 1..k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .digraph import (
    Arc,
    Digraph,
    VertexBijection,
    disjoint_union,
    induced,
    is_isomorphism,
    weak_components,
)
from .power import verify_root

Role = Literal["original", "r", "s", "subdivision"]


@dataclass(frozen=True)
class CoreWitness:
    """A core of a subdivision digraph with its contracted parent.

    ``core_order[i]`` is the vertex of S standing for parent vertex ``i``;
    ``arc_map`` sends each thin vertex of the complement to the S-vertices
    ``(a, b)`` it connects, i.e. ``I(x) = {a}`` and ``O(x) = {b}``.
    """

    core: frozenset[int]
    complement: frozenset[int]
    core_order: tuple[int, ...]
    parent: Digraph
    arc_map: dict[int, Arc]

    def parent_arc(self, x: int) -> Arc:
        """The parent-graph arc replaced by the complement vertex ``x``."""
        a, b = self.arc_map[x]
        index = {v: i for i, v in enumerate(self.core_order)}
        return index[a], index[b]


@dataclass(frozen=True)
class Provenance:
    copy: int
    role: Role
    source: int | None = None
    arc: Arc | None = None

    def describe(self) -> str:
        if self.role == "original":
            return f"copy{self.copy}:v{self.source}"
        if self.role == "subdivision":
            return f"copy{self.copy}:x{self.arc[0]}_{self.arc[1]}"
        return f"copy{self.copy}:{self.role}"


@dataclass(frozen=True)
class ReductionInstance:
    graph: Digraph
    provenance: tuple[Provenance, ...]
    k: int
    offsets: tuple[int, ...]

    def role_vertices(self, role: Role) -> list[int]:
        return [v for v, p in enumerate(self.provenance) if p.role == role]


def suspend(d: Digraph) -> tuple[Digraph, list[Role]]:
    """Add ``r`` and ``s`` with arcs r->a, s->a, a->s for every vertex a."""
    if d.n == 0:
        raise ValueError("cannot suspend the empty digraph")
    n = d.n
    r, s = n, n + 1
    arcs = set(d.arcs)
    for a in range(n):
        arcs.update(((r, a), (s, a), (a, s)))
    roles: list[Role] = ["original"] * n + ["r", "s"]
    return Digraph(n + 2, arcs), roles


def subdivide(d: Digraph) -> tuple[Digraph, CoreWitness]:
    """Complete subdivision: every arc a->b becomes a->x_ab->b."""
    n = d.n
    arcs = []
    arc_map: dict[int, Arc] = {}
    for i, (a, b) in enumerate(d.sorted_arcs()):
        x = n + i
        arcs.append((a, x))
        arcs.append((x, b))
        arc_map[x] = (a, b)
    s = Digraph(n + len(arc_map), arcs)
    witness = CoreWitness(
        core=frozenset(range(n)),
        complement=frozenset(arc_map),
        core_order=tuple(range(n)),
        parent=d,
        arc_map=arc_map,
    )
    return s, witness


def subdivided_suspension(d: Digraph) -> Digraph:
    return subdivide(suspend(d)[0])[0]


def reduce(d1: Digraph, d2: Digraph, k: int) -> ReductionInstance:
    """Disjoint union of the subdivided suspensions of d1 and k-1 copies of d2."""
    if k < 2:
        raise ValueError(f"reduction needs k >= 2, got {k}")
    if d1.n == 0 or d2.n == 0:
        raise ValueError("reduction inputs must be nonempty")
    parts = []
    provenance: list[Provenance] = []
    for copy in range(1, k + 1):
        base = d1 if copy == 1 else d2
        hat, roles = suspend(base)
        bar, witness = subdivide(hat)
        parts.append(bar)
        offset = len(provenance)
        for v in range(hat.n):
            role = roles[v]
            provenance.append(Provenance(copy, role, v if role == "original" else None))
        for x in range(hat.n, bar.n):
            a, b = witness.arc_map[x]
            provenance.append(Provenance(copy, "subdivision", arc=(a + offset, b + offset)))
    graph, offsets = disjoint_union(parts)
    return ReductionInstance(graph, tuple(provenance), k, tuple(offsets))


def root_from_maps(n: int, reference: Digraph, maps: Sequence[Sequence[int]]) -> Digraph:
    """Build the k-th root on ``n`` vertices from embeddings of ``reference``.

    ``maps[i][a]`` is the vertex playing ``a`` in copy ``i+1``. Each reference
    vertex becomes a path through its k images, closed by arcs from the
    last image of ``a`` to the first image of every out-neighbour of ``a``.
    """
    arcs = []
    k = len(maps)
    for a in reference.vertices:
        for i in range(k - 1):
            arcs.append((maps[i][a], maps[i + 1][a]))
        for b in reference.out_sets[a]:
            arcs.append((maps[k - 1][a], maps[0][b]))
    return Digraph(n, arcs)


def prop1_root(
    parts: Sequence[Digraph],
    isos: Sequence[VertexBijection],
    reference: Digraph | None = None,
) -> Digraph:
    """k-th root of the disjoint union of k isomorphic parts.

    ``isos[i]`` must map ``reference`` (default: ``parts[0]``) onto ``parts[i]``.
    The root lives on ``disjoint_union(parts)``.
    """
    if len(parts) != len(isos):
        raise ValueError(f"{len(parts)} parts but {len(isos)} isomorphisms")
    if not parts:
        raise ValueError("need at least one part")
    ref = parts[0] if reference is None else reference
    for i, (part, phi) in enumerate(zip(parts, isos)):
        if not is_isomorphism(phi, ref, part):
            raise ValueError(f"map {i + 1} is not an isomorphism onto part {i + 1}")
    union, offsets = disjoint_union(parts)
    maps = [[offset + phi(a) for a in ref.vertices] for offset, phi in zip(offsets, isos)]
    root = root_from_maps(union.n, ref, maps)
    if not verify_root(root, len(parts), union):
        raise AssertionError("constructed root does not reproduce the union")
    return root


def theorem2_reduction(d: Digraph, k: int) -> tuple[Digraph, Digraph]:
    """Split a k-component digraph into two graphs isomorphic iff all components are.

    ``E1`` is k-1 copies of the first component, ``E2`` the union of the others.
    """
    blocks = weak_components(d)
    if len(blocks) != k:
        raise ValueError(f"expected {k} weakly connected components, found {len(blocks)}")
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    comps = [induced(d, block)[0] for block in blocks]
    e1, _ = disjoint_union([comps[0]] * (k - 1))
    e2, _ = disjoint_union(comps[1:])
    return e1, e2

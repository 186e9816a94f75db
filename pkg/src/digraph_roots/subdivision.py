"""Subdivision digraphs, cores, and free-path propagation.

Given a root R of a subdivision digraph D with one source per component,
free paths of R can be grown from the path through the sources until they
cover D. Each free path meets every component once, so reading the paths
position by position yields isomorphisms between the components. Every
step that the underlying argument proves is re-checked here, so an invalid
R (or a bug) surfaces as a ``RootInconsistency`` naming the failed step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .digraph import (
    Digraph,
    VertexBijection,
    induced,
    is_isomorphism,
    iterated_neighborhood,
    weak_components,
)
from .isomorphism import find_isomorphism
from .power import verify_root
from .reduction import CoreWitness, root_from_maps

__all__ = [
    "ClassHypothesisError",
    "ClassRootDecision",
    "CoreWitness",
    "FreePath",
    "FreePathCover",
    "HypothesisError",
    "IncompleteCover",
    "NotASubdivision",
    "RootInconsistency",
    "check_class",
    "decide_root_in_class",
    "extract_isomorphisms",
    "find_core",
    "is_thin",
    "lemma1_free_path",
    "propagate_cover",
]


class NotASubdivision(ValueError):
    def __init__(self, reason: str, witness: object) -> None:
        super().__init__(f"not a subdivision digraph: {reason} (at {witness})")
        self.reason = reason
        self.witness = witness


class HypothesisError(ValueError):
    """A precondition of a free-path step does not hold for the input."""


class ClassHypothesisError(HypothesisError):
    def __init__(self, condition: str, detail: str) -> None:
        super().__init__(f"{condition}: {detail}")
        self.condition = condition


class RootInconsistency(Exception):
    """The supplied root contradicts a step that holds for every genuine root."""

    def __init__(self, step: str, detail: str) -> None:
        super().__init__(f"{step}: {detail}")
        self.step = step


class IncompleteCover(RootInconsistency):
    def __init__(self, residue: Iterable[int], paths: list[FreePath]) -> None:
        self.residue = sorted(residue)
        self.paths = paths
        super().__init__("cover", f"{len(self.residue)} vertices unreached: {self.residue}")


def is_thin(d: Digraph, v: int) -> bool:
    return d.in_degree(v) == 1 and d.out_degree(v) == 1


@dataclass(frozen=True)
class FreePath:
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def is_free_in(self, r: Digraph) -> bool:
        vs = self.vertices
        return all(
            r.out_sets[a] == {b} and r.in_sets[b] == {a}
            for a, b in zip(vs, vs[1:])
        )


@dataclass(frozen=True)
class FreePathCover:
    paths: tuple[FreePath, ...]
    signature: tuple[int, ...]

    def vertex_set(self) -> set[int]:
        return {v for p in self.paths for v in p.vertices}


def find_core(s: Digraph) -> CoreWitness:
    """Locate a core of ``s`` or raise ``NotASubdivision``.

    Non-thin vertices must lie in the core and every arc alternates sides,
    so one forced vertex fixes its whole component. An all-thin component is
    a directed cycle; for even cycles the side holding the smallest vertex
    becomes the core.
    """
    for u, v in s.arcs:
        if u == v:
            raise NotASubdivision("loop cannot alternate between core and complement", (u, v))
    for u, v in s.sorted_arcs():
        if not is_thin(s, u) and not is_thin(s, v):
            raise NotASubdivision("arc between two forced core vertices", (u, v))
    in_core: dict[int, bool] = {}
    for block in weak_components(s):
        forced = [v for v in block if not is_thin(s, v)]
        start = forced[0] if forced else block[0]
        in_core[start] = True
        stack = [start]
        while stack:
            v = stack.pop()
            for w in s.out_sets[v] | s.in_sets[v]:
                want = not in_core[v]
                if w not in in_core:
                    in_core[w] = want
                    stack.append(w)
                elif in_core[w] != want:
                    raise NotASubdivision("arc with both ends on one side", (v, w))
        for v in forced:
            if not in_core[v]:
                raise NotASubdivision("non-thin vertex outside the core", v)

    core_order = tuple(v for v in s.vertices if in_core[v])
    complement = frozenset(v for v in s.vertices if not in_core[v])
    index = {v: i for i, v in enumerate(core_order)}
    arc_map = {}
    seen: dict[tuple[int, int], int] = {}
    for x in sorted(complement):
        (a,) = s.in_sets[x]
        (b,) = s.out_sets[x]
        if (a, b) in seen:
            raise NotASubdivision(
                "two complement vertices share in- and out-neighbour", (seen[(a, b)], x)
            )
        seen[(a, b)] = x
        arc_map[x] = (a, b)
    parent = Digraph(len(core_order), ((index[a], index[b]) for a, b in arc_map.values()))
    return CoreWitness(frozenset(core_order), complement, core_order, parent, arc_map)


def _single(values: frozenset[int]) -> int | None:
    if len(values) == 1:
        (v,) = values
        return v
    return None


def lemma1_free_path(d: Digraph, r: Digraph, k: int) -> FreePath:
    """The free path of ``r`` through the k in-degree-zero vertices of ``d``."""
    if k < 2:
        raise HypothesisError(f"free-path extraction needs k >= 2, got {k}")
    if r.n != d.n or not verify_root(r, k, d):
        raise HypothesisError("R is not a k-th root of D")
    zero_out = [v for v in d.vertices if d.out_degree(v) == 0]
    if zero_out:
        raise HypothesisError(f"vertex {zero_out[0]} has out-degree zero in D")
    sources = [v for v in d.vertices if d.in_degree(v) == 0]
    if len(sources) != k:
        raise HypothesisError(f"D has {len(sources)} in-degree-zero vertices, expected {k}")
    find_core(d)

    q = set(sources)
    for v in sources:
        if not r.in_sets[v] <= q:
            outside = min(r.in_sets[v] - q)
            raise RootInconsistency("seed path", f"R-in-neighbour {outside} of source {v} lies outside Q")
    starts = [v for v in sources if not r.in_sets[v]]
    if len(starts) != 1:
        raise RootInconsistency("seed path", f"R[Q] has {len(starts)} start vertices")
    order = [starts[0]]
    for _ in range(k - 1):
        cur = order[-1]
        nxt = _single(r.out_sets[cur])
        if nxt is None or nxt not in q or nxt in order:
            raise RootInconsistency("seed path", f"source {cur} has no unique successor in Q")
        if r.in_sets[nxt] != {cur}:
            raise RootInconsistency("seed path", f"source {nxt} has extra R-in-neighbours")
        order.append(nxt)
    sub, _ = induced(r, sources)
    if len(sub.arcs) != k - 1:
        raise RootInconsistency("seed path", "R[Q] has arcs beyond the path")
    return FreePath(tuple(order))


def _check_free(r: Digraph, path: tuple[int, ...], step: str) -> FreePath:
    fp = FreePath(path)
    if not fp.is_free_in(r):
        raise RootInconsistency(step, f"path {path} is not free in R")
    return fp


def _grow_forward(d: Digraph, r: Digraph, anchors: tuple[int, ...]) -> list[FreePath]:
    # the out-neighbourhood of a core free path is swept by free paths of R
    k = len(anchors)
    layers = [d.out_sets[a] for a in anchors]
    if len({len(layer) for layer in layers}) != 1:
        raise RootInconsistency("forward growth", f"out-degrees along {anchors} differ")
    paths = []
    for x in sorted(layers[0]):
        chain = [x]
        for i in range(1, k):
            y = _single(r.out_sets[chain[-1]])
            if y is None or y not in layers[i]:
                raise RootInconsistency("forward growth", f"vertex {chain[-1]} has no unique R-successor among the D-out-neighbours of ({anchors[i]})")
            chain.append(y)
        paths.append(_check_free(r, tuple(chain), "forward growth"))
    for i, layer in enumerate(layers):
        if {p.vertices[i] for p in paths} != layer:
            raise RootInconsistency("forward growth", f"paths miss part of the D-out-neighbours of ({anchors[i]})")
    return paths


def _grow_backward(d: Digraph, r: Digraph, anchors: tuple[int, ...]) -> list[FreePath]:
    k = len(anchors)
    layers = [d.in_sets[a] for a in anchors]
    if len({len(layer) for layer in layers}) != 1:
        raise RootInconsistency("backward growth", f"in-degrees along {anchors} differ")
    paths = []
    for x in sorted(layers[-1]):
        chain = [x]
        for i in range(k - 2, -1, -1):
            y = _single(r.in_sets[chain[-1]])
            if y is None or y not in layers[i]:
                raise RootInconsistency("backward growth", f"vertex {chain[-1]} has no unique R-predecessor among the D-in-neighbours of ({anchors[i]})")
            chain.append(y)
        paths.append(_check_free(r, tuple(reversed(chain)), "backward growth"))
    for i, layer in enumerate(layers):
        if {p.vertices[i] for p in paths} != layer:
            raise RootInconsistency("backward growth", f"paths miss part of the D-in-neighbours of ({anchors[i]})")
    return paths


def _lift(d: Digraph, r: Digraph, path: tuple[int, ...], direction: str) -> FreePath | None:
    table = d.out_sets if direction == "out" else d.in_sets
    lifted = []
    for u in path:
        a = _single(table[u])
        if a is None:
            raise RootInconsistency("lift", f"complement vertex {u} is not thin in D")
        lifted.append(a)
    if direction == "out":
        if any(d.out_degree(a) == 0 for a in lifted):
            return None
        return _check_free(r, tuple(lifted), "lift to successors")
    if any(d.in_degree(a) == 0 for a in lifted):
        return None
    return _check_free(r, tuple(lifted), "lift to predecessors")


def propagate_cover(
    d: Digraph, r: Digraph, k: int, core: CoreWitness, seed: FreePath
) -> FreePathCover:
    """Grow ``seed`` into a family of disjoint free paths covering ``d``."""
    if len(seed) != k or not set(seed.vertices) <= core.core:
        raise HypothesisError(f"seed must be {k} core vertices, got {seed.vertices}")
    if not seed.is_free_in(r):
        raise HypothesisError(f"seed {seed.vertices} is not a free path of R")
    for x in d.vertices:
        if not iterated_neighborhood(r, [x], "in", k - 1) and not r.out_sets[x] <= core.core:
            raise HypothesisError(f"condition I^(k-1)(x) empty => O(x) in core fails at x={x}")
        if not iterated_neighborhood(r, [x], "out", k - 1):
            raise HypothesisError(f"O_R^(k-1)({x}) is empty")

    found: dict[tuple[int, ...], FreePath] = {}
    owner: dict[int, tuple[int, ...]] = {}

    def admit(fp: FreePath) -> bool:
        if fp.vertices in found:
            return False
        for v in fp.vertices:
            if v in owner:
                raise RootInconsistency("disjointness", f"vertex {v} on paths {owner[v]} and {fp.vertices}")
        found[fp.vertices] = fp
        for v in fp.vertices:
            owner[v] = fp.vertices
        return True

    admit(seed)
    frontier = [seed]
    while frontier:
        produced: list[FreePath] = []
        for fp in frontier:
            sides = {v in core.core for v in fp.vertices}
            if sides == {True}:
                derived = _grow_forward(d, r, fp.vertices) + _grow_backward(d, r, fp.vertices)
            elif sides == {False}:
                derived = [
                    p
                    for p in (_lift(d, r, fp.vertices, "out"), _lift(d, r, fp.vertices, "in"))
                    if p is not None
                ]
            else:
                raise RootInconsistency("cover", f"path {fp.vertices} mixes core and complement")
            produced.extend(p for p in derived if admit(p))
        frontier = sorted(produced, key=lambda p: min(p.vertices))

    residue = set(d.vertices) - set(owner)
    paths = sorted(found.values(), key=lambda p: min(p.vertices))
    if residue:
        raise IncompleteCover(residue, paths)

    comp_of = {}
    for cid, block in enumerate(weak_components(d)):
        for v in block:
            comp_of[v] = cid
    signatures = {tuple(comp_of[v] for v in p.vertices) for p in paths}
    if len(signatures) != 1:
        raise RootInconsistency("cover", f"paths visit components in {len(signatures)} different orders")
    (signature,) = signatures
    if sorted(signature) != list(range(len(set(comp_of.values())))):
        raise RootInconsistency("cover", f"component order {signature} is not a permutation of the components")
    return FreePathCover(tuple(paths), signature)


def check_class(d: Digraph, k: int) -> tuple[CoreWitness, list[list[int]]]:
    """Validate membership in the decidable class; returns the core and the components.

    Raises ``ClassHypothesisError`` whose ``condition`` names the first failed requirement.
    """
    if k < 2:
        raise ClassHypothesisError("k", f"need k >= 2, got {k}")
    try:
        core = find_core(d)
    except NotASubdivision as exc:
        raise ClassHypothesisError("not a subdivision digraph", str(exc)) from exc
    blocks = weak_components(d)
    if len(blocks) != k:
        raise ClassHypothesisError("wrong component count", f"{len(blocks)} components, expected {k}")
    for v in d.vertices:
        if d.out_degree(v) == 0:
            raise ClassHypothesisError("zero out-degree vertex", f"vertex {v}")
    for i, block in enumerate(blocks):
        sources = [v for v in block if d.in_degree(v) == 0]
        if len(sources) != 1:
            raise ClassHypothesisError(
                "in-degree-zero count", f"component {i} has {len(sources)} in-degree-zero vertices"
            )
    return core, blocks


def extract_isomorphisms(d: Digraph, r: Digraph, k: int) -> list[VertexBijection]:
    """Isomorphisms from component 0 onto components 1..k-1, read off a root ``r``.

    Maps are in the local indexing of ``induced(d, component)``.
    """
    core, blocks = check_class(d, k)
    if r.n != d.n or not verify_root(r, k, d):
        raise HypothesisError("R is not a k-th root of D")
    seed = lemma1_free_path(d, r, k)
    cover = propagate_cover(d, r, k, core, seed)

    pos = {cid: i for i, cid in enumerate(cover.signature)}
    local = [{v: i for i, v in enumerate(block)} for block in blocks]
    comps = [induced(d, block)[0] for block in blocks]
    maps = []
    for j in range(1, k):
        forward = [0] * len(blocks[0])
        for p in cover.paths:
            a = p.vertices[pos[0]]
            b = p.vertices[pos[j]]
            forward[local[0][a]] = local[j][b]
        try:
            phi = VertexBijection(tuple(forward))
        except ValueError as exc:
            raise RootInconsistency("isomorphism", f"map onto component {j} is not bijective") from exc
        if not is_isomorphism(phi, comps[0], comps[j]):
            raise RootInconsistency("isomorphism", f"map onto component {j} breaks adjacency")
        maps.append(phi)
    return maps


@dataclass(frozen=True)
class ClassRootDecision:
    root: Digraph | None
    evidence: tuple[int, int] | None = None

    @property
    def has_root(self) -> bool:
        return self.root is not None


def decide_root_in_class(d: Digraph, k: int) -> ClassRootDecision:
    """Decide root existence for a class member by comparing its components.

    A root exists exactly when every component is isomorphic to component 0;
    it is then assembled from the isomorphisms found. Otherwise ``evidence``
    is ``(0, j)`` for the first component j not isomorphic to component 0.
    """
    _, blocks = check_class(d, k)
    reference, _ = induced(d, blocks[0])
    maps = [list(blocks[0])]
    for j in range(1, k):
        comp, index = induced(d, blocks[j])
        phi = find_isomorphism(reference, comp)
        if phi is None:
            return ClassRootDecision(None, (0, j))
        maps.append([index[phi(a)] for a in reference.vertices])
    root = root_from_maps(d.n, reference, maps)
    if not verify_root(root, k, d):
        raise AssertionError("assembled root failed verification")
    return ClassRootDecision(root)


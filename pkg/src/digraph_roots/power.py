"""Exact-length digraph powers.

``power`` is Boolean matrix exponentiation by repeated squaring over packed
bit-rows. ``walk_power_oracle`` recomputes the same relation by stepping
neighbourhood sets one arc at a time; the two share no code path.
"""

from __future__ import annotations

from typing import Sequence

from .digraph import Digraph


def bool_matmul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Boolean product of two bit-row matrices: row i is the OR of b[j] over j in a[i]."""
    out = []
    for row in a:
        acc = 0
        while row:
            low = row & -row
            acc |= b[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return tuple(out)


def bool_matpow(rows: Sequence[int], k: int) -> tuple[int, ...]:
    if k < 1:
        raise ValueError(f"exponent must be positive, got {k}")
    result: tuple[int, ...] | None = None
    base = tuple(rows)
    while True:
        if k & 1:
            result = base if result is None else bool_matmul(result, base)
        k >>= 1
        if not k:
            break
        base = bool_matmul(base, base)
    assert result is not None
    return result


def power(d: Digraph, k: int) -> Digraph:
    """The k-th power: arc a->b iff some walk of exactly k arcs runs from a to b."""
    if k < 1:
        raise ValueError(f"power requires k >= 1, got {k}")
    if k == 1:
        return d
    return Digraph.from_rows(bool_matpow(d.out_rows, k))


def walk_power_oracle(d: Digraph, k: int) -> Digraph:
    if k < 1:
        raise ValueError(f"power requires k >= 1, got {k}")
    arcs = []
    for source in d.vertices:
        frontier = {source}
        for _ in range(k):
            nxt: set[int] = set()
            for v in frontier:
                nxt.update(d.out_sets[v])
            frontier = nxt
            if not frontier:
                break
        arcs.extend((source, t) for t in frontier)
    return Digraph(d.n, arcs)


def verify_root(r: Digraph, k: int, d: Digraph) -> bool:
    """True iff ``r`` raised to the k-th power is exactly ``d``."""
    if r.n != d.n:
        raise ValueError(f"root candidate has {r.n} vertices, target has {d.n}")
    return power(r, k).out_rows == d.out_rows

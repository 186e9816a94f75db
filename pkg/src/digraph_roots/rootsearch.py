"""Complete root-existence oracles for small digraphs.

``exhaustive_roots`` enumerates every candidate relation (vectorised with
numpy). ``backtracking_root_search`` is a depth-first search over arc
variables with bound propagation; it stays complete and is usable well past
the enumeration limit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .digraph import Digraph, iter_bits
from .power import bool_matmul, bool_matpow

#: Largest vertex count for full 2^(n*n) enumeration.
EXHAUSTIVE_MAX_N = 5
_CHUNK = 1 << 20


class SearchStatus(str, enum.Enum):
    ROOT_FOUND = "root-found"
    NO_ROOT = "no-root"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass
class SearchOutcome:
    status: SearchStatus
    witness: Digraph | None = None
    nodes: int = 0
    work_units: int = 0

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.ROOT_FOUND


class BudgetExhausted(Exception):
    pass


def _candidate_powers(n: int, k: int, start: int, stop: int) -> np.ndarray:
    """Packed k-th powers of candidate masks ``start..stop-1``, shape (count, n)."""
    masks = np.arange(start, stop, dtype=np.uint64)
    row_mask = np.uint64((1 << n) - 1)
    base = np.stack(
        [((masks >> np.uint64(u * n)) & row_mask).astype(np.uint8) for u in range(n)],
        axis=1,
    )

    def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.zeros_like(a)
        for j in range(n):
            out |= ((a >> np.uint8(j)) & np.uint8(1)) * b[:, j : j + 1]
        return out

    result = None
    e = k
    while True:
        if e & 1:
            result = base if result is None else mul(result, base)
        e >>= 1
        if not e:
            break
        base = mul(base, base)
    return result


@lru_cache(maxsize=16)
def _power_table(n: int, k: int) -> np.ndarray:
    return _candidate_powers(n, k, 0, 1 << (n * n))


def exhaustive_roots(d: Digraph, k: int) -> list[Digraph]:
    """Every R on V(d) with R^k = d, in ascending candidate-bitmask order.

    Candidate mask bit ``u*n + v`` encodes the arc u->v.
    """
    n = d.n
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(
            f"exhaustive enumeration refused for {n} vertices (limit {EXHAUSTIVE_MAX_N}); "
            "use backtracking_root_search"
        )
    target = np.array(d.out_rows, dtype=np.uint8)
    total = 1 << (n * n)
    hits: list[int] = []
    if n <= 4:
        table = _power_table(n, k)
        hits = np.nonzero((table == target).all(axis=1))[0].tolist()
    else:
        for start in range(0, total, _CHUNK):
            block = _candidate_powers(n, k, start, min(total, start + _CHUNK))
            hits.extend((np.nonzero((block == target).all(axis=1))[0] + start).tolist())
    row_mask = (1 << n) - 1
    return [
        Digraph.from_rows([(mask >> (u * n)) & row_mask for u in range(n)])
        for mask in hits
    ]


# ---------------------------------------------------------------------------
# backtracking search
# ---------------------------------------------------------------------------


def _layers(rows: list[int], start: int, steps: int) -> list[int]:
    """Bitmask of vertices reachable from ``start`` in exactly j steps, j = 0..steps."""
    out = [start]
    cur = start
    for _ in range(steps):
        nxt = 0
        while cur:
            low = cur & -cur
            nxt |= rows[low.bit_length() - 1]
            cur ^= low
        cur = nxt
        out.append(cur)
    return out


def _transpose(rows: list[int], n: int) -> list[int]:
    cols = [0] * n
    for u, row in enumerate(rows):
        bit = 1 << u
        while row:
            low = row & -row
            cols[low.bit_length() - 1] |= bit
            row ^= low
    return cols


class _Search:
    def __init__(self, d: Digraph, k: int, budget: int) -> None:
        self.n = d.n
        self.k = k
        self.budget = budget
        self.d_out = list(d.out_rows)
        self.d_in = list(d.in_rows)
        self.nodes = 0
        self.work = 0

    # Lower bound ``lo`` holds committed arcs, upper bound ``hi`` committed
    # plus undecided ones. Every rule below is a consequence of R^k = D, so
    # pruning never discards a root.
    def propagate(self, lo: list[int], hi: list[int]) -> bool:
        n, k = self.n, self.k
        d_out, d_in = self.d_out, self.d_in
        while True:
            self.work += 1
            changed = False

            lo_pow = bool_matpow(lo, k)
            for u in range(n):
                if lo_pow[u] & ~d_out[u]:
                    return False
            hi_pow = bool_matpow(hi, k)
            for u in range(n):
                if d_out[u] & ~hi_pow[u]:
                    return False

            # R commutes with D = R^k, so R.D = D.R row by row
            left_hi = bool_matmul(hi, d_out)
            left_lo = bool_matmul(lo, d_out)
            right_hi = bool_matmul(d_out, hi)
            right_lo = bool_matmul(d_out, lo)
            for u in range(n):
                if left_lo[u] & ~right_hi[u] or right_lo[u] & ~left_hi[u]:
                    return False
                kill = right_hi[u] & ~left_hi[u]
                if kill:
                    for v in iter_bits(d_out[u]):
                        if hi[v] & kill:
                            hi[v] &= ~kill
                            changed = True
                kill = left_hi[u] & ~right_hi[u]
                if kill:
                    cols = 0
                    for w in iter_bits(kill):
                        cols |= d_in[w]
                    if hi[u] & cols:
                        hi[u] &= ~cols
                        changed = True
            if changed:
                continue
            hi_t = _transpose(hi, n)
            for u in range(n):
                for w in iter_bits(left_lo[u] & ~right_lo[u]):
                    cands = hi_t[w] & d_out[u]
                    if cands & (cands - 1) == 0:
                        lo[cands.bit_length() - 1] |= 1 << w
                        changed = True
                for w in iter_bits(right_lo[u] & ~left_lo[u]):
                    cands = hi[u] & d_in[w]
                    if cands & (cands - 1) == 0:
                        lo[u] |= cands
                        changed = True
            if changed:
                continue
            lo_t = _transpose(lo, n)

            # an undecided arc whose single use already closes a forbidden walk
            pre = [_layers(lo_t, 1 << u, k - 1) for u in range(n)]
            suf = [_layers(lo, 1 << v, k - 1) for v in range(n)]
            for u in range(n):
                free = hi[u] & ~lo[u]
                for v in iter_bits(free):
                    bad = False
                    for j in range(k):
                        landing = suf[v][k - 1 - j]
                        if not landing:
                            continue
                        for a in iter_bits(pre[u][j]):
                            if landing & ~d_out[a]:
                                bad = True
                                break
                        if bad:
                            break
                    if bad:
                        hi[u] &= ~(1 << v)
                        changed = True
            if changed:
                continue

            # a required D-arc whose walks all squeeze through one arc
            for a in range(n):
                need = d_out[a] & ~lo_pow[a]
                if not need:
                    continue
                fwd = _layers(hi, 1 << a, k)
                for b in iter_bits(need):
                    back = _layers(hi_t, 1 << b, k)
                    mids = [fwd[j] & back[k - j] for j in range(k + 1)]
                    for j in range(k):
                        x, y = mids[j], mids[j + 1]
                        if x & (x - 1) == 0 and y & (y - 1) == 0:
                            u = x.bit_length() - 1
                            if not lo[u] & y:
                                lo[u] |= y
                                changed = True
            if not changed:
                return True

    def probe(self, lo: list[int], hi: list[int]) -> bool:
        # failed-literal probing: an arc whose inclusion propagates to a
        # conflict is excluded
        while True:
            changed = False
            for u in range(self.n):
                for v in iter_bits(hi[u] & ~lo[u]):
                    bit = 1 << v
                    if not hi[u] & bit or lo[u] & bit:
                        continue
                    lo2, hi2 = list(lo), list(hi)
                    lo2[u] |= bit
                    if self.propagate(lo2, hi2):
                        continue
                    hi[u] &= ~bit
                    changed = True
                    if not self.propagate(lo, hi):
                        return False
            if not changed:
                return True

    def run(self, lo: list[int], hi: list[int]) -> list[int] | None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted
        if not self.propagate(lo, hi):
            return None
        # probing pays off once, before any branching
        if self.nodes == 1 and not self.probe(lo, hi):
            return None
        # branch in the row with the fewest undecided arcs; ties by arc index
        u, best = -1, self.n + 1
        for row in range(self.n):
            count = (hi[row] & ~lo[row]).bit_count()
            if 0 < count < best:
                u, best = row, count
        if u < 0:
            return lo if bool_matpow(lo, self.k) == tuple(self.d_out) else None
        free = hi[u] & ~lo[u]
        bit = free & -free
        for take in (True, False):
            lo2, hi2 = list(lo), list(hi)
            if take:
                lo2[u] |= bit
            else:
                hi2[u] &= ~bit
            found = self.run(lo2, hi2)
            if found is not None:
                return found
        return None


def backtracking_root_search(d: Digraph, k: int, budget: int = 10**6) -> SearchOutcome:
    """Decide whether ``d`` has a k-th root, within ``budget`` search-tree nodes."""
    if k < 2:
        raise ValueError(f"backtracking search requires k >= 2, got {k}")
    search = _Search(d, k, budget)
    full = (1 << d.n) - 1
    try:
        found = search.run([0] * d.n, [full] * d.n)
    except BudgetExhausted:
        return SearchOutcome(SearchStatus.BUDGET_EXHAUSTED, None, search.nodes - 1, search.work)
    if found is None:
        return SearchOutcome(SearchStatus.NO_ROOT, None, search.nodes, search.work)
    return SearchOutcome(SearchStatus.ROOT_FOUND, Digraph.from_rows(found), search.nodes, search.work)

"""Randomised agreement check between class-root decisions and isomorphism."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .digraph import Digraph, random_bijection, random_digraph, relabel
from .isomorphism import BRUTE_FORCE_MAX_N, brute_force_isomorphic, is_isomorphic
from .reduction import reduce
from .subdivision import decide_root_in_class

#: Largest parent size the harness will sample (keeps each trial sub-second).
MAX_PARENT_N = 10


@dataclass
class ExperimentResult:
    trials: list[dict] = field(default_factory=list)
    agreement: dict[str, int] = field(
        default_factory=lambda: {
            "iso/root": 0,
            "iso/no-root": 0,
            "non-iso/root": 0,
            "non-iso/no-root": 0,
        }
    )
    oracle_mismatches: int = 0

    @property
    def diagonal(self) -> bool:
        return (
            self.agreement["iso/no-root"] == 0
            and self.agreement["non-iso/root"] == 0
            and self.oracle_mismatches == 0
        )


def _same_size_partner(n: int, m: int, rng: random.Random) -> Digraph:
    pairs = [(u, v) for u in range(n) for v in range(n)]
    return Digraph(n, rng.sample(pairs, m))


def run_experiment(
    trials: int,
    max_n: int,
    ks: list[int],
    seed: int,
    oracle: bool = False,
) -> ExperimentResult:
    """Sample (D1, D2) pairs and compare the two decision routes.

    Even-numbered trials use a relabelled copy of D1 as D2; odd ones draw
    D2 with the same vertex and arc counts as D1. With ``oracle`` set, the
    isomorphism verdict is also checked against permutation brute force.
    """
    if trials < 0:
        raise ValueError("trial count must be non-negative")
    if not 1 <= max_n <= MAX_PARENT_N:
        raise ValueError(f"max_n must lie in 1..{MAX_PARENT_N}, got {max_n}")
    if oracle and max_n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"oracle cross-check limited to max_n <= {BRUTE_FORCE_MAX_N}")
    if not ks or any(k < 2 for k in ks):
        raise ValueError(f"every k must be at least 2, got {ks}")

    rng = random.Random(seed)
    result = ExperimentResult()
    for t in range(trials):
        n = rng.randint(1, max_n)
        k = ks[t % len(ks)]
        d1 = random_digraph(n, rng.uniform(0.1, 0.9), rng)
        if t % 2 == 0:
            d2 = relabel(d1, random_bijection(n, rng))
        else:
            d2 = _same_size_partner(n, len(d1.arcs), rng)
        iso = is_isomorphic(d1, d2)
        if oracle and brute_force_isomorphic(d1, d2) != iso:
            result.oracle_mismatches += 1
        decision = decide_root_in_class(reduce(d1, d2, k).graph, k)
        key = f"{'iso' if iso else 'non-iso'}/{'root' if decision.has_root else 'no-root'}"
        result.agreement[key] += 1
        result.trials.append(
            {"trial": t, "n": n, "k": k, "arcs": len(d1.arcs), "iso": iso, "root": decision.has_root}
        )
    return result

"""Seeded random instance generators for tests and experiments.

`gen_cactoid` grows a graph whose blocks are directed cycles by repeatedly
attaching a fresh cycle at a uniformly chosen existing vertex; `gen_tree`
grows a random attachment tree whose edges are unit-weight two-cycles.
Same seed, same spec => identical graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph

__all__ = ["GenSpec", "gen_cactoid", "gen_tree"]

_WEIGHT_KINDS = ("unit", "positive", "signed")


@dataclass(frozen=True)
class GenSpec:
    """Parameters for `gen_cactoid`.

    `weight_kind`: "unit" (all 1), "positive" (numerator and denominator
    uniform in 1..bound), or "signed" (same magnitudes, random sign; a
    cycle's weights are resampled whenever its first weight lands on zero).
    `allow_zero_lambda` (signed only) instead forces the last block's second
    weight to zero by solving for its final arc weight, keeping the first
    weight nonzero: a singular block inside a regular graph.
    """

    seed: int
    block_count: int = 1
    cycle_length_range: tuple[int, int] = (2, 6)
    weight_kind: str = "unit"
    bound: int = 10
    allow_zero_lambda: bool = False

    def __post_init__(self):
        lo, hi = self.cycle_length_range
        if self.block_count < 1:
            raise ValueError("block_count must be at least 1")
        if lo < 2 or hi < lo:
            raise ValueError("cycle lengths need 2 <= min <= max")
        if self.weight_kind not in _WEIGHT_KINDS:
            raise ValueError(f"weight_kind must be one of {_WEIGHT_KINDS}")
        if self.bound < 1:
            raise ValueError("bound must be at least 1")
        if self.allow_zero_lambda and self.weight_kind != "signed":
            raise ValueError("allow_zero_lambda requires signed weights")


def _weight(rng: random.Random, kind: str, bound: int) -> Fraction:
    if kind == "unit":
        return Fraction(1)
    num = rng.randint(1, bound)
    den = rng.randint(1, bound)
    if kind == "signed" and rng.random() < 0.5:
        num = -num
    return Fraction(num, den)


def _cycle_weights(
    rng: random.Random, length: int, kind: str, bound: int, force_zero_second: bool
) -> list[Fraction]:
    while True:
        if force_zero_second:
            head = [_weight(rng, "signed", bound) for _ in range(length - 1)]
            e1 = sum(head, Fraction(0))
            if e1 == 0:
                continue
            e2 = (e1 * e1 - sum((w * w for w in head), Fraction(0))) / 2
            last = -e2 / e1
            if e1 + last == 0:
                continue
            return head + [last]
        ws = [_weight(rng, kind, bound) for _ in range(length)]
        if kind == "signed" and sum(ws, Fraction(0)) == 0:
            continue
        return ws


def gen_cactoid(spec: GenSpec) -> Graph:
    """Random graph whose blocks are directed cycles, per `spec`.

    The first cycle is laid on fresh vertices; each later cycle is attached
    at a uniformly chosen existing vertex.  Vertices are named v0, v1, ...
    in creation order.
    """
    rng = random.Random(spec.seed)
    lo, hi = spec.cycle_length_range
    lengths = [rng.randint(lo, hi) for _ in range(spec.block_count)]
    zero_block = spec.block_count - 1 if spec.allow_zero_lambda else None
    vertices: list[str] = []
    arcs: list[tuple[str, str, Fraction]] = []
    fresh = 0
    for b, length in enumerate(lengths):
        if vertices:
            ring = [rng.choice(vertices)]
            new_needed = length - 1
        else:
            ring = []
            new_needed = length
        for _ in range(new_needed):
            name = f"v{fresh}"
            fresh += 1
            vertices.append(name)
            ring.append(name)
        ws = _cycle_weights(
            rng, length, spec.weight_kind, spec.bound, force_zero_second=(b == zero_block)
        )
        for k in range(length):
            arcs.append((ring[k], ring[(k + 1) % length], ws[k]))
    return Graph(vertices, arcs)


def gen_tree(n: int, seed: int) -> Graph:
    """Random attachment tree on n vertices, edges as unit two-cycles.

    Vertex k (k >= 1) attaches to a uniformly chosen earlier vertex.
    """
    if n < 2:
        raise ValueError("a tree needs at least two vertices to have a block")
    rng = random.Random(seed)
    vertices = [f"t{k}" for k in range(n)]
    edges = []
    for k in range(1, n):
        parent = vertices[rng.randrange(k)]
        edges.append((vertices[k], parent, Fraction(1)))
    return Graph.build(edges=edges, vertices=vertices)

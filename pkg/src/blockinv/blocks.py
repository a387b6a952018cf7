"""Cut vertices and block decomposition of strongly connected digraphs.

A cut vertex is a vertex whose removal disconnects the graph in the
underlying-undirected sense.  Removing it splits the graph into components
that each stay strongly connected once the cut vertex is added back (a
directed path cannot cross between components without passing the cut
vertex), so the decomposition recurses on those parts.  Blocks are the
leaves of that recursion: maximal sub-digraphs without cut vertices of
their own, every one on at least two vertices, pairwise overlapping in at
most one vertex.

Everything here is brute force by design: remove a vertex, re-check
connectivity.  The package targets desk-scale graphs where the exact linear
algebra, not the graph traversal, dominates.
"""

from __future__ import annotations

import json
from typing import Sequence

from .linalg import RMatrix
from .graphs import (
    Graph,
    LabelMismatchError,
    NotStronglyConnectedError,
    is_distance_well_defined,
    weak_components,
)

__all__ = [
    "IndexOutOfRangeError",
    "BlockDecomposition",
    "cut_vertices",
    "block_decompose",
    "submatrix_for_block",
    "decomposition_to_json",
]


class IndexOutOfRangeError(IndexError):
    """Block index outside [0, r)."""


class BlockDecomposition:
    """Canonical block decomposition of a graph.

    `blocks` is a sorted tuple of sorted vertex tuples, so two decompositions
    of the same graph compare equal no matter how they were computed.  All
    derived quantities (cut vertices, per-vertex block index sets, structure
    parameters) are read off the block list.
    """

    __slots__ = ("_vertices", "_blocks", "_index_sets")

    def __init__(self, vertices: Sequence[str], blocks: Sequence[Sequence[str]]):
        vs = tuple(str(v) for v in vertices)
        vset = set(vs)
        blocks_t = tuple(sorted(tuple(sorted(str(v) for v in b)) for b in blocks))
        if not blocks_t:
            raise ValueError("decomposition needs at least one block")
        for b in blocks_t:
            if len(b) < 2:
                raise ValueError(f"block smaller than two vertices: {b}")
            if not set(b) <= vset:
                raise ValueError(f"block vertex outside the graph: {b}")
        covered = set()
        for b in blocks_t:
            covered.update(b)
        if covered != vset:
            raise ValueError("blocks do not cover the vertex set")
        index_sets: dict[str, frozenset[int]] = {}
        for v in vs:
            index_sets[v] = frozenset(i for i, b in enumerate(blocks_t) if v in b)
        self._vertices = vs
        self._blocks = blocks_t
        self._index_sets = index_sets

    @property
    def vertices(self) -> tuple[str, ...]:
        """Ambient vertex order (the graph's order, not the blocks')."""
        return self._vertices

    @property
    def blocks(self) -> tuple[tuple[str, ...], ...]:
        return self._blocks

    @property
    def r(self) -> int:
        """Number of blocks."""
        return len(self._blocks)

    @property
    def structure(self) -> tuple[int, tuple[int, ...]]:
        """Structure parameters (n; n_1, ..., n_r)."""
        return (len(self._vertices), tuple(len(b) for b in self._blocks))

    @property
    def block_index_sets(self) -> dict[str, frozenset[int]]:
        """For each vertex, the indices of the blocks containing it."""
        return dict(self._index_sets)

    def blocks_containing(self, v: str) -> frozenset[int]:
        return self._index_sets[v]

    def block_index(self, v: str) -> int:
        """Number of blocks containing v (at least 1; cut vertices have >= 2)."""
        return len(self._index_sets[v])

    @property
    def block_index_total(self) -> int:
        """Graph block index: sum over vertices of (block_index(v) - 1).

        Computed honestly from the per-vertex sets; the identity that this
        equals r - 1 is a theorem, checked in tests, not assumed here.
        """
        return sum(len(s) - 1 for s in self._index_sets.values())

    @property
    def cut_vertices(self) -> frozenset[str]:
        return frozenset(v for v, s in self._index_sets.items() if len(s) >= 2)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BlockDecomposition):
            return NotImplemented
        return self._blocks == other._blocks and set(self._vertices) == set(
            other._vertices
        )

    def __hash__(self) -> int:
        return hash((self._blocks, frozenset(self._vertices)))

    def __repr__(self) -> str:
        n, sizes = self.structure
        return f"BlockDecomposition(n={n}, sizes={list(sizes)})"


def _weak_cut_vertices(g: Graph) -> frozenset[str]:
    if len(g.vertices) <= 2:
        return frozenset()
    return frozenset(
        x for x in g.vertices if len(weak_components(g, without=(x,))) > 1
    )


def cut_vertices(g: Graph) -> frozenset[str]:
    """All cut vertices of a strongly connected digraph.

    Brute force: drop each vertex in turn and check whether the rest still
    hangs together.  A two-vertex graph never has a cut vertex (one vertex
    always remains connected).
    """
    if len(g.vertices) < 2:
        raise ValueError("cut vertices need at least two vertices")
    if not is_distance_well_defined(g):
        raise NotStronglyConnectedError("graph is not strongly connected")
    return _weak_cut_vertices(g)


def block_decompose(g: Graph) -> BlockDecomposition:
    """Split recursively at cut vertices until no part has one.

    Each split keeps the cut vertex in every part, so parts stay strongly
    connected and the result does not depend on which cut vertex is chosen
    first (tested by permutation).
    """
    if len(g.vertices) < 2:
        raise ValueError("block decomposition needs at least two vertices")
    if not is_distance_well_defined(g):
        raise NotStronglyConnectedError("graph is not strongly connected")
    blocks: list[tuple[str, ...]] = []
    work = [g]
    while work:
        h = work.pop()
        cut = next(
            (x for x in h.vertices if len(weak_components(h, without=(x,))) > 1),
            None,
        )
        if cut is None:
            blocks.append(h.vertices)
            continue
        for comp in weak_components(h, without=(cut,)):
            work.append(h.induced(comp | {cut}))
    return BlockDecomposition(g.vertices, blocks)


def submatrix_for_block(m: RMatrix, dec: BlockDecomposition, i: int) -> RMatrix:
    """Rows and columns of `m` restricted to block i, label order preserved."""
    if not 0 <= i < dec.r:
        raise IndexOutOfRangeError(f"block index {i} outside [0, {dec.r})")
    if m.labels is None:
        raise LabelMismatchError("matrix must be labeled to take block submatrices")
    want = set(dec.blocks[i])
    if not want <= set(m.labels):
        raise LabelMismatchError("matrix labels do not cover the block")
    keep = [v for v in m.labels if v in want]
    pos = [m.labels.index(v) for v in keep]
    rows = [[m[i2, j2] for j2 in pos] for i2 in pos]
    return RMatrix(rows, keep)


def decomposition_to_json(dec: BlockDecomposition) -> str:
    """Stable JSON rendering of a decomposition."""
    n, sizes = dec.structure
    obj = {
        "vertices": list(dec.vertices),
        "structure": {"n": n, "block_sizes": list(sizes)},
        "blocks": [list(b) for b in dec.blocks],
        "cut_vertices": sorted(dec.cut_vertices),
        "block_index_sets": {
            v: sorted(dec.blocks_containing(v)) for v in dec.vertices
        },
        "block_index_total": dec.block_index_total,
    }
    return json.dumps(obj, indent=2) + "\n"

"""Gluing block certificates into a whole-graph inverse.

Blocks of a strongly connected digraph overlap only in cut vertices, and
their certificate bags add up: lambda is the sum of the block lambdas, the
alpha/beta entries at a vertex sum over its blocks (with a -bi(v)+1
correction so each vertex is counted once), and the Laplacian-like parts
embed block-wise and add.  If every block bag holds on one side, so does
the composed bag, and when the composed lambda is nonzero the usual formula
yields the inverse of the whole matrix.  Individual block lambdas may be
zero; only the sum matters.

Determinants and cofactor sums multiply across blocks in the classical
product form, kept division-free so zero block cofactors are tolerated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import (
    RMatrix,
    SingularMatrixError,
    cofactor_sum,
    det_bareiss,
    identity,
    vec_sum,
)
from .graphs import Graph, LabelMismatchError, distance_matrix
from .blocks import BlockDecomposition, block_decompose, submatrix_for_block
from .bags import (
    Bag,
    BagVerdict,
    FirstWeightZeroError,
    ZeroRowSumInverseError,
    bag_inverse,
    cycle_bag,
    cycle_cof,
    cycle_det,
    cycle_distance_matrix,
    first_weight,
    generic_bag,
    second_weight,
    verify_bag,
)

__all__ = [
    "ArityMismatchError",
    "NotCactoidError",
    "BlockNotExpressibleError",
    "BlockReport",
    "CompositionResult",
    "assemble_distance_matrix",
    "compose_bags",
    "ghh_det_cof",
    "cactoid_det",
    "graham_pollak_det",
    "cycle_blocks_of",
    "effective_distance_matrix",
    "invert_distance_matrix",
    "composition_to_json",
]


class ArityMismatchError(ValueError):
    """Number of bags does not match the number of blocks."""


class NotCactoidError(ValueError):
    """A block is not a directed cycle where one is required."""


class BlockNotExpressibleError(ValueError):
    """A block admits no certificate bag, so composition cannot proceed."""


# -- block-cut tree assembly ------------------------------------------------


def _block_cut_tree(dec: BlockDecomposition):
    """Bipartite tree on block nodes ('b', i) and cut-vertex nodes ('c', v)."""
    adj: dict[tuple, list[tuple]] = {}
    for i in range(dec.r):
        adj[("b", i)] = []
    for v in sorted(dec.cut_vertices):
        adj[("c", v)] = []
    for i, b in enumerate(dec.blocks):
        for v in b:
            if v in dec.cut_vertices:
                adj[("b", i)].append(("c", v))
                adj[("c", v)].append(("b", i))
    return adj


def _tree_path(adj, start, goal):
    if start == goal:
        return [start]
    prev = {start: None}
    queue = [start]
    while queue:
        node = queue.pop(0)
        for nxt in adj[node]:
            if nxt not in prev:
                prev[nxt] = node
                if nxt == goal:
                    path = [nxt]
                    while path[-1] is not None:
                        path.append(prev[path[-1]])
                    path.pop()
                    path.reverse()
                    return path
                queue.append(nxt)
    raise ValueError("block-cut tree is disconnected")  # cannot happen


def assemble_distance_matrix(
    dec: BlockDecomposition, block_mats: Sequence[RMatrix]
) -> RMatrix:
    """Glue per-block matrices into the whole generalized distance matrix.

    Entries within a block are copied; entries across blocks follow the
    unique path in the block-cut tree, adding the within-block legs between
    consecutive cut vertices.  This is exactly the additivity the
    generalized-distance definition demands, so it works for signed weights
    where no shortest-path semantics exist.
    """
    if len(block_mats) != dec.r:
        raise ArityMismatchError(f"{len(block_mats)} matrices for {dec.r} blocks")
    for i, m in enumerate(block_mats):
        if m.labels is None or set(m.labels) != set(dec.blocks[i]):
            raise LabelMismatchError(f"matrix {i} must be labeled by block {i}")
    adj = _block_cut_tree(dec)
    cuts = dec.cut_vertices

    def home(v: str):
        if v in cuts:
            return ("c", v)
        return ("b", min(dec.blocks_containing(v)))

    def common_block(p: str, q: str) -> int:
        shared = dec.blocks_containing(p) & dec.blocks_containing(q)
        assert len(shared) == 1, f"waypoints {p},{q} share {len(shared)} blocks"
        return next(iter(shared))

    vs = dec.vertices
    n = len(vs)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for a, u in enumerate(vs):
        for b, v in enumerate(vs):
            if u == v:
                continue
            path = _tree_path(adj, home(u), home(v))
            waypoints = [u]
            for node in path:
                if node[0] == "c" and node[1] != waypoints[-1]:
                    waypoints.append(node[1])
            if waypoints[-1] != v:
                waypoints.append(v)
            total = Fraction(0)
            for p, q in zip(waypoints, waypoints[1:]):
                total += block_mats[common_block(p, q)].at(p, q)
            rows[a][b] = total
    return RMatrix(rows, vs)


# -- bag composition -----------------------------------------------------------


def compose_bags(
    dec: BlockDecomposition,
    block_bags: Sequence[Bag],
    whole: RMatrix | None = None,
) -> Bag:
    """Compose per-block bags into a bag for the whole graph.

    lambda adds; alpha and beta add per vertex over the blocks containing
    it, corrected by -(number of such blocks) + 1; the Laplacian-like parts
    embed on their block's labels and add.  The whole matrix is assembled
    from the block matrices unless a pre-computed one is passed in `whole`
    (it must agree on every block, which holds for graph distance matrices).
    """
    if len(block_bags) != dec.r:
        raise ArityMismatchError(f"{len(block_bags)} bags for {dec.r} blocks")
    for i, bag in enumerate(block_bags):
        if bag.labels is None or set(bag.labels) != set(dec.blocks[i]):
            raise LabelMismatchError(f"bag {i} must be labeled by block {i}")
    vs = dec.vertices
    n = len(vs)
    pos = {v: k for k, v in enumerate(vs)}
    lam = sum((bag.lam for bag in block_bags), Fraction(0))
    alpha = []
    beta = []
    for v in vs:
        ids = dec.blocks_containing(v)
        a = Fraction(1 - len(ids))
        b = Fraction(1 - len(ids))
        for i in ids:
            bag = block_bags[i]
            k = bag.labels.index(v)
            a += bag.alpha[k]
            b += bag.beta[k]
        alpha.append(a)
        beta.append(b)
    lap_rows = [[Fraction(0)] * n for _ in range(n)]
    for bag in block_bags:
        labels = bag.labels
        idx = [pos[v] for v in labels]
        for r, gr in enumerate(idx):
            row = bag.lap.row(r)
            target = lap_rows[gr]
            for c, gc in enumerate(idx):
                target[gc] += row[c]
    if whole is None:
        whole = assemble_distance_matrix(dec, [bag.dist for bag in block_bags])
    else:
        if whole.labels is None or set(whole.labels) != set(vs):
            raise LabelMismatchError("whole matrix must be labeled by the vertices")
        if whole.labels != vs:
            whole = whole.reindex(vs)
    return Bag(
        dist=whole,
        lam=lam,
        alpha=tuple(alpha),
        beta=tuple(beta),
        lap=RMatrix(lap_rows, vs),
    )


# -- determinant composition ------------------------------------------------


def ghh_det_cof(
    dets: Sequence[Fraction], cofs: Sequence[Fraction]
) -> tuple[Fraction, Fraction]:
    """Graham-Hoffman-Hosoya composition of per-block (det, cof) pairs.

    cof = prod_i cof_i;  det = sum_i det_i * prod_{j != i} cof_j.  The det
    sum is kept division-free so blocks with zero cofactor are fine.
    """
    if len(dets) != len(cofs) or not dets:
        raise ArityMismatchError("need one (det, cof) pair per block")
    dets = [Fraction(x) for x in dets]
    cofs = [Fraction(x) for x in cofs]
    r = len(dets)
    cof = Fraction(1)
    for c in cofs:
        cof *= c
    det = Fraction(0)
    for i in range(r):
        term = dets[i]
        for j in range(r):
            if j != i:
                term *= cofs[j]
        det += term
    return det, cof


def graham_pollak_det(n: int) -> Fraction:
    """Determinant of the distance matrix of any n-vertex tree.

    (-1)^(n-1) * 2^(n-2) * (n-1), independent of the tree's shape; each
    edge is understood as a unit-weight two-cycle.  n must be at least 2.
    """
    if n < 2:
        raise ValueError("a tree determinant needs n >= 2")
    sign = 1 if (n - 1) % 2 == 0 else -1
    return Fraction(sign * 2 ** (n - 2) * (n - 1))


# -- whole-graph pipeline ------------------------------------------------------


def cycle_blocks_of(
    g: Graph, dec: BlockDecomposition
) -> list[tuple[tuple[str, ...], list[Fraction]] | None]:
    """Per block: (vertex order around the cycle, weights), or None.

    A block counts as a directed cycle when every block vertex has exactly
    one ingoing and one outgoing arc within the block.  The traversal starts
    at the smallest vertex label, making the orientation canonical.
    """
    out = []
    for block in dec.blocks:
        bset = set(block)
        succ = {}
        indeg = {v: 0 for v in block}
        ok = True
        for u in block:
            nexts = [v for v in g.out_arcs(u) if v in bset]
            if len(nexts) != 1:
                ok = False
                break
            succ[u] = nexts[0]
            indeg[nexts[0]] += 1
        if not ok or any(d != 1 for d in indeg.values()):
            out.append(None)
            continue
        start = min(block)
        order = [start]
        while True:
            nxt = succ[order[-1]]
            if nxt == start:
                break
            order.append(nxt)
        if len(order) != len(block):
            out.append(None)
            continue
        weights = [
            g.weight(order[k], order[(k + 1) % len(order)])
            for k in range(len(order))
        ]
        out.append((tuple(order), weights))
    return out


def cactoid_det(g: Graph) -> tuple[Fraction, Fraction]:
    """Closed-form (det, cof) for a graph whose blocks are directed cycles.

    cof = (-1)^(n-1) * prod_i w_i^(n_i - 1) and det = lambda * cof with
    lambda the sum of the blocks' second-to-first weight ratios.  Every
    block's first weight must be nonzero.
    """
    dec = block_decompose(g)
    cycles = cycle_blocks_of(g, dec)
    if any(c is None for c in cycles):
        raise NotCactoidError("a block is not a directed cycle")
    n = len(g.vertices)
    cof = Fraction(1)
    lam = Fraction(0)
    for (order, ws) in cycles:
        w = first_weight(ws)
        if w == 0:
            raise FirstWeightZeroError("a block cycle has zero first weight")
        cof *= w ** (len(order) - 1)
        lam += second_weight(ws) / w
    if (n - 1) % 2:
        cof = -cof
    return lam * cof, cof


def effective_distance_matrix(g: Graph) -> RMatrix:
    """Whole-graph matrix: shortest paths when weights are positive,
    otherwise the block-assembled generalized matrix (cycle blocks only)."""
    if all(w > 0 for _, _, w in g.arcs):
        return distance_matrix(g)
    dec = block_decompose(g)
    cycles = cycle_blocks_of(g, dec)
    if any(c is None for c in cycles):
        raise NotCactoidError(
            "signed weights require every block to be a directed cycle"
        )
    mats = [cycle_distance_matrix(ws, labels=order) for (order, ws) in cycles]
    return assemble_distance_matrix(dec, mats)


@dataclass(frozen=True)
class BlockReport:
    """Per-block outcome inside a composition."""

    index: int
    vertices: tuple[str, ...]
    lam: Fraction
    verdict: BagVerdict
    det: Fraction
    cof: Fraction
    is_cycle: bool


@dataclass(frozen=True)
class CompositionResult:
    """Everything the whole-graph pipeline produced.

    `inverse` is present exactly when `lambda_total` is nonzero (the only
    case the certificate formula covers); `invertible` is decided from the
    exact composed determinant, so a zero lambda with nonzero det is
    reported faithfully rather than guessed.
    """

    decomposition: BlockDecomposition
    bag: Bag
    per_block: tuple[BlockReport, ...]
    lambda_total: Fraction
    det: Fraction
    cof: Fraction
    invertible: bool
    inverse: RMatrix | None


def invert_distance_matrix(g: Graph) -> CompositionResult:
    """Decompose, certify each block, compose, and (when possible) invert.

    Cycle blocks get the closed-form bag; other blocks (positive weights
    only) get the forced-parameter bag of their distance submatrix.  The
    composed certificate is re-verified and, when lambda != 0, the produced
    inverse is checked against D exactly before being returned.
    """
    dec = block_decompose(g)
    positive = all(w > 0 for _, _, w in g.arcs)
    whole = distance_matrix(g) if positive else None
    cycles = cycle_blocks_of(g, dec)
    if not positive and any(c is None for c in cycles):
        raise NotCactoidError(
            "signed weights require every block to be a directed cycle"
        )
    bags: list[Bag] = []
    reports: list[BlockReport] = []
    for i, block in enumerate(dec.blocks):
        cyc = cycles[i]
        if cyc is not None:
            order, ws = cyc
            try:
                bag = cycle_bag(ws, labels=order)
            except FirstWeightZeroError as exc:
                raise BlockNotExpressibleError(
                    f"block {i} is a cycle with zero first weight"
                ) from exc
            if whole is not None:
                sub = submatrix_for_block(whole, dec, i)
                assert bag.dist.reindex(sub.labels) == sub, (
                    f"block {i}: cycle path sums disagree with the graph distances"
                )
            det_i = cycle_det(ws)
            cof_i = cycle_cof(ws)
        else:
            sub = submatrix_for_block(whole, dec, i)
            try:
                bag = generic_bag(sub)
            except (SingularMatrixError, ZeroRowSumInverseError) as exc:
                raise BlockNotExpressibleError(
                    f"block {i} admits no certificate: {exc}"
                ) from exc
            det_i = det_bareiss(sub)
            cof_i = cofactor_sum(sub)
        verdict = verify_bag(bag)
        bags.append(bag)
        reports.append(
            BlockReport(i, dec.blocks[i], bag.lam, verdict, det_i, cof_i, cyc is not None)
        )
    composed = compose_bags(dec, bags, whole=whole)
    det, cof = ghh_det_cof([r.det for r in reports], [r.cof for r in reports])
    inverse = None
    if composed.lam != 0:
        inverse = bag_inverse(composed)
        n = composed.order
        assert inverse @ composed.dist == identity(n), (
            "composed inverse failed the exact product check"
        )
    return CompositionResult(
        decomposition=dec,
        bag=composed,
        per_block=tuple(reports),
        lambda_total=composed.lam,
        det=det,
        cof=cof,
        invertible=det != 0,
        inverse=inverse,
    )


def composition_to_json(res: CompositionResult) -> str:
    """Stable JSON rendering of a composition result."""
    n, sizes = res.decomposition.structure
    verdict = verify_bag(res.bag)
    obj = {
        "structure": {"n": n, "block_sizes": list(sizes)},
        "labels": list(res.decomposition.vertices),
        "lambda": str(res.lambda_total),
        "det": str(res.det),
        "cof": str(res.cof),
        "invertible": res.invertible,
        "per_block": [
            {
                "index": r.index,
                "vertices": list(r.vertices),
                "lambda": str(r.lam),
                "det": str(r.det),
                "cof": str(r.cof),
                "is_cycle": r.is_cycle,
                "left_ok": r.verdict.left_ok,
                "right_ok": r.verdict.right_ok,
            }
            for r in res.per_block
        ],
        "composed_verdict": {
            "left_ok": verdict.left_ok,
            "right_ok": verdict.right_ok,
        },
        "inverse": (
            [[str(x) for x in row] for row in res.inverse.rows]
            if res.inverse is not None
            else None
        ),
    }
    return json.dumps(obj, indent=2) + "\n"

"""Composition of block certificates and the whole-graph inversion pipeline."""

import random
from fractions import Fraction as F

import pytest

from blockinv.bags import (
    Bag,
    cycle_bag,
    cycle_cof,
    cycle_det,
    cycle_distance_matrix,
    verify_bag,
)
from blockinv.blocks import BlockDecomposition, block_decompose, submatrix_for_block
from blockinv.compose import (
    ArityMismatchError,
    NotCactoidError,
    assemble_distance_matrix,
    cactoid_det,
    compose_bags,
    composition_to_json,
    cycle_blocks_of,
    effective_distance_matrix,
    ghh_det_cof,
    graham_pollak_det,
    invert_distance_matrix,
)
from blockinv.generators import GenSpec, gen_cactoid, gen_tree
from blockinv.graphs import (
    Graph,
    LabelMismatchError,
    distance_matrix,
)
from blockinv.linalg import (
    RMatrix,
    det_bareiss,
    identity,
    inverse_exact,
)


def triangle():
    return Graph.build(arcs=[("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])


def two_triangles():
    return Graph.build(
        arcs=[("a", "b", 1), ("b", "x", 1), ("x", "a", 1),
              ("x", "c", 1), ("c", "d", 1), ("d", "x", 1)]
    )


def star_tree():
    return Graph.build(edges=[("c", "l1", 1), ("c", "l2", 1), ("c", "l3", 1)])


def glued_mixed():
    """A zero-lambda signed triangle sharing a vertex with a unit two-cycle."""
    return Graph.build(
        arcs=[("a", "b", 1), ("b", "c", 1), ("c", "a", F(-1, 2))],
        edges=[("a", "t", 1)],
    )


def double_zero():
    """Two signed triangles, each with zero lambda, glued at one vertex."""
    return Graph.build(
        arcs=[("a", "b", 1), ("b", "c", 1), ("c", "a", F(-1, 2)),
              ("a", "p", 1), ("p", "q", 1), ("q", "a", F(-1, 2))]
    )


def shuffle_graph(g, seed):
    rng = random.Random(seed)
    arcs = list(g.arcs)
    rng.shuffle(arcs)
    return Graph.build(arcs=arcs)


class TestAssemble:
    def test_matches_shortest_paths(self):
        for g in (two_triangles(), star_tree()):
            dec = block_decompose(g)
            cycles = cycle_blocks_of(g, dec)
            mats = [cycle_distance_matrix(ws, labels=order)
                    for order, ws in cycles]
            assembled = assemble_distance_matrix(dec, mats)
            assert assembled.reindex(g.vertices) == distance_matrix(g)

    def test_signed_assembly(self):
        g = glued_mixed()
        m = effective_distance_matrix(g)
        assert m.labels == g.vertices
        # cross-block entries add the two legs through the shared vertex
        assert m.at("b", "t") == m.at("b", "a") + m.at("a", "t")
        assert m.at("t", "c") == m.at("t", "a") + m.at("a", "c")

    def test_wrong_count(self):
        g = two_triangles()
        dec = block_decompose(g)
        with pytest.raises(ArityMismatchError):
            assemble_distance_matrix(dec, [])

    def test_unlabeled_matrix_rejected(self):
        g = triangle()
        dec = block_decompose(g)
        with pytest.raises(LabelMismatchError):
            assemble_distance_matrix(dec, [cycle_distance_matrix([1, 1, 1])])


class TestComposeBags:
    def test_single_block_is_identity(self):
        g = triangle()
        dec = block_decompose(g)
        bag = cycle_bag([1, 1, 1], labels=dec.blocks[0])
        composed = compose_bags(dec, [bag])
        assert composed.lam == bag.lam
        assert composed.alpha == bag.alpha
        assert composed.lap == bag.lap

    def test_two_triangles_parameters(self):
        g = two_triangles()
        dec = block_decompose(g)
        cycles = cycle_blocks_of(g, dec)
        bags = [cycle_bag(ws, labels=order) for order, ws in cycles]
        composed = compose_bags(dec, bags, whole=distance_matrix(g))
        assert composed.lam == 2
        by_label = dict(zip(composed.labels, composed.alpha))
        assert by_label["x"] == F(-1, 3)
        assert by_label["a"] == F(1, 3)
        v = verify_bag(composed)
        assert v.left_ok and v.right_ok

    def test_path_tree_beta(self):
        g = Graph.build(edges=[("a", "b", 1), ("b", "c", 1)])
        dec = block_decompose(g)
        cycles = cycle_blocks_of(g, dec)
        bags = [cycle_bag(ws, labels=order) for order, ws in cycles]
        composed = compose_bags(dec, bags, whole=distance_matrix(g))
        by_label = dict(zip(composed.labels, composed.beta))
        assert by_label == {"a": F(1, 2), "b": F(0), "c": F(1, 2)}
        assert composed.lam == 1

    def test_wrong_arity(self):
        g = two_triangles()
        dec = block_decompose(g)
        with pytest.raises(ArityMismatchError):
            compose_bags(dec, [cycle_bag([1, 1, 1], labels=dec.blocks[0])])


class TestGhh:
    def test_frozen_pairs(self):
        assert ghh_det_cof([9, 9], [9, 9]) == (162, 81)
        assert ghh_det_cof([-1, -1], [-2, -2]) == (4, 4)
        assert ghh_det_cof([7], [3]) == (7, 3)

    def test_zero_cof_block_is_fine(self):
        det, cof = ghh_det_cof([5, 2], [0, 3])
        assert cof == 0
        assert det == 5 * 3 + 2 * 0

    def test_empty_rejected(self):
        with pytest.raises(ArityMismatchError):
            ghh_det_cof([], [])


class TestCactoidDet:
    def test_triangle(self):
        assert cactoid_det(triangle()) == (9, 9)

    def test_two_triangles(self):
        assert cactoid_det(two_triangles()) == (162, 81)

    def test_star_tree(self):
        det, cof = cactoid_det(star_tree())
        assert det == -12
        assert cof == -8
        assert det == graham_pollak_det(4)

    def test_matches_oracle(self):
        for g in (triangle(), two_triangles(), star_tree(), glued_mixed()):
            det, cof = cactoid_det(g)
            assert det == det_bareiss(effective_distance_matrix(g))

    def test_non_cactoid_rejected(self):
        # a complete directed graph on 3 vertices is one block, not a cycle
        g = Graph.build(
            arcs=[("a", "b", 1), ("b", "a", 1), ("b", "c", 1),
                  ("c", "b", 1), ("a", "c", 1), ("c", "a", 1)]
        )
        with pytest.raises(NotCactoidError):
            cactoid_det(g)


class TestGrahamPollak:
    def test_small_values(self):
        assert graham_pollak_det(2) == -1
        assert graham_pollak_det(3) == 4
        assert graham_pollak_det(4) == -12
        assert graham_pollak_det(5) == 32

    def test_n_one_rejected(self):
        with pytest.raises(ValueError):
            graham_pollak_det(1)

    def test_shape_independence(self):
        for seed in range(6):
            g = gen_tree(7, seed=seed)
            d = distance_matrix(g)
            assert det_bareiss(d) == graham_pollak_det(7)


class TestInvertPipeline:
    def test_unit_five_cycle(self):
        g = Graph.build(
            arcs=[("v0", "v1", 1), ("v1", "v2", 1), ("v2", "v3", 1),
                  ("v3", "v4", 1), ("v4", "v0", 1)]
        )
        res = invert_distance_matrix(g)
        assert res.lambda_total == 2
        assert res.det == 1250
        assert res.cof == 625
        assert res.invertible
        assert res.inverse == inverse_exact(distance_matrix(g))

    def test_two_triangles_full_result(self):
        res = invert_distance_matrix(two_triangles())
        assert res.lambda_total == 2
        assert (res.det, res.cof) == (162, 81)
        assert len(res.per_block) == 2
        assert all(r.is_cycle for r in res.per_block)
        assert all(r.verdict.expressible for r in res.per_block)
        assert res.inverse == inverse_exact(distance_matrix(two_triangles()))

    def test_glued_mixed_inverse(self):
        # one block has lambda 0, but the total is nonzero so the formula holds
        g = glued_mixed()
        res = invert_distance_matrix(g)
        assert res.lambda_total == F(1, 2)
        lams = sorted(r.lam for r in res.per_block)
        assert lams == [F(0), F(1, 2)]
        d = effective_distance_matrix(g)
        assert res.inverse == inverse_exact(d)

    def test_all_lambda_zero_not_invertible(self):
        res = invert_distance_matrix(double_zero())
        assert res.lambda_total == 0
        assert res.det == 0
        assert not res.invertible
        assert res.inverse is None
        d = effective_distance_matrix(double_zero())
        assert det_bareiss(d) == 0

    def test_non_cycle_block_positive_weights(self):
        # a two-way triangle is a single non-cycle block; the forced
        # parameters still certify it when weights are positive
        g = Graph.build(edges=[("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])
        res = invert_distance_matrix(g)
        assert not res.per_block[0].is_cycle
        assert res.per_block[0].verdict.expressible
        assert res.lambda_total == F(2, 3)
        assert res.det == 2 == det_bareiss(distance_matrix(g))
        assert res.inverse == inverse_exact(distance_matrix(g))

    def test_singular_block_has_no_certificate(self):
        # the two-way unit square's distance matrix is singular, so the
        # forced-parameter route must refuse rather than fake a certificate
        from blockinv.compose import BlockNotExpressibleError

        g = Graph.build(
            edges=[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)]
        )
        assert det_bareiss(distance_matrix(g)) == 0
        with pytest.raises(BlockNotExpressibleError):
            invert_distance_matrix(g)

    def test_signed_non_cactoid_rejected(self):
        g = Graph.build(
            arcs=[("a", "b", 1), ("b", "a", 1), ("b", "c", 1),
                  ("c", "b", 1), ("a", "c", 1), ("c", "a", -1)]
        )
        with pytest.raises(NotCactoidError):
            invert_distance_matrix(g)

    def test_permutation_invariance(self):
        base = invert_distance_matrix(two_triangles())
        for seed in range(4):
            g = shuffle_graph(two_triangles(), seed)
            res = invert_distance_matrix(g)
            assert res.det == base.det
            assert res.cof == base.cof
            assert res.lambda_total == base.lambda_total
            assert res.inverse.reindex(base.inverse.labels) == base.inverse

    def test_json_shape(self):
        import json

        res = invert_distance_matrix(triangle())
        doc = json.loads(composition_to_json(res))
        assert doc["lambda"] == "1"
        assert doc["det"] == "9"
        assert doc["invertible"] is True
        assert len(doc["per_block"]) == 1
        assert doc["composed_verdict"] == {"left_ok": True, "right_ok": True}


class TestGeneratedCorpusSpot:
    """A handful of generated graphs exercised end to end."""

    def test_positive_cactoids(self):
        for seed in range(8):
            spec = GenSpec(
                seed=seed,
                block_count=1 + seed % 4,
                cycle_length_range=(2, 5),
                weight_kind="positive",
                bound=8,
            )
            g = gen_cactoid(spec)
            res = invert_distance_matrix(g)
            d = distance_matrix(g)
            assert res.det == det_bareiss(d)
            if res.invertible:
                assert res.inverse == inverse_exact(d)

    def test_signed_cactoids(self):
        for seed in range(8):
            spec = GenSpec(
                seed=seed,
                block_count=2,
                cycle_length_range=(2, 4),
                weight_kind="signed",
                bound=6,
            )
            g = gen_cactoid(spec)
            res = invert_distance_matrix(g)
            d = effective_distance_matrix(g)
            assert res.det == det_bareiss(d)
            v = verify_bag(res.bag)
            assert v.left_ok and v.right_ok

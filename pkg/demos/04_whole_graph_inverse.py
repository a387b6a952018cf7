"""
Inverting a whole graph block by block
======================================

Certificates compose: lambdas add, alpha and beta add with a correction at
shared vertices, and the L parts overlay.  The composed certificate then
inverts the whole distance matrix, even when an individual block is
singular.
"""

from fractions import Fraction as F

from blockinv import (
    Graph,
    det_bareiss,
    effective_distance_matrix,
    invert_distance_matrix,
    inverse_exact,
)

# two unit triangles glued at x
g = Graph.build(
    arcs=[("a", "b", 1), ("b", "x", 1), ("x", "a", 1),
          ("x", "c", 1), ("c", "d", 1), ("d", "x", 1)]
)
res = invert_distance_matrix(g)
print("per-block lambdas:", [r.lam for r in res.per_block])
print("total lambda =", res.lambda_total)
print("det =", res.det, ", cof =", res.cof)
assert res.inverse == inverse_exact(res.bag.dist)
print("composed inverse is oracle-exact")

# alpha at the shared vertex dips negative: the correction at work
by_label = dict(zip(res.bag.labels, res.bag.alpha))
print("alpha at the cut vertex x =", by_label["x"])

# a singular block is fine as long as the total lambda stays nonzero;
# here one triangle has signed weights summing to zero second weight
mixed = Graph.build(
    arcs=[("a", "b", 1), ("b", "c", 1), ("c", "a", F(-1, 2))],
    edges=[("a", "t", 1)],
)
res2 = invert_distance_matrix(mixed)
print("mixed per-block lambdas:", sorted(r.lam for r in res2.per_block))
d2 = effective_distance_matrix(mixed)
assert res2.inverse == inverse_exact(d2)
print("one singular block, total lambda =", res2.lambda_total,
      ", inverse still exact")

# when every block is singular the whole matrix is singular too
flat = Graph.build(
    arcs=[("a", "b", 1), ("b", "c", 1), ("c", "a", F(-1, 2)),
          ("a", "p", 1), ("p", "q", 1), ("q", "a", F(-1, 2))]
)
res3 = invert_distance_matrix(flat)
assert res3.lambda_total == 0 and res3.det == 0 and not res3.invertible
assert det_bareiss(effective_distance_matrix(flat)) == 0
print("all-singular composition: det 0, reported non-invertible")

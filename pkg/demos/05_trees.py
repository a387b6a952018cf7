"""
Trees as cactoids
=================

Read each tree edge as a two-vertex cycle of unit arcs and a tree becomes a
graph whose blocks are all cycles.  Its distance determinant then depends
only on the number of vertices, never the shape.
"""

from blockinv import (
    det_bareiss,
    distance_matrix,
    gen_tree,
    graham_pollak_det,
    invert_distance_matrix,
    inverse_exact,
)

# the closed form: (-1)^(n-1) * 2^(n-2) * (n-1)
for n in range(2, 8):
    print("n =", n, " det =", graham_pollak_det(n))

# ten different shapes at n = 7, one determinant
for seed in range(10):
    t = gen_tree(7, seed=seed)
    assert det_bareiss(distance_matrix(t)) == graham_pollak_det(7)
print("ten random 7-vertex trees all hit", graham_pollak_det(7))

# the composed certificate inverts the tree matrix exactly, and what is
# left after adding back the L part has rank one
t = gen_tree(6, seed=1)
res = invert_distance_matrix(t)
d = distance_matrix(t)
assert res.inverse == inverse_exact(d).reindex(res.bag.labels)

rem = inverse_exact(d).reindex(res.bag.labels) + res.bag.lap
rows = rem.rows
n = len(rows)
minors = [
    rows[i][k] * rows[j][l] - rows[i][l] * rows[j][k]
    for i in range(n) for j in range(i + 1, n)
    for k in range(n) for l in range(k + 1, n)
]
assert all(m == 0 for m in minors)
print("D^-1 + L has every 2x2 minor zero: a rank-one remainder")

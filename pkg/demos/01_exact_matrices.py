"""
Exact rational matrices
=======================

Every number in this library is a fraction, so every identity below is an
equation, not an approximation.
"""

from fractions import Fraction as F

from blockinv import (
    RMatrix,
    adjugate,
    cofactor_sum,
    det_bareiss,
    identity,
    inverse_exact,
)

# a small matrix with mixed integer and fractional entries
a = RMatrix([[0, 1, 2], [2, 0, 1], [1, F(1, 2), 0]])
print("A =")
print(a)

# fraction-free elimination gives the determinant with no rounding at all
det = det_bareiss(a)
print("det(A) =", det)

# the inverse is exact too; multiplying back yields the identity, entry for entry
inv = inverse_exact(a)
print("A^-1 =")
print(inv)
assert a @ inv == identity(3)

# the adjugate ties the two together: A times adj(A) is det(A) times I
adj = adjugate(a)
assert a @ adj == identity(3).scale(det)

# the cofactor sum is the sum of all nine cofactors; for invertible A it
# equals det(A) times the total of the inverse's entries
total = sum(x for row in inv.rows for x in row)
print("cof(A) =", cofactor_sum(a), "= det * entry sum =", det * total)
assert cofactor_sum(a) == det * total

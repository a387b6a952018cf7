"""
Certificates for weighted directed cycles
=========================================

A directed cycle's distance matrix D comes with a small certificate
(lambda, alpha, beta, L) satisfying eight exact identities, among them
L D + I = beta j^T.  When lambda is nonzero they pin down the inverse:

    D^-1 = -L + (1/lambda) beta alpha^T
"""

from fractions import Fraction as F

from blockinv import (
    bag_inverse,
    cycle_bag,
    cycle_cof,
    cycle_det,
    cycle_distance_matrix,
    det_bareiss,
    inverse_exact,
    verify_bag,
)

# a two-vertex cycle with arc weights 3 and 5
ws = [F(3), F(5)]
bag = cycle_bag(ws)
print("weights:", ws)
print("lambda =", bag.lam)
print("alpha  =", bag.alpha)
print("beta   =", bag.beta)

verdict = verify_bag(bag)
print("left conditions hold:", verdict.left_ok)
print("right conditions hold:", verdict.right_ok)

inv = bag_inverse(bag)
assert inv == inverse_exact(bag.dist)
print("certificate inverse equals the elimination inverse")

# determinant and cofactor sum have closed forms in the weights alone
print("det =", cycle_det(ws), "(oracle:", det_bareiss(bag.dist), ")")
print("cof =", cycle_cof(ws))

# signed weights are allowed; this cycle has second weight zero, so its
# distance matrix is singular even though the certificate still verifies
zs = [F(1), F(1), F(-1, 2)]
zbag = cycle_bag(zs)
print("signed cycle lambda =", zbag.lam)
assert verify_bag(zbag).expressible
assert cycle_det(zs) == 0 == det_bareiss(cycle_distance_matrix(zs))
print("lambda 0 forces det 0, and the oracle agrees")

"""
Weighted commutators and commuting over a weight
================================================

A weighted cospan is x: X -> D, y: Y -> D with a weight w: W -> D.  Its
commutator is computed from [X, Y] and [X, Y, Im w], and independently as
the image of the weighted kernel.
"""

from wcomm.catalog import Catalog
from wcomm.commutators import (WeightedCospan, commutes_over, huq_cospan, verify_decomposition,
                               weighted_normal_commutator)
from wcomm.groups import all_subgroups, is_normal, homomorphisms

cat = Catalog.builtin()
S3 = cat["S3"]
A3 = S3.subgroup([0, 2, 5])

############################################################
# Two cospans in S3, checked by both routes

for X, Y, W in [(A3, A3, S3.whole), (S3.whole, S3.whole, S3.whole)]:
    c = WeightedCospan.of_subgroups(X, Y, W)
    rep = verify_decomposition(c)
    print(c.describe(), "-> formula", rep.formula.members, "oracle", rep.oracle.members,
          "commutes:", commutes_over(c))

############################################################
# A non-normal commutator and its normal closure in D4

D4 = cat["D4"]
subs = all_subgroups(D4)
for X in subs:
    for Y in subs:
        c = WeightedCospan.of_subgroups(X, Y, D4.trivial)
        K = weighted_normal_commutator(c)
        if not c.images()[0].is_trivial() and K.order > 1:
            print("X", X.members, "Y", Y.members, "-> normal commutator", K.members)
            break
    else:
        continue
    break

############################################################
# For normal X, Y the answer does not depend on the weight, here over all
# maps from C2, C3, V4 and S3 into D4

normal = [H for H in subs if is_normal(H)]
ws = [w for S in ("C2", "C3", "V4", "S3") for w in homomorphisms(cat[S], D4)]
for X in normal:
    for Y in normal:
        x, y = X.as_group()[1], Y.as_group()[1]
        values = {commutes_over(WeightedCospan(x, y, w)) for w in ws}
        assert values == {commutes_over(huq_cospan(x, y))}
print(f"{len(normal) ** 2} normal pairs, {len(ws)} weights each: weight never matters")

"""
Binary and ternary commutators, two ways
========================================

The formula route closes elementwise commutators; the oracle enumerates
kernel words up to 12 syllables and records how the image grew with length.
"""

from wcomm.catalog import Catalog
from wcomm.commutators import higgins_binary, higgins_oracle, higgins_ternary, verify_ternary
from wcomm.groups import all_subgroups

cat = Catalog.builtin()
D4 = cat["D4"]
subs = all_subgroups(D4)

############################################################
# [D4, D4] is the centre; the ternary commutator [D4, D4, D4] is trivial

G = D4.whole
print("[D4,D4]    formula", higgins_binary(D4, G, G).members)
res = higgins_oracle(D4, [G, G])
print("           oracle ", res.subgroup.members, "growth by length", res.orders)
print("[D4,D4,D4] formula", higgins_ternary(D4, G, G, G).members)

############################################################
# In S3 the ternary part only shows up at 10 syllables

S3 = cat["S3"]
rep = verify_ternary(S3, S3.whole, S3.whole, S3.whole)
print(rep.subject, "->", rep.oracle.members, "last growth at", rep.last_growth,
      "stable:", rep.stable)

############################################################
# Formula against oracle on every ordered triple of subgroups of D4

bad = 0
for K in subs:
    for L in subs:
        for M in subs:
            bad += not verify_ternary(D4, K, L, M).ok
print(f"{len(subs) ** 3} triples, {bad} disagreements")

"""
Finite groups, subgroups and pullbacks
======================================

Groups are Cayley tables with the identity at index 0.  Everything else
(subgroups, maps, pullbacks) is built on top of those tables.
"""

import numpy as np

from wcomm.catalog import Catalog, perm_group
from wcomm.groups import (Homomorphism, all_subgroups, generate_subgroup, image, is_normal,
                          kernel, normal_closure, pullback)

############################################################
# A group from permutation generators: a transposition and a 3-cycle

S3 = perm_group(3, [[1, 0, 2], [1, 2, 0]], "S3")
print(S3, "abelian:", S3.is_abelian)
print(S3.table)

############################################################
# Subgroups are explicit member sets

t = 1  # the transposition (0 1)
T = generate_subgroup(S3, [t])
print("<t> =", T.members, "normal:", is_normal(T))
print("normal closure of <t> =", normal_closure(S3, [t]).members)

lattice = all_subgroups(S3)
print("subgroup orders:", [H.order for H in lattice])

############################################################
# The sign map and its kernel

parity = [sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3)) % 2
          for p in S3.permutations]
C2 = Catalog.builtin()["C2"]
sgn = Homomorphism(S3, C2, parity)
print("ker(sign) =", kernel(sgn).members, " im(sign) =", image(sgn).members)

############################################################
# Pulling back the sign map along itself gives the 18 pairs with equal sign.
# With sections, every pair factors through the two injections.

r = Homomorphism(C2, S3, [0, t])
P = pullback(sgn, sgn, r, r)
print("pullback order:", P.carrier.order)
ok = all(P.carrier.mul(P.e1(a), P.e2(S3.mul(S3.inv(r(sgn(a))), c))) == k
         for k, (a, c) in enumerate(P.pairs.tolist()))
print("every (a, c) = e1(a) e2(s(f(a))^-1 c):", ok)
print("first pairs:", np.asarray(P.pairs[:5]).tolist())

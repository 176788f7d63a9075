"""
Admissibility diagrams
======================

Two split epimorphisms over B with compatible maps into D are admissible
when the forced candidate on the pullback is a homomorphism.  That happens
exactly when the induced cospan commutes over its weight.
"""

from collections import Counter

from wcomm.catalog import Catalog
from wcomm.commutators import (AdmissibilityDiagram, admissible, commutes_over,
                               cospan_of_diagram)
from wcomm.groups import homomorphisms, identity_hom, trivial_hom
from wcomm.sweep import diagrams

cat = Catalog.builtin()
S3, B = cat["S3"], cat["C1"]

############################################################
# Over the trivial base, S3 x S3 -> S3 by (a, c) -> ac is not a homomorphism

d = AdmissibilityDiagram(trivial_hom(S3, B), trivial_hom(B, S3), trivial_hom(S3, B),
                         trivial_hom(B, S3), identity_hom(S3), trivial_hom(B, S3),
                         identity_hom(S3))
print("admissible:", admissible(d) is not None,
      " commutes over w:", commutes_over(cospan_of_diagram(d)))

############################################################
# Every diagram over B = C2 built from a few small groups

groups = [cat[x] for x in ("C2", "C4", "S3", "V4")]
tally = Counter()
for d in diagrams(groups, [cat["C2"]]):
    tally[admissible(d) is not None, commutes_over(cospan_of_diagram(d))] += 1
for (adm, com), n in sorted(tally.items()):
    print(f"admissible={adm!s:5} commutes={com!s:5} {n} diagrams")

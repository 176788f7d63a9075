"""
Words in free products
======================

Reduced words alternate between factors and never carry an identity
syllable.  Killing a factor is the retraction that sends it to 1; the
co-smash product and the weighted kernel are cut out by such retractions.
"""

from wcomm.catalog import cyclic, symmetric
from wcomm.words import (FreeProduct, commutator, enumerate_words, in_diamond2, in_diamond3,
                         in_weighted_kernel, kill_factor)

############################################################
# Reduction and the word literal syntax

fp = FreeProduct([cyclic(2), cyclic(3), symmetric(3)])
u = fp.parse("1:1;1:1;2:3;0:1;0:1;1:1")
print("1:1;1:1;2:3;0:1;0:1;1:1  reduces to ", u)

############################################################
# Killing factors: the weighted kernel (factors W, X, Y) needs both the
# X- and the Y-killed word to vanish

w, x, y = fp.letter(0, 1), fp.letter(1, 1), fp.letter(2, 2)
for name, word in [("[x, y]", commutator(x, y)),
                   ("[x, w y w^-1]", commutator(x, w * y * ~w)),
                   ("[x, w]", commutator(x, w)),
                   ("[[x, y], w]", commutator(commutator(x, y), w))]:
    print(f"{name:16} kill X -> {str(kill_factor(word, 1)) or '1':12} "
          f"kill Y -> {str(kill_factor(word, 2)) or '1':12} in kernel: {in_weighted_kernel(word)}")

############################################################
# Short words of the co-smash product K◇L are exactly the commutators

two = FreeProduct([cyclic(3), cyclic(2)])
short = [str(v) for v in enumerate_words(two, 4) if in_diamond2(v)]
print("diamond words of length <= 4:", short)

############################################################
# The shortest words of K◇L◇M are nested commutators of length 10

three = FreeProduct([cyclic(2)] * 3)
k, l, m = (three.letter(i, 1) for i in range(3))
nested = commutator(k, commutator(l, m))
print(len(nested), "syllables:", nested, "in K◇L◇M:", in_diamond3(nested))
print("members of length <= 8:", sum(in_diamond3(v) for v in enumerate_words(three, 8)))

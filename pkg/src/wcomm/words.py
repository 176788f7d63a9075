"""Words in free products of finite groups.

A word is a tuple of syllables ``(factor, element)``.  Reduced words never
contain a factor identity and never have two adjacent syllables from the same
factor; this normal form solves the word problem.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .groups import FiniteGroup, GroupError, Homomorphism

STREAM_CAP = 10**8

Syllable = tuple[int, int]


class EnumerationCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class FreeProduct:
    factors: tuple[FiniteGroup, ...]

    def __init__(self, factors: Iterable[FiniteGroup]):
        fs = tuple(factors)
        if not fs:
            raise GroupError("a free product needs at least one factor")
        object.__setattr__(self, "factors", fs)

    def __len__(self):
        return len(self.factors)

    def __repr__(self):
        return " * ".join(G.label for G in self.factors)

    def word(self, raw: Iterable[Syllable] = ()) -> "Word":
        return reduce(self, raw)

    def letter(self, factor: int, element: int) -> "Word":
        return reduce(self, [(factor, element)])

    def parse(self, text: str) -> "Word":
        return parse_word(self, text)

    def count_words(self, max_syllables: int) -> int:
        """Number of reduced words with at most ``max_syllables`` syllables."""
        sizes = [G.order - 1 for G in self.factors]
        by_last = [0] * len(sizes)
        total = 1
        for length in range(1, max_syllables + 1):
            if length == 1:
                by_last = list(sizes)
            else:
                s = sum(by_last)
                by_last = [(s - by_last[f]) * sizes[f] for f in range(len(sizes))]
            total += sum(by_last)
        return total


@dataclass(frozen=True)
class Word:
    fp: FreeProduct
    syllables: tuple[Syllable, ...]

    def __len__(self):
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __str__(self):
        return format_word(self)

    def __hash__(self):
        return hash((id(self.fp), self.syllables))

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.fp is other.fp and self.syllables == other.syllables


def _validate(fp: FreeProduct, raw: Iterable[Syllable]) -> list[Syllable]:
    out = []
    for syl in raw:
        f, e = int(syl[0]), int(syl[1])
        if not 0 <= f < len(fp.factors):
            raise GroupError(f"factor index {f} out of range (free product of {len(fp.factors)})")
        if not 0 <= e < fp.factors[f].order:
            raise GroupError(f"element {e} out of range for factor {f} ({fp.factors[f].label})")
        out.append((f, e))
    return out


def _reduce_stack(fp: FreeProduct, syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    # one left-to-right pass with a stack reaches the fixpoint
    stack: list[Syllable] = []
    factors = fp.factors
    for f, e in syllables:
        if e == 0:
            continue
        if stack and stack[-1][0] == f:
            m = factors[f].mul(stack[-1][1], e)
            if m == 0:
                stack.pop()
            else:
                stack[-1] = (f, m)
        else:
            stack.append((f, e))
    return tuple(stack)


def reduce(fp: FreeProduct, raw: Iterable[Syllable]) -> Word:
    return Word(fp, _reduce_stack(fp, _validate(fp, raw)))


def _check_same(u: Word, v: Word) -> None:
    if u.fp is not v.fp:
        raise GroupError("words from different free products")


def concat(u: Word, v: Word) -> Word:
    _check_same(u, v)
    return Word(u.fp, _reduce_stack(u.fp, u.syllables + v.syllables))


def invert(u: Word) -> Word:
    factors = u.fp.factors
    return Word(u.fp, tuple((f, factors[f].inv(e)) for f, e in reversed(u.syllables)))


def conjugate(g: Word, u: Word) -> Word:
    """g u g^-1"""
    return concat(concat(g, u), invert(g))


def commutator(u: Word, v: Word) -> Word:
    """u v u^-1 v^-1"""
    return concat(concat(u, v), concat(invert(u), invert(v)))


def kill_factor(u: Word, i: int) -> Word:
    """Image of ``u`` under the retraction sending factor ``i`` to the identity."""
    if not 0 <= i < len(u.fp.factors):
        raise GroupError(f"factor index {i} out of range")
    return Word(u.fp, _reduce_stack(u.fp, (s for s in u.syllables if s[0] != i)))


def project(u: Word, i: int) -> int:
    """Image of ``u`` under the retraction onto factor ``i`` (kill every other factor)."""
    G = u.fp.factors[i]
    return G.product(e for f, e in u.syllables if f == i)


@dataclass(frozen=True, eq=False)
class Cotuple:
    """Homomorphisms from each factor into one common target."""

    maps: tuple[Homomorphism, ...]

    def __init__(self, maps: Iterable[Homomorphism]):
        ms = tuple(maps)
        if not ms:
            raise GroupError("empty cotuple")
        if any(m.target is not ms[0].target for m in ms):
            raise GroupError("cotuple components must share a target")
        object.__setattr__(self, "maps", ms)

    @property
    def target(self) -> FiniteGroup:
        return self.maps[0].target

    def free_product(self) -> FreeProduct:
        return FreeProduct(m.source for m in self.maps)


def evaluate(u: Word | Sequence[Syllable], c: Cotuple) -> int:
    """Send every syllable through its factor map and multiply in the target."""
    syl = u.syllables if isinstance(u, Word) else u
    if isinstance(u, Word):
        if len(u.fp.factors) != len(c.maps) or any(
                G is not m.source for G, m in zip(u.fp.factors, c.maps)):
            raise GroupError("cotuple does not match the free product")
    D = c.target
    out = 0
    maps = c.maps
    for f, e in syl:
        if f >= len(maps):
            raise GroupError("cotuple has too few components")
        out = D.mul(out, maps[f](e))
    return out


def in_flat(u: Word, kept: int) -> bool:
    """Membership in K♭L (kept = K) or L♭K (kept = L): killing the other factor kills u."""
    if len(u.fp.factors) != 2:
        raise GroupError("in_flat needs a two-factor word")
    return not kill_factor(u, 1 - kept)


def in_diamond2(u: Word) -> bool:
    """Membership in the co-smash product K◇L = Ker(K+L -> K×L)."""
    if len(u.fp.factors) != 2:
        raise GroupError("in_diamond2 needs a two-factor word")
    return not kill_factor(u, 0) and not kill_factor(u, 1)


def in_diamond2_by_projection(u: Word) -> bool:
    """Same predicate, via the ordered products of the K- and L-syllables."""
    if len(u.fp.factors) != 2:
        raise GroupError("in_diamond2 needs a two-factor word")
    return project(u, 0) == 0 and project(u, 1) == 0


def in_diamond2_by_flats(u: Word) -> bool:
    """Same predicate, as the intersection K♭L ∧ L♭K."""
    return in_flat(u, 0) and in_flat(u, 1)


def in_diamond3(u: Word) -> bool:
    """Membership in K◇L◇M: killing any single factor kills the word."""
    if len(u.fp.factors) != 3:
        raise GroupError("in_diamond3 needs a three-factor word")
    return all(not kill_factor(u, i) for i in range(3))


W_FACTOR, X_FACTOR, Y_FACTOR = 0, 1, 2


def in_weighted_kernel(u: Word) -> bool:
    """Membership in the kernel of W+X+Y -> (W+X)×_W(W+Y), factors ordered (W, X, Y)."""
    if len(u.fp.factors) != 3:
        raise GroupError("the weighted kernel lives in a three-factor free product")
    return not kill_factor(u, Y_FACTOR) and not kill_factor(u, X_FACTOR)


def enumerate_words(fp: FreeProduct, max_syllables: int, cap: int = STREAM_CAP) -> Iterator[Word]:
    """Every reduced word with at most ``max_syllables`` syllables, once each.

    Order: by length, then lexicographically on (factor, element) pairs.
    Raises EnumerationCapExceeded before yielding more than ``cap`` words.
    """
    if max_syllables < 0:
        raise ValueError("max_syllables must be >= 0")
    total = fp.count_words(max_syllables)
    if total > cap:
        raise EnumerationCapExceeded(f"{total} words exceed the stream cap {cap}")
    letters = [(f, e) for f, G in enumerate(fp.factors) for e in range(1, G.order)]

    def extend(prefix: tuple[Syllable, ...], remaining: int):
        if remaining == 0:
            yield prefix
            return
        last = prefix[-1][0] if prefix else -1
        for syl in letters:
            if syl[0] != last:
                yield from extend(prefix + (syl,), remaining - 1)

    for length in range(max_syllables + 1):
        for syl in extend((), length):
            yield Word(fp, syl)


def parse_word(fp: FreeProduct, text: str) -> Word:
    """Parse ``"1:2;2:4;1:1"`` (factor:element tokens separated by semicolons)."""
    text = text.strip()
    if not text:
        return Word(fp, ())
    raw = []
    for tok in text.split(";"):
        tok = tok.strip()
        if not tok:
            continue
        try:
            f, e = tok.split(":")
            raw.append((int(f), int(e)))
        except ValueError:
            raise GroupError(f"bad syllable token {tok!r}; expected factor:element") from None
    return reduce(fp, raw)


def format_word(u: Word) -> str:
    return ";".join(f"{f}:{e}" for f, e in u.syllables)

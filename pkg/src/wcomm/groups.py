"""Finite groups given by multiplication tables.

Elements are the integers ``0 .. order-1`` and the identity is always ``0``.
Everything here is immutable after construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
import itertools
from typing import Iterable, Sequence

import numpy as np

ORDER_CAP = 10080
EXHAUSTIVE_LAW_CHECK = 64
SAMPLED_TRIPLES = 10_000
LAW_CHECK_SEED = 20100401


class GroupError(ValueError):
    """Invalid group, subgroup or homomorphism data."""


class FiniteGroup:
    """A finite group stored as a Cayley table with identity at index 0."""

    def __init__(self, table, label: str = "G", *, validate: bool = True):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupError(f"{label}: Cayley table must be a non-empty square array")
        n = t.shape[0]
        if validate:
            _check_table(t, label)
        self.table = t
        self.table.setflags(write=False)
        self.label = label
        self.order = n
        self._rows = t.tolist()
        inv = np.empty(n, dtype=np.int64)
        rows, cols = np.nonzero(t == 0)
        inv[rows] = cols
        self.inverse = inv
        self.inverse.setflags(write=False)
        self._inv = inv.tolist()

    def __repr__(self):
        return f"FiniteGroup({self.label!r}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, g: int, a: int) -> int:
        """g a g^-1"""
        r = self._rows
        return r[r[g][a]][self._inv[g]]

    def commutator(self, a: int, b: int) -> int:
        """a b a^-1 b^-1"""
        r, i = self._rows, self._inv
        return r[r[r[a][b]][i[a]]][i[b]]

    def power(self, a: int, k: int) -> int:
        out = 0
        for _ in range(k):
            out = self._rows[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self._rows[x][a]
            k += 1
        return k

    def product(self, elems: Iterable[int]) -> int:
        out = 0
        r = self._rows
        for e in elems:
            out = r[out][e]
        return out

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by element order."""
        gens: list[int] = []
        span = frozenset({0})
        for g in sorted(range(self.order), key=lambda e: (-self.element_order(e), e)):
            if g not in span:
                gens.append(g)
                span = _closure_plain(self, span, gens)
                if len(span) == self.order:
                    break
        return tuple(gens)

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, range(self.order), trusted=True)

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,), trusted=True)

    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        return Subgroup(self, members)


def _check_table(t: np.ndarray, label: str) -> None:
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise GroupError(f"{label}: table entries out of range")
    full = np.arange(n)
    if not (np.sort(t, axis=1) == full).all():
        raise GroupError(f"{label}: some row is not a permutation")
    if not (np.sort(t, axis=0) == full[:, None]).all():
        raise GroupError(f"{label}: some column is not a permutation")
    if not (t[0] == full).all() or not (t[:, 0] == full).all():
        raise GroupError(f"{label}: index 0 is not the identity")
    if n <= EXHAUSTIVE_LAW_CHECK:
        left = t[t]  # left[a, b, c] = (ab)c
        right = t[:, t]  # right[a, b, c] = a (bc)
        ok = np.array_equal(left, right)
    else:
        rng = np.random.default_rng(LAW_CHECK_SEED)
        a, b, c = rng.integers(0, n, size=(3, SAMPLED_TRIPLES))
        ok = np.array_equal(t[t[a, b], c], t[a, t[b, c]])
    if not ok:
        raise GroupError(f"{label}: multiplication is not associative")


def _small_gens(G: FiniteGroup, members: Iterable[int]) -> list[int]:
    members = list(members)
    out: list[int] = []
    span: set[int] = {0}
    for g in members:
        if g not in span:
            out.append(g)
            span = set(_closure_plain(G, span, out))
    return out


def _closure_plain(G: FiniteGroup, start: Iterable[int], gens: Sequence[int]) -> frozenset[int]:
    rows = G._rows
    members = set(start) | {0}
    frontier = list(members)
    while frontier:
        nxt = []
        for a in frontier:
            ra = rows[a]
            for g in gens:
                c = ra[g]
                if c not in members:
                    members.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(members)


class Subgroup:
    """A subgroup of ``parent`` stored as an explicit member set."""

    __slots__ = ("parent", "members", "_set", "__dict__")

    def __init__(self, parent: FiniteGroup, members: Iterable[int], *, trusted: bool = False):
        ms = frozenset(int(m) for m in members)
        if not trusted:
            if any(m < 0 or m >= parent.order for m in ms):
                raise GroupError("subgroup member out of range")
            if 0 not in ms:
                raise GroupError("subgroup must contain the identity")
            rows, inv = parent._rows, parent._inv
            for a in ms:
                if inv[a] not in ms or any(rows[a][b] not in ms for b in ms):
                    raise GroupError("member set is not closed under the group operations")
        self.parent = parent
        self._set = ms
        self.members = tuple(sorted(ms))

    def __contains__(self, g: int) -> bool:
        return g in self._set

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self._set == other._set

    def __hash__(self):
        return hash((id(self.parent), self._set))

    def __le__(self, other: "Subgroup") -> bool:
        _same_parent(self, other)
        return self._set <= other._set

    def __repr__(self):
        return f"Subgroup({self.parent.label}, order={len(self)})"

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def memberset(self) -> frozenset[int]:
        return self._set

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    @cached_property
    def generators(self) -> tuple[int, ...]:
        return tuple(_small_gens(self.parent, self.members))

    def as_group(self, label: str | None = None) -> tuple[FiniteGroup, "Homomorphism"]:
        """The subgroup as a standalone group, with its inclusion into the parent."""
        elems = np.array(self.members, dtype=np.int64)
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[elems] = np.arange(len(elems))
        table = pos[self.parent.table[np.ix_(elems, elems)]]
        G = FiniteGroup(table, label or f"{self.parent.label}<{len(elems)}>", validate=False)
        return G, Homomorphism(G, self.parent, elems, validate=False)


def _same_parent(a: Subgroup, b: Subgroup) -> None:
    if a.parent is not b.parent:
        raise GroupError(f"subgroups of different groups: {a.parent.label} vs {b.parent.label}")


class Homomorphism:
    """A group homomorphism, validated exhaustively on construction."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images, *, validate: bool = True):
        img = np.asarray(images, dtype=np.int64)
        if validate:
            if img.shape != (source.order,):
                raise GroupError("homomorphism needs one image per source element")
            if img.min() < 0 or img.max() >= target.order:
                raise GroupError("image index out of range")
            if img[0] != 0:
                raise GroupError("identity must map to identity")
            lhs = img[source.table]
            rhs = target.table[img[:, None], img[None, :]]
            if not np.array_equal(lhs, rhs):
                raise GroupError(f"map {source.label} -> {target.label} is not a homomorphism")
        self.source = source
        self.target = target
        self.images = img
        self.images.setflags(write=False)
        self._img = img.tolist()

    def __call__(self, a: int) -> int:
        return self._img[a]

    def __repr__(self):
        return f"Homomorphism({self.source.label} -> {self.target.label})"

    def __eq__(self, other):
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and np.array_equal(self.images, other.images))

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.images.tobytes()))

    def after(self, inner: "Homomorphism") -> "Homomorphism":
        """self ∘ inner"""
        if inner.target is not self.source:
            raise GroupError("composition of non-composable homomorphisms")
        return Homomorphism(inner.source, self.target, self.images[inner.images], validate=False)

    def restrict(self, H: Subgroup) -> "Homomorphism":
        """The composite of this map with the inclusion of ``H``."""
        if H.parent is not self.source:
            raise GroupError("restriction to a subgroup of another group")
        G, incl = H.as_group()
        return self.after(incl)

    def is_identity(self) -> bool:
        return self.source is self.target and bool((self.images == np.arange(self.source.order)).all())


def identity_hom(G: FiniteGroup) -> Homomorphism:
    return Homomorphism(G, G, np.arange(G.order), validate=False)


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> Homomorphism:
    return Homomorphism(source, target, np.zeros(source.order, dtype=np.int64), validate=False)


def _check_indices(G: FiniteGroup, elems: Iterable[int]) -> list[int]:
    out = [int(e) for e in elems]
    for e in out:
        if e < 0 or e >= G.order:
            raise GroupError(f"element index {e} out of range for {G.label} (order {G.order})")
    return out


def generate_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = _check_indices(G, gens)
    return Subgroup(G, _closure_plain(G, {0}, [g for g in gens if g != 0]), trusted=True)


def normal_closure(G: FiniteGroup, S: Iterable[int], within: Subgroup | None = None) -> Subgroup:
    """Smallest subgroup containing ``S`` normalised by ``within`` (default: all of G).

    ``S`` must lie in ``within`` for the result to be a normal subgroup of it.
    """
    S = _check_indices(G, S)
    conj_by = within.generators if within is not None else G.generators
    gens = [s for s in dict.fromkeys(S) if s != 0]
    members = _closure_plain(G, {0}, gens)
    queue = list(gens)
    while queue:
        t = queue.pop()
        for g in conj_by:
            c = G.conj(g, t)
            if c not in members:
                gens.append(c)
                queue.append(c)
                members = _closure_plain(G, members, gens)
    return Subgroup(G, members, trusted=True)


def join(H1: Subgroup, H2: Subgroup) -> Subgroup:
    _same_parent(H1, H2)
    if H2._set <= H1._set:
        return H1
    if H1._set <= H2._set:
        return H2
    G = H1.parent
    return Subgroup(G, _closure_plain(G, H1._set, H1.generators + H2.generators), trusted=True)


def join_all(G: FiniteGroup, subgroups: Iterable[Subgroup]) -> Subgroup:
    out = G.trivial
    for H in subgroups:
        out = join(out, H)
    return out


def is_normal(H: Subgroup, within: Subgroup | None = None) -> bool:
    """Whether gHg^-1 ⊆ H for every g of the parent (or of ``within``)."""
    G = H.parent
    conj_by = within.generators if within is not None else G.generators
    return all(G.conj(g, h) in H for g in conj_by for h in H.generators)


def subgroups_equal(H1: Subgroup, H2: Subgroup) -> bool:
    _same_parent(H1, H2)
    return H1._set == H2._set


def kernel(h: Homomorphism) -> Subgroup:
    return Subgroup(h.source, np.flatnonzero(h.images == 0).tolist(), trusted=True)


def image(h: Homomorphism) -> Subgroup:
    return Subgroup(h.target, set(h._img), trusted=True)


def conjugate(H: Subgroup, g: int) -> Subgroup:
    G = H.parent
    return Subgroup(G, (G.conj(g, h) for h in H.members), trusted=True)


@dataclass(frozen=True, eq=False)
class PullbackGroup:
    """A ×_B C on pairs (a, c) with f(a) = g(c), lexicographically numbered."""

    carrier: FiniteGroup
    pairs: np.ndarray
    pi1: Homomorphism
    pi2: Homomorphism
    e1: Homomorphism | None = None
    e2: Homomorphism | None = None
    index: np.ndarray = field(repr=False, default=None)

    def element(self, a: int, c: int) -> int:
        k = int(self.index[a, c])
        if k < 0:
            raise GroupError(f"({a}, {c}) is not in the pullback")
        return k


def pullback(f: Homomorphism, g: Homomorphism,
             r: Homomorphism | None = None, s: Homomorphism | None = None) -> PullbackGroup:
    if f.target is not g.target:
        raise GroupError("pullback needs a common codomain")
    A, C, B = f.source, g.source, f.target
    if (r is None) != (s is None):
        raise GroupError("give both sections or neither")
    if r is not None:
        if r.source is not B or r.target is not A or not f.after(r).is_identity():
            raise GroupError("r is not a section of f")
        if s.source is not B or s.target is not C or not g.after(s).is_identity():
            raise GroupError("s is not a section of g")
    match = f.images[:, None] == g.images[None, :]
    pa, pc = np.nonzero(match)  # row-major, hence lexicographic in (a, c)
    index = np.full((A.order, C.order), -1, dtype=np.int64)
    index[pa, pc] = np.arange(len(pa))
    table = index[A.table[pa[:, None], pa[None, :]], C.table[pc[:, None], pc[None, :]]]
    P = FiniteGroup(table, f"{A.label}x_{B.label}{C.label}", validate=False)
    pairs = np.stack([pa, pc], axis=1)
    pi1 = Homomorphism(P, A, pa, validate=False)
    pi2 = Homomorphism(P, C, pc, validate=False)
    e1 = e2 = None
    if r is not None:
        arange_a = np.arange(A.order)
        e1 = Homomorphism(A, P, index[arange_a, s.images[f.images]], validate=False)
        arange_c = np.arange(C.order)
        e2 = Homomorphism(C, P, index[r.images[g.images], arange_c], validate=False)
    return PullbackGroup(P, pairs, pi1, pi2, e1, e2, index)


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup of G, ordered by (order, members)."""
    cyclic = {}
    for g in range(G.order):
        H = generate_subgroup(G, [g])
        cyclic.setdefault(H.memberset, H)
    found = dict(cyclic)
    frontier = list(cyclic.values())
    cyc = list(cyclic.values())
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyc:
                if C.memberset <= H.memberset:
                    continue
                J = join(H, C)
                if J.memberset not in found:
                    found[J.memberset] = J
                    nxt.append(J)
        frontier = nxt
    return sorted(found.values(), key=lambda H: (len(H), H.members))


def homomorphisms(source: FiniteGroup, target: FiniteGroup) -> list[Homomorphism]:
    """All homomorphisms source -> target, by trying every image of a generating set."""
    gens = source.generators
    # express every element as parent * generator (BFS tree)
    parent = [-1] * source.order
    via = [-1] * source.order
    parent[0] = 0
    order = [0]
    for a in order:
        for k, g in enumerate(gens):
            c = source.mul(a, g)
            if parent[c] == -1 and c != 0:
                parent[c], via[c] = a, k
                order.append(c)
    tgt_orders = [target.element_order(t) for t in range(target.order)]
    choices = []
    for g in gens:
        og = source.element_order(g)
        choices.append([t for t in range(target.order) if og % tgt_orders[t] == 0])
    out = []
    for imgs in itertools.product(*choices):
        m = [0] * source.order
        for c in order[1:]:
            m[c] = target.mul(m[parent[c]], imgs[via[c]])
        try:
            out.append(Homomorphism(source, target, m))
        except GroupError:
            pass
    return out

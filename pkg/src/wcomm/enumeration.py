"""Images of free-product kernels by bounded exhaustive enumeration.

The kernels handled here all have the form

    { u in F_0 * ... * F_k : kill_factor(u, i) = 1 for every i in ``kills`` }

(K♭L, K◇L, K◇L◇M and the weighted kernel are all of this shape), and we want
their image under a cotuple of homomorphisms into a finite group D.

Counting words is hopeless beyond a handful of syllables, so the search is a
meet-in-the-middle over *projection states*.  The state of a reduced word p is
the tuple of its reduced projections ``kill_factor(p, i)``.  For reduced words
p, q the word p q^-1 lies in the kernel iff p and q have the same state, and
every reduced kernel word of length n splits as such a pair with
|p| = ceil(n/2), |q| = floor(n/2).  So the images of all kernel words of length
<= 2r are exactly the quotients eval(p) eval(q)^-1 over pairs of words of
length <= r sharing a state.

Projection words are packed into int64 codes in base B = (number of
non-identity syllables) + 1; appending a syllable is push / replace / pop on
the last digit, which vectorises.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .groups import (FiniteGroup, GroupError, Homomorphism, Subgroup, generate_subgroup,
                     join_all, image, normal_closure)
from .words import STREAM_CAP, EnumerationCapExceeded, FreeProduct, enumerate_words, evaluate, Cotuple

CLOSURES = ("normal", "subgroup")
# half-words are held in memory (about 50 bytes each with sort buffers)
HALF_WORD_CAP = 2 * 10**7


class OracleInconsistency(AssertionError):
    """The enumeration produced an element outside a certified upper bound."""


@dataclass
class KernelImage:
    subgroup: Subgroup
    orders: list[int]           # |O_n| for n = 0..depth
    depth: int
    radius: int                 # half-words were enumerated up to this length
    words: int                  # number of half-words enumerated
    certified_from: int | None = None  # O_n met the ceiling at this length
    growth: list[int] = field(default_factory=list)

    @property
    def last_growth(self) -> int:
        return self.growth[-1] if self.growth else 0

    def stable(self, window: int) -> bool:
        return self.last_growth <= self.depth - window


class _Alphabet:
    def __init__(self, maps: Sequence[Homomorphism]):
        D = maps[0].target
        fac, elem, img = [-1], [0], [0]
        start = []
        for f, m in enumerate(maps):
            start.append(len(fac))
            for e in range(1, m.source.order):
                fac.append(f)
                elem.append(e)
                img.append(m(e))
        S = len(fac)
        self.size = S  # symbols 1..S-1, 0 = empty
        self.base = S
        self.factor = np.array(fac, dtype=np.int64)
        self.img = np.array(img, dtype=np.int64)
        # product of two same-factor symbols as a symbol (0 for the identity)
        prod = np.full((S, S), -1, dtype=np.int64)
        for f, m in enumerate(maps):
            G = m.source
            lo = start[f]
            n = G.order - 1
            sym = np.concatenate([[0], np.arange(lo, lo + n)])
            block = sym[G.table[1:, 1:]]
            prod[lo:lo + n, lo:lo + n] = block
        self.prod = prod
        self.D = D


def _expand(alpha: _Alphabet, kills: Sequence[int], lastf, codes, vals, Dtable):
    out_last, out_codes, out_vals = [], [[] for _ in kills], []
    B = alpha.base
    for t in range(1, alpha.size):
        ft = alpha.factor[t]
        sel = lastf != ft
        if not sel.any():
            continue
        out_last.append(np.full(int(sel.sum()), ft, dtype=np.int8))
        out_vals.append(Dtable[vals[sel], alpha.img[t]])
        for j, kf in enumerate(kills):
            c = codes[j][sel]
            if ft == kf:
                out_codes[j].append(c)
                continue
            last = c % B
            head = c // B
            same = alpha.factor[last] == ft
            m = alpha.prod[last, t]
            nc = np.where(same, np.where(m == 0, head, head * B + m), c * B + t)
            out_codes[j].append(nc)
    if not out_last:
        empty = np.zeros(0, dtype=np.int64)
        return np.zeros(0, dtype=np.int8), [empty for _ in kills], empty
    return (np.concatenate(out_last), [np.concatenate(cs) for cs in out_codes],
            np.concatenate(out_vals))


def _pair_generators(codes, vals, lens, Dtable, Dinv, nmax: int) -> dict[int, set[int]]:
    """Map n -> images of kernel words p q^-1 with |p| + |q| = n <= nmax (new minimal n only)."""
    keys = [lens, vals] + codes[::-1]
    order = np.lexsort(keys)
    c = [x[order] for x in codes]
    v = vals[order]
    ln = lens[order]
    N = len(v)
    if N == 0:
        return {}
    same_state = np.ones(N - 1, dtype=bool)
    for x in c:
        same_state &= x[1:] == x[:-1]
    first = np.ones(N, dtype=bool)
    first[1:] = ~(same_state & (v[1:] == v[:-1]))
    c = [x[first] for x in c]
    v = v[first]
    ln = ln[first]
    N = len(v)
    same_state = np.ones(max(N - 1, 0), dtype=bool)
    for x in c:
        same_state &= x[1:] == x[:-1]
    nD = Dtable.shape[0]
    found = []
    d = 1
    run = same_state.copy()
    while d < N and run.any():
        i = np.flatnonzero(run)
        j = i + d
        n = ln[i] + ln[j]
        ok = n <= nmax
        if ok.any():
            i, j, n = i[ok], j[ok], n[ok]
            g = Dtable[v[i], Dinv[v[j]]]
            found.append(n * nD + g)
        # states of length > d+1 runs
        if d < N - 1:
            run = run[:-1] & same_state[d:]
        d += 1
    out: dict[int, set[int]] = {}
    if found:
        for key in np.unique(np.concatenate(found)).tolist():
            n, g = divmod(key, nD)
            out.setdefault(n, set()).add(g)
    return out


def _closer(D: FiniteGroup, ambient: Subgroup, closure: str):
    if closure == "normal":
        return lambda base, gens: normal_closure(D, list(base.members) + list(gens), within=ambient)
    if closure == "subgroup":
        return lambda base, gens: generate_subgroup(D, list(base.generators) + list(gens))
    raise ValueError(f"closure must be one of {CLOSURES}")


def kernel_image(maps: Sequence[Homomorphism], kills: Sequence[int], depth: int, *,
                 ceiling: Subgroup | None = None, closure: str = "normal",
                 cap: int = HALF_WORD_CAP) -> KernelImage:
    """Image of the kernel words of length <= ``depth`` under the cotuple ``maps``.

    Returns the closure of that image together with its growth profile.
    ``closure="normal"`` closes under conjugation by the subgroup generated by
    all factor images, which never overshoots: the kernel is normal in the
    free product, and the cotuple maps the free product onto that subgroup.

    If ``ceiling`` is given it must contain the full kernel image; the search
    stops as soon as the profile reaches it, since no longer word can add
    anything after that.  Meeting an element outside the ceiling raises
    OracleInconsistency.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    D = maps[0].target
    if any(m.target is not D for m in maps):
        raise GroupError("cotuple components must share a target")
    ambient = join_all(D, (image(m) for m in maps))
    close = _closer(D, ambient, closure)
    Dtable, Dinv = D.table, D.inverse

    alpha = _Alphabet(maps)
    rmax = (depth + 1) // 2
    if rmax and float(alpha.base) ** rmax >= 2.0**62:
        raise EnumerationCapExceeded(
            f"alphabet of {alpha.base - 1} syllables is too large for depth {depth}")

    O = D.trivial
    orders = [1]
    growth: list[int] = []
    done_n = 0

    def finish(r, words, cert=None):
        while len(orders) <= depth:
            orders.append(len(O))
        return KernelImage(O, orders, depth, r, words, cert, growth)

    if ceiling is not None and O == ceiling:
        return finish(0, 1, 0)

    lastf = np.array([-1], dtype=np.int8)
    codes = [np.zeros(1, dtype=np.int64) for _ in kills]
    vals = np.zeros(1, dtype=np.int64)
    all_codes = [[x] for x in codes]
    all_vals, all_lens = [vals], [np.zeros(1, dtype=np.int64)]
    words = 1
    per_factor = np.bincount(alpha.factor[1:], minlength=len(maps))
    for r in range(1, rmax + 1):
        # size of the next level, checked before anything is allocated
        ending = np.bincount(lastf[lastf >= 0], minlength=len(maps))
        words += int((per_factor * (len(lastf) - ending)).sum())
        if words > cap:
            raise EnumerationCapExceeded(f"more than {cap} half-words at radius {r}")
        lastf, codes, vals = _expand(alpha, kills, lastf, codes, vals, Dtable)
        for j in range(len(kills)):
            all_codes[j].append(codes[j])
        all_vals.append(vals)
        all_lens.append(np.full(len(vals), r, dtype=np.int64))
        nmax = min(2 * r, depth)
        gens = _pair_generators([np.concatenate(x) for x in all_codes], np.concatenate(all_vals),
                                np.concatenate(all_lens), Dtable, Dinv, nmax)
        for n in range(done_n + 1, nmax + 1):
            new = [g for g in gens.get(n, ()) if g not in O]
            if new:
                O = close(O, new)
                growth.append(n)
                if ceiling is not None and not O <= ceiling:
                    raise OracleInconsistency(
                        f"kernel image left its certified ceiling at length {n}")
            orders.append(len(O))
            if ceiling is not None and O == ceiling:
                return finish(r, words, n)
        done_n = nmax
    return finish(rmax, words)


def naive_kernel_image(cotuple: Cotuple, predicate, depth: int, *, closure: str = "normal",
                       cap: int = STREAM_CAP) -> KernelImage:
    """Literal version: stream every reduced word, filter, evaluate, close.

    Exponential; meant for cross-checking ``kernel_image`` on small inputs.
    """
    D = cotuple.target
    ambient = join_all(D, (image(m) for m in cotuple.maps))
    close = _closer(D, ambient, closure)
    fp = FreeProduct(m.source for m in cotuple.maps)
    by_length: list[set[int]] = [set() for _ in range(depth + 1)]
    count = 0
    for u in enumerate_words(fp, depth, cap):
        count += 1
        if predicate(u):
            by_length[len(u)].add(evaluate(u, cotuple))
    O = D.trivial
    orders: list[int] = []
    growth: list[int] = []
    for n, values in enumerate(by_length):
        new = [g for g in values if g not in O]
        if new:
            O = close(O, new)
            growth.append(n)
        orders.append(len(O))
    return KernelImage(O, orders, depth, depth, count, None, growth)

"""Higgins, weighted and normal commutators of finite groups, plus admissibility.

Every commutator has two independent routes:

* the formula route: closures of elementwise commutators (binary) and joins of
  iterated binary commutators (ternary, weighted);
* the oracle route: bounded enumeration of the defining free-product kernel,
  evaluated in the ambient group (see ``enumeration``).

Subobjects given by non-injective maps are replaced by their images.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .catalog import cyclic
from .enumeration import KernelImage, kernel_image
from .groups import (FiniteGroup, GroupError, Homomorphism, Subgroup, generate_subgroup,
                     image, join, join_all, kernel, normal_closure, pullback,
                     subgroups_equal, trivial_hom)
from .words import W_FACTOR, X_FACTOR, Y_FACTOR

DEFAULT_DEPTH = 12
DEFAULT_WINDOW = 2


class OracleMismatch(AssertionError):
    """Formula and oracle routes disagree."""


def _check_parent(G: FiniteGroup, *subs: Subgroup) -> None:
    for H in subs:
        if H.parent is not G:
            raise GroupError(f"subgroup of {H.parent.label} used inside {G.label}")


# -- formula route ---------------------------------------------------------

def higgins_binary(X: FiniteGroup, K: Subgroup, L: Subgroup) -> Subgroup:
    """[K, L]: the subgroup generated by all k l k^-1 l^-1."""
    _check_parent(X, K, L)
    kg, lg = K.members, L.members
    return generate_subgroup(X, {X.commutator(k, l) for k in kg for l in lg})


def higgins_ternary(X: FiniteGroup, K: Subgroup, L: Subgroup, M: Subgroup) -> Subgroup:
    """[K, L, M] as [[K,L],M] ∨ [[L,M],K] ∨ [[M,K],L].

    This closed form is specific to groups; the acceptance suite certifies it
    against ``higgins_oracle``.
    """
    _check_parent(X, K, L, M)
    parts = (higgins_binary(X, higgins_binary(X, K, L), M),
             higgins_binary(X, higgins_binary(X, L, M), K),
             higgins_binary(X, higgins_binary(X, M, K), L))
    return join_all(X, parts)


# -- ceilings from kernel presentations ------------------------------------
#
# Each kernel is the normal closure in the free product of a finite family of
# words, and the cotuple maps the free product onto the ambient subgroup H,
# so the kernel image is the normal closure in H of their images:
#   K◇L             : [k, l]
#   weighted kernel : [x, w y w^-1]             ((W+X)×_W(W+Y) is presented by these)
#   K◇L◇M           : [k, m l m^-1][k, l]^-1, and [m, c] for c in the weighted
#                     image with weight M  (kernel of killing M on that kernel)
# Enumeration may stop once it reaches these; they are never used as answers.

def _ambient(D: FiniteGroup, *subs: Subgroup) -> Subgroup:
    return join_all(D, subs)


def binary_ceiling(D: FiniteGroup, K: Subgroup, L: Subgroup) -> Subgroup:
    H = _ambient(D, K, L)
    return normal_closure(D, {D.commutator(k, l) for k in K for l in L}, within=H)


def weighted_ceiling(D: FiniteGroup, X: Subgroup, Y: Subgroup, W: Subgroup) -> Subgroup:
    H = _ambient(D, X, Y, W)
    gens = {D.commutator(x, D.conj(w, y)) for x in X for y in Y for w in W}
    return normal_closure(D, gens, within=H)


def ternary_ceiling(D: FiniteGroup, K: Subgroup, L: Subgroup, M: Subgroup) -> Subgroup:
    H = _ambient(D, K, L, M)
    C = weighted_ceiling(D, K, L, M)
    gens = {D.mul(D.commutator(k, D.conj(m, l)), D.inv(D.commutator(k, l)))
            for k in K for l in L for m in M}
    gens |= {D.commutator(m, c) for m in M.generators for c in C}
    return normal_closure(D, gens, within=H)


# -- oracle route ----------------------------------------------------------

def _inclusion(H: Subgroup) -> Homomorphism:
    return H.as_group()[1]


def higgins_oracle(X: FiniteGroup, subgroups: Sequence[Subgroup],
                   embeddings: Sequence[Homomorphism] | None = None,
                   depth: int = DEFAULT_DEPTH, window: int = DEFAULT_WINDOW, *,
                   closure: str = "normal", use_ceiling: bool = True) -> KernelImage:
    """Image of K◇L (2 subgroups) or K◇L◇M (3 subgroups) by word enumeration."""
    subgroups = list(subgroups)
    if len(subgroups) not in (2, 3):
        raise ValueError("higgins_oracle takes 2 or 3 subgroups")
    _check_parent(X, *subgroups)
    maps = list(embeddings) if embeddings is not None else [_inclusion(H) for H in subgroups]
    if len(maps) != len(subgroups) or any(m.target is not X for m in maps):
        raise GroupError("embeddings must map into the ambient group")
    ceiling = None
    if use_ceiling:
        ceiling = (binary_ceiling(X, *subgroups) if len(subgroups) == 2
                   else ternary_ceiling(X, *subgroups))
    kills = list(range(len(maps)))
    return kernel_image(maps, kills, depth, ceiling=ceiling, closure=closure)


# -- weighted commutators --------------------------------------------------

@dataclass(frozen=True, eq=False)
class WeightedCospan:
    """x: X -> D, y: Y -> D with weight w: W -> D."""

    x: Homomorphism
    y: Homomorphism
    w: Homomorphism

    def __post_init__(self):
        if not (self.x.target is self.y.target is self.w.target):
            raise GroupError("a weighted cospan needs a common codomain")

    @property
    def D(self) -> FiniteGroup:
        return self.x.target

    @classmethod
    def of_subgroups(cls, X: Subgroup, Y: Subgroup, W: Subgroup) -> "WeightedCospan":
        return cls(_inclusion(X), _inclusion(Y), _inclusion(W))

    def images(self) -> tuple[Subgroup, Subgroup, Subgroup]:
        return image(self.x), image(self.y), image(self.w)

    def describe(self) -> str:
        X, Y, W = self.images()
        return (f"{self.D.label}: X={list(X.members)} Y={list(Y.members)} "
                f"W={list(W.members)}")


def weighted_commutator(c: WeightedCospan) -> Subgroup:
    """[X, Y] ∨ [X, Y, Im w] computed on images."""
    D = c.D
    X, Y, W = c.images()
    return join(higgins_binary(D, X, Y), higgins_ternary(D, X, Y, W))


def weighted_commutator_oracle(c: WeightedCospan, depth: int = DEFAULT_DEPTH,
                               window: int = DEFAULT_WINDOW, *, closure: str = "normal",
                               use_ceiling: bool = True) -> KernelImage:
    """Direct image along <w, x, y> of the kernel of W+X+Y -> (W+X)×_W(W+Y)."""
    maps = [None, None, None]
    maps[W_FACTOR], maps[X_FACTOR], maps[Y_FACTOR] = c.w, c.x, c.y
    ceiling = None
    if use_ceiling:
        X, Y, W = c.images()
        ceiling = weighted_ceiling(c.D, X, Y, W)
    return kernel_image(maps, [X_FACTOR, Y_FACTOR], depth, ceiling=ceiling, closure=closure)


def weighted_normal_commutator(c: WeightedCospan) -> Subgroup:
    return normal_closure(c.D, weighted_commutator(c).members)


def commutes_over(c: WeightedCospan) -> bool:
    """x and y commute over w iff the weighted commutator vanishes."""
    return weighted_commutator(c).is_trivial()


# -- admissibility ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AdmissibilityDiagram:
    """Split epis f: A -> B (section r) and g: C -> B (section s) with maps to D."""

    f: Homomorphism
    r: Homomorphism
    g: Homomorphism
    s: Homomorphism
    alpha: Homomorphism
    beta: Homomorphism
    gamma: Homomorphism

    def __post_init__(self):
        f, r, g, s = self.f, self.r, self.g, self.s
        A, B, C = f.source, f.target, g.source
        if g.target is not B or r.source is not B or s.source is not B:
            raise GroupError("f and g need a common codomain B with sections from B")
        if r.target is not A or s.target is not C:
            raise GroupError("sections land in the wrong groups")
        if not f.after(r).is_identity() or not g.after(s).is_identity():
            raise GroupError("r and s must be sections: f∘r = 1_B = g∘s")
        a, b, c = self.alpha, self.beta, self.gamma
        if a.source is not A or b.source is not B or c.source is not C:
            raise GroupError("alpha, beta, gamma have the wrong sources")
        if not (a.target is b.target is c.target):
            raise GroupError("alpha, beta, gamma need a common codomain")
        if a.after(r) != b or c.after(s) != b:
            raise GroupError("need alpha∘r = beta = gamma∘s")

    @property
    def D(self) -> FiniteGroup:
        return self.alpha.target


def admissible(d: AdmissibilityDiagram) -> Homomorphism | None:
    """The internal multiplication A×_B C -> D, or None if there is none.

    Every pullback element (a, c) equals e1(a)·e2(s(f(a))^-1 c), so the only
    candidate is phi(a, c) = alpha(a)·gamma(s(f(a))^-1 c).
    """
    P = pullback(d.f, d.g, d.r, d.s)
    C = d.g.source
    D = d.D
    a, c = P.pairs[:, 0], P.pairs[:, 1]
    sfa = d.s.images[d.f.images[a]]
    rest = C.table[C.inverse[sfa], c]
    phi = D.table[d.alpha.images[a], d.gamma.images[rest]]
    ok = np.array_equal(phi[P.carrier.table], D.table[phi[:, None], phi[None, :]])
    if not ok:
        return None
    hom = Homomorphism(P.carrier, D, phi, validate=False)
    assert hom.after(P.e1) == d.alpha and hom.after(P.e2) == d.gamma
    return hom


def cospan_of_diagram(d: AdmissibilityDiagram) -> WeightedCospan:
    """x = alpha restricted to Ker f, y = gamma restricted to Ker g, w = beta."""
    return WeightedCospan(d.alpha.restrict(kernel(d.f)), d.gamma.restrict(kernel(d.g)), d.beta)


# -- reports ---------------------------------------------------------------

@dataclass
class CommutatorReport:
    subject: str
    formula: Subgroup
    oracle: Subgroup | None = None
    depth: int = DEFAULT_DEPTH
    window: int = DEFAULT_WINDOW
    last_growth: int = 0
    stable: bool = True
    profile: list[int] = field(default_factory=list)
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def equal(self) -> bool | None:
        if self.oracle is None:
            return None
        return subgroups_equal(self.formula, self.oracle)

    @property
    def ok(self) -> bool:
        return self.oracle is None or (bool(self.equal) and self.stable)

    def to_dict(self) -> dict[str, Any]:
        out = {
            "subject": self.subject,
            "formula": list(self.formula.members),
            "oracle": list(self.oracle.members) if self.oracle is not None else None,
            "equal": self.equal if self.oracle is not None else True,
            "depth": self.depth,
            "last_growth": self.last_growth,
            "stable": self.stable,
        }
        if self.profile:
            out["profile"] = list(self.profile)
        out.update(self.extras)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def report_from_oracle(subject: str, formula: Subgroup, result: KernelImage | None,
                       window: int, **extras) -> CommutatorReport:
    if result is None:
        return CommutatorReport(subject, formula, None, extras=extras)
    return CommutatorReport(subject, formula, result.subgroup, result.depth, window,
                            result.last_growth, result.stable(window), result.orders, extras)


def verify_decomposition(c: WeightedCospan, depth: int = DEFAULT_DEPTH,
                         window: int = DEFAULT_WINDOW, *, subject: str | None = None,
                         **oracle_kw) -> CommutatorReport:
    formula = weighted_commutator(c)
    result = weighted_commutator_oracle(c, depth, window, **oracle_kw)
    return report_from_oracle(subject or c.describe(), formula, result, window)


def verify_ternary(D: FiniteGroup, K: Subgroup, L: Subgroup, M: Subgroup,
                   depth: int = DEFAULT_DEPTH, window: int = DEFAULT_WINDOW, *,
                   subject: str | None = None, **oracle_kw) -> CommutatorReport:
    formula = higgins_ternary(D, K, L, M)
    result = higgins_oracle(D, [K, L, M], None, depth, window, **oracle_kw)
    subject = subject or f"{D.label}: [{list(K.members)}, {list(L.members)}, {list(M.members)}]"
    return report_from_oracle(subject, formula, result, window)


def huq_cospan(x: Homomorphism, y: Homomorphism) -> WeightedCospan:
    """The weighted cospan with trivial weight 0 -> D."""
    return WeightedCospan(x, y, trivial_hom(cyclic(1, "0"), x.target))

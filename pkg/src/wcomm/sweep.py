"""Verification campaigns over a catalog of small groups."""
from __future__ import annotations

import itertools
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Iterator

from .catalog import Catalog, build_group, group_to_json
from .commutators import (DEFAULT_DEPTH, DEFAULT_WINDOW, AdmissibilityDiagram, WeightedCospan,
                          admissible, commutes_over, cospan_of_diagram,
                          weighted_commutator, weighted_commutator_oracle, higgins_binary,
                          higgins_ternary, huq_cospan, verify_decomposition, verify_ternary)
from .groups import FiniteGroup, Homomorphism, Subgroup, all_subgroups, homomorphisms, is_normal


def conjugation_action(D: FiniteGroup, subs: list[Subgroup]) -> list[list[int]]:
    """For each element g, the permutation H -> gHg^-1 of subgroup indices."""
    index = {H.memberset: i for i, H in enumerate(subs)}
    out = []
    for g in range(D.order):
        perm = []
        for H in subs:
            perm.append(index[frozenset(D.conj(g, h) for h in H.members)])
        out.append(perm)
    return out


def subgroup_triples(D: FiniteGroup, subs: list[Subgroup] | None = None,
                     dedupe: bool = True) -> list[tuple[int, int, int, int]]:
    """Ordered index triples (i, j, k, orbit size), one per simultaneous-conjugacy class."""
    subs = subs if subs is not None else all_subgroups(D)
    n = len(subs)
    if not dedupe:
        return [(i, j, k, 1) for i, j, k in itertools.product(range(n), repeat=3)]
    action = conjugation_action(D, subs)
    out = []
    for t in itertools.product(range(n), repeat=3):
        orbit = {tuple(p[x] for x in t) for p in action}
        if t == min(orbit):
            out.append((*t, len(orbit)))
    return out


def split_epis(A: FiniteGroup, B: FiniteGroup) -> list[tuple[Homomorphism, Homomorphism]]:
    """All pairs (f: A -> B, r: B -> A) with f∘r = 1_B."""
    return [(f, r) for f in homomorphisms(A, B) for r in homomorphisms(B, A)
            if f.after(r).is_identity()]


class HomCache:
    def __init__(self):
        self._homs: dict[tuple[int, int], list[Homomorphism]] = {}

    def __call__(self, A: FiniteGroup, B: FiniteGroup) -> list[Homomorphism]:
        key = (id(A), id(B))
        if key not in self._homs:
            self._homs[key] = homomorphisms(A, B)
        return self._homs[key]


def diagrams(groups: list[FiniteGroup], bases: list[FiniteGroup],
             targets: list[FiniteGroup] | None = None,
             homs: HomCache | None = None) -> Iterator[AdmissibilityDiagram]:
    """Every admissibility diagram with A, C in ``groups``, B in ``bases``, D in ``targets``."""
    homs = homs or HomCache()
    targets = targets if targets is not None else groups
    for B in bases:
        splits = {id(A): [(f, r) for f in homs(A, B) for r in homs(B, A)
                          if f.after(r).is_identity()] for A in groups}
        for D in targets:
            for A in groups:
                for f, r in splits[id(A)]:
                    by_beta: dict[bytes, list[Homomorphism]] = {}
                    for a in homs(A, D):
                        by_beta.setdefault(a.after(r).images.tobytes(), []).append(a)
                    for C in groups:
                        for g, s in splits[id(C)]:
                            for c in homs(C, D):
                                beta = c.after(s)
                                for a in by_beta.get(beta.images.tobytes(), ()):
                                    yield AdmissibilityDiagram(f, r, g, s, a, beta, c)


def weights(D: FiniteGroup, sources: Iterable[FiniteGroup], subs: list[Subgroup] | None = None,
            homs: HomCache | None = None) -> Iterator[Homomorphism]:
    """Subgroup inclusions into D, then every homomorphism from each source group."""
    homs = homs or HomCache()
    for H in subs if subs is not None else all_subgroups(D):
        yield H.as_group()[1]
    for W in sources:
        yield from homs(W, D)


def weight_profile(X: Subgroup, Y: Subgroup, weight_maps: Iterable[Homomorphism]) -> set[bool]:
    """The set of commutes_over values for the inclusion cospan (X, Y) over each weight."""
    x, y = X.as_group()[1], Y.as_group()[1]
    return {commutes_over(WeightedCospan(x, y, w)) for w in weight_maps}


# -- campaign --------------------------------------------------------------

@dataclass
class CampaignConfig:
    labels: list[str] | None = None
    max_order: int = 12
    depth: int = DEFAULT_DEPTH
    window: int = DEFAULT_WINDOW
    fmt: str = "json"
    jobs: int = 1
    seed: int = 0
    sample: int | None = None
    dedupe: bool = True
    abelian: bool | None = None
    ternary: bool = False   # also certify the ternary formula against its oracle

    def __post_init__(self):
        if self.depth < 4:
            raise ValueError("depth must be >= 4 (binary commutator words have 4 syllables)")
        if self.window < 1:
            raise ValueError("window must be >= 1")


@dataclass
class CampaignSummary:
    groups: int = 0
    instances: int = 0
    mismatches: int = 0
    unstable: int = 0
    vanishing_violations: int = 0
    weight_violations: int = 0
    huq_violations: int = 0
    trivial: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.mismatches or self.unstable or self.vanishing_violations
                    or self.weight_violations or self.huq_violations)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        d["summary"] = True
        return d


def check_instance(D: FiniteGroup, X: Subgroup, Y: Subgroup, W: Subgroup,
                   depth: int, window: int, ternary: bool = False) -> dict:
    """One campaign row: decomposition, plus vanishing / weight checks for normal X, Y."""
    c = WeightedCospan.of_subgroups(X, Y, W)
    rep = verify_decomposition(c, depth, window)
    row = rep.to_dict()
    row["group"] = D.label
    row["X"], row["Y"], row["W"] = list(X.members), list(Y.members), list(W.members)
    row["huq"] = weighted_commutator(huq_cospan(c.x, c.y)) == higgins_binary(D, X, Y)
    if ternary:
        t = verify_ternary(D, X, Y, W, depth, window)
        row["ternary"] = {"formula": list(t.formula.members), "oracle": list(t.oracle.members),
                          "equal": t.equal, "last_growth": t.last_growth, "stable": t.stable}
    if is_normal(X) and is_normal(Y):
        binary = higgins_binary(D, X, Y)
        ternary = higgins_ternary(D, X, Y, W)
        commutes = rep.oracle.is_trivial()
        row["commutes"] = commutes
        row["vanishing"] = commutes == (binary.is_trivial() and ternary.is_trivial())
        row["weight_independent"] = commutes_over(c) == commutes_over(huq_cospan(c.x, c.y))
    return row


def _group_rows(G: FiniteGroup, cfg: CampaignConfig) -> list[dict]:
    subs = all_subgroups(G)
    triples = subgroup_triples(G, subs, cfg.dedupe)
    if cfg.sample is not None and cfg.sample < len(triples):
        rng = random.Random(f"{cfg.seed}:{G.label}")
        triples = sorted(rng.sample(triples, cfg.sample))
    rows = []
    for i, j, k, mult in triples:
        row = check_instance(G, subs[i], subs[j], subs[k], cfg.depth, cfg.window, cfg.ternary)
        row["triple"] = [i, j, k]
        row["orbit"] = mult
        rows.append(row)
    return rows


def _worker(args) -> list[dict]:
    spec, cfg = args
    return _group_rows(build_group(spec), cfg)


def run_campaign(catalog: Catalog, cfg: CampaignConfig,
                 sink: Callable[[dict], None] | None = None) -> CampaignSummary:
    groups = catalog.select(cfg.max_order, cfg.labels, cfg.abelian)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            results = list(pool.map(_worker, [(group_to_json(G), cfg) for G in groups]))
    else:
        results = [_group_rows(G, cfg) for G in groups]
    summary = CampaignSummary(groups=len(groups))
    rows = sorted(itertools.chain.from_iterable(results),
                  key=lambda r: (r["group"], r["triple"]))
    for row in rows:
        summary.instances += 1
        bad = False
        checks = [row] + ([row["ternary"]] if "ternary" in row else [])
        if not all(r["equal"] for r in checks):
            summary.mismatches += 1
            bad = True
        if not all(r["stable"] for r in checks):
            summary.unstable += 1
            bad = True
        if row.get("vanishing") is False:
            summary.vanishing_violations += 1
            bad = True
        if row.get("weight_independent") is False:
            summary.weight_violations += 1
            bad = True
        if not row["huq"]:
            summary.huq_violations += 1
            bad = True
        if len(row["formula"]) == 1:
            summary.trivial += 1
        if bad:
            summary.failures.append(row)
        if sink is not None:
            sink(row)
    return summary


def _cospan_key(c: WeightedCospan) -> tuple:
    # sources are rebuilt per diagram, so key on tables rather than identity;
    # the same image array means different things in different targets
    maps = tuple((m.source.table.tobytes(), m.images.tobytes()) for m in (c.x, c.y, c.w))
    return (c.D.table.tobytes(),) + maps


@dataclass
class DiagramTally:
    """Outcomes over a diagram population, keyed by
    (admissible, commutes_over, commutators vanish by formula, by oracle)."""

    counts: Counter = field(default_factory=Counter)
    unstable: int = 0
    failures: list[AdmissibilityDiagram] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def discrepancies(self, columns: tuple[int, ...]) -> int:
        """Diagrams on which the chosen outcome columns do not all agree."""
        return sum(n for key, n in self.counts.items() if len({key[i] for i in columns}) > 1)


def diagram_census(diagram_iter: Iterable[AdmissibilityDiagram], depth: int = DEFAULT_DEPTH,
                   window: int = DEFAULT_WINDOW, keep: int = 5) -> DiagramTally:
    out = DiagramTally()
    by_images: dict = {}
    by_cospan: dict = {}
    for d in diagram_iter:
        adm = admissible(d) is not None
        c = cospan_of_diagram(d)
        X, Y, W = c.images()
        ikey = (id(c.D), X.memberset, Y.memberset, W.memberset)
        if ikey not in by_images:
            vanish = (higgins_binary(c.D, X, Y).is_trivial()
                      and higgins_ternary(c.D, X, Y, W).is_trivial())
            by_images[ikey] = (commutes_over(c), vanish)
        ckey = _cospan_key(c)
        if ckey not in by_cospan:
            res = weighted_commutator_oracle(c, depth, window)
            by_cospan[ckey] = res.subgroup.is_trivial()
            out.unstable += not res.stable(window)
        key = (adm, *by_images[ikey], by_cospan[ckey])
        out.counts[key] += 1
        if len(set(key)) > 1 and len(out.failures) < keep:
            out.failures.append(d)
    return out

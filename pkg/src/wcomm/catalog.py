"""Built-in small groups and the JSON group/subgroup/homomorphism formats."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .groups import (ORDER_CAP, FiniteGroup, GroupError, Homomorphism, Subgroup,
                     generate_subgroup)


def cyclic(n: int, label: str | None = None) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, label or f"C{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup, label: str | None = None) -> FiniteGroup:
    n, m = G.order, H.order
    g = np.arange(n * m) // m
    h = np.arange(n * m) % m
    table = G.table[g[:, None], g[None, :]] * m + H.table[h[:, None], h[None, :]]
    return FiniteGroup(table, label or f"{G.label}x{H.label}")


def dihedral(n: int, label: str | None = None) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; element r^i s^e is stored at e*n + i."""
    if n < 1:
        raise GroupError("dihedral group needs n >= 1")
    idx = np.arange(2 * n)
    i, e = idx % n, idx // n
    # (r^i s^e)(r^j s^f) = r^(i + (-1)^e j) s^(e+f)
    sign = np.where(e == 1, -1, 1)
    ii = (i[:, None] + sign[:, None] * i[None, :]) % n
    ee = (e[:, None] + e[None, :]) % 2
    return FiniteGroup(ee * n + ii, label or f"D{n}")


def quaternion(label: str = "Q8") -> FiniteGroup:
    """Q8 = {±1, ±i, ±j, ±k}; index 2u + sign for units u = 1, i, j, k."""
    units = {(0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
             (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
             (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
             (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1)}
    table = np.zeros((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            u, su = divmod(a, 2)
            v, sv = divmod(b, 2)
            w, s = units[u, v]
            neg = (su + sv + (s < 0)) % 2
            table[a, b] = 2 * w + neg
    return FiniteGroup(table, label)


def perm_group(degree: int, generators: Sequence[Sequence[int]], label: str = "P",
               order_cap: int = ORDER_CAP) -> FiniteGroup:
    """Close a list of permutations (image arrays) under composition.

    Composition is (p*q)(i) = p(q(i)); the identity permutation gets index 0.
    """
    ident = tuple(range(degree))
    gens = []
    for g in generators:
        g = tuple(int(v) for v in g)
        if sorted(g) != list(ident):
            raise GroupError(f"{label}: {list(g)} is not a permutation of 0..{degree - 1}")
        gens.append(g)
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in index:
                    if len(elems) >= order_cap:
                        raise GroupError(f"{label}: closure exceeds order cap {order_cap}")
                    index[q] = len(elems)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    P = np.array(elems, dtype=np.int64)
    n = len(elems)
    # compose every pair: (p*q)(i) = p[q[i]]
    comp = P[np.arange(n)[:, None, None], P[None, :, :]]
    lookup = {e: k for k, e in enumerate(elems)}
    table = np.array([[lookup[tuple(row)] for row in comp[a]] for a in range(n)], dtype=np.int64)
    G = FiniteGroup(table, label)
    G.permutations = P
    return G


def symmetric(n: int, label: str | None = None) -> FiniteGroup:
    if n == 1:
        return cyclic(1, label or "S1")
    gens = [[1, 0] + list(range(2, n)), list(range(1, n)) + [0]]
    return perm_group(n, gens, label or f"S{n}")


def alternating(n: int, label: str | None = None) -> FiniteGroup:
    if n < 3:
        return cyclic(1, label or f"A{n}")
    gens = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0  # 3-cycle (0 1 k)
        gens.append(p)
    return perm_group(n, gens, label or f"A{n}")


def klein(label: str = "V4") -> FiniteGroup:
    return direct_product(cyclic(2), cyclic(2), label)


def build_group(spec: Mapping[str, Any], order_cap: int = ORDER_CAP) -> FiniteGroup:
    """Build a validated group from a description dict (see README for the format)."""
    if not isinstance(spec, Mapping):
        raise GroupError("group description must be a JSON object")
    label = str(spec.get("label", "G"))
    kind = spec.get("kind")
    if kind == "cayley":
        table = spec.get("table")
        if not isinstance(table, list) or not table:
            raise GroupError(f"{label}: 'table' must be a non-empty list of rows")
        if any(not isinstance(r, list) or len(r) != len(table) for r in table):
            raise GroupError(f"{label}: 'table' must be square")
        if len(table) > order_cap:
            raise GroupError(f"{label}: order exceeds cap {order_cap}")
        return FiniteGroup(table, label)
    if kind == "perm":
        degree = int(spec["degree"])
        return perm_group(degree, spec.get("generators", []), label, order_cap)
    if kind == "cyclic":
        n = int(spec["n"])
        if n > order_cap:
            raise GroupError(f"{label}: order exceeds cap {order_cap}")
        return cyclic(n, label)
    raise GroupError(f"{label}: unknown group kind {kind!r}")


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GroupError(f"{path}: malformed JSON ({exc})") from exc


def group_to_json(G: FiniteGroup) -> dict:
    return {"label": G.label, "kind": "cayley", "table": G.table.tolist()}


class Catalog:
    """Named groups: the built-in small groups plus anything registered later."""

    def __init__(self, groups: Iterable[FiniteGroup] = ()):
        self._groups: dict[str, FiniteGroup] = {}
        for G in groups:
            self.add(G)

    @classmethod
    def builtin(cls) -> "Catalog":
        gs = [cyclic(n) for n in range(1, 17)]
        gs += [dihedral(n) for n in range(3, 7)]
        gs += [quaternion(), symmetric(3), symmetric(4), alternating(4), klein()]
        return cls(gs)

    def add(self, G: FiniteGroup) -> FiniteGroup:
        if G.label in self._groups:
            raise GroupError(f"duplicate group label {G.label!r}")
        self._groups[G.label] = G
        return G

    def load(self, path: str | Path) -> list[FiniteGroup]:
        """Register the group(s) described in a JSON file (one object or a list)."""
        data = load_json(path)
        specs = data if isinstance(data, list) else [data]
        return [self.add(build_group(s)) for s in specs]

    def __getitem__(self, label: str) -> FiniteGroup:
        try:
            return self._groups[label]
        except KeyError:
            raise KeyError(f"unknown group {label!r}") from None

    def __contains__(self, label: str) -> bool:
        return label in self._groups

    def __iter__(self):
        return iter(self._groups.values())

    def __len__(self):
        return len(self._groups)

    def labels(self) -> list[str]:
        return list(self._groups)

    def select(self, max_order: int | None = None, labels: Iterable[str] | None = None,
               abelian: bool | None = None) -> list[FiniteGroup]:
        wanted = set(labels) if labels else None
        out = []
        for G in self:
            if max_order is not None and G.order > max_order:
                continue
            if wanted is not None and G.label not in wanted:
                continue
            if abelian is not None and G.is_abelian != abelian:
                continue
            out.append(G)
        return out

    def subgroup(self, ref: Mapping[str, Any]) -> Subgroup:
        """Resolve {"group": label, "members": [...]} or {"group": label, "generators": [...]}."""
        G = self[ref["group"]]
        if "members" in ref:
            return Subgroup(G, ref["members"])
        if "generators" in ref:
            return generate_subgroup(G, ref["generators"])
        raise GroupError("subgroup reference needs 'members' or 'generators'")

    def homomorphism(self, ref: Mapping[str, Any]) -> Homomorphism:
        """Resolve {"source": label, "target": label, "images": [...]}."""
        return Homomorphism(self[ref["source"]], self[ref["target"]], ref["images"])

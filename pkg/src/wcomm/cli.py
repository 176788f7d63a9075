"""Command-line front end.

    wcomm commutator --group S3 --k all --l all [--m all --ternary] [--oracle]
    wcomm weighted --group S3 --x 0,1,2 --y 0,1,2 --w all [--huq] [--normal] [--check]
    wcomm verify --max-order 12 [--groups S3,D4] [--ternary] [--out report.jsonl]
    wcomm catalog list | catalog show S3

Exit codes: 0 success, 2 unresolvable reference or bad usage, 3 malformed
input file, 4 oracle disagreement or non-stabilized oracle.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .catalog import Catalog, group_to_json, load_json
from .commutators import (DEFAULT_DEPTH, DEFAULT_WINDOW, CommutatorReport, WeightedCospan,
                          commutes_over, higgins_binary, higgins_oracle, higgins_ternary,
                          huq_cospan, report_from_oracle, weighted_commutator,
                          weighted_commutator_oracle, weighted_normal_commutator)
from .enumeration import OracleInconsistency
from .groups import (FiniteGroup, GroupError, Homomorphism, Subgroup, all_subgroups,
                     generate_subgroup, is_normal)
from .schema import validate_report, validate_summary
from .sweep import CampaignConfig, run_campaign
from .words import EnumerationCapExceeded

EXIT_OK, EXIT_REF, EXIT_FILE, EXIT_ORACLE = 0, 2, 3, 4


class UnresolvedReference(Exception):
    """A group, subgroup or map reference does not resolve."""


class FileError(Exception):
    """An input file is unreadable or malformed."""


# -- reference parsing -----------------------------------------------------

def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UnresolvedReference(f"expected comma-separated integers, got {text!r}") from None


def _read_json(path: str) -> Any:
    try:
        return load_json(path)
    except OSError as exc:
        raise FileError(f"cannot read {path}: {exc.strerror}") from exc
    except GroupError as exc:
        raise FileError(str(exc)) from exc


def resolve_subgroup(G: FiniteGroup, spec: str, catalog: Catalog) -> Subgroup:
    """``all``, ``trivial``, ``gens:a,b``, ``a,b,c`` (members) or ``@file.json``."""
    spec = spec.strip()
    try:
        if spec == "all":
            return G.whole
        if spec in ("trivial", "e"):
            return G.trivial
        if spec.startswith("@"):
            ref = _read_json(spec[1:])
            if not isinstance(ref, dict) or "group" not in ref:
                raise FileError(f"{spec[1:]}: not a subgroup reference")
            H = catalog.subgroup(ref)
            if H.parent is not G:
                raise UnresolvedReference(f"{spec[1:]} refers to {ref['group']}, not {G.label}")
            return H
        if spec.startswith("gens:"):
            return generate_subgroup(G, _ints(spec[5:]))
        return Subgroup(G, _ints(spec))
    except KeyError as exc:
        raise UnresolvedReference(str(exc.args[0])) from None
    except GroupError as exc:
        raise UnresolvedReference(f"{spec!r}: {exc}") from None


def resolve_map(D: FiniteGroup, spec: str, catalog: Catalog) -> Homomorphism:
    """A subgroup spec (taken as its inclusion) or ``@file.json`` holding a homomorphism."""
    if spec.startswith("@"):
        ref = _read_json(spec[1:])
        if isinstance(ref, dict) and "source" in ref:
            try:
                h = catalog.homomorphism(ref)
            except KeyError as exc:
                raise UnresolvedReference(str(exc.args[0])) from None
            except GroupError as exc:
                raise UnresolvedReference(f"{spec[1:]}: {exc}") from None
            if h.target is not D:
                raise UnresolvedReference(f"{spec[1:]} maps into {h.target.label}, not {D.label}")
            return h
    return resolve_subgroup(D, spec, catalog).as_group()[1]


def load_catalog(paths: Sequence[str]) -> Catalog:
    cat = Catalog.builtin()
    for p in paths or ():
        try:
            cat.load(p)
        except OSError as exc:
            raise FileError(f"cannot read {p}: {exc.strerror}") from exc
        except (GroupError, KeyError, TypeError, ValueError) as exc:
            msg = str(exc)
            raise FileError(msg if msg.startswith(str(p)) else f"{p}: {msg}") from exc
    return cat


def _group(cat: Catalog, label: str) -> FiniteGroup:
    try:
        return cat[label]
    except KeyError:
        raise UnresolvedReference(f"unknown group {label!r}") from None


# -- output ----------------------------------------------------------------

CSV_FIELDS = ["subject", "formula", "oracle", "equal", "depth", "last_growth", "stable"]


def _cell(v: Any) -> Any:
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    if v is None:
        return ""
    if isinstance(v, dict):
        return json.dumps(v)
    return v


class Sink:
    """Single serializing writer for report rows (JSON lines or CSV)."""

    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream
        self._csv = None

    def write(self, row: dict) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(row) + "\n")
            return
        if self._csv is None:
            extra = [k for k in row if k not in CSV_FIELDS]
            self._csv = csv.DictWriter(self.stream, CSV_FIELDS + extra, extrasaction="ignore")
            self._csv.writeheader()
        self._csv.writerow({k: _cell(v) for k, v in row.items()})


def _open_out(args):
    if args.out:
        return open(args.out, "w", encoding="utf-8", newline="")
    return sys.stdout


def _emit(args, rows: list[dict]) -> None:
    out = _open_out(args)
    try:
        sink = Sink(args.format, out)
        for r in rows:
            sink.write(r)
    finally:
        if out is not sys.stdout:
            out.close()


# -- subcommands -----------------------------------------------------------

def _oracle_status(rep: CommutatorReport) -> int:
    return EXIT_OK if rep.ok else EXIT_ORACLE


def cmd_commutator(args, cat: Catalog) -> int:
    G = _group(cat, args.group)
    K = resolve_subgroup(G, args.k, cat)
    L = resolve_subgroup(G, args.l, cat)
    subs = [K, L]
    if args.ternary:
        if args.m is None:
            raise UnresolvedReference("--ternary needs --m")
        subs.append(resolve_subgroup(G, args.m, cat))
        formula = higgins_ternary(G, *subs)
    else:
        formula = higgins_binary(G, K, L)
    subject = f"{G.label}: [" + ", ".join(str(list(H.members)) for H in subs) + "]"
    result = higgins_oracle(G, subs, None, args.depth, args.window) if args.oracle else None
    rep = report_from_oracle(subject, formula, result, args.window,
                             trivial=formula.is_trivial(), normal=is_normal(formula))
    row = rep.to_dict()
    validate_report(row)
    _emit(args, [row])
    return _oracle_status(rep)


def cmd_weighted(args, cat: Catalog) -> int:
    D = _group(cat, args.group)
    x = resolve_map(D, args.x, cat)
    y = resolve_map(D, args.y, cat)
    if args.huq:
        c = huq_cospan(x, y)
    else:
        if args.w is None:
            raise UnresolvedReference("give --w or --huq")
        c = WeightedCospan(x, y, resolve_map(D, args.w, cat))
    formula = weighted_commutator(c)
    result = weighted_commutator_oracle(c, args.depth, args.window) if args.check else None
    extras: dict[str, Any] = {"commutes": commutes_over(c)}
    if args.normal:
        extras["normal_commutator"] = list(weighted_normal_commutator(c).members)
    rep = report_from_oracle(c.describe(), formula, result, args.window, **extras)
    row = rep.to_dict()
    validate_report(row)
    _emit(args, [row])
    return _oracle_status(rep)


def cmd_verify(args, cat: Catalog) -> int:
    try:
        cfg = CampaignConfig(
            labels=args.groups.split(",") if args.groups else None, max_order=args.max_order,
            depth=args.depth, window=args.window, fmt=args.format, jobs=args.jobs,
            seed=args.seed, sample=args.sample, dedupe=not args.no_dedupe,
            abelian=True if args.abelian else None, ternary=args.ternary)
    except ValueError as exc:
        raise UnresolvedReference(str(exc)) from None
    if cfg.labels:
        for label in cfg.labels:
            _group(cat, label)
    out = _open_out(args)
    try:
        sink = Sink(args.format, out)

        def write(row):
            validate_report(row)
            sink.write(row)

        summary = run_campaign(cat, cfg, write)
        doc = summary.to_dict()
        validate_summary(doc)
        if args.format == "json":
            out.write(json.dumps(doc) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    brief = {k: v for k, v in doc.items() if k != "failures"}
    print(json.dumps(brief), file=sys.stderr)
    if summary.failures:
        dump = Path(args.out).with_suffix(".failures.jsonl") if args.out else None
        if dump is not None:
            dump.write_text("".join(json.dumps(r) + "\n" for r in summary.failures))
            print(f"counterexamples written to {dump}", file=sys.stderr)
        else:
            for r in summary.failures[:10]:
                print("FAIL " + json.dumps(r), file=sys.stderr)
    return EXIT_OK if summary.ok else EXIT_ORACLE


def cmd_catalog(args, cat: Catalog) -> int:
    if args.action == "list":
        rows = [{"label": G.label, "order": G.order, "abelian": G.is_abelian}
                for G in cat]
        if args.format == "json":
            _emit(args, rows)
        else:
            buf = io.StringIO()
            w = csv.DictWriter(buf, ["label", "order", "abelian"])
            w.writeheader()
            w.writerows(rows)
            _write_text(args, buf.getvalue())
        return EXIT_OK
    if not args.label:
        raise UnresolvedReference("catalog show needs a group label")
    G = _group(cat, args.label)
    subs = all_subgroups(G)
    doc = group_to_json(G)
    doc.update(order=G.order, abelian=G.is_abelian, generators=list(G.generators),
               element_orders=[G.element_order(g) for g in range(G.order)],
               subgroups=len(subs), normal_subgroups=sum(is_normal(H) for H in subs))
    _write_text(args, json.dumps(doc) + "\n")
    return EXIT_OK


def _write_text(args, text: str) -> None:
    out = _open_out(args)
    try:
        out.write(text)
    finally:
        if out is not sys.stdout:
            out.close()


# -- parser ----------------------------------------------------------------

def _add_globals(p: argparse.ArgumentParser, top: bool) -> None:
    # the same flags are accepted before or after the subcommand
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--depth", type=int, default=d(DEFAULT_DEPTH),
                   help="oracle enumeration depth in syllables (default 12)")
    p.add_argument("--window", type=int, default=d(DEFAULT_WINDOW),
                   help="stabilization window (default 2)")
    p.add_argument("--format", choices=("json", "csv"), default=d("json"))
    p.add_argument("--out", default=d(None), help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, default=d(1))
    p.add_argument("--max-order", type=int, default=d(12))
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--load", action="append", default=d([]), metavar="FILE",
                   help="register groups from a JSON file (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wcomm", description="Weighted commutators in finite groups.")
    _add_globals(p, True)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("commutator", help="binary or ternary Higgins commutator")
    _add_globals(c, False)
    c.add_argument("--group", required=True)
    c.add_argument("--k", required=True, help="all | trivial | gens:a,b | a,b,c | @file.json")
    c.add_argument("--l", required=True)
    c.add_argument("--m")
    c.add_argument("--ternary", action="store_true")
    c.add_argument("--oracle", action="store_true", help="cross-check by word enumeration")
    c.set_defaults(func=cmd_commutator)

    w = sub.add_parser("weighted", help="weighted commutator of a cospan")
    _add_globals(w, False)
    w.add_argument("--group", required=True, help="the common codomain D")
    w.add_argument("--x", required=True, help="subgroup spec (inclusion) or @hom.json")
    w.add_argument("--y", required=True)
    w.add_argument("--w")
    w.add_argument("--huq", action="store_true", help="use the trivial weight")
    w.add_argument("--normal", action="store_true", help="also report the normal closure")
    w.add_argument("--check", action="store_true", help="compare with the enumeration oracle")
    w.set_defaults(func=cmd_weighted)

    v = sub.add_parser("verify", help="sweep subgroup triples of the catalog")
    _add_globals(v, False)
    v.add_argument("--groups", help="comma-separated labels (default: whole catalog)")
    v.add_argument("--abelian", action="store_true", help="only abelian groups")
    v.add_argument("--sample", type=int, help="random triples per group (seeded)")
    v.add_argument("--no-dedupe", action="store_true",
                   help="sweep every ordered triple, not one per conjugacy class")
    v.add_argument("--ternary", action="store_true", help="also certify the ternary formula")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("catalog", help="list or show catalog groups")
    _add_globals(g, False)
    g.add_argument("action", choices=("list", "show"))
    g.add_argument("label", nargs="?")
    g.set_defaults(func=cmd_catalog)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cat = load_catalog(args.load)
        return args.func(args, cat)
    except FileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FILE
    except UnresolvedReference as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REF
    except (OracleInconsistency, EnumerationCapExceeded) as exc:
        print(f"oracle failure: {exc}", file=sys.stderr)
        return EXIT_ORACLE


if __name__ == "__main__":
    sys.exit(main())

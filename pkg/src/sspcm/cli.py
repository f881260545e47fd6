"""Command-line front end: catalog lookups, per-instance reports, sweeps and table reproduction.

Every subcommand builds a JSON payload and one or more ReportTables from it;
--format json prints the payload, csv/md print the tables.  Exit codes:
0 success, 2 invalid input, 3 internal assertion (a table mismatch included).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from .arith import is_prime, primes_below
from .catalog import (FAMILIES, FAMILY_SYMBOL, WeilNumberInstance, enumerate_catalog,
                      identify_catalog_member, is_admissible, parse_lmfdb_label)
from .classify import ROW_HEADERS, classify, classify_all, discrepancies
from .cmtypes import CMTypeAnalysis
from .lie import LieTypeUnavailable, lie_report
from .places import splitting_profile
from .rrc import rrc_verdict
from .surface import surface_for
from .tables import TABLES, ReportTable, TableMismatch, render, reproduce

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


class InputError(ValueError):
    pass


def parse_range(text: str) -> list[int]:
    """'A..B' -> primes p with A <= p <= B."""
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise InputError(f"--p-range expects A..B, got {text!r}") from None
    if lo > hi:
        raise InputError(f"empty range {text!r}")
    return [p for p in primes_below(hi + 1) if p >= lo]


def _primes(args) -> list[int]:
    if args.p is not None and args.p_range is not None:
        raise InputError("give --p or --p-range, not both")
    if args.p is not None:
        if not is_prime(args.p):
            raise InputError(f"{args.p} is not prime")
        return [args.p]
    if args.p_range is not None:
        return parse_range(args.p_range)
    raise InputError("--p or --p-range is required")


def _instance(args) -> WeilNumberInstance:
    if args.p is None:
        raise InputError("--p is required")
    if args.family is None:
        raise InputError("--family is required")
    if args.family not in FAMILIES:
        raise InputError(f"unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")
    if not is_prime(args.p):
        raise InputError(f"{args.p} is not prime")
    if not is_admissible(args.family, args.p):
        raise InputError(f"family {args.family} is not admissible at p = {args.p}")
    return WeilNumberInstance(args.p, args.family)


def _kv_table(ident: str, title: str, data: dict) -> ReportTable:
    rows = [[k, v if isinstance(v, str) else json.dumps(v, ensure_ascii=False)] for k, v in data.items()]
    return ReportTable(ident, title, ["field", "value"], rows)


# --------------------------------------------------------------------------
# subcommands: each returns (json payload, tables)

def cmd_catalog(args):
    payload = []
    rows = []
    for p in _primes(args):
        for inst in enumerate_catalog(p):
            payload.append({**inst.to_json(), "symbol": inst.symbol})
            rows.append([str(p), inst.family, inst.symbol, " ".join(map(str, inst.minpoly)),
                         "yes" if inst.concern else "no"])
    table = ReportTable("catalog", "catalog members", ["p", "family", "pi", "minpoly (ascending)", "concern"], rows)
    return payload, [table]


def cmd_splitting(args):
    inst = _instance(args)
    profile = splitting_profile(inst)
    payload = {"p": inst.p, "family": inst.family, **profile.to_json(), "notes": profile.notes}
    rows = [[w.label, str(w.e), str(w.f), str(w.frob_valuation)] for w in profile.places]
    title = f"places above {inst.p} in the CM field of {inst.symbol}; v in L/L0: {profile.behavior}"
    return payload, [ReportTable("splitting", title, ["place", "e", "f", "ord_w(pi)"], rows, list(profile.notes))]


def cmd_lie(args):
    inst = _instance(args)
    if not inst.concern:
        raise InputError("the Lie-type engine takes quartic catalog members; sqrtP is handled by classify")
    rep = lie_report(inst)
    rep = {"p": inst.p, "family": inst.family, **rep}
    return rep, [_kv_table("lie", f"Lie type of {inst.symbol}", rep)]


def cmd_cmtypes(args):
    inst = _instance(args)
    surface = surface_for(inst)
    analysis = CMTypeAnalysis(surface, splitting_profile(inst))
    payload = [r.to_json() for r in analysis.reports]
    rows = []
    for r in analysis.reports:
        rows.append(["{" + ",".join(r.phi.to_list()) + "}",
                     " ".join(f"{k}:{v}" for k, v in r.slope.items()),
                     " ".join(f"{k}:{tuple(v)}" for k, v in r.residue.items()),
                     r.reflex.display, str(r.reflex.residue_degree)])
    table = ReportTable("cmtypes", f"CM types of the field of {inst.symbol}",
                        ["CM type", "slope", "partition", "reflex field", "f'"], rows)
    return payload, [table]


def cmd_rrc(args):
    inst = _instance(args)
    q = args.q or inst.p
    try:
        verdict = rrc_verdict(surface_for(inst), q)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rows = [["{" + ",".join(t.phi.to_list()) + "}", "yes" if t.st_ok else "no",
             "yes" if t.reflex_ok else "no", "yes" if t.rrc else "no"] for t in verdict.types]
    title = f"RRC for {inst.symbol} over F_{q}: {'satisfiable' if verdict.satisfiable else 'not satisfiable'}"
    return verdict.to_json(), [ReportTable("rrc", title, ["CM type", "ST", "reflex residue", "RRC"], rows)]


def cmd_classify(args):
    primes = _primes(args)
    if args.family is not None:
        insts = [_instance(argparse.Namespace(p=p, family=args.family)) for p in primes]
        verdicts = [classify(i) for i in insts]
    else:
        verdicts = classify_all(primes)
    payload = [v.to_json() for v in verdicts]
    bad = discrepancies(verdicts)
    notes = [f"{len(bad)} discrepancies"] if bad else []
    return payload, [ReportTable("classify", "strong CM lifting base fields", ROW_HEADERS,
                                 [v.row() for v in verdicts], notes)]


def cmd_reproduce(args):
    if args.table != "all" and args.table not in TABLES:
        raise InputError(f"unknown table {args.table!r}; choose from all, {', '.join(TABLES)}")
    tables = reproduce(args.table)
    return [t.to_json() for t in tables], tables


def cmd_lmfdb(args):
    try:
        cls = parse_lmfdb_label(args.label)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    poly = cls.weil_polynomial
    member = identify_catalog_member(poly, cls.q) if cls.g == 2 else None
    payload = {"label": cls.label, "g": cls.g, "q": cls.q, "weil_polynomial": list(poly),
               "family": member.family if member else None, "p": member.p if member else None,
               "symbol": FAMILY_SYMBOL[member.family] if member else None}
    return payload, [_kv_table("lmfdb", f"LMFDB isogeny class {cls.label}", payload)]


COMMANDS: dict[str, Callable] = {
    "catalog": cmd_catalog, "splitting": cmd_splitting, "lie": cmd_lie, "cmtypes": cmd_cmtypes,
    "rrc": cmd_rrc, "classify": cmd_classify, "reproduce": cmd_reproduce, "lmfdb": cmd_lmfdb,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "md"), default="md")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="sspcm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, p=False, p_range=False, family=False, q=False):
        sp = sub.add_parser(name, help=help_, parents=[common])
        if p:
            sp.add_argument("--p", type=int)
        if p_range:
            sp.add_argument("--p-range", metavar="A..B")
        if family:
            sp.add_argument("--family", help=", ".join(FAMILIES))
        if q:
            sp.add_argument("--q", type=int, help="field size (default p)")
        return sp

    add("catalog", "list catalog members", p=True, p_range=True)
    add("splitting", "places above p and Frobenius valuations", p=True, family=True)
    add("lie", "valuation Lie type, oracle resolution and good-Lie-type test", p=True, family=True)
    add("cmtypes", "CM types with slopes, partitions and reflex fields", p=True, family=True)
    add("rrc", "residual reflex condition over F_q", p=True, family=True, q=True)
    add("classify", "base field of a strong CM lifting", p=True, p_range=True, family=True)
    sp = add("reproduce", "recompute a congruence table and check it")
    sp.add_argument("--table", required=True, help="all, " + ", ".join(TABLES))
    sp = add("lmfdb", "identify an LMFDB isogeny-class label")
    sp.add_argument("--label", required=True)
    return parser


def _render(payload, tables: list[ReportTable], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=False) + "\n"
    return render(tables, fmt)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        payload, tables = COMMANDS[args.command](args)
    except (InputError, LieTypeUnavailable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TableMismatch as exc:
        print(f"table mismatch: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    text = _render(payload, tables, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK

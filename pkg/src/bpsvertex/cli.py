"""Command line interface: ``bpsvertex <subcommand> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any

from .bps import (
    BPSTable,
    Extraction,
    MissingDivisorClass,
    closed_lmov_roundtrip,
    disk_genus_zero,
    disk_specialize,
    lmov_roundtrip,
)
from .geometry import GeometryError, resolve_geometry
from .graph import (
    EffClass,
    FTCYGraph,
    GraphError,
    InvalidClass,
    NonPointedEffectiveCone,
    check_class,
    fiber_enumerate,
)
from .openclosed import (
    BraneError,
    ConeOverlap,
    ValidationFailure,
    build_fourfold,
    build_relative_Y,
    correspondence_for,
    fan_of_graph,
    kp_table,
    transfer_bps,
)
from .partitions import Partition, PartitionTuple
from .pipeline import closed_bps, open_bps, open_invariants, sort_classes
from .qalgebra import to_t
from .symfunc import SizeMismatch, mn_character
from .vertex import amplitudes, exp_series, log_series, three_point_W

EXIT_OK, EXIT_VERDICT, EXIT_INPUT = 0, 1, 2

INPUT_ERRORS = (GeometryError, GraphError, InvalidClass, NonPointedEffectiveCone, SizeMismatch,
                MissingDivisorClass, BraneError, ConeOverlap, ValidationFailure, ValueError)


class InputError(ValueError):
    pass


# --------------------------------------------------------------------------
# helpers


def parse_class(text: str, num_branes: int) -> tuple[tuple[int, ...], PartitionTuple]:
    """``"1,2:[2,1]"`` -> beta (1, 2) with one winding partition per brane."""
    head, *winds = text.split(":")
    try:
        beta = tuple(int(x) for x in head.split(",") if x.strip())
        mu = PartitionTuple(Partition.parse(w) for w in winds)
    except ValueError as exc:
        raise InputError(f"cannot parse class {text!r}: {exc}") from None
    if len(mu) not in (0, num_branes):
        raise InputError(f"class {text!r} gives {len(mu)} windings for {num_branes} branes")
    if not winds:
        mu = PartitionTuple([()] * num_branes)
    return beta, mu


def _class_filter(args, g: FTCYGraph):
    """Requested classes as full (beta, windings) keys, checked against the geometry and cutoff."""
    if not args.classes:
        return None
    out = set()
    for text in args.classes:
        beta, mu = parse_class(text, g.num_branes)
        if len(beta) == g.rank:
            beta = beta + tuple(m.size for m in mu)
        fiber = fiber_enumerate(g, beta)
        if not fiber:
            raise InputError(f"class {text!r} is not effective on {g.name}")
        for d in fiber:
            check_class(g, EffClass(d, mu))
        if max(sum(d) for d in fiber) > args.max_degree:
            raise InputError(f"class {text!r} needs --max-degree {max(sum(d) for d in fiber)}")
        out.add((beta, mu))
    return out


def _wind_str(mu: PartitionTuple) -> str:
    return ";".join(str(p) for p in mu)


def _frac(x) -> str | int:
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def _t_form(R) -> str | None:
    try:
        return str(to_t(R))
    except ValueError:
        return None


def _emit(args, doc: dict, rows: list[dict], columns: list[str]) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({c: _csv_cell(r.get(c)) for c in columns})
        text = buf.getvalue()
    else:
        text = json.dumps(doc, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return "" if v is None else v


def _geometry(args) -> FTCYGraph:
    if not args.geometry:
        raise InputError("--geometry is required")
    return resolve_geometry(args.geometry, args.framing)


# --------------------------------------------------------------------------
# subcommands


def cmd_gw(args) -> int:
    g = _geometry(args)
    F = open_invariants(g, args.max_degree, args.workers, not args.no_cache)
    wanted = _class_filter(args, g)
    rows = []
    for beta, mu in sort_classes(F):
        if wanted is not None and (beta, mu) not in wanted:
            continue
        rows.append({"beta": list(beta), "windings": _wind_str(mu), "F": str(F[(beta, mu)])})
    doc = {"geometry": g.name, "max_degree": args.max_degree, "classes": rows}
    _emit(args, doc, rows, ["beta", "windings", "F"])
    return EXIT_OK


def _table_rows(table: BPSTable, G: dict | None, wanted) -> list[dict]:
    rows = []
    for key in table.classes():
        beta, mu = key
        if wanted is not None and (beta, mu) not in wanted:
            continue
        v = table.verdicts[key]
        row = {
            "beta": list(beta),
            "windings": _wind_str(mu),
            "n": [_frac(x) for x in table.values[key]],
        }
        if G is not None:
            row["G"] = str(G[key])
            row["G_t"] = _t_form(G[key])
        row.update(v.as_dict())
        rows.append(row)
    return rows


VERDICT_COLS = ["integrality", "finiteness", "lt_membership", "symmetric", "real", "witness"]


def cmd_bps(args) -> int:
    g = _geometry(args)
    if not g.num_branes:
        raise InputError(f"{g.name} has no brane; use closed-bps")
    run = open_bps(g, args.max_degree, args.workers, not args.no_cache)
    rows = _table_rows(run.table, run.G, _class_filter(args, g))
    ok = all(r["integrality"] and r["finiteness"] and r["lt_membership"] for r in rows)
    doc = {"geometry": g.name, "max_degree": args.max_degree, "ok": ok, "classes": rows}
    _emit(args, doc, rows, ["beta", "windings", "n", "G_t"] + VERDICT_COLS)
    return EXIT_OK if ok else EXIT_VERDICT


def cmd_closed_bps(args) -> int:
    g = _geometry(args)
    table, _ = closed_bps(g, args.max_degree, args.workers, not args.no_cache)
    wanted = _class_filter(args, g)
    if wanted is not None:
        # closed tables are keyed by the H_2 part alone
        wanted = {(beta[: g.rank], PartitionTuple()) for beta, _ in wanted}
    rows = _table_rows(table, None, wanted)
    ok = all(r["integrality"] and r["finiteness"] and r["lt_membership"] for r in rows)
    doc = {"geometry": g.name, "max_degree": args.max_degree, "ok": ok, "classes": rows}
    _emit(args, doc, rows, ["beta", "windings", "n"] + VERDICT_COLS)
    return EXIT_OK if ok else EXIT_VERDICT


def openclosed_report(g: FTCYGraph, max_degree: int, workers: int = 1, use_cache: bool = True) -> dict:
    if g.num_branes != 1:
        raise InputError("the open/closed construction needs exactly one brane")
    if not g.fan:
        raise InputError(f"{g.name}: geometry carries no fan data (add a 'fan' block)")
    fan3, branes = fan_of_graph(g.fan)
    fanY = build_relative_Y(fan3, branes[0])
    fan4 = build_fourfold(fanY)
    run = open_bps(g, max_degree, workers, use_cache)
    disk = BPSTable(run.table.geometry)
    N_open, N_limit = {}, {}
    for key in run.table.classes():
        beta, mu = key
        if len(mu[0]) != 1:
            continue
        disk.add(key, _as_extraction(run.table, key))
    corr = correspondence_for(g.name or "geometry", g.rank)
    closed = transfer_bps(disk, corr)
    for key in disk.classes():
        beta, mu = key
        N, _ = disk_specialize(disk, beta, mu[0][0])
        N_open[corr.apply(beta)] = N
        N_limit[corr.apply(beta)] = disk_genus_zero(run.F[key], mu)
    rows = []
    for r in kp_table(closed, N_open):
        rows.append({
            "beta": list(r.beta),
            "n_tilde": r.n_tilde,
            "N_open": _frac(r.N_open),
            "N_kp": _frac(r.N_kp),
            "N_genus_zero": _frac(N_limit[r.beta]),
            "match": r.match and N_limit[r.beta] == r.N_kp,
            "integral": r.integral,
        })
    return {
        "geometry": g.name,
        "max_degree": max_degree,
        "outer_assumption_asserted": branes[0].outer_assumption_asserted,
        "fan3": fan3.to_json(),
        "fanY": fanY.to_json(),
        "fourfold": fan4.to_json(),
        "correspondence": {
            "iota": [list(r) for r in corr.iota],
            "gamma_tilde": list(corr.gamma_tilde),
            "divisors": [fan4.marked["D_tilde"], fan4.marked["D_tilde_2"]],
        },
        "ok": all(r["match"] and r["integral"] for r in rows),
        "rows": rows,
    }


def _as_extraction(table: BPSTable, key) -> Extraction:
    return Extraction(table.values[key], table.verdicts[key])


def cmd_openclosed(args) -> int:
    g = _geometry(args)
    doc = openclosed_report(g, args.max_degree, args.workers, not args.no_cache)
    _emit(args, doc, doc["rows"],
          ["beta", "n_tilde", "N_open", "N_kp", "N_genus_zero", "match", "integral"])
    return EXIT_OK if doc["ok"] else EXIT_VERDICT


def cmd_char(args) -> int:
    lam, mu = Partition.parse(args.irrep), Partition.parse(args.cls)
    value = mn_character(lam, mu)
    doc = {"irrep": str(lam), "class": str(mu), "value": value}
    if args.format is None:
        _write(args, f"{value}\n")
    else:
        _emit(args, doc, [doc], ["irrep", "class", "value"])
    return EXIT_OK


def cmd_vertex_w(args) -> int:
    parts = [Partition.parse(x) for x in (args.l1, args.l2, args.l3)]
    value = three_point_W(*parts)
    doc = {"lambda": [str(p) for p in parts], "W": str(value)}
    if args.format is None:
        _write(args, f"{value}\n")
    else:
        _emit(args, doc, [{"lambda": " ".join(doc["lambda"]), "W": doc["W"]}], ["lambda", "W"])
    return EXIT_OK


def _write(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def verify_geometry(g: FTCYGraph, max_degree: int, workers: int = 1,
                    use_cache: bool = True) -> list[dict]:
    """Invariant battery for one geometry; one entry per check."""
    checks: list[dict[str, Any]] = []

    def add(name, ok, detail=""):
        checks.append({"check": name, "ok": bool(ok), "detail": detail})

    Z = amplitudes(g, max_degree, workers, use_cache)
    F = log_series(Z)
    Z2 = exp_series(F)
    bad = [str(c) for c in Z if Z2[c] != Z[c]]
    add("exp(log Z) = Z", not bad, ", ".join(bad[:3]))
    if g.num_branes:
        run = open_bps(g, max_degree, workers, use_cache)
        failing = [k for k, v in run.table.verdicts.items() if not v.ok]
        add("integrality and finiteness", not failing,
            "; ".join(f"{list(k[0])} {k[1]}: {run.table.verdicts[k].witness}" for k in failing[:3]))
        mismatch = [k for k in run.F if lmov_roundtrip(run.table.values, *k) != run.F[k]]
        add("LMOV round trip", not mismatch, ", ".join(str(k) for k in mismatch[:3]))
        if g.num_branes == 1 and g.fan:
            doc = openclosed_report(g, max_degree, workers, use_cache)
            add("open/closed correspondence", doc["ok"],
                ", ".join(str(r["beta"]) for r in doc["rows"] if not r["match"]))
    table, Fc = closed_bps(g, max_degree, workers, use_cache)
    if Fc:
        failing = [k for k, v in table.verdicts.items() if not v.ok]
        add("closed integrality and finiteness", not failing,
            "; ".join(f"{list(k[0])}: {table.verdicts[k].witness}" for k in failing[:3]))
        values = {k[0]: v for k, v in table.values.items()}
        mismatch = [b for b in Fc if closed_lmov_roundtrip(values, b) != Fc[b]]
        add("closed multiple-cover round trip", not mismatch, ", ".join(str(b) for b in mismatch[:3]))
    return checks


def cmd_verify(args) -> int:
    g = _geometry(args)
    checks = verify_geometry(g, args.max_degree, args.workers, not args.no_cache)
    ok = all(c["ok"] for c in checks)
    doc = {"geometry": g.name, "max_degree": args.max_degree, "ok": ok, "checks": checks}
    _emit(args, doc, checks, ["check", "ok", "detail"])
    return EXIT_OK if ok else EXIT_VERDICT


# --------------------------------------------------------------------------
# argument parsing


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--geometry", help="builtin name such as 'c3-brane(1)' or a geometry JSON file")
    common.add_argument("--framing", type=int, help="override the framing of every brane")
    common.add_argument("--max-degree", type=_positive, default=3, help="total edge degree cutoff")
    common.add_argument("--class", dest="classes", action="append", metavar="BETA[:MU...]",
                        help="restrict output, e.g. '1,1:[2]'; repeatable")
    common.add_argument("--format", choices=["json", "csv"],
                        help="report encoding (default json; char and vertex-w print plain text)")
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--no-cache", action="store_true", help="disable the vertex memo table")
    common.add_argument("--output", metavar="PATH")

    p = argparse.ArgumentParser(prog="bpsvertex", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("gw", parents=[common], help="open GW generating functions").set_defaults(func=cmd_gw)
    sub.add_parser("bps", parents=[common], help="open BPS table with verdicts").set_defaults(func=cmd_bps)
    sub.add_parser("closed-bps", parents=[common], help="closed Gopakumar-Vafa table").set_defaults(
        func=cmd_closed_bps)
    sub.add_parser("openclosed", parents=[common], help="four-fold fan, BPS transfer, KP report").set_defaults(
        func=cmd_openclosed)
    sub.add_parser("verify", parents=[common], help="run the invariant battery").set_defaults(func=cmd_verify)
    c = sub.add_parser("char", parents=[common], help="symmetric group character chi_lambda(mu)")
    c.add_argument("irrep")
    c.add_argument("cls", metavar="class")
    c.set_defaults(func=cmd_char)
    w = sub.add_parser("vertex-w", parents=[common], help="three-point vertex W(l1, l2, l3)")
    w.add_argument("l1")
    w.add_argument("l2")
    w.add_argument("l3")
    w.set_defaults(func=cmd_vertex_w)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line reports: character tables, complex verification, twisting, quantum comparison.

Exit status: 0 when every check passes, 1 when a mathematical check fails
(the report is still written), 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .bgg import assemble_bgg, assemble_cousin, verify_complex
from .charring import FormalCharacter, char_equal_truncated, euler_characteristic, verma_character, weyl_character
from .linalg import QQ, field_from_spec
from .modules import find_isomorphism, verma
from .quantum import compare_specialization, quasi_bgg_rank1
from .rootdata import UnsupportedType, build_root_datum, dot_action, is_dominant, parse_weight
from .truncated import contragredient
from .twisting import UnsupportedTwist, twist_module
from .weyl import enumerate_weyl


class UsageError(ValueError):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quasibgg", description="Exact verification reports for BGG-type complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, prime=False, margin=True):
        sp.add_argument("--type", dest="label", required=True, help="root datum label: A1, A2 or B2")
        sp.add_argument("--weight", required=True, help="comma-separated fundamental coordinates")
        sp.add_argument("--depth", type=int, required=True)
        if margin:
            sp.add_argument("--margin", type=int, default=0)
        sp.add_argument("--prime", type=int, default=None, required=prime)
        out(sp)

    def out(sp):
        sp.add_argument("--out", default=None, help="output file (default: stdout)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    common(sub.add_parser("chars", help="Verma, Euler and Weyl character tables"), margin=False)
    common(sub.add_parser("bgg", help="verify the BGG complex over Q"))  # --prime is rejected
    common(sub.add_parser("cousin", help="verify the Cousin complex over F_p"), prime=True)
    common(sub.add_parser("twist", help="character preservation under twisting"), margin=False)
    q = sub.add_parser("quantum", help="rank-one quantum quasi-BGG")
    q.add_argument("mode", choices=("compare", "sequence"))
    q.add_argument("--mu", type=int, required=True)
    q.add_argument("--depth", type=int, required=True)
    q.add_argument("--prime", type=int, default=None)
    out(q)
    return p


# ---------------------------------------------------------------- commands


def _setup(args):
    try:
        rd = build_root_datum(args.label)
        lam = parse_weight(rd, args.weight)
    except (UnsupportedType, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if args.depth < 0:
        raise UsageError("depth must be nonnegative")
    margin = getattr(args, "margin", 0)
    if margin < 0 or (margin and margin >= args.depth):
        raise UsageError("need depth > margin >= 0")
    return rd, lam


def _field(prime):
    try:
        return field_from_spec(prime)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_characters(args) -> tuple:
    rd, lam = _setup(args)
    poset = enumerate_weyl(rd)
    tables = []
    for w in poset.elements:
        mu = dot_action(rd, w, lam)
        d = rd.depth_below(lam, mu)
        if d is None or d > args.depth:
            ch = FormalCharacter(rd, mu, args.depth, {})
        else:
            ch = verma_character(rd, mu, args.depth - d)
        tables.append((f"verma[{w.name}]", mu, ch))
    euler = euler_characteristic(rd, lam, args.depth)
    ok = True
    if is_dominant(rd, lam):
        weyl = weyl_character(rd, lam).restricted(lam, args.depth)
        tables += [("euler", lam, euler), ("weyl", lam, weyl)]
        ok = char_equal_truncated(euler, weyl, args.depth)
    else:
        tables.append(("euler", lam, euler))
    report = {
        "command": "chars",
        "root_datum": rd.label,
        "weight": list(lam),
        "window": {"top": list(lam), "depth": args.depth},
        "tables": [{"name": n, "top": list(t), "weights": ch.to_json()["weights"]} for n, t, ch in tables],
        "euler_ok": ok,
        "ok": ok,
    }
    return report, ok


def _complex_report(c, margin, name) -> dict:
    rep = verify_complex(c, margin)
    rep["command"] = name
    rep["root_datum"] = c.rd.label
    rep["weight"] = list(c.lam)
    rep["window"] = {"top": list(c.lam), "depth": c.depth, "margin": margin}
    return rep


def cmd_bgg(args) -> tuple:
    rd, lam = _setup(args)
    if not is_dominant(rd, lam):
        raise UsageError("the BGG complex needs a dominant weight")
    if args.prime is not None:
        raise UsageError("bgg works over Q; use cousin for F_p")
    rep = _complex_report(assemble_bgg(rd, lam, args.depth), args.margin, "bgg")
    return rep, rep["ok"]


def cmd_cousin(args) -> tuple:
    rd, lam = _setup(args)
    if not is_dominant(rd, lam):
        raise UsageError("the Cousin complex needs a dominant weight")
    fld = _field(args.prime)
    if fld is QQ:
        raise UsageError("cousin needs --prime")
    rep = _complex_report(assemble_cousin(rd, lam, args.depth, fld.characteristic), args.margin, "cousin")
    return rep, rep["ok"]


def cmd_twist(args) -> tuple:
    rd, lam = _setup(args)
    fld = _field(args.prime)
    rows = []
    ok = True
    for w in enumerate_weyl(rd).elements:
        if w.length > 1:
            continue
        src = dot_action(rd, w, lam)  # w is an involution here
        try:
            t = twist_module(rd, w, verma(rd, src, args.depth, fld), args.depth)
        except UnsupportedTwist as exc:
            rows.append({"w": w.name, "supported": False, "reason": str(exc)})
            continue
        ch = verma_character(rd, lam, args.depth)
        same = t.top == lam and all(ch[mu] == t.dim(mu) for mu in rd.window(lam, args.depth))
        row = {"w": w.name, "supported": True, "source_top": list(src), "top": list(t.top), "character_preserved": same}
        if rd.rank == 1 and w.length == 1 and fld is QQ:
            iso = find_isomorphism(t, contragredient(verma(rd, lam, args.depth, fld)))
            row["isomorphic_to_dual_verma"] = iso is not None
            same = same and iso is not None
        ok = ok and same
        rows.append(row)
    report = {
        "command": "twist",
        "root_datum": rd.label,
        "weight": list(lam),
        "field": fld.name,
        "window": {"top": list(lam), "depth": args.depth},
        "twists": rows,
        "ok": ok,
    }
    return report, ok


def cmd_quantum(args) -> tuple:
    if args.depth < 0:
        raise UsageError("depth must be nonnegative")
    if args.mu < 0:
        raise UsageError("mu must be dominant")
    if args.mode == "compare":
        if args.prime is None:
            raise UsageError("quantum compare needs --prime")
        p = _field(args.prime).characteristic
        rep = compare_specialization(args.mu, p, args.depth)
    else:
        rep = quasi_bgg_rank1(args.mu, args.depth)
    rep["command"] = f"quantum {args.mode}"
    return rep, rep["ok"]


COMMANDS = {"chars": cmd_characters, "bgg": cmd_bgg, "cousin": cmd_cousin, "twist": cmd_twist, "quantum": cmd_quantum}


# ---------------------------------------------------------------- output


def _flatten(obj, prefix="") -> list:
    if isinstance(obj, dict):
        out = []
        for k in sorted(obj, key=str):
            out += _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
        return out
    if isinstance(obj, list) and obj and all(isinstance(x, dict) for x in obj):
        out = []
        for i, x in enumerate(obj):
            out += _flatten(x, f"{prefix}[{i}]")
        return out
    return [(prefix, obj if not isinstance(obj, (list, tuple)) else json.dumps(obj, default=str))]


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if report.get("command") == "chars":
        rank = len(report["weight"])
        writer.writerow(["table"] + [f"c{i + 1}" for i in range(rank)] + ["multiplicity"])
        for t in report["tables"]:
            for mu, m in t["weights"]:
                writer.writerow([t["name"]] + list(mu) + [m])
        writer.writerow(["euler_ok", str(report["euler_ok"]).lower()])
        return buf.getvalue()
    writer.writerow(["key", "value"])
    for k, v in _flatten(report):
        writer.writerow([k, str(v).lower() if isinstance(v, bool) else v])
    return buf.getvalue()


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        report, ok = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

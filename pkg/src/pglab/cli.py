"""Command-line front end: verify, analyze, census, hom, iso, quotient.

Exit codes: 0 success, 1 validation failure, 2 cap exceedance.  Caps come
from PGLAB_* environment variables and per-invocation flags.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Optional, Sequence

from .config import Caps, caps_from_env
from .errors import CapExceeded, PolyadicError, ValidationError
from .congruence import (
    congruences_bruteforce,
    congruences_theorem,
    is_normal_congruence,
    kernel_class,
    lattice_ops,
    quotient_by_congruence,
    congruence_from_classes,
)
from .morphisms import (
    PolyadicHom,
    are_isomorphic,
    decompose_hom,
    enumerate_homs,
    is_polyadic_hom,
)
from .polyadic import (
    dornte_witness,
    hosszu_gloskin,
    n_ary_identity,
    retract,
    verify_axioms,
)
from .serialize import (
    axiom_report_to_doc,
    hom_to_doc,
    load_polyadic,
    polyadic_to_doc,
    report_to_doc,
    subgroup_to_doc,
)
from .simplicity import census, simplicity_report
from .substructures import (
    enumerate_normal_polyadic,
    enumerate_polyadic_subgroups,
    quotient_polyadic,
)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_verify(args, caps: Caps) -> int:
    p = load_polyadic(args.path, caps=caps, verify=False)
    payload: dict = {"arity": p.arity, "order": p.order}
    lines = [f"arity: {p.arity}, order: {p.order}"]
    if p.is_derived:
        # construction already enforced the twist gates; re-state them
        payload["presentation"] = "derived"
        lines.append("presentation: derived (twist gates hold by construction)")
    else:
        report = verify_axioms(p, caps=caps)
        payload["axioms"] = axiom_report_to_doc(report)
        lines.append(f"associative: {_yes(report.associative)}")
        lines.append(f"solvable: {_yes(report.solvable)}")
        if not report.ok:
            payload["ok"] = False
            _emit(args, payload, lines + [f"violations: {list(report.violations)}"])
            return 1
    witness = dornte_witness(p)
    payload["dornte"] = witness is None
    lines.append(f"Dörnte identities: {_yes(witness is None)}")
    if witness is not None:
        payload["dornte_witness"] = list(witness)
        lines.append(f"  witness: {witness}")
        _emit(args, payload, lines)
        return 1
    payload["ok"] = True
    _emit(args, payload, lines)
    return 0


def _parse_members(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted(int(tok) for tok in text.split(",") if tok != ""))
    except ValueError:
        raise ValidationError(f"cannot parse member list {text!r}")


def cmd_analyze(args, caps: Caps) -> int:
    p = load_polyadic(args.path, caps=caps)
    payload: dict = {"arity": p.arity, "order": p.order}
    lines = [f"arity: {p.arity}, order: {p.order}"]
    if args.skew:
        table = [p.skew(x) for x in range(p.order)]
        payload["skew"] = table
        lines.append("skew: " + " ".join(f"{x}↦{y}" for x, y in enumerate(table)))
    if args.retract is not None:
        group, relabel = retract(p, args.retract)
        hg = hosszu_gloskin(p, args.retract, caps=caps)
        payload["retract"] = {
            "anchor": args.retract,
            "table": [list(r) for r in group.table],
            "relabel": list(relabel),
            "twist": list(hg.theta.perm),
            "constant": hg.b,
        }
        lines.append(f"retract at {args.retract}: order {group.order}, "
                     f"twist {list(hg.theta.perm)}, constant {hg.b}")
    if args.subgroups:
        subs = enumerate_polyadic_subgroups(p, caps=caps)
        payload["subgroups"] = [subgroup_to_doc(s) for s in subs]
        lines.append(f"polyadic subgroups ({len(subs)}): "
                     + ", ".join(str(list(s.members)) for s in subs))
    if args.normal:
        subs = enumerate_normal_polyadic(p, caps=caps)
        payload["normal_subgroups"] = [subgroup_to_doc(s) for s in subs]
        lines.append(f"normal polyadic subgroups ({len(subs)}): "
                     + ", ".join(str(list(s.members)) for s in subs))
    if args.congruences:
        congs = congruences_theorem(p, caps=caps)
        if p.order <= caps.partition_cap:
            brute = congruences_bruteforce(p, caps=caps)
            if [c.classes for c in brute] != [c.classes for c in congs]:
                raise PolyadicError("congruence methods disagree")
        entries = []
        for c in congs:
            kc = kernel_class(c, caps=caps)
            entries.append(
                {
                    "classes": [list(x) for x in c.classes],
                    "kernel": list(kc.members),
                    "kernel_related_to_constant": kc.b_related,
                    "normal_witness": is_normal_congruence(c, caps=caps),
                }
            )
        payload["congruences"] = entries
        modular = _lattice_summary(congs, caps)
        payload["lattice"] = modular
        lines.append(f"congruences: {len(congs)}; commuting pairs: "
                     f"{_yes(modular['all_commute'])}; modular: {_yes(modular['modular'])}")
        for e in entries:
            lines.append(f"  classes {e['classes']} kernel {e['kernel']}")
    if args.simplicity:
        rep = simplicity_report(p, caps=caps)
        payload["simplicity"] = report_to_doc(rep)
        lines.append(
            f"UAS: {_yes(rep.uas)}, GTS: {_yes(rep.gts)}, GTS*: {_yes(rep.gts_star)}, "
            f"reduced: {_yes(rep.reduced)}"
        )
    if args.quotient is not None:
        members = _parse_members(args.quotient)
        q = quotient_polyadic(p, members, caps=caps)
        payload["quotient"] = {
            "classes": [list(c) for c in q.classes],
            "polyadic": polyadic_to_doc(q.quotient),
        }
        lines.append(f"quotient by {list(members)}: {len(q.classes)} classes, "
                     f"identity class index {n_ary_identity(q.quotient)}")
    _emit(args, payload, lines)
    return 0


def _lattice_summary(congs, caps: Caps) -> dict:
    all_commute = True
    meets = [[0] * len(congs) for _ in congs]
    joins = [[0] * len(congs) for _ in congs]
    index = {c.classes: i for i, c in enumerate(congs)}
    for i, r in enumerate(congs):
        for j, q in enumerate(congs):
            ops = lattice_ops(r, q, caps=caps)
            all_commute &= ops.commutes and ops.composition_is_product
            meets[i][j] = index[ops.meet.classes]
            joins[i][j] = index[ops.join.classes]
    modular = True
    k = len(congs)
    for a in range(k):
        for b in range(k):
            for c in range(k):
                if meets[a][c] != a:  # only test when a <= c
                    continue
                lhs = joins[a][meets[b][c]]
                rhs = meets[joins[a][b]][c]
                modular &= lhs == rhs
    return {"meet": meets, "join": joins, "all_commute": all_commute, "modular": modular}


def cmd_census(args, caps: Caps) -> int:
    entries = census(args.order, args.arity, args.mode, caps=caps)
    payload = {
        "order": args.order,
        "arity": args.arity,
        "mode": args.mode,
        "classes": [
            {
                "polyadic": polyadic_to_doc(e.representative),
                "report": report_to_doc(e.report),
                "multiplicity": e.multiplicity,
            }
            for e in entries
        ],
    }
    lines = [f"census order={args.order} arity={args.arity} mode={args.mode}: "
             f"{len(entries)} classes"]
    for i, e in enumerate(entries):
        rep = e.report
        lines.append(
            f"  class {i}: multiplicity {e.multiplicity}, UAS {_yes(rep.uas)}, "
            f"GTS {_yes(rep.gts)}, GTS* {_yes(rep.gts_star)}, reduced {_yes(rep.reduced)}"
        )
    _emit(args, payload, lines)
    return 0


def cmd_hom(args, caps: Caps) -> int:
    p = load_polyadic(getattr(args, "from"), caps=caps)
    q = load_polyadic(args.to, caps=caps)
    if args.map is not None:
        candidate = tuple(int(tok) for tok in args.map.split(","))
        ok, witness = is_polyadic_hom(candidate, p, q, caps=caps)
        if not ok:
            _emit(
                args,
                {"map": list(candidate), "hom": False, "witness": list(witness)},
                [f"not a homomorphism, witness {witness}"],
            )
            return 1
        psi = PolyadicHom(p, q, candidate)
        dec = decompose_hom(psi, caps=caps)
        _emit(
            args,
            {"hom": True, **hom_to_doc(psi, dec)},
            [f"homomorphism; split a = {dec.a}, phi = {list(dec.phi)}"],
        )
        return 0
    homs = enumerate_homs(p, q, caps=caps)
    docs = [hom_to_doc(h, decompose_hom(h, caps=caps)) for h in homs]
    lines = [f"{len(homs)} homomorphisms"]
    for d in docs:
        lines.append(f"  map {d['map']} a={d['decomposition']['a']} "
                     f"phi={d['decomposition']['phi']}")
    _emit(args, {"homs": docs}, lines)
    return 0


def cmd_iso(args, caps: Caps) -> int:
    p = load_polyadic(getattr(args, "from"), caps=caps)
    q = load_polyadic(args.to, caps=caps)
    psi = are_isomorphic(p, q, caps=caps)
    if psi is None:
        _emit(args, {"isomorphic": False}, ["not isomorphic"])
        return 0
    _emit(
        args,
        {"isomorphic": True, **hom_to_doc(psi)},
        [f"isomorphic via {list(psi.map)}"],
    )
    return 0


def cmd_quotient(args, caps: Caps) -> int:
    p = load_polyadic(args.path, caps=caps)
    if args.subgroup is not None:
        members = _parse_members(args.subgroup)
        q = quotient_polyadic(p, members, caps=caps)
        payload = {
            "classes": [list(c) for c in q.classes],
            "polyadic": polyadic_to_doc(q.quotient),
        }
        lines = [f"quotient by subgroup {list(members)}: {len(q.classes)} classes"]
    else:
        classes = [
            _parse_members(chunk) for chunk in args.congruence.split("|")
        ]
        cong = congruence_from_classes(p, classes)
        result = quotient_by_congruence(p, cong, caps=caps)
        payload = {"polyadic": polyadic_to_doc(result)}
        lines = [f"quotient by congruence: order {result.order}"]
    _emit(args, payload, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pglab",
        description="Finite polyadic (n-ary) group engine",
    )
    parser.add_argument("--json", action="store_true", help="emit machine output")
    for name in (
        "order-cap", "arity-cap", "automorphism-cap", "axiom-cost-cap",
        "partition-cap", "square-cap", "subset-scan-cap", "hom-oracle-cap",
        "census-exhaustive-cap",
    ):
        parser.add_argument(f"--{name}", type=int, default=None, help=f"override {name}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="validate a polyadic document")
    p_verify.add_argument("path")
    p_verify.set_defaults(func=cmd_verify)

    p_analyze = sub.add_parser("analyze", help="run analyses on a document")
    p_analyze.add_argument("path")
    p_analyze.add_argument("--skew", action="store_true")
    p_analyze.add_argument("--retract", type=int, default=None, metavar="A")
    p_analyze.add_argument("--subgroups", action="store_true")
    p_analyze.add_argument("--normal", action="store_true")
    p_analyze.add_argument("--congruences", action="store_true")
    p_analyze.add_argument("--simplicity", action="store_true")
    p_analyze.add_argument("--quotient", default=None, metavar="MEMBERS")
    p_analyze.set_defaults(func=cmd_analyze)

    p_census = sub.add_parser("census", help="isomorphism classes at a given size")
    p_census.add_argument("--order", type=int, required=True)
    p_census.add_argument("--arity", type=int, required=True)
    p_census.add_argument("--mode", choices=("derived", "exhaustive"), default="derived")
    p_census.set_defaults(func=cmd_census)

    p_hom = sub.add_parser("hom", help="check or enumerate homomorphisms")
    p_hom.add_argument("--from", required=True)
    p_hom.add_argument("--to", required=True)
    group = p_hom.add_mutually_exclusive_group(required=True)
    group.add_argument("--map", default=None, help="comma-separated image list")
    group.add_argument("--enumerate", action="store_true")
    p_hom.set_defaults(func=cmd_hom)

    p_iso = sub.add_parser("iso", help="decide isomorphism")
    p_iso.add_argument("--from", required=True)
    p_iso.add_argument("--to", required=True)
    p_iso.set_defaults(func=cmd_iso)

    p_quot = sub.add_parser("quotient", help="quotient by a subgroup or congruence")
    p_quot.add_argument("path")
    group = p_quot.add_mutually_exclusive_group(required=True)
    group.add_argument("--subgroup", default=None, metavar="MEMBERS")
    group.add_argument("--congruence", default=None, metavar="CLASSES")
    p_quot.set_defaults(func=cmd_quotient)
    return parser


def _caps_from_args(args) -> Caps:
    caps = caps_from_env()
    overrides = {}
    for f in dataclasses.fields(Caps):
        flag = getattr(args, f.name, None)
        if flag is not None:
            overrides[f.name] = flag
    return dataclasses.replace(caps, **overrides)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    caps = _caps_from_args(args)
    try:
        return args.func(args, caps)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except PolyadicError as exc:
        print(f"internal contradiction: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

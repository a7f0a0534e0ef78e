"""Command-line front end: ``normtorus compute | character | tower | triple | verify-paper``.

Exit codes: 0 success, 1 expectation mismatch, 2 route disagreement, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .charbrauer import (
    EmbeddingMismatch,
    InvalidTower,
    MismatchedData,
    NotAHomomorphism,
    TowerSpec,
    beta_map,
    character_from_generators,
    is_constant_level,
    is_unramified,
    orthogonal_complement,
    tower_C,
    tower_C_const,
    tower_C_nr,
    tower_D,
)
from .corpus import METHODS, CorpusParseError, build_torus, compute_routes, load_corpus, run_entry
from .extgroups import (
    conjugating_witness,
    dihedral_tilde,
    enumerate_splittings,
    is_unramified_triple,
    splitting_fails_on_pair,
    triple_from_class,
)
from .oracle import ORACLE_CAP, OracleCapExceeded
from .permgroup import DEFAULT_CAP, PermError, _split_generators, parse_group_spec, parse_perm, parse_subgroup_spec
from .toruscoh import TorusModule, all_classes, h2_of_that, in_sha_cyclic, is_zero_class, sha_membership_pointwise

SCHEMA_VERSION = 1
EXIT_OK, EXIT_MISMATCH, EXIT_DISAGREE, EXIT_INPUT = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _emit(report: dict, as_json: bool, lines: list[str]):
    if as_json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))


def _base_report(command: str, echo: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "version": __version__, "command": command, "input": echo}


def _parse_methods(text: str | None):
    if not text:
        return None
    methods = [m.strip() for m in text.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            raise InputError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    return methods


def cmd_compute(args) -> int:
    T = build_torus(args.group, args.stabilizer, cap=args.group_cap)
    methods = _parse_methods(args.method)
    if methods and "oracle" in methods and T.group.order > args.cap:
        raise OracleCapExceeded(f"|G| = {T.group.order} exceeds the oracle cap {args.cap}")
    t0 = time.perf_counter()
    res = compute_routes(T, methods, oracle_cap=args.cap)
    report = _base_report("compute", {"group": args.group, "stabilizer": args.stabilizer,
                                      "method": args.method or ",".join(res["sha"])})
    report.update({"order": T.group.order, "index": T.n, "sha": res["sha"], "h2": res["h2"],
                   "routes_agree": res["routes_agree"],
                   "timing": {"total": round(time.perf_counter() - t0, 4), **res["seconds"]}})
    lines = [f"group {args.group}  |G| = {T.group.order}  (G:H) = {T.n}"]
    for m in res["sha"]:
        lines.append(f"  {m:10s} H2 = {res['h2'][m]}  Br_nr/Br_0 = {res['sha'][m]}")
    lines.append("routes agree" if res["routes_agree"] else "ROUTE DISAGREEMENT")
    _emit(report, args.json, lines)
    return EXIT_OK if res["routes_agree"] else EXIT_DISAGREE


def _parse_chi(text: str) -> list[Fraction]:
    try:
        return [Fraction(tok.strip()) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad character values {text!r}") from exc


def cmd_character(args) -> int:
    G = parse_group_spec(args.group, cap=args.group_cap)
    gens = [parse_perm(tok, G.degree) for tok in _split_generators(args.subgroup)]
    H = parse_subgroup_spec(G, args.subgroup)
    vals = _parse_chi(args.chi or "")
    if len(vals) != len(gens):
        raise InputError(f"{len(gens)} generators but {len(vals)} character values")
    chi = character_from_generators(G, H, dict(zip(gens, vals)))
    T = TorusModule(G, H)
    b = beta_map(chi, T)
    flags = {"constant_level": is_constant_level(chi), "unramified": is_unramified(chi),
             "beta_is_zero": is_zero_class(b), "beta_in_sha": in_sha_cyclic(b),
             "beta_in_sha_pointwise": sha_membership_pointwise(b)}
    report = _base_report("character", {"group": args.group, "subgroup": args.subgroup, "chi": args.chi})
    report.update({"character": {"subgroup_generators": [g.cycle_string() or "()" for g in gens],
                                 "order": chi.order, "values": [str(v % 1) for v in vals]}, **flags})
    lines = [f"character of order {chi.order} on a subgroup of order {H.order} in {args.group}"]
    lines += [f"  {k:22s} {v}" for k, v in flags.items()]
    _emit(report, args.json, lines)
    return EXIT_DISAGREE if flags["beta_in_sha"] != flags["beta_in_sha_pointwise"] else EXIT_OK


def _char_group_json(S) -> dict:
    return {"invariant_factors": list(S.group.invariant_factors), "order": S.order}


def cmd_tower(args) -> int:
    G = parse_group_spec(args.group, cap=args.group_cap)
    lam = parse_subgroup_spec(G, args.subgroup)
    nu = parse_subgroup_spec(G, args.nu)
    t = TowerSpec(G, lam, nu)
    C, Cc, Cn, D = tower_C(t), tower_C_const(t), tower_C_nr(t), tower_D(t)
    perp = orthogonal_complement(t, D)
    dual = perp.elements == Cn.elements
    report = _base_report("tower", {"group": args.group, "subgroup": args.subgroup, "nu": args.nu})
    report.update({"tower": t.to_json(), "C": _char_group_json(C), "C_const": _char_group_json(Cc),
                   "C_nr": _char_group_json(Cn), "D": _char_group_json(D),
                   "D_perp": _char_group_json(perp), "duality": dual,
                   "const_in_nr": Cc.elements <= Cn.elements})
    lines = [f"Lambda/N = {t.quotient}",
             f"  C       = {C.group}", f"  C_const = {Cc.group}", f"  C_nr    = {Cn.group}",
             f"  D       = {D.group}", f"  D_perp  = {perp.group}",
             f"  C_nr = D_perp: {dual}"]
    _emit(report, args.json, lines)
    return EXIT_OK if dual else EXIT_DISAGREE


def cmd_triple(args) -> int:
    if args.dihedral is not None:
        dt = dihedral_tilde(args.dihedral)
        splittings = enumerate_splittings(dt)
        s, stn, x = conjugating_witness(dt)
        rows = [{"r_sigma": t.r(dt.to_pair(s)), "unramified": is_unramified_triple(t),
                 "fails_on_sigma_pair": splitting_fails_on_pair(dt, t)} for t in splittings]
        report = _base_report("triple", {"dihedral": args.dihedral})
        report.update({"order": dt.order, "has_section": dt.has_section(), "splittings": rows,
                       "conjugator": dt.big.elements[x].cycle_string()})
        lines = [f"order {dt.order}, section exists: {dt.has_section()}"]
        lines += [f"  r(sigma) = {r['r_sigma']}/4  unramified: {r['unramified']}" for r in rows]
        _emit(report, args.json, lines)
        ok = not dt.has_section() and all(not r["unramified"] and r["fails_on_sigma_pair"] for r in rows)
        return EXIT_OK if ok else EXIT_MISMATCH
    if not args.group:
        raise InputError("triple needs --group/--stabilizer or --dihedral")
    T = build_torus(args.group, args.stabilizer, cap=args.group_cap)
    group, gens = h2_of_that(T)
    classes = all_classes(T) if group.order <= 64 else gens
    rows, agree = [], True
    for c in classes:
        tr = triple_from_class(c)
        verdicts = (in_sha_cyclic(c), sha_membership_pointwise(c), is_unramified_triple(tr))
        agree &= len(set(verdicts)) == 1
        row = {"coords": [int(v) for v in (c.coords or ())], "cyclic": verdicts[0],
               "pointwise": verdicts[1], "unramified_triple": verdicts[2]}
        if args.json:
            row["triple"] = tr.to_json()
        rows.append(row)
    report = _base_report("triple", {"group": args.group, "stabilizer": args.stabilizer})
    report.update({"h2": list(group.invariant_factors), "classes": rows, "routes_agree": agree})
    lines = [f"H2 = {list(group.invariant_factors)}"]
    lines += [f"  class {r['coords']}: cyclic {r['cyclic']}  pointwise {r['pointwise']}  "
              f"triple {r['unramified_triple']}" for r in rows]
    _emit(report, args.json, lines)
    return EXIT_OK if agree else EXIT_DISAGREE


def cmd_verify_paper(args) -> int:
    entries = load_corpus(args.corpus)
    methods = _parse_methods(args.method)
    rows = []
    for entry in entries:
        if entry.stretch and not args.stretch:
            continue
        rows.append(run_entry(entry, methods, oracle_cap=args.cap))
    for n in (4, 6):
        dt = dihedral_tilde(n)
        sp = enumerate_splittings(dt)
        ok = (not dt.has_section() and bool(sp)
              and all(not is_unramified_triple(t) and splitting_fails_on_pair(dt, t) for t in sp))
        rows.append({"id": f"dihedral-tilde-{n}", "group": f"D{n}", "stabilizer": "sigma",
                     "expected": "no unramified splitting", "computed": "none unramified" if ok else "unramified found",
                     "routes_agree": True, "pass": ok, "provenance": "extension of D_n by Z/2 without section",
                     "sha": {}, "h2": {}, "seconds": {}})
    disagree = any(not r["routes_agree"] for r in rows)
    failed = [r for r in rows if not r["pass"]]
    report = _base_report("verify-paper", {"corpus": args.corpus or "default", "stretch": args.stretch})
    report["rows"] = [{k: r[k] for k in ("id", "group", "stabilizer", "expected", "computed", "sha",
                                          "routes_agree", "pass", "provenance")} for r in rows]
    report["timing"] = {r["id"]: r["seconds"] for r in rows}
    report["all_pass"] = not failed
    lines = [f"{'id':18s} {'group':15s} {'expected':26s} {'computed':18s} result"]
    for r in rows:
        lines.append(f"{r['id']:18s} {r['group']:15s} {r['expected']:26s} {str(r['computed']):18s} "
                     f"{'PASS' if r['pass'] else 'FAIL'}")
    lines.append(f"{len(rows) - len(failed)}/{len(rows)} passed")
    _emit(report, args.json, lines)
    if disagree:
        return EXIT_DISAGREE
    return EXIT_MISMATCH if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="normtorus", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="print a JSON report")
        sp.add_argument("--cap", type=int, default=ORACLE_CAP, help="largest |G| for the bar-resolution oracle")
        sp.add_argument("--group-cap", type=int, default=DEFAULT_CAP, help="largest group order to enumerate")

    sp = sub.add_parser("compute", help="Br_nr/Br_0 and H^2 for the torus of (G, H)")
    sp.add_argument("--group", required=True)
    sp.add_argument("--stabilizer", default="0")
    sp.add_argument("--method", help="comma-separated subset of h1,pointwise,oracle")
    common(sp)
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("character", help="criteria for a character of a subgroup")
    sp.add_argument("--group", required=True)
    sp.add_argument("--subgroup", required=True, help="comma-separated generator cycles")
    sp.add_argument("--chi", required=True, help="values on the generators, e.g. 1/2,1/3")
    common(sp)
    sp.set_defaults(func=cmd_character)

    sp = sub.add_parser("tower", help="character groups of a tower Gamma >= Lambda >= N")
    sp.add_argument("--group", required=True, help="Gamma")
    sp.add_argument("--subgroup", required=True, help="Lambda")
    sp.add_argument("--nu", default="trivial", help="N (normal in Lambda with abelian quotient)")
    common(sp)
    sp.set_defaults(func=cmd_tower)

    sp = sub.add_parser("triple", help="extension triples of the classes in H^2")
    sp.add_argument("--group")
    sp.add_argument("--stabilizer", default="0")
    sp.add_argument("--dihedral", type=int, help="even n: the extension of D_n without section")
    common(sp)
    sp.set_defaults(func=cmd_triple)

    sp = sub.add_parser("verify-paper", help="run the reference corpus")
    sp.add_argument("--corpus", help="corpus JSON file (default: the bundled one)")
    sp.add_argument("--stretch", action="store_true", help="include the larger entries")
    sp.add_argument("--method", help="comma-separated subset of h1,pointwise,oracle")
    common(sp)
    sp.set_defaults(func=cmd_verify_paper)
    return p


INPUT_ERRORS = (InputError, PermError, CorpusParseError, MismatchedData, NotAHomomorphism,
                InvalidTower, EmbeddingMismatch)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

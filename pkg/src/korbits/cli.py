"""Batch CLI producing deterministic JSON/TSV reports.

Identical invocations produce byte-identical files: all data is emitted in
canonical order with sorted keys and no timestamps; run metadata (tool
version, command, parameters) lives in a separate header object.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, cg, orbits, semigroup
from .hermitian import enumerate_pairs, p_module_weights, parse_pair_key
from .semigroup import (build_case_system, closed_form_generators,
                        covering_differences, gamma_semigroup,
                        gamma_sigma_semigroup, normality_check)


def _report(command, params, data):
    return {"meta": {"tool": "korbits", "version": __version__,
                     "command": command, "params": params},
            "data": data}


def _emit(report, fmt, out, tsv_rows=None):
    if fmt == "tsv":
        lines = ["\t".join(str(x) for x in row) for row in (tsv_rows or [])]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_pairs(args):
    pairs = enumerate_pairs(args.type, args.rank)
    rows = []
    for spec in pairs:
        (w1, c1), (w2, c2) = p_module_weights(spec)
        rows.append({
            "key": spec.key(),
            "family": spec.family_id,
            "k_levi_types": [[t, r] for t, r in spec.k_levi_types],
            "m": spec.m,
            "p1_weight": list(w1.coords), "p1_charge": c1,
            "p2_weight": list(w2.coords), "p2_charge": c2,
        })
    tsv = [["key", "family", "m", "p1_weight", "p2_weight"]] + [
        [r["key"], r["family"], r["m"], r["p1_weight"], r["p2_weight"]] for r in rows]
    _emit(_report("pairs", {"type": args.type, "rank": args.rank}, rows),
          args.format, args.out, tsv)
    return 0


def _orbit_row(rec):
    triple = orbits.build_triple(rec)
    checks = orbits.verify_triple(triple)
    dim_ke, dim_orbit = orbits.centralizer_dim(triple)
    bic = orbits.bicone_witness(triple)
    jordan_ok = orbits.jordan_type(triple.e) == orbits.partition_from_signed(rec)
    row = {
        "orbit": rec.orbit_id(),
        "signed_partition": [[a, sg, m] for a, sg, m in rec.signed_partition()],
        "sl2_ok": all(checks.values()),
        "jordan_ok": jordan_ok,
        "spherical": orbits.is_spherical(triple),
        "dim_K_e": dim_ke,
        "dim_orbit": dim_orbit,
        "ht_p": orbits.p_height(triple),
        "bicone_both_nonzero": bic["both_components_nonzero"],
        "chi_charges": list(bic["chi_charges"]),
    }
    return row


def _cmd_orbits(args):
    pair = parse_pair_key(args.pair)
    rows = [_orbit_row(rec) for rec in orbits.list_orbits(pair, args.max_params)]
    ok = all(r["sl2_ok"] and r["jordan_ok"] and r["spherical"] for r in rows)
    tsv = [["orbit", "signed_partition", "ht_p", "codim", "sl2_ok", "spherical"]] + [
        [r["orbit"],
         "".join(f"({sg}{a}^{m})" for a, sg, m in
                 [(x[0], x[1], x[2]) for x in r["signed_partition"]]),
         r["ht_p"], "-", r["sl2_ok"], r["spherical"]] for r in rows]
    _emit(_report("orbits", {"pair": args.pair, "max_params": args.max_params},
                  {"rows": rows, "all_ok": ok}), args.format, args.out, tsv)
    return 0 if ok else 1


def _cmd_triple(args):
    rec = orbits.parse_orbit_id(args.orbit)
    triple = orbits.build_triple(rec)
    data = orbits.triple_to_json(triple)
    data["checks"] = orbits.verify_triple(triple)
    _emit(_report("triple", {"orbit": args.orbit}, data), args.format, args.out)
    return 0 if all(data["checks"].values()) else 1


def _case_params(args):
    params = {}
    for name in ("p", "q", "r", "s"):
        val = getattr(args, name)
        if val is not None:
            params[name] = val
    return params


def _cmd_semigroup(args):
    params = _case_params(args)
    try:
        system = build_case_system(args.case, params)
        closed = closed_form_generators(args.case, params)
    except (KeyError, ValueError) as exc:
        raise SystemExit(f"error: {exc}") from None
    enum = gamma_semigroup(system, args.max_degree)
    match = sorted(g.key() for g in enum) == sorted(g.key() for g in closed)
    lat = semigroup.lattice(system)
    d1, d2 = system.designated
    rows = []
    for g in enum:
        gamma = tuple(g.n1 * a + g.n2 * b - e for a, b, e in zip(d1, d2, g.E))
        rows.append({"n1": g.n1, "n2": g.n2, "E": list(g.E),
                     "sigma_coords": list(lat.nsigma_coords(gamma))})
    data = {
        "system_id": system.name,
        "system": system.to_json(),
        "designated": [list(d) for d in system.designated],
        "max_degree": args.max_degree,
        "generators": rows,
        "closed_form": [{"n1": g.n1, "n2": g.n2, "E": list(g.E)} for g in closed],
        "match": match,
        "normal": normality_check(system)["normal"],
        "gamma_sigma_generators": [list(c) for c in gamma_sigma_semigroup(system, args.max_degree)],
    }
    tsv = [["case", "params", "n1", "n2", "E"]] + [
        [args.case, json.dumps(params, sort_keys=True), r["n1"], r["n2"], r["E"]]
        for r in rows]
    _emit(_report("semigroup", {"case": args.case, **params,
                                "max_degree": args.max_degree}, data),
          args.format, args.out, tsv)
    return 0 if match else 1


def _cmd_normality(args):
    params = _case_params(args)
    try:
        system = build_case_system(args.case, params)
    except (KeyError, ValueError) as exc:
        raise SystemExit(f"error: {exc}") from None
    res = normality_check(system)
    covers = covering_differences(system, args.bound)
    lat = semigroup.lattice(system)
    heights = sorted({sum(semigroup.positive_part_height(lat.colors_of(c))[0])
                      for c in covers})
    data = {"system": system.to_json(), "normal": res["normal"],
            "witnesses": {k: list(v) for k, v in res["witnesses"].items()},
            "covering_differences": [list(c) for c in covers],
            "covering_plus_heights": heights}
    _emit(_report("normality", {"case": args.case, **params, "bound": args.bound}, data),
          args.format, args.out)
    return 0 if res["normal"] else 1


def _cmd_cg_verify(args):
    top = args.max_entry if args.max_entry is not None else args.max_entry_flag
    if top is None:
        raise SystemExit("error: cg-verify needs a maximum entry (positional or --max-entry)")
    triples = [cg.TTriple(a, b, c)
               for a in range(top + 1) for b in range(top + 1) for c in range(top + 1)
               if cg.in_tensor_semigroup((a, b, c))]
    failures, degenerate = [], []
    for m in triples:
        for n in triples:
            res = cg.verify_gamma_product(m, n)
            if not res["ok"]:
                failures.append([m.entries(), n.entries(),
                                 [t.entries() for t in res["missing"]]])
            for k in cg.gamma_module(m + n):
                comp_t = all(cg.in_tensor_semigroup((a, b, c)) for a, b, c in
                             zip(m.entries(), n.entries(), k.entries()))
                if comp_t and not cg.product_contains(k, m, n):
                    degenerate.append([list(k.entries()), list(m.entries()),
                                       list(n.entries())])
    degenerate.sort()
    data = {"tensor_semigroup_size": len(triples), "ok": not failures,
            "failures": failures, "degenerate": degenerate}
    _emit(_report("cg-verify", {"max_entry": top}, data), args.format, args.out)
    return 0 if not failures else 1


def _cmd_report_all(args):
    status = 0
    sections = {}
    for t, n in (("A", 4), ("B", 3), ("C", 2), ("D", 5)):
        for spec in enumerate_pairs(t, n):
            rows = [_orbit_row(rec) for rec in orbits.list_orbits(spec)]
            sections[f"orbits/{spec.key()}"] = rows
            if not all(r["sl2_ok"] and r["jordan_ok"] and r["spherical"] for r in rows):
                status = 1
    for case, params in (("1.4", {"p": 5}), ("1.5", {"q": 5}),
                         ("1.6", {"p": 4, "q": 4, "r": 1, "s": 1}),
                         ("1.7", {"p": 4, "q": 4, "r": 1, "s": 1})):
        system = build_case_system(case, params)
        enum = gamma_semigroup(system, args.max_degree)
        closed = closed_form_generators(case, params)
        match = sorted(g.key() for g in enum) == sorted(g.key() for g in closed)
        normal = normality_check(system)["normal"]
        sections[f"semigroup/{case}"] = {
            "params": params, "match": match, "normal": normal,
            "generators": [[g.n1, g.n2, list(g.E)] for g in enum]}
        if not (match and normal):
            status = 1
    _emit(_report("report-all", {"max_degree": args.max_degree}, sections),
          args.format, args.out)
    return status


def build_parser():
    ap = argparse.ArgumentParser(prog="korbits",
                                 description="spherical nilpotent K-orbit toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        p.add_argument("--out", default=None)

    p = sub.add_parser("pairs", help="list Hermitian pairs of a type/rank")
    p.add_argument("type")
    p.add_argument("rank", type=int)
    common(p)
    p.set_defaults(func=_cmd_pairs)

    p = sub.add_parser("orbits", help="orbit sweep with verification columns")
    p.add_argument("pair")
    p.add_argument("--max-params", type=int, default=None)
    common(p)
    p.set_defaults(func=_cmd_orbits)

    p = sub.add_parser("triple", help="matrices of one orbit representative")
    p.add_argument("orbit")
    common(p)
    p.set_defaults(func=_cmd_triple)

    def case_args(p):
        p.add_argument("case")
        for name in ("p", "q", "r", "s"):
            p.add_argument(f"--{name}", type=int, default=None)
        common(p)

    p = sub.add_parser("semigroup", help="weight-semigroup generators of a case")
    case_args(p)
    p.add_argument("--max-degree", type=int, default=4)
    p.set_defaults(func=_cmd_semigroup)

    p = sub.add_parser("normality", help="minuscule test of the designated colors")
    case_args(p)
    p.add_argument("--bound", type=int, default=3)
    p.set_defaults(func=_cmd_normality)

    p = sub.add_parser("cg-verify", help="section-multiplication sweep for SL(2)^3")
    p.add_argument("max_entry", type=int, nargs="?", default=None)
    p.add_argument("--max-entry", type=int, dest="max_entry_flag", default=None)
    common(p)
    p.set_defaults(func=_cmd_cg_verify)

    p = sub.add_parser("report-all", help="run every verification suite at small size")
    p.add_argument("--max-degree", type=int, default=4)
    common(p)
    p.set_defaults(func=_cmd_report_all)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SystemExit as exc:
        msg = str(exc)
        if msg:
            print(msg, file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``k3lat <group> <command> [options]``.

Every command prints a JSON report on stdout and a short summary on
stderr (suppressed by --json-only). Exit codes: 0 success, 2 bad input or
usage, 3 Kneser criterion inapplicable, 4 not symplectomorphism-like or
anomaly.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import bv, discriminant, isometry, kneser, lattice, mukai
from .io import (InputError, dumps, int_matrix, int_vector, lattice_to_json, load_json, load_lattice,
                 rational_vector)
from .lattice import EnumerationTooLarge, LatticeError
from .theorem5 import run_theorem5

EXIT_OK = 0
EXIT_INPUT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _lattice_args(p, flag="--lattice"):
    p.add_argument(flag, dest="lattice", help="lattice JSON file (or inline JSON)")
    p.add_argument("--construct", help='constructor string, e.g. "U+U+E8(-1)"')


def _ns_args(p):
    p.add_argument("--ns", dest="lattice", help="NS lattice JSON file (or inline JSON)")
    p.add_argument("--construct", "--ns-construct", dest="construct", help="NS constructor string")


def _iso_args(p):
    p.add_argument("--isometry", required=True, help='isometry JSON {"matrix": [...]} or a bare matrix')


def _bounds(p, factor=False):
    p.add_argument("--enum-bound", type=int, default=kneser.DEFAULT_ENUM_BOUND)
    if factor:
        p.add_argument("--factor-budget", type=int, default=kneser.DEFAULT_FACTOR_BUDGET)
        p.add_argument("--pool-limit", type=int, default=kneser.DEFAULT_POOL_LIMIT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="k3lat", description=__doc__.splitlines()[0])
    parser.add_argument("--json-only", action="store_true", help="suppress the stderr summary")
    parser.add_argument("-v", "--verbose", action="store_true")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    g = groups.add_parser("lattice").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    _lattice_args(g.add_parser("info"))
    _lattice_args(g.add_parser("disc"))
    p = g.add_parser("enum")
    _lattice_args(p)
    p.add_argument("--norm", type=int, default=-2)
    _bounds(p)

    g = groups.add_parser("isometry").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name in ("check", "spinor", "factor", "fixed", "orientation"):
        p = g.add_parser(name)
        _lattice_args(p)
        _iso_args(p)
        if name == "orientation":
            p.add_argument("--plane", required=True, help="JSON list of vectors spanning a positive subspace")

    g = groups.add_parser("kneser").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = g.add_parser("check")
    _lattice_args(p)
    _bounds(p)

    g = groups.add_parser("weyl").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name in ("member", "factor"):
        p = g.add_parser(name)
        _lattice_args(p)
        _iso_args(p)
        _bounds(p, factor=True)

    g = groups.add_parser("k3").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    _ns_args(g.add_parser("extend"))
    p = g.add_parser("mukai")
    _ns_args(p)
    p.add_argument("--line-bundle", help="divisor class l (JSON list)")
    p.add_argument("--curve", help="(-2)-curve class c (JSON list)")
    p.add_argument("--twist", type=int, default=-1, help="i in O_C(i) (default -1)")
    p = g.add_parser("twist-action")
    _ns_args(p)
    p.add_argument("--mukai", required=True, help='Mukai vector {"r": .., "l": [..], "s": ..}')
    p = g.add_parser("chamber")
    p.add_argument("--data", required=True, help='K3 data JSON {"ns": .., "ample": .., "curves": ..}')
    p.add_argument("--alpha", required=True)
    p.add_argument("--max-steps", type=int, default=1000)
    p = g.add_parser("p0")
    _ns_args(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    _bounds(p)

    g = groups.add_parser("bv").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = g.add_parser("mul")
    _ns_args(p)
    p.add_argument("--u", required=True, help='{"a": .., "l": [..], "m": ..}')
    p.add_argument("--v", required=True)
    p = g.add_parser("vch")
    _ns_args(p)
    p.add_argument("--l", required=True)
    p = g.add_parser("act")
    _ns_args(p)
    p.add_argument("--isometry", required=True, help="isometry of the extended lattice")
    p.add_argument("--u", required=True)

    p = groups.add_parser("theorem5")
    _ns_args(p)
    p.add_argument("--f", required=True, help="action on NS as an integer matrix JSON")
    p.add_argument("--ample", help="ample class (JSON list), enables the orientation check")
    p.add_argument("--no-factor", action="store_true", help="skip the explicit factorization search")
    _bounds(p, factor=True)
    return parser


# --- helpers -----------------------------------------------------------------

def _lat(args):
    return load_lattice(args.lattice, args.construct)


def _iso(lat, args):
    return isometry.verify_isometry(lat, int_matrix(load_json(args.isometry), "isometry"))


def _mukai_vec(data) -> mukai.MukaiVector:
    if not isinstance(data, dict) or not {"r", "l", "s"} <= data.keys():
        raise InputError('Mukai vector must be {"r": int, "l": [..], "s": int}')
    return mukai.MukaiVector(int_vector([data["r"]])[0], int_vector(data["l"]), int_vector([data["s"]])[0])


def _bv_class(data) -> bv.BVClass:
    if not isinstance(data, dict) or not {"a", "l", "m"} <= data.keys():
        raise InputError('BV class must be {"a": int, "l": [..], "m": int}')
    return bv.BVClass(int_vector([data["a"]])[0], int_vector(data["l"]), int_vector([data["m"]])[0])


def _k3_data(data) -> mukai.K3LatticeData:
    if not isinstance(data, dict) or "ns" not in data:
        raise InputError('K3 data must be {"ns": {...}, "ample": [..], "curves": [[..], ..]}')
    from .io import lattice_from_json

    ns = lattice_from_json(data["ns"])
    ample = int_vector(data["ample"], "ample") if data.get("ample") is not None else None
    curves = None
    if data.get("curves") is not None:
        curves = tuple(int_vector(c, "curve") for c in data["curves"])
    return mukai.K3LatticeData(ns, ample, curves)


def _lattice_summary(lat):
    sig = lattice.signature(lat)
    det = lattice.determinant(lat)
    return {
        "lattice": lattice_to_json(lat),
        "signature": {"positive": sig.positive, "negative": sig.negative, "null": sig.null},
        "determinant": det,
        "even": lat.is_even,
        "unimodular": abs(det) == 1,
    }


def _membership_json(res: kneser.WeylMembership) -> dict:
    return {
        "applicable": res.applicable,
        "spinor": res.spinor,
        "discriminant_trivial": res.discriminant_trivial,
        "determinant": res.determinant,
        "is_member": res.is_member,
        "factorization": res.factorization,
        "budget_exhausted": res.budget_exhausted,
        "hypotheses": res.hypotheses,
    }


# --- commands -------------------------------------------------------------------

def _run(args) -> tuple[dict, str, int]:
    grp, cmd = args.group, getattr(args, "cmd", None)

    if grp == "lattice":
        lat = _lat(args)
        if cmd == "info":
            r = _lattice_summary(lat)
            s = r["signature"]
            return r, (f"rank {lat.rank}, signature ({s['positive']},{s['negative']}), det {r['determinant']}, "
                       f"{'even' if r['even'] else 'odd'}{', unimodular' if r['unimodular'] else ''}"), EXIT_OK
        if cmd == "disc":
            d = discriminant.discriminant_group(lat)
            r = {"divisors": d.divisors, "generators": d.generators, "order": d.order}
            return r, f"discriminant group of order {d.order}, divisors {list(d.divisors)}", EXIT_OK
        vecs = lattice.enumerate_vectors_of_norm(lat, args.norm, args.enum_bound)
        r = {"norm": args.norm, "bound": args.enum_bound, "count": len(vecs), "vectors": vecs}
        return r, f"{len(vecs)} vectors of norm {args.norm} with coordinates in [-{args.enum_bound}, {args.enum_bound}]", EXIT_OK

    if grp == "isometry":
        lat = _lat(args)
        iso = _iso(lat, args)
        if cmd == "check":
            det = isometry.determinant(iso)
            return {"valid": True, "matrix": iso.matrix, "determinant": det}, f"valid isometry, det {det}", EXIT_OK
        if cmd == "spinor":
            sp = isometry.spinor_norm(iso)
            return {"spinor": sp, "determinant": isometry.determinant(iso)}, f"spinor norm {sp:+d}", EXIT_OK
        if cmd == "factor":
            fac = isometry.cartan_dieudonne_factor(iso)
            r = {"vectors": fac.vectors, "signs": fac.signs, "length": len(fac.vectors),
                 "spinor": fac.spinor, "parity": fac.parity}
            return r, f"{len(fac.vectors)} reflections, spinor {fac.spinor:+d}", EXIT_OK
        if cmd == "fixed":
            basis = isometry.fixed_sublattice(iso)
            return {"rank": len(basis), "basis": basis}, f"fixed sublattice of rank {len(basis)}", EXIT_OK
        plane = load_json(args.plane)
        if not isinstance(plane, list):
            raise InputError("--plane must be a JSON list of vectors")
        sign = isometry.orientation_sign(iso, [rational_vector(v) for v in plane])
        return {"orientation": sign}, f"orientation {sign:+d}", EXIT_OK

    if grp == "kneser":
        lat = _lat(args)
        rep = kneser.check_kneser_hypotheses(lat, args.enum_bound)
        summary = "hypotheses met" if rep.hypotheses_met else "hypotheses not met: " + ", ".join(rep.failures)
        return {"report": rep}, summary, EXIT_OK

    if grp == "weyl":
        lat = _lat(args)
        iso = _iso(lat, args)
        if cmd == "member":
            res = kneser.weyl_group_membership(iso, args.enum_bound, args.factor_budget, args.pool_limit)
            verdict = ("inapplicable" if not res.applicable
                       else "member" if res.is_member else "not a member")
            return _membership_json(res), f"{verdict} (spinor {res.spinor:+d}, disc trivial {res.discriminant_trivial})", EXIT_OK
        word = kneser.factor_into_minus_two_reflections(iso, args.enum_bound, args.factor_budget, args.pool_limit)
        r = {"factorization": word, "budget_exhausted": word is None}
        return r, ("no word found (not evidence of non-membership)" if word is None
                   else f"word of length {len(word)}"), EXIT_OK

    if grp == "k3":
        if cmd == "chamber":
            data = _k3_data(load_json(args.data))
            alpha = int_vector(load_json(args.alpha), "alpha")
            final, word, exhausted = mukai.chamber_normalize(data, alpha, args.max_steps)
            r = {"alpha": final, "word": word, "exhausted": exhausted}
            return r, f"{len(word)} reflections{' (exhausted)' if exhausted else ''}", EXIT_OK
        ns = _lat(args)
        if cmd == "extend":
            ext = mukai.extended_ns(ns)
            return _lattice_summary(ext), f"extended lattice of rank {ext.rank}", EXIT_OK
        if cmd == "mukai":
            if (args.line_bundle is None) == (args.curve is None):
                raise InputError("give exactly one of --line-bundle or --curve")
            if args.line_bundle is not None:
                v = mukai.mukai_vector_of_line_bundle(ns, int_vector(load_json(args.line_bundle)))
            else:
                v = mukai.mukai_vector_of_curve_sheaf(ns, int_vector(load_json(args.curve)), args.twist)
            sq = mukai.mukai_pairing(ns, v, v)
            return {"mukai_vector": v, "square": sq}, f"v = {v.coords}, v^2 = {sq}", EXIT_OK
        if cmd == "twist-action":
            v = _mukai_vec(load_json(args.mukai))
            iso = mukai.spherical_twist_action(ns, v)
            return {"matrix": iso.matrix}, "reflection in v on the extended lattice", EXIT_OK
        x = rational_vector(load_json(args.x), "x")
        y = rational_vector(load_json(args.y), "y")
        ver = mukai.p0_membership(ns, x, y, args.enum_bound)
        return {"verdict": ver}, ("inside P_0 (within the box)" if ver.inside else "not in P_0"), EXIT_OK

    if grp == "bv":
        ns = _lat(args)
        if cmd == "mul":
            w = bv.bv_mul(ns, _bv_class(load_json(args.u)), _bv_class(load_json(args.v)))
            return {"product": w}, f"product {w.coords}", EXIT_OK
        if cmd == "vch":
            w = bv.vch_line_bundle(ns, int_vector(load_json(args.l)))
            return {"vch": w, "cycle_class": bv.cycle_class(w)}, f"v^CH = {w.coords}", EXIT_OK
        ext = mukai.extended_ns(ns)
        g = isometry.verify_isometry(ext, int_matrix(load_json(args.isometry), "isometry"))
        w = bv.induced_action_on_R(ns, g)(_bv_class(load_json(args.u)))
        return {"image": w}, f"image {w.coords}", EXIT_OK

    # theorem5
    ns = _lat(args)
    f = int_matrix(load_json(args.f), "f")
    ample = int_vector(load_json(args.ample), "ample") if args.ample else None
    rep = run_theorem5(ns, f, enum_bound=args.enum_bound, factor_budget=args.factor_budget,
                       pool_limit=args.pool_limit, ample=ample, factorize=not args.no_factor)
    return {"report": rep, "exit_code": rep.exit_code}, f"conclusion: {rep.conclusion.value}", rep.exit_code


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # global flags are accepted anywhere on the command line
    json_only = "--json-only" in argv
    verbose = "-v" in argv or "--verbose" in argv
    argv = [a for a in argv if a not in ("--json-only", "-v", "--verbose")]
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json_only = args.json_only or json_only
    args.verbose = args.verbose or verbose
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        report, summary, code = _run(args)
    except (InputError, LatticeError, EnumerationTooLarge) as exc:
        print(f"k3lat: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(dumps(report))
    if not args.json_only:
        print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

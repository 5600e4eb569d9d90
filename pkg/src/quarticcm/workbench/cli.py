"""Command line interface.

Exit status: 0 when every verdict passes, 1 when one fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from ..classgroups import class_group, polarised_class_group, ppav_classes
from ..cmtypes import is_s_full, omin, omin_zeta5
from ..field import CMFieldQuartic, FieldError
from ..orders import (Order, OrderError, equation_order, maximal_order, order_from_generators,
                      rel_disc_norm, roots_of_unity_in_field)
from ..unitquot import psi
from .report import FAIL, PASS, VerificationReport, jsonable
from .tables import field_of, find_row, table1, table2

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str, n: int, what: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be {n} comma-separated integers")
    if len(vals) != n:
        raise UsageError(f"{what} must be {n} comma-separated integers")
    return vals


def field_from_args(args) -> CMFieldQuartic:
    if args.field:
        D, A, B = _ints(args.field, 3, "--field")
        return CMFieldQuartic(A, B, D)
    if args.poly:
        A, B = _ints(args.poly, 2, "--poly")
        return CMFieldQuartic(A, B)
    raise UsageError("a field is required: --field D,A,B or --poly A,B")


def parse_order(K: CMFieldQuartic, spec: Optional[str]) -> Order:
    """'maximal', 'equation', 'omin:F' or ring generators 'a,b,c,d;a,b,c,d;...'
    (coordinates on 1, x, x^2, x^3)."""
    if spec is None or spec == "maximal":
        return maximal_order(K)
    if spec == "equation":
        return equation_order(K)
    if spec.startswith("omin:"):
        f = int(spec[5:])
        if len(roots_of_unity_in_field(K)) == 10:
            return omin_zeta5(K, f)[0]
        return omin(K, f)
    gens = [K.parse_element(part) for part in spec.split(";") if part.strip()]
    return order_from_generators(K, gens, require_full_rank=True)


def order_summary(O: Order) -> dict:
    return {"basis": O.to_json(), "index": O.index(), "discriminant": O.discriminant(),
            "real_index": O.real_suborder().index(), "cc_stable": O.is_cc_stable(),
            "roots_of_unity": O.mu_order()}


# --------------------------------------------------------------------------
# commands; each returns (list of reports or dicts, plot callback or None)


def cmd_field(args):
    K = field_from_args(args)
    OK = maximal_order(K)
    out = dict(K.info())
    out.update({"disc_OK": OK.discriminant(), "rel_disc_norm": rel_disc_norm(K),
                "roots_of_unity": len(roots_of_unity_in_field(K)),
                "equation_order_index": equation_order(K).index()})
    return [out], None


def cmd_order(args):
    K = field_from_args(args)
    O = parse_order(K, args.order)
    res = order_summary(O)
    if args.f:
        res["contains_f_OK"] = O.conductor_contains(args.f)

    def plot(path):
        from .plots import plot_orders
        return plot_orders([maximal_order(K), O], path, "order and maximal order")
    return [res], plot


def cmd_classgroup(args):
    K = field_from_args(args)
    O = parse_order(K, args.order)
    G = class_group(O, args.f or None)
    res = {"order": O.to_json(), "invariant_factors": G.invariants, "size": G.order}

    def plot(path):
        from .plots import plot_group
        return plot_group(G.invariants, path, "Pic(O)")
    return [res], plot


def cmd_polarised(args):
    K = field_from_args(args)
    O = parse_order(K, args.order)
    C = polarised_class_group(O, args.f or None)

    def plot(path):
        from .plots import plot_group
        return plot_group(C.invariants, path, "polarised class group")
    return [C.to_json()], plot


def cmd_ppav(args):
    K = field_from_args(args)
    O = parse_order(K, args.order)
    P = ppav_classes(O, args.f or None)
    return [{"order": O.to_json(), "count": len(P), "classes": [c.to_json() for c in P]}], None


def cmd_psi(args):
    K = field_from_args(args)
    O = parse_order(K, args.order)
    if args.sub is None:
        raise UsageError("psi needs --sub for the smaller order")
    Oc = parse_order(K, args.sub)
    f = args.f or Oc.index()
    return [psi(O, Oc, f).to_json()], None


def cmd_omin(args):
    K = field_from_args(args)
    if not args.f:
        raise UsageError("omin needs --f")
    if len(roots_of_unity_in_field(K)) == 10:
        orders = omin_zeta5(K, args.f)
    else:
        orders = [omin(K, args.f)]

    def plot(path):
        from .plots import plot_orders
        return plot_orders(orders, path, f"minimal orders for f = {args.f}")
    return [{"f": args.f, "orders": [order_summary(O) for O in orders]}], plot


def _rows_from_args(args, table):
    if args.row:
        D, A, B = _ints(args.row, 3, "--row")
        row = find_row(D, A, B)
        if row is None or row.table != table:
            raise UsageError(f"row [{D},{A},{B}] is not in table {table}")
        return [row]
    if args.all or table == 2:
        return list(table1() if table == 1 else table2())
    raise UsageError("give --row D,A,B or --all")


def cmd_verify(args):
    from . import verify as V
    what = args.what
    if what == "table1":
        reports = [V.table1_pipeline(r) for r in _rows_from_args(args, 1)]

        def plot(path):
            from .plots import plot_table1
            return plot_table1(reports, path)
        return reports, plot
    if what == "table2":
        profiles = {}
        reports = []
        for r in _rows_from_args(args, 2):
            K = field_of(r)
            prof = V.omin_profile(K)
            profiles[str(r)] = prof
            ok = is_s_full(maximal_order(K), 1)
            odd_ok = all(k == 0 for p, (k, _) in prof.items() if p != 2)
            two_ok = prof[2][1] in (1, 2, 4)
            reports.append(VerificationReport(
                "full reflex norm image and minimal-order profile", {"row": list(r.key)},
                {"s_full_OK": ok, "profile": prof},
                verdict=PASS if ok and odd_ok and two_ok else FAIL))

        def plot(path):
            from .plots import plot_omin_profile
            return plot_omin_profile(profiles, path)
        return reports, plot
    if what == "zeta5":
        K = CMFieldQuartic(5, 5)
        orders = V.enumerate_s_full_orders(K, args.f or None)
        rep = VerificationReport("zeta5 enumeration", {"conductor_bound": args.f},
                                 {"count": len(orders), "indices": [O.index() for O in orders],
                                  "orders": orders}, {"count": 7},
                                 verdict=PASS if len(orders) == 7 else FAIL)

        def plot(path):
            from .plots import plot_orders
            return plot_orders(orders, path, f"{len(orders)} orders with full S")
        return [rep], plot
    K = field_from_args(args)
    O = parse_order(K, args.order)
    if what == "thm1":
        if args.other is None:
            raise UsageError("thm1 needs --other")
        return [V.verify_thm_general(O, parse_order(K, args.other), args.f or None)], None
    if what == "thm2":
        return [V.verify_thm_maximal(K, O)], None
    if what == "lemma51":
        return [V.verify_lemma_relindex(K, O)], None
    raise UsageError(f"unknown claim {what}")  # pragma: no cover


def cmd_isogeny(args):
    from .isogeny import isogeny_chain
    K = field_from_args(args)
    O1 = parse_order(K, args.order)
    O2 = parse_order(K, args.other or "maximal")
    P1, P2 = ppav_classes(O1), ppav_classes(O2)
    if not P1 or not P2:
        return [VerificationReport(
            f"({args.ell},{args.ell}) relation", {"classes1": len(P1), "classes2": len(P2)},
            {"related": None, "reason": "an order has no principally polarised classes"},
            verdict="skip")], None
    reports = []
    for i, c1 in enumerate(P1):
        for j, c2 in enumerate(P2):
            chain = isogeny_chain(c1, c2, args.ell, args.steps)
            reports.append(VerificationReport(
                f"({args.ell},{args.ell}) relation", {"class1": i, "class2": j},
                {"related": chain is not None, "steps": len(chain) if chain else None},
                witnesses={"mu": [m for _, m in chain] if chain else []}))
    return reports, None


def cmd_filter(args):
    from .primefilter import annoying_prime_filter
    K = field_from_args(args)
    return [annoying_prime_filter(K, args.f or 1)], None


COMMANDS = {"field": cmd_field, "order": cmd_order, "classgroup": cmd_classgroup,
            "polarised": cmd_polarised, "ppav": cmd_ppav, "psi": cmd_psi,
            "omin": cmd_omin, "verify": cmd_verify, "isogeny": cmd_isogeny,
            "filter": cmd_filter}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="D,A,B")
    common.add_argument("--poly", help="A,B for x^4 + A x^2 + B")
    common.add_argument("--f", type=int, default=0, help="modulus / conductor bound")
    common.add_argument("--order", help="maximal | equation | omin:F | generators a,b,c,d;...")
    common.add_argument("--json", action="store_true", help="one JSON document per result")
    common.add_argument("--plot", metavar="PNG", help="write a figure to this path")
    p = argparse.ArgumentParser(prog="quarticcm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    fp = sub.add_parser("field", parents=[common])
    fp.add_argument("action", choices=["info"])
    sub.add_parser("order", parents=[common])
    sub.add_parser("classgroup", parents=[common])
    sub.add_parser("polarised", parents=[common])
    sub.add_parser("ppav", parents=[common])
    pp = sub.add_parser("psi", parents=[common])
    pp.add_argument("--sub", help="the smaller order O°")
    sub.add_parser("omin", parents=[common])
    vp = sub.add_parser("verify", parents=[common])
    vp.add_argument("what", choices=["thm1", "thm2", "lemma51", "table1", "table2", "zeta5"])
    vp.add_argument("--all", action="store_true")
    vp.add_argument("--row", help="D,A,B")
    vp.add_argument("--other", help="second order for thm1")
    ip = sub.add_parser("isogeny", parents=[common])
    ip.add_argument("--other", help="second order (default maximal)")
    ip.add_argument("--ell", type=int, default=2)
    ip.add_argument("--steps", type=int, default=2)
    sub.add_parser("filter", parents=[common])
    return p


def _emit(results, as_json: bool, out) -> int:
    code = EXIT_OK
    for r in results:
        if isinstance(r, VerificationReport):
            if r.verdict == FAIL:
                code = EXIT_FAIL
            doc = r.to_json()
        else:
            doc = jsonable(r)
        if as_json:
            out.write(json.dumps(doc, sort_keys=True) + "\n")
        else:
            out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return code


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        results, plot = COMMANDS[args.command](args)
    except (UsageError, FieldError, OrderError, ValueError) as e:
        sys.stderr.write(f"quarticcm: {e}\n")
        return EXIT_USAGE
    code = _emit(results, args.json, out)
    if args.plot:
        if plot is None:
            sys.stderr.write("quarticcm: no figure for this command\n")
        else:
            plot(args.plot)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line front end: ``eqcoh <subcommand> [options]``.

Exit status is 0 on success, 1 for inputs outside the supported domain and 2 for
malformed degree expressions (the message carries the column).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cohops, decomp, slices
from .cellular import homotopy_group
from .coeff import mackey_modp, mackey_modp_table, pi_star_e, vanishing_reason
from .errors import DomainError, ParseError
from .grammar import format_degree, parse_degree
from .ringstr import CoeffRing, basis_monomial, injectivity_profile, q0_closed, q0_via_tau, verify_relation


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _order(args) -> int:
    n = args.n if args.n is not None else args.p
    if n is None:
        raise DomainError("give the group order with --n or --p")
    return n


def _ints(csv: str) -> list[int]:
    try:
        return [int(t) for t in csv.split(",") if t.strip()]
    except ValueError as exc:
        raise DomainError(f"expected comma-separated integers, got {csv!r}") from exc


# ---------------------------------------------------------------- subcommands


def cmd_coeff(args) -> None:
    n = _order(args)
    alpha = parse_degree(args.degree, n)
    if args.cellular:
        g = homotopy_group(alpha)
        _emit(args, {"degree": format_degree(alpha), "group": str(g)}, str(g))
        return
    g = pi_star_e(alpha)
    reason = vanishing_reason(alpha)
    payload = g.as_dict() | {"degree": format_degree(alpha), "vanishing_reason": None if reason is None else str(reason)}
    text = str(g) if reason is None else f"{g} ({reason})"
    _emit(args, payload, text)


def cmd_mackey(args) -> None:
    p = _order(args)
    alpha = parse_degree(args.degree, p)
    fn = mackey_modp_table if args.table else mackey_modp
    m = fn(p, alpha)
    _emit(args, {"degree": format_degree(alpha), "p": p, "mackey": str(m), "parts": dict(m.parts)}, str(m))


def _decomposition(args) -> decomp.Decomposition:
    fam = args.family
    if fam == "cp":
        if args.mults is None:
            raise DomainError("--family cp needs --mults")
        return decomp.decompose_cp(_order(args), _ints(args.mults))
    if fam in ("regular", "complex"):
        return decomp.decompose_regular(_order(args), args.m, args.cap)
    if fam == "quat":
        return decomp.decompose_quat(_order(args), args.m, args.cap)
    if fam == "conj":
        dim = args.m if args.m is not None else args.cap
        if dim is None:
            raise DomainError("--family conj needs --m (complex dimension)")
        return decomp.decompose_conj(dim)
    raise DomainError(f"unknown family {fam!r}")


def cmd_decompose(args) -> None:
    dec = _decomposition(args)
    payload = {
        "family": dec.family,
        "n": dec.n,
        "twist": dec.twist,
        "cap": dec.cap,
        "splits": dec.splits,
        "summands": [format_degree(w) for w in dec.summands],
    }
    lines = [format_degree(w) for w in dec.summands]
    if args.degree is not None:
        alpha = parse_degree(args.degree, dec.n)
        coeff = {"z": "Z", "modp": "modp", "modp-table": "modp_table"}[args.mode]
        q = decomp.cohomology_query(dec, alpha, coeff)
        rows = [{"summand": format_degree(w), "group": str(g)} for w, g in q.nonzero()]
        total = str(q.total) if coeff != "Z" else " + ".join(str(g) for g in q.total) or "0"
        payload["query"] = {"degree": format_degree(alpha), "coeff": coeff, "nonzero": rows, "total": total}
        lines = [f"H^({format_degree(alpha)}) = {total}"] + [f"  {r['summand']}: {r['group']}" for r in rows]
    _emit(args, payload, "\n".join(lines))


def cmd_slice(args) -> None:
    n = _order(args)
    fam = "complex" if args.family in ("complex", "regular") else args.family
    ells = range(args.ell + 1) if args.sweep else [args.ell]
    certs = [slices.certify_slice(fam, n, ell) for ell in ells]
    payload = {
        "family": fam,
        "n": n,
        "results": [
            {
                "ell": c.ell,
                "summand": format_degree(c.summand),
                "level": c.level,
                "valid": c.valid,
                "failures": [{"m": w.m, "k": w.k, "r": w.r, "degree": format_degree(w.alpha)} for w in c.failures()],
            }
            for c in certs
        ],
    }
    lines = []
    for c in certs:
        status = "slice" if c.valid else "NOT a slice"
        lines.append(f"ell={c.ell}: {format_degree(c.summand)} at level {c.level}: {status}")
        for w in c.failures():
            lines.append(f"  witness over C_{w.m}: k={w.k}, r={w.r}, degree {format_degree(w.alpha)}")
    _emit(args, payload, "\n".join(lines))


def cmd_ring(args) -> None:
    p, m = args.p, args.m if args.m is not None else 1
    if p is None:
        raise DomainError("ring needs --p")
    if args.verify:
        res = verify_relation(args.verify, p, m, args.r)
        text = ("OK" if res.ok else "FAILED") + f" (residual {res.residual})"
        _emit(args, res.as_dict(), text)
    elif args.q0 is not None:
        R = CoeffRing(p, m, "Z" if args.mode == "z" else "modp")
        closed, walked = q0_closed(args.q0, R), q0_via_tau(args.q0, R)
        payload = {"d": args.q0, "closed": R.as_json(closed), "agree": closed == walked, "text": R.format(closed)}
        _emit(args, payload, f"{R.format(closed)}\n(removal calculus {'agrees' if closed == walked else 'DISAGREES'})")
    elif args.injectivity is not None:
        prof = injectivity_profile(p, m, args.injectivity)
        rows = "\n".join(" ".join(f"{v:>3}" for v in row) for row in prof.matrix)
        text = (
            f"labels {prof.labels}\n{rows}\n"
            f"lower triangular: {prof.lower_triangular}, injective: {prof.injective}\n"
            f"diagonal {prof.diagonal} (valuation formula {prof.diagonal_formula})"
        )
        _emit(args, prof.as_dict(), text)
    elif args.basis is not None:
        k, i = _ints(args.basis)
        b = basis_monomial(k, i, p, m)
        payload = {"k": k, "i": i, "product": str(b), "res_e": f"x^{b.res_e_exponent}",
                   "degree_matches": b.degree_matches, "leading_unit": b.leading_unit}
        _emit(args, payload, f"{b}  (res_e = x^{b.res_e_exponent})")
    else:
        raise DomainError("ring needs one of --verify, --q0, --injectivity or --basis")


def cmd_ops(args) -> None:
    p = args.p if args.p is not None else 2
    rep = cohops.obstruction_check_c2(args.r) if p == 2 else cohops.obstruction_check(p, args.r)
    text = f"{rep.space} at {format_degree(rep.alpha)}: {rep.source} -> {rep.target}: {rep.verdict}"
    _emit(args, rep.as_dict(), text)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eqcoh", description="Bredon cohomology of projective spaces over cyclic groups")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--n", type=int, help="order of the cyclic group")
        sp.add_argument("--p", type=int, help="prime (group C_p, or C_{p^m} with --m)")
        sp.add_argument("--m", type=int)
        sp.add_argument("--json", action="store_true", help="key-sorted JSON output")
        return sp

    sp = common(sub.add_parser("coeff", help="homotopy of the integral Eilenberg-MacLane spectrum"))
    sp.add_argument("--degree", required=True)
    sp.add_argument("--cellular", action="store_true", help="chain-level computation, any degree")
    sp.set_defaults(func=cmd_coeff)

    sp = common(sub.add_parser("mackey", help="mod p Mackey functor over C_p"))
    sp.add_argument("--degree", required=True)
    sp.add_argument("--table", action="store_true", help="use the classical case table verbatim")
    sp.set_defaults(func=cmd_mackey)

    sp = common(sub.add_parser("decompose", help="wedge decomposition of a projective space"))
    sp.add_argument("--family", required=True, choices=["cp", "regular", "complex", "quat", "conj"])
    sp.add_argument("--mults", help="CSV multiplicities of L^0..L^{p-1} (family cp)")
    sp.add_argument("--cap", type=int, help="number of cells of the infinite family")
    sp.add_argument("--degree", help="also evaluate cohomology in this degree")
    sp.add_argument("--mode", choices=["z", "modp", "modp-table"], default="z")
    sp.set_defaults(func=cmd_decompose)

    sp = common(sub.add_parser("slice", help="certify slice summands"))
    sp.add_argument("--family", choices=["complex", "regular", "quat"], default="complex")
    sp.add_argument("--ell", type=int, default=0)
    sp.add_argument("--sweep", action="store_true", help="all ell from 0 to --ell")
    sp.set_defaults(func=cmd_slice)

    sp = common(sub.add_parser("ring", help="ring structure over C_{p^m}"))
    sp.add_argument("--verify", choices=["rho", "mu", "lewis", "lemma"])
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--q0", type=int, metavar="D", help="restriction of the generator in degree phi_D")
    sp.add_argument("--injectivity", type=int, metavar="J")
    sp.add_argument("--basis", metavar="K,I")
    sp.add_argument("--mode", choices=["z", "modp"], default="modp")
    sp.set_defaults(func=cmd_ring)

    sp = common(sub.add_parser("ops", help="obstruction to lifting a mod p operation"))
    sp.add_argument("--r", type=int, required=True, help="degree of the operation")
    sp.set_defaults(func=cmd_ops)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


run = main

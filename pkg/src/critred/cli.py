"""Command-line front end.

Exit codes: 0 success, 1 parse or usage error, 2 degenerate input,
3 resource limit (incomplete factorization or enumeration cap).
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .arith import ENV_FACTOR_BOUND, FactorConfig, Factorization, factorize, is_prime
from .equiv import EnumerationLimitError, are_equivalent_bounded, enumerate_cgr_maps
from .forms import BinaryForm, DegenerateFormError, SingularMatrixError, format_poly
from .lattes import SingularModelError, compose, lattes_map, make_model, verify_prop1
from .parse import ParseError, parse_form, parse_int_list, parse_map
from .rammap import DegenerateMapError, RationalMap, make_map, ram_profile
from .reduction import (
    IncompleteFactorizationError,
    InvalidPointSetError,
    check_prop2,
    pointset_discriminant,
    reduction_report,
)

EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE, EXIT_RESOURCE = 0, 1, 2, 3
_NEGATIVE_LIST = re.compile(r"^-\d[\d,;\s-]*$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt_set(primes) -> str:
    return "{" + ", ".join(map(str, sorted(primes))) + "}"


def map_dict(phi: RationalMap) -> dict:
    return {"P": list(phi.P.coeffs), "Q": list(phi.Q.coeffs), "text": str(phi)}


def fac_dict(f: Factorization) -> dict:
    return {
        "sign": f.sign,
        "factors": [[p, e] for p, e in f.factors],
        "cofactor": f.cofactor,
        "complete": f.complete,
    }


def _read_map(args) -> RationalMap:
    if getattr(args, "pq", None):
        P, Q = (parse_int_list(v) for v in args.pq)
        if len(P) != len(Q):
            raise UsageError("--pq vectors must have equal length")
        return make_map(BinaryForm(P), BinaryForm(Q))
    if getattr(args, "map", None):
        return parse_map(args.map)
    raise UsageError("give --map or --pq")


def _config(args) -> FactorConfig:
    if args.factor_bound is not None:
        return FactorConfig.from_env(trial_bound=args.factor_bound)
    return FactorConfig.from_env()


def analyze_dict(phi: RationalMap, config: FactorConfig) -> dict:
    rep = reduction_report(phi, config)
    prof = ram_profile(phi)
    return {
        "map": map_dict(phi),
        "degree": rep.degree,
        "sgr_bad_primes": sorted(rep.sgr_bad),
        "cgr_bad_primes": {"points": sorted(rep.cgr_bad_points), "values": sorted(rep.cgr_bad_values)},
        "ram": {
            "support_count": prof.support_count,
            "value_count": prof.value_count,
            "multiplicities": list(prof.multiplicity_partition),
            "wronskian": list(prof.wronskian.coeffs),
            "critical_point_form": list(prof.critical_point_form.coeffs),
            "critical_value_form": list(prof.critical_value_form.coeffs),
        },
        "factorizations": {k: fac_dict(v) for k, v in rep.provenance.items()},
        "complete": rep.complete,
    }


def cmd_analyze(args, out) -> int:
    phi = _read_map(args)
    if phi.degree < 2:
        raise DegenerateMapError("ramification is empty for maps of degree 1")
    d = analyze_dict(phi, _config(args))
    if args.json:
        out.append(d)
    else:
        prof = ram_profile(phi)
        cgr = d["cgr_bad_primes"]
        out += [
            f"map: {phi}",
            f"degree: {d['degree']}",
            f"SGR bad primes: {fmt_set(d['sgr_bad_primes'])}",
            f"CGR bad primes: {fmt_set(set(cgr['points']) | set(cgr['values']))}"
            f"  (points {fmt_set(cgr['points'])}, values {fmt_set(cgr['values'])})",
            f"critical points: {prof.critical_point_form}  (support {prof.support_count})",
            f"critical values: {prof.critical_value_form}  (count {prof.value_count})",
            f"ramification multiplicities: {list(prof.multiplicity_partition)}",
            f"ramifies at three or more points: {'yes' if prof.support_count >= 3 else 'no'}",
            f"complete: {'yes' if d['complete'] else 'no'}",
        ]
        for name, f in sorted(d["factorizations"].items()):
            if not f["complete"]:
                out.append(f"unfactored cofactor in {name.replace('_', ' ')}: {f['cofactor']}")
    return EXIT_OK if d["complete"] else EXIT_RESOURCE


def cmd_lattes(args, out) -> int:
    config = _config(args)
    E = make_model(parse_int_list(args.cubic), config)
    phi = lattes_map(E)
    if args.times_four:
        phi = compose(phi, phi)
    d = {
        "cubic": list(E.F.coeffs),
        "discriminant": E.disc_F,
        "model_bad_primes": sorted(E.model_bad),
        "map": map_dict(phi),
    }
    if args.verify_prop1:
        S = E.model_bad | frozenset(parse_int_list(args.S)) if args.S else None
        res = verify_prop1(E, S, config)
        d["prop1"] = {
            "verdict": res.verdict.value,
            "S": sorted(res.S),
            "sgr_bad_primes": sorted(res.report.sgr_bad),
            "cgr_bad_primes": sorted(res.report.cgr_bad),
        }
    if args.json:
        out.append(d)
    else:
        out += [f"model: y^2 = {format_poly(E.F.coeffs, 'x', None)}  (disc {E.disc_F})", f"model bad primes: {fmt_set(E.model_bad)}", f"map: {phi}"]
        if args.verify_prop1:
            p = d["prop1"]
            out += [
                f"prop1: {p['verdict']}",
                f"bad primes: SGR {fmt_set(p['sgr_bad_primes'])}, CGR {fmt_set(p['cgr_bad_primes'])}, S {fmt_set(p['S'])}",
            ]
    return EXIT_OK


def cmd_distinct(args, out) -> int:
    F = parse_form(args.form)
    config = _config(args)
    disc = pointset_discriminant(F)
    fac = factorize(disc, config)
    d = {"form": list(F.coeffs), "discriminant": disc, "bad_primes": sorted(fac.primes), "complete": fac.complete}
    if args.S is not None:
        S = frozenset(parse_int_list(args.S))
        d["S"] = sorted(S)
        d["s_good"] = fac.complete and fac.primes <= S
    if args.json:
        out.append(d)
    else:
        out.append(fmt_set(fac.primes))
        if "s_good" in d:
            out.append(f"S-good for S = {fmt_set(d['S'])}: {'yes' if d['s_good'] else 'no'}")
    return EXIT_OK if fac.complete else EXIT_RESOURCE


def cmd_prop2(args, out) -> int:
    phi = _read_map(args)
    if not is_prime(args.prime):
        raise UsageError(f"{args.prime} is not prime")
    verdict = check_prop2(phi, args.prime)
    if args.json:
        out.append({"map": map_dict(phi), "prime": args.prime, "verdict": verdict.value})
    else:
        out.append(verdict.value)
    return EXIT_OK


def cmd_equiv(args, out) -> int:
    phi, psi = parse_map(args.map1), parse_map(args.map2)
    S = frozenset(parse_int_list(args.S)) if args.S else frozenset()
    w = are_equivalent_bounded(phi, psi, args.bound, S)
    d = {
        "map1": map_dict(phi),
        "map2": map_dict(psi),
        "bound": args.bound,
        "equivalent": w is not None,
        "sigma": w.sigma.rows() if w else None,
        "gamma": w.gamma.rows() if w else None,
    }
    if args.json:
        out.append(d)
    elif w:
        out.append(f"equivalent: sigma = {w.sigma.rows()}, gamma = {w.gamma.rows()}")
    else:
        out.append(f"not found within bound {args.bound}")
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    S = frozenset(parse_int_list(args.exclude)) if args.exclude else frozenset()
    bad = [p for p in S if not is_prime(p)]
    if bad:
        raise UsageError(f"not prime: {bad}")
    code = EXIT_OK
    try:
        rep = enumerate_cgr_maps(args.degree, args.height, S, args.bound, args.threads, args.max_candidates)
    except EnumerationLimitError as e:
        rep, code = e.partial, EXIT_RESOURCE
    if args.json:
        out.append(rep.to_dict())
    else:
        out += [
            f"degree {rep.degree}, height {rep.height}, S = {fmt_set(rep.S)}, search bound {rep.bound}",
            f"candidates scanned: {rep.candidates}",
            "skipped: " + (", ".join(f"{k} {v}" for k, v in sorted(rep.skipped.items())) or "none"),
            f"survivors: {len(rep.survivors)}",
            f"classes: {rep.class_count}  ({rep.note})",
        ]
        for c in rep.classes:
            out.append(f"  {c.representative}  ({len(c.members)} maps)")
        if not rep.complete:
            out.append("INCOMPLETE: candidate cap reached")
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--factor-bound", type=int, default=None, help=f"trial-division bound (env {ENV_FACTOR_BOUND})"
    )
    common.add_argument("--threads", type=int, default=1, help="worker processes for enumerate")

    parser = _Parser(prog="critred", description="Good reduction of rational maps of P^1 over Q.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def map_args(p):
        p.add_argument("--map", help='rational function in x, e.g. "(x^2+1)^2/(4*x^3-4*x)"')
        p.add_argument("--pq", nargs=2, metavar=("P", "Q"), help="comma-separated coefficients, highest x-power first")

    p = sub.add_parser("analyze", parents=[common], help="bad primes and ramification of a map")
    map_args(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("lattes", parents=[common], help="Lattes map of y^2 = F(x)")
    p.add_argument("--cubic", required=True, help='coefficients of F, highest first, e.g. "1,0,-1,0"')
    p.add_argument("--verify-prop1", action="store_true", help="check SGR and CGR outside the model's bad primes")
    p.add_argument("--times-four", action="store_true", help="use the composite (multiplication by 4)")
    p.add_argument("--S", default=None, help="extra primes to add to S")
    p.set_defaults(func=cmd_lattes)

    p = sub.add_parser("distinct", parents=[common], help="primes where the roots of a form collide")
    p.add_argument("--form", required=True, help='homogeneous form, e.g. "x^2-25*y^2"')
    p.add_argument("--S", default=None, help="check S-goodness for these primes")
    p.set_defaults(func=cmd_distinct)

    p = sub.add_parser("prop2", parents=[common], help="check that CGR implies SGR at a prime")
    map_args(p)
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(func=cmd_prop2)

    p = sub.add_parser("equiv", parents=[common], help="bounded search for an equivalence")
    p.add_argument("--map1", required=True)
    p.add_argument("--map2", required=True)
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--S", default=None)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("enumerate", parents=[common], help="enumerate and cluster CGR maps of small height")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--exclude", default=None, help="the set S of allowed bad primes, e.g. 2,3")
    p.add_argument("--bound", type=int, default=1, help="entry bound for the equivalence search")
    p.add_argument("--max-candidates", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    # argparse reads "-1,0,0" as an option; a leading space keeps it a value
    argv = [" " + a if _NEGATIVE_LIST.match(a) else a for a in argv]
    args = build_parser().parse_args(argv)
    out: list = []
    try:
        code = args.func(args, out)
    except (ParseError, UsageError, ValueError) as e:
        kind = EXIT_DEGENERATE if isinstance(
            e, (DegenerateMapError, DegenerateFormError, SingularModelError, InvalidPointSetError, SingularMatrixError)
        ) else EXIT_USAGE
        print(f"critred: error: {e}", file=sys.stderr)
        return kind
    except ZeroDivisionError as e:
        print(f"critred: error: {e}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (IncompleteFactorizationError, ArithmeticError) as e:
        print(f"critred: error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    for item in out:
        if isinstance(item, dict):
            stdout.write(json.dumps(item, sort_keys=True) + "\n")
        else:
            stdout.write(item + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

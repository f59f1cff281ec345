"""Command-line front end: JSON (default) or CSV reports on stdout.

Subcommands: delta, sigma, beta, tau, series, tables, verify,
cheb-progression, appendix, hooley-check.  Exit codes: 0 success,
2 validation error, 3 computation error.  Rationals are serialized as
"num/den" strings so reports stay exact and byte-stable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import singular_series as ss
from .affine import AffineSystem, named_system
from .artin import SymbolicDensity, delta, delta_series, make_base
from .chebotarev import ChebotarevSpec, quadratic_spec, trivial_spec
from .errors import ConstellationError, ValidationError
from .local_densities import beta, sigma, tau
from .pair_search import AppendixInstance, local_solution, search_pairs
from .primes import IntPolynomial, hooley_check
from .verifier import (
    Region,
    RestrictionPredicate,
    chebotarev_progression_check,
    congruence,
    count_constellations,
    poly_split,
    primitive_root,
    quadratic_split,
    unrestricted,
)

SCHEMA = "1"


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _emit(payload: dict, fmt: str = "json") -> None:
    payload = {"schema": SCHEMA, **payload}
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        raise ValidationError(f"unsupported format {fmt!r} for this subcommand")


def _load_system(args) -> AffineSystem:
    src = args.system
    if src in ("ap3", "intro4", "threeprimes"):
        return named_system(src, getattr(args, "N", None))
    if src.lstrip().startswith("{"):
        return AffineSystem.from_json(json.loads(src))
    with open(src, "r", encoding="utf-8") as fh:
        return AffineSystem.from_json(json.load(fh))


def _parse_bases(text: str):
    return [make_base(int(tok)) for tok in text.split(",") if tok.strip()]


def _parse_predicate(token: str) -> RestrictionPredicate:
    parts = token.split(":")
    kind = parts[0]
    if kind in ("pr", "primitive_root"):
        return primitive_root(int(parts[1]))
    if kind in ("none", "unrestricted"):
        return unrestricted()
    if kind in ("quad", "quadratic"):
        return quadratic_split(int(parts[1]), parts[2] in ("+", "split", "1"))
    if kind in ("cong", "congruence"):
        return congruence(int(parts[1]), int(parts[2]))
    if kind == "poly":
        coeffs = tuple(int(c) for c in parts[1].split(","))
        return poly_split(IntPolynomial(coeffs))
    raise ValidationError(f"unknown predicate {token!r}")


def _load_spec(token: str) -> ChebotarevSpec:
    if token == "trivial":
        return trivial_spec()
    if token.startswith("quad:"):
        _, d, split = token.split(":")
        return quadratic_spec(int(d), split in ("+", "split", "1"))
    if token.lstrip().startswith("{"):
        return ChebotarevSpec.from_json(json.loads(token))
    with open(token, "r", encoding="utf-8") as fh:
        return ChebotarevSpec.from_json(json.load(fh))


def _symbolic_json(value: SymbolicDensity) -> dict:
    return {
        "coefficient": _frac(value.coefficient),
        "artin": {str(a): e for a, e in sorted(value.artin_exponents.items())},
    }


def _cmd_delta(args) -> None:
    base = make_base(args.a)
    value = delta(base, args.b, args.q)
    out = _symbolic_json(value)
    if args.series_cutoff:
        est, tail = delta_series(base, args.b, args.q, args.series_cutoff)
        out["series"] = {"value": est, "tail_bound": tail, "cutoff": args.series_cutoff}
    _emit(out)


def _cmd_sigma(args) -> None:
    system = _load_system(args)
    bases = _parse_bases(args.bases)
    _emit({"value": _frac(sigma(bases, system, args.q).value), "q": args.q})


def _cmd_beta(args) -> None:
    system = _load_system(args)
    _emit({"value": _frac(beta(system, args.q).value), "q": args.q})


def _cmd_tau(args) -> None:
    system = _load_system(args)
    specs = [_load_spec(tok) for tok in args.spec]
    _emit({"value": _frac(tau(specs, system, args.q).value), "q": args.q})


def _cmd_series(args) -> None:
    system = _load_system(args)
    if bool(args.bases) == bool(args.spec):
        raise ValidationError("give exactly one of --bases (Artin) or --spec (Chebotarev)")
    if args.bases:
        bases = _parse_bases(args.bases)
        value = ss.artin_series(bases, system, args.euler_cutoff,
                                grouping=args.grouping, threads=args.threads)
    else:
        specs = [_load_spec(tok) for tok in args.spec]
        value = ss.cheb_series(specs, system, args.euler_cutoff, threads=args.threads)
    out = {
        "head_rational": _frac(value.head.coefficient),
        "artin_monomial": {str(a): e for a, e in sorted(value.head.artin_exponents.items())},
        "modulus": value.modulus,
        "euler_cutoff": value.euler_cutoff,
        "euler_value": list(value.euler_interval),
        "folded_primes": list(value.folded_primes),
    }
    if args.numeric:
        out["numeric"] = list(value.with_numeric(args.numeric_cutoff).numeric)
    _emit(out)


_TABLES = {"1": (ss.table1, ss.AP3), "2a": (ss.table2a, ss.INTRO4), "2b": (ss.table2b, ss.INTRO4)}


def _cmd_tables(args) -> None:
    fn, _ = _TABLES[args.which]
    rows = [
        {"bases": list(bases), "coefficient": _frac(coeff)}
        for bases, coeff in fn().items()
    ]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["bases", "coefficient"])
        for row in rows:
            writer.writerow([" ".join(map(str, row["bases"])), row["coefficient"]])
        sys.stdout.write(buf.getvalue())
    else:
        _emit({"table": args.which, "rows": rows})


def _parse_box(text: str) -> Region:
    bounds = []
    for dim in text.split(","):
        lo, hi = dim.split(":")
        bounds.append((Fraction(lo), Fraction(hi)))
    return Region(tuple(bounds))


def _cmd_verify(args) -> None:
    system = _load_system(args)
    preds = [_parse_predicate(tok) for tok in args.predicate]
    if len(preds) == 1 and system.t > 1:
        preds = preds * system.t
    region = _parse_box(args.box)
    series = None
    if args.predict:
        if any(p.kind != "primitive_root" for p in preds):
            raise ValidationError("--predict needs primitive-root predicates throughout")
        bases = [make_base(p.a) for p in preds]
        series = ss.artin_series(bases, system, args.euler_cutoff,
                                 threads=args.threads).with_numeric()
    report = count_constellations(system, preds, region, N=args.N,
                                  series=series, strategy=args.strategy,
                                  max_witnesses=args.max_witnesses)
    out = {
        "N": report.N,
        "weighted_sum": report.weighted_sum,
        "solution_count": report.solution_count,
        "predicted": list(report.predicted) if report.predicted else None,
        "ratio": report.ratio,
        "witnesses": [list(w) for w in report.witnesses],
        "strategy": report.strategy,
    }
    if args.witness_csv:
        with open(args.witness_csv, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow([f"n{j+1}" for j in range(system.s)])
            writer.writerows(report.witnesses)
    _emit(out)


def _cmd_cheb_progression(args) -> None:
    spec = _load_spec(args.spec)
    report = chebotarev_progression_check(spec, args.b, args.q, args.N)
    _emit({
        "label": report.label, "b": report.b, "q": report.q, "N": report.N,
        "weighted_sum": report.weighted_sum, "predicted": report.predicted,
        "ratio": report.ratio,
    })


def _cmd_appendix(args) -> None:
    instance = AppendixInstance(args.n, args.R, args.l, args.k,
                                conductor=args.conductor)
    s0, t0 = local_solution(args.n, instance.D)
    pairs = search_pairs(instance, args.bound, limit=args.limit)
    _emit({
        "n": args.n,
        "D": instance.D,
        "local_solution": [s0, t0],
        "pairs": [{"s": w.s, "t": w.t, "third": w.third} for w in pairs],
    })


def _cmd_hooley(args) -> None:
    report = hooley_check(args.a, args.N)
    _emit({
        "a": report.a, "N": report.limit, "primes_checked": report.primes_checked,
        "counterexamples": list(report.counterexamples), "ok": report.ok,
    })


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="constellations",
        description="Exact densities and empirical checks for restricted prime constellations",
    )
    parser.add_argument("--threads", type=int, default=None,
                        help="worker cap (default: CONSTELLATION_THREADS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delta", help="Artin density delta(a, b, q)")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--series-cutoff", type=int, default=0,
                   help="also report the series cross-check at this cutoff")
    p.set_defaults(fn=_cmd_delta)

    for name, fn in (("sigma", _cmd_sigma), ("beta", _cmd_beta), ("tau", _cmd_tau)):
        p = sub.add_parser(name, help=f"local density {name} at modulus q")
        p.add_argument("--system", required=True)
        p.add_argument("--N", type=int, default=None, help="N for the threeprimes system")
        p.add_argument("--q", type=int, required=True)
        if name == "sigma":
            p.add_argument("--bases", required=True, help="comma-separated, e.g. 2,2,2")
        if name == "tau":
            p.add_argument("--spec", action="append", required=True,
                           help="trivial | quad:d:+/- | JSON | file (repeatable)")
        p.set_defaults(fn=fn)

    p = sub.add_parser("series", help="singular series leading constant")
    p.add_argument("--system", required=True)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--bases", default=None)
    p.add_argument("--spec", action="append", default=None)
    p.add_argument("--euler-cutoff", type=int, default=ss.DEFAULT_EULER_CUTOFF)
    p.add_argument("--grouping", choices=("theorem", "table"), default="theorem")
    p.add_argument("--numeric", action="store_true")
    p.add_argument("--numeric-cutoff", type=int, default=10**6)
    p.set_defaults(fn=_cmd_series)

    p = sub.add_parser("tables", help="reference tables of leading constants")
    p.add_argument("which", choices=tuple(_TABLES))
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(fn=_cmd_tables)

    p = sub.add_parser("verify", help="count actual constellations in a box")
    p.add_argument("--system", required=True)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--predicate", action="append", required=True,
                   help="pr:a | none | quad:d:+/- | cong:b:q | poly:c0,c1,... (repeatable)")
    p.add_argument("--box", required=True, help="lo:hi per dimension, comma-separated")
    p.add_argument("--strategy", choices=("auto", "lattice", "prime_table"), default="auto")
    p.add_argument("--predict", action="store_true",
                   help="compare against volume x singular series (primitive-root predicates)")
    p.add_argument("--euler-cutoff", type=int, default=ss.DEFAULT_EULER_CUTOFF)
    p.add_argument("--max-witnesses", type=int, default=10)
    p.add_argument("--witness-csv", default=None)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("cheb-progression", help="Chebotarev counts in a progression")
    p.add_argument("--spec", required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(fn=_cmd_cheb_progression)

    p = sub.add_parser("appendix", help="local solution and (s,t) pair search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--R", type=int, default=1)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--conductor", type=int, default=None)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--limit", type=int, default=8)
    p.set_defaults(fn=_cmd_appendix)

    p = sub.add_parser("hooley-check", help="inclusion-exclusion identity check")
    p.add_argument("a", type=int)
    p.add_argument("N", type=int)
    p.set_defaults(fn=_cmd_hooley)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads is None:
            env = os.environ.get("CONSTELLATION_THREADS")
            args.threads = int(env) if env else None
        args.fn(args)
        return 0
    except ConstellationError as exc:
        sys.stdout.write(json.dumps({
            "schema": SCHEMA,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }, sort_keys=True) + "\n")
        return exc.exit_code
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stdout.write(json.dumps({
            "schema": SCHEMA,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

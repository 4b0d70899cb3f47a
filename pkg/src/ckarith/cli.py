"""Command-line interface.

Every verb prints one JSON document (or CSV, where a tabular projection
exists). Numbers are emitted as strings so big integers survive. Exit codes:
0 on success, 1 when a valid input hits a mathematical obstruction (bad
reduction, enumeration budget, pole, failed reconstruction), 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .arakelov import compare_presentations
from .cuntz import (
    STAND_IN_NOTE,
    build_family,
    conjecture_scan,
    k0_sequence,
    k_theory,
    validate_ck,
)
from .errors import DomainError, PoleError
from .fields import parse_field
from .groups import limit_stabilization
from .linalg import IntMatrix, determinant, parse_matrix, smith_normal_form
from .varieties import (
    DEFAULT_COUNT_BUDGET,
    count_projective,
    ec_count,
    ec_count_ext,
    parse_curve,
    parse_variety,
)
from .zeta import (
    DEFAULT_PRECISION_BITS,
    hasse_weil_partial,
    l_partial_product,
    lefschetz_counts,
    local_factors,
    rational_reconstruct,
    zeta_series,
)

SCHEMA_VERSION = "1"
VERBS = ("snf", "ktheory", "count", "zeta", "factors", "family", "scan", "verify-t11")


class UsageError(ValueError):
    pass


def _doc(command: str, **body) -> dict:
    return {"command": command, "schema_version": SCHEMA_VERSION, **body}


def _matrix_rows(m: IntMatrix) -> list[list[str]]:
    return [[str(x) for x in r] for r in m]


def _read_matrix(path: str) -> IntMatrix:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_matrix(text)


# --------------------------------------------------------------------------
# verbs


def cmd_snf(args) -> dict:
    m = _read_matrix(args.matrix)
    snf = smith_normal_form(m)
    return _doc(
        "snf",
        D=_matrix_rows(snf.D),
        U=_matrix_rows(snf.U),
        V=_matrix_rows(snf.V),
        invariant_factors=[str(d) for d in snf.diagonal],
        rank=str(snf.rank),
    )


def cmd_ktheory(args) -> dict:
    m = _read_matrix(args.matrix)
    kt = k_theory(m)
    v = validate_ck(m).validation
    return _doc(
        "ktheory",
        k0=str(kt.k0),
        k1=str(kt.k1),
        k0_record=kt.k0.to_record(),
        k1_record=kt.k1.to_record(),
        det_one_minus_transpose=str(determinant(m.one_minus_transpose())),
        ck_validation=v._asdict(),
    )


def cmd_count(args) -> dict:
    if args.variety:
        if not args.field:
            raise UsageError("count --variety needs --field (e.g. Fp:5 or Fq:3^2)")
        v = parse_variety(Path(args.variety).read_text())
        f = parse_field(args.field)
        n = count_projective(v, f, budget=args.budget)
        return _doc("count", field=f.spec, count=str(n))
    if not args.curve or args.p is None:
        raise UsageError("count needs either --curve and --p, or --variety and --field")
    e = parse_curve(args.curve)
    if args.m == 1:
        pc = ec_count(e, args.p, budget=args.budget)
        return _doc("count", curve=e.spec, p=str(args.p), m="1",
                    count=str(pc.count), a_p=str(pc.a_p))
    n = ec_count_ext(e, args.p, args.m, budget=args.budget)
    return _doc("count", curve=e.spec, p=str(args.p), m=str(args.m), count=str(n))


def _zeta_record(e, p: int, order: int) -> dict:
    lz = local_factors(e, p)
    counts = lefschetz_counts(lz, order)
    rec = lz.to_record(counts)
    series = zeta_series(counts)
    rec["series"] = [str(c) for c in series.coeffs]
    num, den = rational_reconstruct(series, 2, 2)
    rec["numerator"] = [str(c) for c in num.coeffs]
    rec["denominator"] = [str(c) for c in den.coeffs]
    return rec


def cmd_zeta(args) -> dict:
    e = parse_curve(args.curve)
    if args.order < 5:
        raise UsageError("--order must be >= 5 to reconstruct a [2/2] zeta function")
    if args.p is not None:
        primes = [args.p]
        skipped = []
    elif args.bound is not None:
        from .fields import primes_up_to

        ps = primes_up_to(args.bound)
        primes = [p for p in ps if e.is_good_prime(p)]
        skipped = [p for p in ps if not e.is_good_prime(p)]
    else:
        raise UsageError("zeta needs --p or --bound")
    return _doc(
        "zeta",
        curve=e.spec,
        order=str(args.order),
        primes=[_zeta_record(e, p, args.order) for p in primes],
        skipped_primes=[str(p) for p in skipped],
    )


def cmd_factors(args) -> dict:
    e = parse_curve(args.curve)
    pp = hasse_weil_partial(e, args.s, args.bound, args.precision)
    return _doc("factors", curve=e.spec, **pp.to_record())


def _family_section(fam, window: int) -> dict:
    seq = k0_sequence(fam)
    section = {
        "note": STAND_IN_NOTE,
        "blocks": [
            {"prime": str(p), "matrix": _matrix_rows(b),
             "point_count": str(n)}
            for (p, b), n in zip(fam.blocks, fam.point_counts or ())
        ],
        "skipped_primes": [str(p) for p in fam.skipped_primes],
    }
    k0 = [{"m": str(m), "prime": str(p), "k0": str(g)}
          for (m, g), p in zip(seq, fam.primes)]
    if len(seq) >= window:
        st = limit_stabilization(seq, window)
        stab = {"window": str(window), "horizon": str(st.horizon), "stable": st.stable,
                "limit_candidate": None if st.limit_candidate is None else str(st.limit_candidate)}
    else:
        stab = {"window": str(window), "horizon": None, "stable": False, "limit_candidate": None}
    return section, k0, stab


def cmd_family(args) -> dict:
    e = parse_curve(args.curve)
    fam = build_family(e, args.bound, workers=args.workers)
    section, k0, stab = _family_section(fam, args.window)
    return _doc("family", curve=e.spec, bound=str(args.bound),
                family=section, k0_sequence=k0, stabilization=stab)


def scan_pipeline(curve_spec: str, prime_bound: int,
                  precision: int = DEFAULT_PRECISION_BITS, workers: int = 1,
                  window: int = 3) -> dict:
    """Family, ``K_0`` sequence, determinant scan and ``L`` partial product at ``s = 1``.

    ``Z_p(u)`` has a pole at ``s = 1``, so the zeta partial product is reported
    as null there; the ``L`` partial product is always present.
    """
    e = parse_curve(curve_spec)
    fam = build_family(e, prime_bound, workers=workers)
    section, k0, stab = _family_section(fam, window)
    report = conjecture_scan(fam)
    if prime_bound >= 2:
        try:
            pp = hasse_weil_partial(e, 1, prime_bound, precision)
            zeta_note = None
        except PoleError as exc:
            pp = l_partial_product(e, 1, prime_bound, precision)
            zeta_note = str(exc)
        partial = pp.to_record()
    else:
        partial = {"bound": str(prime_bound), "s": "1", "zeta_partial": None,
                   "l_partial": None, "skipped_primes": [],
                   "precision_bits": str(precision), "l_running": []}
        zeta_note = "prime bound below 2: empty product"
    partial["zeta_note"] = zeta_note
    return _doc(
        "scan",
        curve=e.spec,
        bound=str(prime_bound),
        exploratory=True,
        family=section,
        k0_sequence=k0,
        stabilization=stab,
        scan={"note": report.note, "rows": report.to_records(),
              "zero_flags": [str(p) for p in report.flagged]},
        partial=partial,
    )


def cmd_scan(args) -> dict:
    return scan_pipeline(args.curve, args.bound, args.precision, args.workers, args.window)


def cmd_verify(args) -> dict:
    m = _read_matrix(args.matrix)
    chk = compare_presentations(m)
    return _doc("verify-t11", isomorphic=chk.isomorphic, group=str(chk.k0),
                pic=str(chk.pic), k0=str(chk.k0))


# --------------------------------------------------------------------------
# output


def _to_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if doc["command"] == "scan":
        w.writerow(["prime", "point_count", "raw_det", "normalized", "zero_flag"])
        for r in doc["scan"]["rows"]:
            w.writerow([r["prime"], r["point_count"], r["raw_det"], r["normalized"],
                        str(r["zero_flag"]).lower()])
    elif doc["command"] == "family":
        w.writerow(["m", "prime", "k0"])
        for r in doc["k0_sequence"]:
            w.writerow([r["m"], r["prime"], r["k0"]])
    else:
        raise UsageError("--format csv is only available for 'scan' and 'family'")
    return buf.getvalue()


def render(doc: dict, fmt: str = "json") -> str:
    if fmt == "csv":
        return _to_csv(doc)
    return json.dumps(doc, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ckarith",
        description="K-theory of Cuntz-Krieger algebras, point counts and local zeta functions.",
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def matrix_verb(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--matrix", required=True,
                       help="matrix file ('rows cols' + entries, or JSON); '-' for stdin")
        p.set_defaults(func=func)
        return p

    matrix_verb("snf", cmd_snf, "Smith normal form with transforms")
    matrix_verb("ktheory", cmd_ktheory, "K0 and K1 of O_A from I - A^t")
    matrix_verb("verify-t11", cmd_verify, "compare K0(O_A) with the Pic_c presentation")

    p = sub.add_parser("count", parents=[common], help="naive point counts")
    p.add_argument("--curve", help="ec:a=<int>,b=<int>")
    p.add_argument("--p", type=int, help="prime")
    p.add_argument("--m", type=int, default=1, help="extension degree (default 1)")
    p.add_argument("--variety", help="variety file, one polynomial per line")
    p.add_argument("--field", help="Fp:<p> or Fq:<p>^<m>")
    p.add_argument("--budget", type=int, default=DEFAULT_COUNT_BUDGET)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("zeta", parents=[common], help="local zeta functions from Lefschetz counts")
    p.add_argument("--curve", required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--bound", type=int)
    p.add_argument("--order", type=int, default=7, help="series order (default 7)")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("factors", parents=[common], help="truncated Hasse-Weil and L products")
    p.add_argument("--curve", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--s", default="2", help="real s > 0, as a decimal or fraction (default 2)")
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION_BITS, help="bits, >= 100")
    p.set_defaults(func=cmd_factors)

    for name, func, help_ in (
        ("family", cmd_family, "truncation family and its K0 sequence"),
        ("scan", cmd_scan, "exploratory determinant scan along the truncation family"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--curve", required=True)
        p.add_argument("--bound", type=int, required=True)
        p.add_argument("--window", type=int, default=3, help="stabilization window (default 3)")
        p.add_argument("--workers", type=int, default=1)
        if name == "scan":
            p.add_argument("--precision", type=int, default=DEFAULT_PRECISION_BITS)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "window", 3) < 2:
            raise UsageError("--window must be >= 2")
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be >= 1")
        doc = args.func(args)
        out = render(doc, args.format)
    except DomainError as exc:
        print("ckarith %s: %s" % (args.verb, exc), file=sys.stderr)
        return 1
    except ArithmeticError as exc:
        print("ckarith %s: %s" % (args.verb, exc), file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print("ckarith %s: usage error: %s" % (args.verb, exc), file=sys.stderr)
        return 2
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())

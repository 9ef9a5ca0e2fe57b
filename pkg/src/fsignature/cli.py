"""Command-line front end: ``fsig {value,sweep,fpt,gap,derivative,ratio}``.

Exit codes
    0  success
    2  bad arguments, unparsable polynomial, or invalid ring data
    3  resource guard refused the computation (rerun with ``--force``)
    4  output file could not be written

Data goes to stdout or ``--out``; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import colength
from .colength import BACKENDS, DEFAULT_LIMIT, RANK_CUTOFF
from .errors import FSignatureError, ResourceLimit
from .fsig import (SignatureSeries, approx_nth_derivative_terms, collinear, fpt_bracket,
                   frobenius_fraction, fsig_sweep, fsig_value, slope, splitting_dimension_scan,
                   splitting_ratio_terms)
from .poly import Polynomial, RingContext
from .syzygy import LinearFormProduct, gap_series

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_IO = 0, 2, 3, 4

log = logging.getLogger("fsignature")


def _exact(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _dec(x: Fraction) -> str:
    # 17 significant digits: the nearest double round-trips exactly
    return f"{float(x):.16e}"


def _ring_and_poly(args) -> tuple[RingContext, Polynomial]:
    ring = RingContext.make(args.char, args.vars)
    return ring, ring.parse(args.poly)


def _limit(args) -> int | None:
    return None if args.force else args.limit


def _kwargs(args) -> dict:
    return {"backend": args.backend, "limit": _limit(args)}


def _guard(f: Polynomial, e: int, args) -> None:
    """Refuse early, before any sample is computed, when ``p^(ed)`` is too large."""
    N = f.ring.p ** (e * f.ring.d)
    limit = _limit(args)
    if limit is not None and N > limit:
        raise ResourceLimit(f"q^d = {N} standard monomials exceeds the limit {limit}; use --force")


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _gp_script(data: Path, title: str, csv: bool, columns: str, ylabel: str) -> str:
    lines = ["# gnuplot -p " + data.with_suffix(".gp").name]
    if csv:
        lines.append('set datafile separator ","')
    lines += [
        'set xlabel "t"',
        f'set ylabel "{ylabel}"',
        "set key top right",
        f"plot '{data.name}' {'every ::1 ' if csv else ''}using {columns} with lines title \"{title}\"",
        "",
    ]
    return "\n".join(lines)


def _write_with_script(text: str, out: str | None, title: str, csv: bool,
                       columns: str, ylabel: str) -> None:
    _write(text, out)
    if out is not None:
        data = Path(out)
        data.with_suffix(".gp").write_text(_gp_script(data, title, csv, columns, ylabel),
                                           encoding="utf-8")


def format_series(series: SignatureSeries, fmt: str) -> str:
    if fmt == "gnuplot":
        return "".join(f"{_dec(smp.t)} {_dec(smp.s)}\n" for smp in series)
    rows = ["a,t_num,t_den,s_num,s_den"]
    rows += [f"{smp.a},{smp.t.numerator},{smp.t.denominator},{smp.s.numerator},{smp.s.denominator}"
             for smp in series]
    return "\n".join(rows) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_value(args) -> int:
    _, f = _ring_and_poly(args)
    _guard(f, args.e, args)
    s = fsig_value(f, args.a, args.e, **_kwargs(args))
    line = _exact(s)
    if args.decimal:
        line += f" ~ {_dec(s)}"
    print(line)
    return EXIT_OK


def cmd_sweep(args) -> int:
    _, f = _ring_and_poly(args)
    _guard(f, args.e, args)
    series = fsig_sweep(f, args.e, args.stop_at_zero, jobs=args.jobs, **_kwargs(args))
    csv = args.format == "csv-exact"
    _write_with_script(format_series(series, args.format), args.out, f"s(R, f^t), f = {f}",
                       csv, "($2/$3):($4/$5)" if csv else "1:2", "s")
    log.info("%d samples, backends used: %s", len(series), ",".join(sorted(set(series.backends))))
    return EXIT_OK


def cmd_fpt(args) -> int:
    _, f = _ring_and_poly(args)
    print(fpt_bracket(f, args.e))
    return EXIT_OK


def cmd_gap(args) -> int:
    ring, f = _ring_and_poly(args)
    _guard(f, args.e, args)
    F = LinearFormProduct.from_polynomial(f)
    rows = gap_series(F, args.e, args.stop, **_kwargs(args))
    csv = args.format == "csv-exact"
    if csv:
        body = ["a,t_num,t_den,gap_num,gap_den,residual_num,residual_den,in_hypothesis"]
        body += [f"{r.a},{r.t.numerator},{r.t.denominator},{r.gap.numerator},{r.gap.denominator},"
                 f"{r.residual.numerator},{r.residual.denominator},{int(r.in_hypothesis)}"
                 for r in rows]
        text = "\n".join(body) + "\n"
    else:
        text = "".join(f"{_dec(r.t)} {_dec(r.gap)} {_dec(r.residual)}\n" for r in rows)
    _write_with_script(text, args.out, f"g(t) - s(R, f^t), f = {f}", csv,
                       "($2/$3):($6/$7)" if csv else "1:3", "residual")
    return EXIT_OK


def cmd_derivative(args) -> int:
    """Slopes between the last positive sample of each level and the threshold."""
    _, f = _ring_and_poly(args)
    levels = sorted(set(args.e))
    for e in levels:
        _guard(f, e, args)
    points = []
    for e in levels:
        br = fpt_bracket(f, e)
        points.append((br.lower, fsig_value(f, br.nu, e, **_kwargs(args))))
    c = Fraction(args.fpt) if args.fpt is not None else fpt_bracket(f, levels[-1]).upper
    points.append((c, Fraction(0)))
    for x, y in points:
        print(f"point {_exact(x)} {_exact(y)}")
    quotients = [slope(P, Q) for i, P in enumerate(points) for Q in points[i + 1:]]
    for q in quotients:
        print(f"quotient {_exact(q)}")
    line = collinear(points) if len(points) >= 3 else True
    head = _exact(quotients[0]) if len(set(quotients)) == 1 else " ".join(map(_exact, quotients))
    print(f"{head}, collinear: {'true' if line else 'false'}")
    return EXIT_OK


def cmd_ratio(args) -> int:
    _, f = _ring_and_poly(args)
    if args.c is not None:
        a, sigma = frobenius_fraction(Fraction(args.c), f.ring.p)
    elif args.a is not None and args.sigma is not None:
        a, sigma = args.a, args.sigma
    else:
        raise ValueError("give either --c or both --a and --sigma")
    _guard(f, args.E * sigma, args)
    kw = _kwargs(args)
    print(f"c = {_exact(Fraction(a, f.ring.p**sigma - 1))} (a={a}, sigma={sigma})")
    if args.n is not None:
        for e, term in enumerate(approx_nth_derivative_terms(f, a, sigma, args.n, args.E, **kw), 1):
            print(f"derivative e={e} {_exact(term)}")
    if args.m is not None:
        for e, term in enumerate(splitting_ratio_terms(f, a, sigma, args.m, args.E, **kw), 1):
            print(f"ratio m={args.m} e={e} {_exact(term)}")
    elif args.n is None:
        scan = splitting_dimension_scan(f, a, sigma, args.E, **kw)
        for m, seq in scan.terms.items():
            print(f"ratio m={m} " + " ".join(map(_exact, seq)))
        print(f"candidate sdim: {scan.candidate if scan.candidate is not None else 'none'}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _common(sub: argparse.ArgumentParser, multi_e: bool = False, with_e: bool = True) -> None:
    sub.add_argument("--char", type=int, required=True, metavar="P", help="prime characteristic")
    sub.add_argument("--vars", default="x,y", help="comma-separated variable names (default x,y)")
    sub.add_argument("--poly", required=True, metavar="EXPR", help='polynomial, e.g. "y^2-x^3"')
    if multi_e:
        sub.add_argument("--e", type=int, nargs="+", required=True, metavar="E",
                         help="one or more Frobenius levels")
    elif with_e:
        sub.add_argument("--e", type=int, required=True, metavar="E", help="Frobenius level")
    sub.add_argument("--backend", choices=BACKENDS, default="auto")
    sub.add_argument("--rank-cutoff", type=int, default=RANK_CUTOFF, metavar="N",
                     help="auto backend uses rank up to this many monomials (default 2^14)")
    sub.add_argument("--limit", type=int, default=DEFAULT_LIMIT, metavar="N",
                     help="largest p^(ed) accepted without --force (default 2^24)")
    sub.add_argument("--force", action="store_true", help="ignore the --limit guard")
    sub.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fsig", description="Exact F-signature of pairs over F_p[x_1..x_d].")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("value", help="s(R, f^(a/p^e)) as an exact fraction")
    _common(p)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--decimal", action="store_true", help="also print a decimal approximation")
    p.set_defaults(func=cmd_value)

    p = subs.add_parser("sweep", help="sample s(R, f^(a/p^e)) over a")
    _common(p)
    p.add_argument("--stop-at-zero", action="store_true", help="stop at the first zero value")
    p.add_argument("--format", choices=("gnuplot", "csv-exact"), default="gnuplot")
    p.add_argument("--out", metavar="PATH", help="data file; a sibling .gp script is written too")
    p.add_argument("--jobs", type=int, default=1, metavar="N")
    p.set_defaults(func=cmd_sweep)

    p = subs.add_parser("fpt", help="F-pure threshold bracket at level e")
    _common(p)
    p.set_defaults(func=cmd_fpt)

    p = subs.add_parser("gap", help="syzygy gap and residual g(t) - s for linear form products")
    _common(p)
    p.add_argument("--stop", type=int, help="last a (default: first zero of s)")
    p.add_argument("--format", choices=("gnuplot", "csv-exact"), default="gnuplot")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_gap)

    p = subs.add_parser("derivative", help="difference quotients towards the threshold")
    _common(p, multi_e=True)
    p.add_argument("--fpt", help="threshold as a fraction (default: bracket upper bound)")
    p.set_defaults(func=cmd_derivative)

    p = subs.add_parser("ratio", help="splitting-ratio and approximate derivative sequences")
    _common(p, with_e=False)
    p.add_argument("--c", help="exponent c as a fraction with denominator prime to p")
    p.add_argument("--a", type=int)
    p.add_argument("--sigma", type=int)
    p.add_argument("--m", type=int, help="splitting dimension (default: scan all)")
    p.add_argument("--n", type=int, help="order of the approximate left derivative")
    p.add_argument("--E", type=int, default=3, help="number of terms")
    p.set_defaults(func=cmd_ratio)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="fsig: %(message)s", stream=sys.stderr)
    if args.rank_cutoff != RANK_CUTOFF:
        colength.RANK_CUTOFF = args.rank_cutoff  # read at call time, inherited by workers
    try:
        if getattr(args, "e", None) is not None and min(args.e if isinstance(args.e, list) else [args.e]) < 0:
            raise ValueError("--e must be nonnegative")
        return args.func(args)
    except ResourceLimit as exc:
        print(f"fsig: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"fsig: {exc}", file=sys.stderr)
        return EXIT_IO
    except (FSignatureError, ValueError, ZeroDivisionError) as exc:
        print(f"fsig: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

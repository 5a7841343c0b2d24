"""Command line front end: ``hauptraces <subcommand> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors (including unsupported levels).  The default working precision can be
set through the HAUPTRACES_PREC environment variable.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import serialize
from .exceptions import UnsupportedLevel
from .levels import SUPPORTED_LEVELS

PREC_ENV = "HAUPTRACES_PREC"


@dataclass
class Config:
    default_prec: int = 128
    modpoly_guard: int = 10
    output: str = "table"

    def __post_init__(self):
        if self.default_prec < 53:
            raise ValueError("precision must be at least 53 bits")
        if self.modpoly_guard < 1:
            raise ValueError("guard must be at least 1")

    @classmethod
    def from_env(cls, environ=None):
        environ = os.environ if environ is None else environ
        raw = environ.get(PREC_ENV)
        return cls(default_prec=int(raw)) if raw else cls()


# ---------------------------------------------------------------------------
# argument types


def _level(text):
    try:
        N = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid level {text!r}")
    if N not in SUPPORTED_LEVELS:
        raise argparse.ArgumentTypeError(
            f"unsupported level {N} (supported: {', '.join(map(str, SUPPORTED_LEVELS))})")
    return N


def _levels(text):
    return [_level(t) for t in text.split(",") if t]


def _prime_level(text):
    p = _level(text)
    if p < 5:
        raise argparse.ArgumentTypeError(f"unsupported level {p} for the explicit region (need 5, 7 or 13)")
    return p


def _disc(text):
    D = int(text)
    if D >= 0 or D % 4 not in (0, 1):
        raise argparse.ArgumentTypeError(f"{D} is not a negative discriminant (D < 0, D = 0 or 1 mod 4)")
    return D


def _prec(text):
    p = int(text)
    if p < 53:
        raise argparse.ArgumentTypeError("precision must be at least 53 bits")
    return p


def _form(text):
    try:
        a, b, c = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("form must be given as a,b,c")
    from .forms import QuadForm
    try:
        return QuadForm(a, b, c)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _n_range(text):
    if ".." in text:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    return range(int(text), int(text) + 1)


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


# ---------------------------------------------------------------------------
# output helpers


def _emit(args, doc, rows=None, header=None, text=None):
    fmt = "json" if getattr(args, "json", False) else getattr(args, "format", "table")
    out = sys.stdout
    if fmt == "json":
        out.write(serialize.dumps(doc))
    elif fmt == "csv" and rows is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(header)
        w.writerows(rows)
        out.write(buf.getvalue())
    elif text is not None:
        out.write(text if text.endswith("\n") else text + "\n")
    else:
        widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)] if rows else []
        if header:
            out.write("  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
        for r in rows or []:
            out.write("  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip() + "\n")


def _frac(x):
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# subcommands


def cmd_hauptmodul(args, cfg):
    from .qseries import hauptmodul_series
    h = hauptmodul_series(args.level, args.terms)
    coeffs = h.as_dict()
    doc = {"level": args.level, "coefficients": {str(m): c for m, c in coeffs.items()}}
    rows = [(m, c) for m, c in coeffs.items()]
    _emit(args, doc, rows, ("m", "c_m"))
    return 0


def cmd_reduced_forms(args, cfg):
    from .forms import enumerate_reduced, enumerate_reduced_via_cosets, omega
    fn = enumerate_reduced if args.method == "direct" else enumerate_reduced_via_cosets
    forms = sorted(fn(args.disc, args.level))
    doc = {
        "level": args.level,
        "disc": args.disc,
        "method": args.method,
        "forms": [[Q.a, Q.b, Q.c] for Q in forms],
    }
    rows = [(Q.a, Q.b, Q.c, Q.content, omega(Q, args.level), "yes" if Q.a % args.level == 0 else "")
            for Q in forms]
    _emit(args, doc, rows, ("a", "b", "c", "content", "omega", "N|a"))
    return 0


def cmd_class_number(args, cfg):
    from .forms import class_number_H
    H = class_number_H(args.disc, args.level)
    _emit(args, {"level": args.level, "disc": args.disc, "H": H}, text=_frac(H))
    return 0


def cmd_trace(args, cfg):
    from .verify import trace_t
    t, err = trace_t(args.disc, args.level, args.prec or cfg.default_prec)
    doc = {"level": args.level, "disc": args.disc, "t": t, "err": serialize.decimal(err, 6)}
    _emit(args, doc, text=_frac(t))
    return 0


def cmd_j_value(args, cfg):
    from .hauptmodul import j_at_cusp, j_at_cusp_numeric, j_eval_cm
    prec = args.prec or cfg.default_prec
    if args.form is not None:
        value, err = j_eval_cm(args.form.tau, args.level, prec)
        doc = {"level": args.level, "form": [args.form.a, args.form.b, args.form.c],
               "value": serialize.approx_complex(value, err)}
        text = f"{serialize.decimal(value.real)} + {serialize.decimal(value.imag)}*i  (err {serialize.decimal(err, 3)})"
    else:
        from .cusps import CuspRep
        s = CuspRep.parse(args.cusp)
        exact = j_at_cusp(s, args.level)
        value, err = j_at_cusp_numeric(s, args.level, prec=prec)
        doc = {"level": args.level, "cusp": str(s), "exact": exact,
               "numeric": serialize.approx_complex(value, err)}
        text = _frac(exact)
    _emit(args, doc, text=text)
    return 0


def cmd_cusps(args, cfg):
    from .cusps import cusp_equivalent, cusp_set, cusp_width, nu
    from .hauptmodul import j_at_cusp
    N = args.level
    if args.n is not None and gcd(args.n, N) != 1:
        raise UsageError(f"n={args.n} must be coprime to N={N}")
    entries, rows = [], []
    for s in cusp_set(N):
        inf = cusp_equivalent(s, None, N)
        e = {"cusp": str(s), "width": cusp_width(s, N), "infinity": inf,
             "j": None if inf else j_at_cusp(s, N)}
        if args.n is not None:
            e["nu"] = nu(s, args.n, N)
        entries.append(e)
        row = [str(s), e["width"], "inf" if inf else _frac(e["j"])]
        if args.n is not None:
            row.append(e["nu"])
        rows.append(row)
    header = ["cusp", "width", "j_N"] + (["nu"] if args.n is not None else [])
    _emit(args, {"level": N, "n": args.n, "cusps": entries}, rows, header)
    return 0


def cmd_modpoly(args, cfg):
    from .modpoly import build_modular_polynomial, diagonal, diagonal_quotient
    from .numtheory import square_root_if_perfect
    if gcd(args.n, args.level) != 1:
        raise UsageError(f"n={args.n} must be coprime to N={args.level}")
    guard = args.guard if args.guard is not None else cfg.modpoly_guard
    P = build_modular_polynomial(args.n, args.level, guard)
    doc = {"level": args.level, "n": args.n, "guard": guard, "coefficients": P.as_matrix()}
    if args.diagonal:
        if square_root_if_perfect(args.n) is None:
            doc["diagonal"] = diagonal(P)
        else:
            doc["diagonal_quotient"] = diagonal_quotient(P)
    rows = [(i, k, c) for i, row in enumerate(P.coeffs) for k, c in enumerate(row) if c]
    if args.diagonal and not getattr(args, "json", False):
        key = "diagonal" if "diagonal" in doc else "diagonal_quotient"
        rows += [(key, e, c) for e, c in enumerate(doc[key]) if c]
    _emit(args, doc, rows, ("X^i", "Y^k", "coefficient"))
    return 0


def cmd_fundamental_domain(args, cfg):
    from .funddomain import domain_document, export_domain
    wrote = []
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(export_domain(args.level, "svg"))
        wrote.append(args.svg)
    if args.json_path:
        with open(args.json_path, "w") as fh:
            fh.write(export_domain(args.level, "json"))
        wrote.append(args.json_path)
    if not wrote:
        sys.stdout.write(serialize.dumps(domain_document(args.level)))
    else:
        for w in wrote:
            print(f"wrote {w}")
    return 0


def cmd_verify(args, cfg):
    from .verify import THEOREM_GROUPS, run_suite
    theorems = [t for t in args.theorems.split(",") if t]
    bad = [t for t in theorems if t not in THEOREM_GROUPS]
    if bad:
        raise UsageError(f"unknown theorem ids {bad}; choose from {','.join(THEOREM_GROUPS)}")
    reports = run_suite(args.level, args.n_range, theorems, args.prec or cfg.default_prec)
    docs = [r.to_json() for r in reports]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(serialize.dumps(docs))
    if getattr(args, "json", False):
        sys.stdout.write(serialize.dumps(docs))
    else:
        rows = [(r.level, r.n, r.theorem_id, r.status, _short(r.lhs), _short(r.rhs), r.detail)
                for r in reports]
        _emit(args, docs, rows, ("N", "n", "theorem", "status", "lhs", "rhs", "detail"))
        npass = sum(r.status == "pass" for r in reports)
        nfail = sum(r.status == "fail" for r in reports)
        nskip = sum(r.status == "skip" for r in reports)
        print(f"{npass} passed, {nfail} failed, {nskip} skipped")
    return 1 if any(r.status == "fail" for r in reports) else 0


def _short(x):
    if x is None:
        return ""
    if isinstance(x, Fraction):
        return _frac(x)
    try:
        return serialize.decimal(abs(x), 8)
    except Exception:
        return str(x)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="hauptraces",
                                description="Class numbers, traces and modular polynomials for genus-zero Gamma_0(N).")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help, description=help)
        sp.set_defaults(func=fn)
        sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
        sp.add_argument("--json", action="store_true", help="shorthand for --format json")
        return sp

    sp = add("hauptmodul", cmd_hauptmodul, "q-expansion coefficients c_-1..c_M of j_N")
    sp.add_argument("--level", type=_level, required=True)
    sp.add_argument("--terms", type=_positive, required=True)

    for name, fn, help in (("reduced-forms", cmd_reduced_forms, "reduced forms of discriminant D"),
                           ("class-number", cmd_class_number, "the class number H(D, N)"),
                           ("trace", cmd_trace, "the trace t(D, N) of singular moduli")):
        sp = add(name, fn, help)
        sp.add_argument("--level", type=_level, required=True)
        sp.add_argument("--disc", type=_disc, required=True)
        if name == "reduced-forms":
            sp.add_argument("--method", choices=("direct", "cosets"), default="direct")
        if name == "trace":
            sp.add_argument("--prec", type=_prec)

    sp = add("j-value", cmd_j_value, "j_N at the root of a form or at a cusp")
    sp.add_argument("--level", type=_level, required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--form", type=_form)
    g.add_argument("--cusp")
    sp.add_argument("--prec", type=_prec)

    sp = add("cusps", cmd_cusps, "cusp representatives, widths, values and multiplicities")
    sp.add_argument("--level", type=_level, required=True)
    sp.add_argument("--n", type=_positive)

    sp = add("modpoly", cmd_modpoly, "modular polynomial Phi_n(X, j_N)")
    sp.add_argument("--level", type=_level, required=True)
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--guard", type=_positive)
    sp.add_argument("--diagonal", action="store_true")

    sp = sub.add_parser("fundamental-domain", help="export the fundamental region for Gamma_0(p)")
    sp.set_defaults(func=cmd_fundamental_domain)
    sp.add_argument("--level", type=_prime_level, required=True)
    sp.add_argument("--svg", metavar="PATH")
    sp.add_argument("--json", dest="json_path", metavar="PATH")

    sp = add("verify", cmd_verify, "check the class number, trace and factorisation relations")
    sp.add_argument("--level", type=_levels, required=True)
    sp.add_argument("--n-range", type=_n_range, required=True)
    sp.add_argument("--theorems", default="cor24,thm11,thm22,thm25")
    sp.add_argument("--prec", type=_prec)
    sp.add_argument("--out", metavar="PATH")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config.from_env()
    except ValueError as exc:
        parser.error(f"{PREC_ENV}: {exc}")
    try:
        return args.func(args, cfg)
    except (UsageError, UnsupportedLevel) as exc:
        parser.error(str(exc))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

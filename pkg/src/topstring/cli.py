"""Command-line front end: one subcommand per verification.

Complex arguments use the grammar ``a``, ``bi``, ``a+bi``, ``a-bi``, ``i``,
``-i`` with decimal components (``1.5e-3`` allowed); arguments documented as
exact also take rationals such as ``1/2``.  Vectors are comma separated.

Output is one record per result: ``key=value`` pairs by default, or with
``--machine`` one JSON object per line with sorted keys.  Exit status is 0 on
success or PASS, 2 on FAIL and 1 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import mpmath

from . import conifold as cf
from . import matrix_model as mm
from . import torus
from ._precision import workprec
from .exact import ExactScalar, chi_g, hodge_c3
from .geometry import anomaly, gromov_witten as gw, osv, prepotential as pp
from .qseries import dedekind_eta
from .report import DualityReport

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2
MIN_PREC = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --- argument grammar -------------------------------------------------------------

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(
    rf"^\s*(?:(?P<re>[+-]?{_NUM})?(?P<im>(?:[+-]|(?<![\d.]))(?:{_NUM})?i)?)\s*$"
)
_RATIONAL = re.compile(r"^\s*[+-]?\d+\s*(?:/\s*\d+)?\s*$")


def parse_complex(text: str) -> mpmath.mpc:
    """``a+bi`` -> mpc, evaluated at the current working precision."""
    s = text.replace(" ", "")
    m = _COMPLEX.match(s)
    if not s or not m or (m.group("re") is None and m.group("im") is None):
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r} (expected a+bi)")
    re_part = mpmath.mpf(m.group("re")) if m.group("re") else mpmath.mpf(0)
    im_txt = m.group("im")
    if im_txt is None:
        im_part = mpmath.mpf(0)
    else:
        body = im_txt[:-1]
        im_part = mpmath.mpf(body + "1") if body in ("", "+", "-") else mpmath.mpf(body)
    return mpmath.mpc(re_part, im_part)


def parse_exact_or_complex(text: str):
    if _RATIONAL.match(text):
        return Fraction(text.replace(" ", ""))
    return parse_complex(text)


def _list(conv: Callable):
    def parse(text: str):
        try:
            return [conv(x) for x in text.split(",") if x.strip()]
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise argparse.ArgumentTypeError(f"bad list {text!r}: {exc}") from None

    return parse


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


# --- formatting ---------------------------------------------------------------------


def fmt(x, digits: int) -> object:
    """Deterministic string for numbers; JSON-native for containers and flags."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, ExactScalar):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [fmt(v, digits) for v in x]
    if isinstance(x, dict):
        return {str(k): fmt(v, digits) for k, v in x.items()}
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, complex):
        x = mpmath.mpc(x)
    if isinstance(x, mpmath.mpc):
        if x.imag == 0:
            return mpmath.nstr(x.real, digits)
        im = mpmath.nstr(abs(x.imag), digits)
        sign = "-" if x.imag < 0 else "+"
        if x.real == 0:
            return f"{'-' if sign == '-' else ''}{im}i"
        return f"{mpmath.nstr(x.real, digits)}{sign}{im}i"
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, digits)
    return str(x)


class Emitter:
    def __init__(self, args, out):
        self.machine = args.machine
        self.digits = args.digits
        self.precision = args.precision
        self.out = out
        self.verdicts: List[bool] = []

    def record(self, op: str, inputs: Dict, convention: str, human_keys: Optional[Sequence[str]] = None, **fields):
        rec = {k: fmt(v, self.digits) for k, v in fields.items()}
        if self.machine:
            rec.update(
                op=op,
                inputs=fmt(inputs, self.digits),
                precision_bits=self.precision,
                convention=convention,
            )
            self.out.write(json.dumps(rec, sort_keys=True) + "\n")
        else:
            keys = human_keys or list(rec)
            self.out.write(" ".join(f"{k}={_human(rec[k])}" for k in keys if k in rec) + "\n")

    def report(self, op: str, inputs: Dict, rep: DualityReport, **extra):
        ok = rep.passed
        self.verdicts.append(ok)
        if rep.exact:
            self.record(op, inputs, rep.convention_tag, ["lhs", "rhs", "equal"],
                        lhs=rep.lhs, rhs=rep.rhs, equal=rep.equal, **extra)
        else:
            self.record(
                op, inputs, rep.convention_tag,
                ["verdict", "lhs", "rhs", "rel_dev", "abs_dev", "tolerance"] + list(extra),
                lhs=rep.lhs, rhs=rep.rhs, rel_dev=rep.rel_dev, abs_dev=rep.abs_dev,
                tolerance=rep.tolerance, verdict="PASS" if ok else "FAIL", **extra,
            )


def _human(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


# --- subcommands ----------------------------------------------------------------------


def cmd_cs_z(a, em):
    p = cf.CSPoint(a.N, a.k, a.precision)
    z = cf.cs_partition(p)
    with workprec(a.precision):
        em.record("cs-z", {"N": a.N, "k": a.k}, "lambda=2pi/(k+N)", ["value", "modulus"],
                  value=z, modulus=abs(z))


def cmd_cs_free_energy(a, em):
    p = cf.CSPoint(a.N, a.k, a.precision)
    em.record("cs-free-energy", {"N": a.N, "k": a.k, "branch": a.branch}, f"-log Z,branch={a.branch}",
              value=cf.cs_free_energy(p, a.branch))


def cmd_conifold_fg(a, em):
    if (a.q is None) == (a.t is None):
        raise UsageError("conifold-fg: pass exactly one of --q or --t")
    if a.q is not None:
        val = cf.conifold_fg(a.g, a.q, a.precision)
        em.record("conifold-fg", {"g": a.g, "q": a.q}, "q", value=val)
    else:
        val = cf.closed_string_fg(a.g, a.t, a.convention, a.precision)
        em.record("conifold-fg", {"g": a.g, "t": a.t}, a.convention, value=val)


def cmd_duality_exact(a, em):
    em.report("duality-exact", {"g": a.g, "n": a.n}, cf.duality_instanton_identity(a.g, a.n, a.convention))


def cmd_duality_fit(a, em):
    base = cf.CSPoint(a.N0, a.k0, a.precision)
    rep = cf.duality_numeric_fit(base, a.family, a.gmax, a.precision, not a.no_structural,
                                 a.tolerance, a.convention)
    fit = rep.details["fit"]
    em.report("duality-fit", {"N0": a.N0, "k0": a.k0, "family": a.family, "gmax": a.gmax},
              rep, residual=fit.residual)


def _moduli(a):
    with workprec(a.precision):
        return torus.ModuliPoint(a.t, a.tau)


def cmd_torus_f1(a, em):
    em.record("torus-f1", {"t": a.t, "tau": a.tau}, "F1=-log(sqrt(Im t)|eta(t)|^2)-log(sqrt(Im tau)|eta(tau)|^2)",
              value=torus.torus_f1(_moduli(a), a.terms, a.precision))


def cmd_torus_anomaly(a, em):
    rep = torus.torus_anomaly_check(_moduli(a), a.step, a.precision, a.terms, a.convention, a.tolerance)
    em.report("torus-anomaly", {"t": a.t, "tau": a.tau, "step": a.step}, rep)


def cmd_torus_instanton(a, em):
    em.record("torus-instanton", {"nmax": a.nmax}, "(i/2pi)dF1/dt,q=exp(2pi i t)",
              value=torus.torus_instanton_coeffs(a.nmax))


def cmd_eta(a, em):
    em.record("eta", {"tau": a.tau, "terms": a.terms}, "q^(1/24)=exp(2pi i tau/24)",
              value=dedekind_eta(a.tau, a.terms, a.precision))


def cmd_chi_g(a, em):
    em.record("chi-g", {"g": a.g}, "chi_g=zeta(1-2g)/(2-2g)", value=chi_g(a.g))


def cmd_hodge_c3(a, em):
    em.record("hodge-c3", {"g": a.g}, "int c_{g-1}^3", value=hodge_c3(a.g))


def _tensor_list(C) -> list:
    return C.tolist()


def cmd_yukawa(a, em):
    if a.table:
        table = gw.load_gw_table(a.table)
        if (a.q is None) == (a.t is None):
            raise UsageError("yukawa: with --table pass exactly one of --q or --t")
        C = gw.quantum_yukawa(table, q=a.q, t=a.t, prec=a.precision)
        em.record("yukawa", {"table": a.table, "q": a.q, "t": a.t}, "q=exp(2pi i t)", value=_tensor_list(C))
        return
    if a.kappa is None or a.t is None:
        raise UsageError("yukawa: pass --table, or --kappa with --t")
    kappa = a.kappa
    F = pp.PrepotentialSpec(flat_form=lambda t: kappa * t[0] ** 3 / 6)
    C = pp.yukawa_from_prepotential(F, a.t, None, a.precision)
    em.record("yukawa", {"kappa": kappa, "t": a.t}, "F=kappa t^3/6", value=_tensor_list(C))


def cmd_genus1_gw(a, em):
    table = gw.load_gw_table(a.table)
    series = gw.genus1_gw_series(table, a.qmax)
    em.record("genus1-gw", {"table": a.table, "qmax": a.qmax}, "(i/2pi)dF1/dt^a,total degree",
              value=[list(s.coeffs) for s in series])


def manufactured_g1(chi: int, step, n: int, y0, prec: int):
    """Cubic model e^{-K} = 8 y^3, C = 6, with F_1 = -4c log y solving the genus-one equation."""
    with workprec(prec):
        c = mpmath.mpf(1) / 2 - (mpmath.mpf(chi) / 24 - 1) * mpmath.mpf(3) / 4
        origin = mpmath.mpc(0, y0)
        data = anomaly.kahler_field(
            lambda t: -mpmath.log(8 * t.imag**3),
            lambda t: 3 / (4 * t.imag**2),
            lambda t: mpmath.mpc(6),
            origin, step, n, prec,
        )
        F1 = anomaly.sample_field(lambda t: -4 * c * mpmath.log(t.imag), origin, step, n, prec)
        return data, F1


def cmd_anomaly_residual(a, em):
    data, F1 = manufactured_g1(a.chi, a.step, a.grid, a.y0, a.precision)
    res = anomaly.anomaly_residual_g1(data, F1, a.chi, a.tolerance, a.precision)
    ok = res.max_residual <= a.tolerance
    em.verdicts.append(ok)
    em.record("anomaly-residual", {"chi": a.chi, "step": a.step, "grid": a.grid, "y0": a.y0},
              "d dbar=(dx^2+dy^2)/4,cubic model",
              ["verdict", "value", "truncation_estimate", "tolerance"],
              value=res.max_residual, truncation_estimate=res.truncation_estimate,
              tolerance=a.tolerance, verdict="PASS" if ok else "FAIL")


_OSV_MODELS = {
    "constant": lambda c: (lambda X: c),
    "quadratic": lambda c: (lambda X: c * X[1] ** 2 / X[0]),
    "cubic": lambda c: (lambda X: c * X[1] ** 3 / X[0]),
}


def cmd_osv(a, em):
    charges = osv.OSVCharges(tuple(a.p), tuple(a.phi))
    with workprec(a.precision):
        F = _OSV_MODELS[a.model](a.coeff)
        log_val = osv.osv_log_assemble(F, charges, a.precision)
    em.record("osv", {"p": a.p, "phi": a.phi, "model": a.model, "coeff": a.coeff},
              "|exp(-F(p+i phi))|^2", ["value", "log_value"],
              value=mpmath.exp(log_val), log_value=log_val)


def cmd_mm_z(a, em):
    W = mm.PotentialSpec(tuple(a.W))
    em.record("mm-z", {"W": a.W, "N": a.N, "lam": a.lam}, "c_N=pi^(N(N-1)/2)/prod j!",
              value=mm.mm_eigen_z(W, a.N, a.lam))


def _neg_log_z(job):
    W, N, lam = job
    return -mm.mm_eigen_log_z(mm.PotentialSpec(W), N, lam)


def cmd_mm_fit(a, em):
    W = mm.PotentialSpec(tuple(a.W))
    family = [(N, a.t / N) for N in a.sizes]
    jobs = [(tuple(a.W), N, lam) for N, lam in family]
    if a.jobs > 1:
        with ProcessPoolExecutor(a.jobs) as pool:
            values = list(pool.map(_neg_log_z, jobs))
    else:
        values = [_neg_log_z(j) for j in jobs]
    fit = mm.mm_thooft_fit(W, family, a.gmax, values=values)
    em.record("mm-fit", {"W": a.W, "t": a.t, "sizes": a.sizes, "gmax": a.gmax}, "-log Z=sum c_g lambda^(2g-2)",
              ["value", "residual"], value=[fit.coefficients[g] for g in sorted(fit.coefficients)],
              residual=fit.residual)


# --- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def common(suppress: bool) -> argparse.ArgumentParser:
        # subcommand copies only set a flag when given, so either position works
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        c = _Parser(add_help=False)
        c.add_argument("--precision", type=int, default=d(256), help="working precision in bits (>= 64)")
        c.add_argument("--machine", action="store_true", default=d(False), help="JSON-lines output")
        c.add_argument("--seed", type=int, default=d(0), help="seed for stochastic oracles (recorded only)")
        c.add_argument("--jobs", type=int, default=d(1), help="parallel workers for independent family points")
        c.add_argument("--digits", type=int, default=d(20), help="significant digits printed")
        return c

    parser = _Parser(prog="topstring", description=__doc__.split("\n")[0], parents=[common(False)])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help, parents=[common(True)])
        p.set_defaults(func=fn)
        return p

    conv = dict(choices=cf.CONVENTIONS, default=cf.Q_EXP_MINUS_T)

    p = add("cs-z", cmd_cs_z, "Chern-Simons partition function")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("cs-free-energy", cmd_cs_free_energy, "-log Z")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--branch", choices=("principal", "continuous"), default="principal")

    p = add("conifold-fg", cmd_conifold_fg, "resolved-conifold F_g")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--q", type=parse_exact_or_complex, help="instanton parameter (rational is exact)")
    p.add_argument("--t", type=parse_complex, help="Kahler parameter, mapped to q by --convention")
    p.add_argument("--convention", **conv)

    p = add("duality-exact", cmd_duality_exact, "exact F_{g,n} identity")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--convention", **conv)

    p = add("duality-fit", cmd_duality_fit, "large-N fit of -log Z against F_g")
    p.add_argument("--N0", type=int, default=5)
    p.add_argument("--k0", type=int, default=20)
    p.add_argument("--family", type=int, default=10)
    p.add_argument("--gmax", type=int, default=3)
    p.add_argument("--tolerance", type=float, default=1e-3)
    p.add_argument("--no-structural", action="store_true", help="pure lambda^{2g-2} basis")
    p.add_argument("--convention", **conv)

    for name, fn, help in (
        ("torus-f1", cmd_torus_f1, "genus-one torus amplitude"),
        ("torus-anomaly", cmd_torus_anomaly, "d dbar F_1 against 1/(2 Im^2)"),
    ):
        p = add(name, fn, help)
        p.add_argument("--t", type=parse_complex, required=True)
        p.add_argument("--tau", type=parse_complex, default=mpmath.mpc(0, 1))
        p.add_argument("--terms", type=int, default=80)
        if name == "torus-anomaly":
            p.add_argument("--step", type=float, default=1e-5)
            p.add_argument("--tolerance", type=float, default=1e-6)
            p.add_argument("--convention", choices=sorted(torus.ANOMALY_CONVENTIONS), default="laplacian")

    p = add("torus-instanton", cmd_torus_instanton, "q-expansion of (i/2pi) dF_1/dt")
    p.add_argument("--nmax", type=int, default=20)

    p = add("eta", cmd_eta, "Dedekind eta")
    p.add_argument("--tau", type=parse_complex, required=True)
    p.add_argument("--terms", type=int, default=50)

    p = add("chi-g", cmd_chi_g, "chi_g")
    p.add_argument("--g", type=int, required=True)

    p = add("hodge-c3", cmd_hodge_c3, "int c_{g-1}^3")
    p.add_argument("--g", type=int, required=True)

    p = add("yukawa", cmd_yukawa, "Yukawa couplings (quantum from a GW table, or kappa t^3/6)")
    p.add_argument("--table", help="GW table JSON")
    p.add_argument("--q", type=_list(parse_exact_or_complex))
    p.add_argument("--t", type=_list(parse_complex))
    p.add_argument("--kappa", type=_rational)

    p = add("genus1-gw", cmd_genus1_gw, "genus-one GW series")
    p.add_argument("--table", required=True)
    p.add_argument("--qmax", type=int, default=10)

    p = add("anomaly-residual", cmd_anomaly_residual, "genus-one anomaly residual, manufactured solution")
    p.add_argument("--chi", type=int, default=-200)
    p.add_argument("--step", type=float, default=1e-4)
    p.add_argument("--grid", type=int, default=41)
    p.add_argument("--y0", type=float, default=1.0)
    p.add_argument("--tolerance", type=float, default=1e-6)

    p = add("osv", cmd_osv, "|exp(-F)|^2 at X = p + i phi")
    p.add_argument("--p", type=_list(int), required=True)
    p.add_argument("--phi", type=_list(float), required=True)
    p.add_argument("--model", choices=sorted(_OSV_MODELS), default="quadratic")
    p.add_argument("--coeff", type=parse_complex, default=mpmath.mpc(1))

    p = add("mm-z", cmd_mm_z, "eigenvalue matrix integral")
    p.add_argument("--W", type=_list(float), required=True, help="coefficients, lowest degree first")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--lam", type=float, required=True)

    p = add("mm-fit", cmd_mm_fit, "'t Hooft fit of -log Z")
    p.add_argument("--W", type=_list(float), required=True)
    p.add_argument("--t", type=float, required=True, help="fixed lambda N")
    p.add_argument("--sizes", type=_list(int), default=[2, 3, 4])
    p.add_argument("--gmax", type=int, default=1)
    return parser


def run_command(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        # complex literals are parsed at the requested precision
        prec = _peek_precision(argv)
        with workprec(max(prec, MIN_PREC)):
            args = parser.parse_args(argv)
        if args.precision < MIN_PREC:
            raise UsageError(f"--precision must be >= {MIN_PREC}, got {args.precision}")
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if not getattr(args, "func", None):
            raise UsageError(parser.format_usage().strip() + "\nmissing subcommand")
        em = Emitter(args, out)
        args.func(args, em)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_ERROR
    except (ValueError, ArithmeticError, KeyError, OSError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR
    return EXIT_FAIL if not all(em.verdicts) else EXIT_OK


def _peek_precision(argv: Sequence[str]) -> int:
    for i, tok in enumerate(argv):
        if tok == "--precision" and i + 1 < len(argv):
            try:
                return int(argv[i + 1])
            except ValueError:
                return MIN_PREC
        if tok.startswith("--precision="):
            try:
                return int(tok.split("=", 1)[1])
            except ValueError:
                return MIN_PREC
    return 256


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())

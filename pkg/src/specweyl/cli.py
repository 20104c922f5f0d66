"""Command-line front end: reproducible runs with machine-readable output.

All numbers are printed with 17 significant digits and '\n' line endings so
that identical inputs give byte-identical output.  Exit codes: 0 success,
2 usage error (bad options, missing files -- detected before any numeric
work), 3 numeric failure (the module error name goes to stderr).
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .errors import SpecweylError
from .model import Side, load_model
from .spectrum import (eigenvalues, expand, exponent_report, norming_constants,
                       spectral_measure)
from .weyl import FundamentalFrame

_USAGE_EXIT = 2
_NUMERIC_EXIT = 3


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _default_c(model) -> float:
    """Generic interior base point: midpoint of a finite interval, else a
    point one unit inside the finite end, else 0.5 (off the symmetry point
    of even potentials, where Dirichlet collisions live)."""
    a, b = model.a, model.b
    if math.isfinite(a) and math.isfinite(b):
        return 0.5 * (a + b)
    if math.isfinite(a):
        return a + 1.0
    if math.isfinite(b):
        return b - 1.0
    return 0.5


def _parse_complex_list(text: str, name: str):
    parts = [p for p in text.split(",") if p != ""]
    if len(parts) % 2 != 0 or not parts:
        raise ValueError(f"{name} wants RE,IM pairs")
    vals = [float(p) for p in parts]
    return [complex(vals[i], vals[i + 1]) for i in range(0, len(vals), 2)]


def _parse_radii(text: str):
    radii = [float(p) for p in text.split(",") if p != ""]
    if len(radii) < 2 or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be >= 2 increasing positive values")
    if radii[0] <= 0:
        raise ValueError("radii must be positive")
    return tuple(radii)


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="specweyl", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def model_opts(sp, n=1):
        if n == 1:
            sp.add_argument("--model", required=True, help="model spec file")
        else:
            sp.add_argument("--model0", required=True)
            sp.add_argument("--model1", required=True)
        sp.add_argument("--c", type=float, default=None,
                        help="base point (default: generic interior point)")
        sp.add_argument("--tol", type=float, default=1e-10,
                        help="propagation tolerance in (1e-14, 1e-2)")
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    sp = sub.add_parser("eig", help="lowest eigenvalues")
    model_opts(sp)
    sp.add_argument("--count", type=int, required=True)
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")

    sp = sub.add_parser("measure", help="spectral measure atoms")
    model_opts(sp)
    sp.add_argument("--count", type=int, required=True)
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")

    sp = sub.add_parser("norming", help="norming constants gamma_n^2")
    model_opts(sp)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--side", choices=("left", "right"), default="left")

    sp = sub.add_parser("mfun", help="singular Weyl function values")
    model_opts(sp)
    sp.add_argument("--z", required=True, help="RE,IM[,RE,IM...]")

    sp = sub.add_parser("weber", help="Weber function D_nu(x)")
    sp.add_argument("--nu", required=True, help="RE,IM")
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--out", default=None)

    sp = sub.add_parser("krein-check", help="Krein product vs direct m_-")
    model_opts(sp)
    sp.add_argument("--n-terms", type=int, required=True)
    sp.add_argument("--z", required=True, help="RE,IM (nonreal)")

    sp = sub.add_parser("construct-phi", help="product reconstruction of phi")
    model_opts(sp)
    sp.add_argument("--n-terms", type=int, required=True)
    sp.add_argument("--z", required=True, help="RE,IM[,RE,IM...]")
    sp.add_argument("--x", type=float, required=True)

    for name, nm in (("bm-check", 2), ("hl-check", 1)):
        sp = sub.add_parser(name, help="decay diagnostic")
        model_opts(sp, n=nm)
        sp.add_argument("--angle", type=float, required=True,
                        help="ray angle in (0, 2 pi)")
        sp.add_argument("--radii", required=True, help="R1,R2,...")

    sp = sub.add_parser("invert", help="spectral mass of an interval")
    model_opts(sp)
    sp.add_argument("--interval", required=True, help="X0,X1")
    sp.add_argument("--eps", default="0.1,0.05,0.025",
                    help="decreasing epsilon ladder")

    sp = sub.add_parser("parseval", help="Parseval defect for f = exp(-x^2)")
    model_opts(sp)
    sp.add_argument("--count", type=int, required=True)

    sp = sub.add_parser("exponent", help="eigenvalue growth exponent and genus")
    model_opts(sp)
    sp.add_argument("--count", type=int, required=True)

    return p


def _validate(args) -> list[str]:
    """Usage-level checks, all performed before any numeric work."""
    problems = []
    for attr in ("model", "model0", "model1"):
        path = getattr(args, attr, None)
        if path is not None and not os.path.isfile(path):
            problems.append(f"model file not found: {path}")
    tol = getattr(args, "tol", None)
    if tol is not None and not (1e-14 < tol < 1e-2):
        problems.append(f"tol {tol:g} outside (1e-14, 1e-2)")
    count = getattr(args, "count", None)
    if count is not None and count < 1:
        problems.append("count must be >= 1")
    nt = getattr(args, "n_terms", None)
    if nt is not None and nt < 2:
        problems.append("n-terms must be >= 2")
    angle = getattr(args, "angle", None)
    if angle is not None and not 0.0 < angle < 2.0 * math.pi:
        problems.append("angle must lie in (0, 2 pi)")
    for attr, parser in (("z", _parse_complex_list), ("nu", _parse_complex_list)):
        text = getattr(args, attr, None)
        if text is not None:
            try:
                parser(text, attr)
            except ValueError as exc:
                problems.append(str(exc))
    if getattr(args, "radii", None) is not None:
        try:
            _parse_radii(args.radii)
        except ValueError as exc:
            problems.append(str(exc))
    if getattr(args, "interval", None) is not None:
        try:
            x0, x1 = (float(v) for v in args.interval.split(","))
            if not x0 < x1:
                problems.append("interval needs X0 < X1")
        except ValueError:
            problems.append("interval wants X0,X1")
    if getattr(args, "eps", None) is not None:
        try:
            eps = [float(v) for v in args.eps.split(",")]
            if len(eps) < 2 or any(b >= a for a, b in zip(eps, eps[1:])) \
                    or eps[-1] <= 0:
                problems.append("eps ladder must be decreasing positive values")
        except ValueError:
            problems.append("eps wants a comma-separated float list")
    return problems


def _frame(args, attr="model") -> FundamentalFrame:
    model = load_model(getattr(args, attr))
    c = args.c if args.c is not None else _default_c(model)
    return FundamentalFrame(model, c, tol=args.tol)


# ---------------------------------------------------------------------------
# subcommand bodies; each returns a list of output lines


def _run_eig(args):
    frame = _frame(args)
    eigs = eigenvalues(frame, args.count)
    if args.json:
        body = ",".join(_fmt(l) for l in eigs)
        return ['{"eigenvalues":[' + body + "]}"]
    return [_fmt(l) for l in eigs]


def _run_measure(args):
    frame = _frame(args)
    meas = spectral_measure(frame, args.count)
    if args.csv:
        lines = ["lambda,weight"]
        lines += [f"{_fmt(l)},{_fmt(w)}" for l, w in meas.atoms]
        return lines
    atoms = ",".join('{"lambda":%s,"weight":%s}' % (_fmt(l), _fmt(w))
                     for l, w in meas.atoms)
    off = meas.gauge["seed_offset"]
    gauge = ('{"c":%s,"seed_offset":%s,"kind":"%s","side":"%s"}'
             % (_fmt(meas.gauge["c"]),
                "null" if off is None else _fmt(off),
                meas.gauge["kind"], meas.gauge["side"]))
    return ['{"atoms":[' + atoms + '],"gauge":' + gauge + "}"]


def _run_norming(args):
    frame = _frame(args)
    side = Side.Left if args.side == "left" else Side.Right
    eigs = eigenvalues(frame, args.count)
    g2 = norming_constants(frame, eigs, side)
    lines = ["n,lambda,gamma2"]
    lines += [f"{n},{_fmt(l)},{_fmt(g)}" for n, (l, g) in enumerate(zip(eigs, g2))]
    return lines


def _run_mfun(args):
    frame = _frame(args)
    lines = ["re_z,im_z,re_M,im_M"]
    for z in _parse_complex_list(args.z, "z"):
        m = frame.singular_M(z)
        lines.append(f"{_fmt(z.real)},{_fmt(z.imag)},{_fmt(m.real)},{_fmt(m.imag)}")
    return lines


def _run_weber(args):
    from .special import weber_D, weber_D_derivative
    nu = _parse_complex_list(args.nu, "nu")[0]
    d = weber_D(nu, args.x)
    dd = weber_D_derivative(nu, args.x)
    lines = ["which,re_mantissa,im_mantissa,exponent"]
    for tag, v in (("D", d), ("D'", dd)):
        lines.append(f"{tag},{_fmt(v.mantissa.real)},{_fmt(v.mantissa.imag)},"
                     f"{_fmt(v.exponent)}")
    return lines


def _run_krein_check(args):
    from .products import ProductRep, fit_krein_constant, krein_m_minus
    frame = _frame(args)
    z = _parse_complex_list(args.z, "z")[0]
    if z.imag == 0.0:
        raise SpecweylError("krein-check needs a nonreal z")
    rep = ProductRep.from_frame(frame, frame.c, args.n_terms)
    rep = ProductRep(rep.mu, rep.nu, rep.p,
                     fit_krein_constant(rep, frame, 2j), rep.N)
    direct = frame.m_half_line(z, Side.Left)
    ladder, n = [], args.n_terms
    while n >= 8:
        ladder.append(n)
        n //= 2
    lines = ["n_terms,rel_err"]
    for n in sorted(ladder):
        approx = krein_m_minus(rep, z, n)
        lines.append(f"{n},{_fmt(abs(approx - direct) / abs(direct))}")
    return lines


def _run_construct_phi(args):
    from .products import ProductRep, construct_phi, fit_krein_constant
    from .propagate import wronskian_scaled
    frame = _frame(args)
    rep = ProductRep.from_frame(frame, frame.c, args.n_terms)
    rep = ProductRep(rep.mu, rep.nu, rep.p,
                     fit_krein_constant(rep, frame, 2j), rep.N)
    lines = ["re_z,im_z,re_u,im_u,exponent,rel_wronskian"]
    for z in _parse_complex_list(args.z, "z"):
        rec = construct_phi(rep, frame, z, args.x)
        direct = frame.phi(z, args.x)
        w = wronskian_scaled(rec, direct)
        scale = (abs(rec.u) * abs(direct.du) + abs(rec.du) * abs(direct.u))
        rel = (0.0 if w.is_zero else
               abs(w.mantissa) * math.exp(
                   min(700.0, w.exponent - rec.exponent - direct.exponent))
               / max(scale, 1e-300))
        lines.append(f"{_fmt(z.real)},{_fmt(z.imag)},{_fmt(rec.u.real)},"
                     f"{_fmt(rec.u.imag)},{_fmt(rec.exponent)},{_fmt(rel)}")
    return lines


def _run_bm_check(args):
    from .verify import RaySpec, bm_diagnostic
    m0 = load_model(args.model0)
    m1 = load_model(args.model1)
    c = args.c if args.c is not None else _default_c(m0)
    off = max(abs(m0.qtilde_cutoff), abs(m1.qtilde_cutoff), 8.0) + 4.0
    f0 = FundamentalFrame(m0, c, seed_offset=off, tol=args.tol)
    f1 = FundamentalFrame(m1, c, seed_offset=off, tol=args.tol)
    diag = bm_diagnostic(f0, f1, c, RaySpec(args.angle, _parse_radii(args.radii)))
    lines = ["radius,value"]
    lines += [f"{_fmt(r)},{_fmt(v)}" for r, v in zip(diag.radii, diag.values)]
    lines.append(f"# verdict: {diag.verdict}")
    return lines


def _run_hl_check(args):
    from .verify import RaySpec, hl_condition
    frame = _frame(args)
    diag = hl_condition(frame, frame.c,
                        RaySpec(args.angle, _parse_radii(args.radii)))
    lines = ["radius,value"]
    lines += [f"{_fmt(r)},{_fmt(v)}" for r, v in zip(diag.radii, diag.values)]
    lines.append(f"# verdict: {diag.verdict}")
    return lines


def _run_invert(args):
    from .verify import stieltjes_invert
    frame = _frame(args)
    x0, x1 = (float(v) for v in args.interval.split(","))
    eps = tuple(float(v) for v in args.eps.split(","))
    mass = stieltjes_invert(frame, x0, x1, eps)
    return [f"{_fmt(x0)},{_fmt(x1)},{_fmt(mass)}", f"# mass: {_fmt(mass)}"]


def _run_parseval(args):
    import numpy as np
    from scipy.integrate import simpson
    frame = _frame(args)
    meas = spectral_measure(frame, args.count)
    lo = max(frame.model.a, -8.0)
    hi = min(frame.model.b, 8.0)
    xs = np.linspace(lo, hi, 2001)
    fs = np.exp(-xs * xs)
    coeff = expand(frame, (xs, fs), meas)
    total = sum(w * c * c for (_, w), c in zip(meas.atoms, coeff))
    norm = float(simpson(fs * fs, x=xs))
    defect = abs(total - norm) / norm
    return ["norm2,expansion,defect",
            f"{_fmt(norm)},{_fmt(total)},{_fmt(defect)}"]


def _run_exponent(args):
    frame = _frame(args)
    rep = exponent_report(eigenvalues(frame, args.count))
    return ["kappa,s,genus,r_squared,flagged",
            f"{_fmt(rep.kappa)},{_fmt(rep.s)},{rep.genus},"
            f"{_fmt(rep.r_squared)},{str(rep.flagged).lower()}"]


_RUNNERS = {
    "eig": _run_eig,
    "measure": _run_measure,
    "norming": _run_norming,
    "mfun": _run_mfun,
    "weber": _run_weber,
    "krein-check": _run_krein_check,
    "construct-phi": _run_construct_phi,
    "bm-check": _run_bm_check,
    "hl-check": _run_hl_check,
    "invert": _run_invert,
    "parseval": _run_parseval,
    "exponent": _run_exponent,
}


def _apply_thread_cap():
    cap = os.environ.get("SPECWEYL_THREADS")
    if not cap:
        return
    try:
        n = max(1, int(cap))
    except ValueError:
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, str(n))


def run(argv=None) -> int:
    _apply_thread_cap()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return _USAGE_EXIT if exc.code else 0
    problems = _validate(args)
    if problems:
        for msg in problems:
            print(f"specweyl: error: {msg}", file=sys.stderr)
        return _USAGE_EXIT
    try:
        lines = _RUNNERS[args.command](args)
    except SpecweylError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return _NUMERIC_EXIT
    text = "\n".join(lines) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end.

Every subcommand reads function literals (infix or structured JSON),
writes one JSON document to stdout, and optionally CSV tables to files.
Exit codes: 0 success, 1 domain error or failed certificate (with a
machine-readable reason), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import acceptance, clark, config, cyclicity, factor, hb, models, \
    sigma
from .boundary import Arc, UnitCircleFunction
from .errors import HBLabError
from .parse import ParseError, parse_function


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, default=_default))


def _default(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (np.floating, np.integer)):
        return float(x)
    if isinstance(x, np.ndarray):
        return [_default(v) if isinstance(v, complex) else float(v)
                for v in x]
    if hasattr(x, "to_dict"):
        return x.to_dict()
    return str(x)


def _fail(reason: str, code: int = 1):
    _emit({"error": reason})
    raise SystemExit(code)


def _grid(args) -> config.GridConfig:
    if args.grid is None:
        return config.DEFAULT_GRID
    return config.GridConfig(n=args.grid)


def _exact_mode(args):
    return {"auto": "auto", "on": True, "off": False}[args.exact]


def _space(args) -> hb.HbSpace:
    b = parse_function(args.b)
    return hb.make_space(b, _grid(args), _exact_mode(args))


def _parse_arcs(text: str):
    arcs = []
    if not text:
        return arcs
    for part in text.split(","):
        fields = part.split(":")
        if len(fields) != 2:
            raise ParseError(f"arc {part!r} is not start:end")
        arcs.append(Arc.from_angles(float(fields[0]), float(fields[1])))
    return arcs


def _parse_cover(text: str):
    items = []
    if not text:
        return items
    for part in text.split(","):
        fields = part.split(":")
        if len(fields) != 3:
            raise ParseError(f"cover item {part!r} is not start:end:eta")
        items.append((Arc.from_angles(float(fields[0]), float(fields[1])),
                      float(fields[2])))
    return items


def _parse_atoms(text: str):
    out = []
    for part in text.split(","):
        fields = part.split(":")
        if len(fields) != 2:
            raise ParseError(f"atom {part!r} is not theta:weight")
        theta, w = float(fields[0]), float(fields[1])
        out.append((np.exp(1j * theta), w))
    return out


def _write_csv(path: str, header, rows):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.12g}" if isinstance(v, float)
                              else str(v) for v in row) + "\n")


def _fn_dict(fn: UnitCircleFunction) -> dict:
    return fn.to_dict()


# ---------------------------------------------------------------------------
# subcommand handlers

def cmd_mate(args):
    sp = _space(args)
    _emit({"b": _fn_dict(sp.b), "a": _fn_dict(sp.a),
           "pythagorean_residual": sp.pythagorean_residual(),
           "exact_backend": sp.exact is not None})


def cmd_validate(args):
    try:
        sp = _space(args)
    except HBLabError as exc:
        _fail(str(exc))
    _emit({"valid": True, "nonextreme": True,
           "pythagorean_residual": sp.pythagorean_residual(),
           "exact_backend": sp.exact is not None,
           "defect_points_angle": [float(np.angle(z)) % (2 * np.pi)
                                   for z in cyclicity.defect_spectrum(sp)]})


def cmd_norm(args):
    sp = _space(args)
    f = parse_function(args.f)
    el = hb.make_element(sp, f)
    out = {"norm_sq": el.norm2,
           "mate_coeffs": [[c.real, c.imag] for c in el.mate]}
    if el.norm2_exact is not None:
        out["norm_sq_exact"] = str(el.norm2_exact)
    _emit(out)


def cmd_decay(args):
    sp = _space(args)
    f = parse_function(args.f)
    table = cyclicity.decay_table(sp, f, args.n,
                                  use_exact=_exact_mode(args))
    out = {"entries": table.csv_rows(), "norm1_sq": table.norm1_sq,
           "near_dependent_columns": table.ridge_flags}
    if len(table.entries) >= 20:
        out["verdict"] = cyclicity.estimate_from_decay(table).verdict
    else:
        out["verdict"] = "table too short for the estimator"
    if table.exact_entries is not None:
        out["entries_exact"] = [[n, str(d)] for n, d in table.exact_entries]
    if args.csv:
        _write_csv(args.csv, ["N", "d2"], table.csv_rows())
    _emit(out)


def cmd_classify(args):
    sp = _space(args)
    f = parse_function(args.f)
    rep = cyclicity.classify_finite_defect(sp, f)
    _emit(rep.to_dict())


def cmd_clark(args):
    sp = _space(args)
    alpha = complex(np.exp(1j * float(args.alpha)))
    cm = clark.clark_measure(sp, alpha)
    out = {"alpha_angle": float(args.alpha) % (2 * np.pi),
           "atoms": [[float(np.angle(z)) % (2 * np.pi), m]
                     for z, m in cm.atoms],
           "atom_mass_errors": cm.atom_errors,
           "ac_mass": cm.ac_mass, "total_mass": cm.total_mass,
           "herglotz_mass": cm.herglotz_mass,
           "absolutely_continuous": cm.is_absolutely_continuous}
    if args.csv:
        _write_csv(args.csv, ["alpha_angle", "type", "theta", "value"],
                   cm.csv_rows())
    _emit(out)


def cmd_sigma(args):
    sp = _space(args)
    bounds = sigma.sigma_bounds(sp)
    _emit({"lower_angles": [float(np.angle(z)) % (2 * np.pi)
                            for z in bounds.lower],
           "upper_angles": [float(np.angle(z)) % (2 * np.pi)
                            for z in bounds.upper],
           "provenance": bounds.provenance,
           "base_measure_absolutely_continuous":
               bounds.base_measure_absolutely_continuous,
           "nested": bounds.consistent()})


def cmd_certify(args):
    sp = _space(args)
    if args.rule == "A":
        if args.f is None:
            _fail("rule A needs --f", 2)
        outcome = cyclicity.theorem_a_check(
            sp, parse_function(args.f), _parse_arcs(args.e_arcs or ""),
            _parse_arcs(args.f_arcs or ""))
    elif args.rule == "B":
        if args.f is None:
            _fail("rule B needs --f", 2)
        outcome = cyclicity.theorem_b_check(
            sp, parse_function(args.f), _parse_cover(args.cover or ""))
    else:
        if args.g is None:
            _fail("rule C needs --g", 2)
        big_f, outcome = cyclicity.theorem_c_check(sp, parse_function(args.g))
    doc = {"rule": args.rule, "certified": outcome.ok,
           "report": outcome.report.to_dict(), "reasons": outcome.reasons}
    if args.rule == "C" and outcome.ok:
        doc["outer_image"] = _fn_dict(outcome.certificate)
    _emit(doc)
    if not outcome.ok:
        raise SystemExit(1)


def cmd_dirichlet(args):
    spec = models.DirichletSpec(_parse_atoms(args.atoms))
    f = parse_function(args.f).to_polynomial()
    out = {"dirichlet_integral": models.dirichlet_integral(spec, f),
           "norm_sq": models.dirichlet_norm(spec, f),
           "verdict": models.dirichlet_cyclic(spec, f).verdict}
    ex = models.dirichlet_norm_exact(spec, f)
    if ex is not None:
        out["norm_sq_exact"] = str(ex)
    _emit(out)


def cmd_theta(args):
    model = models.theta_model(parse_function(args.theta))
    f = parse_function(args.f).to_polynomial()
    _emit({"atoms": [[float(np.angle(z)) % (2 * np.pi), m]
                     for z, m in model.atoms],
           "model_dimension": model.model_dimension,
           "mass_total": model.herglotz_mass,
           "verdict": models.theta_cyclic(model, f).verdict})


def cmd_verify(args):
    results = acceptance.run_all(echo=True)
    ok = all(r.passed for r in results)
    _emit({"passed": sum(r.passed for r in results),
           "failed": [r.name for r in results if not r.passed],
           "total_seconds": round(sum(r.elapsed for r in results), 2)})
    raise SystemExit(0 if ok else 1)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hblab",
        description="de Branges-Rovnyak space laboratory: mates, Clark "
                    "measures, kernels, and cyclicity certificates")
    ap.add_argument("--grid", type=int, default=None,
                    help="boundary sample count (power of two >= 256)")
    ap.add_argument("--exact", choices=("auto", "on", "off"), default="auto",
                    help="exact rational backend mode")
    ap.add_argument("--tol", type=float, default=None,
                    help="override the point-vanishing tolerance")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **arguments):
        p = sub.add_parser(name)
        for argname, kw in arguments.items():
            p.add_argument(f"--{argname.replace('_', '-')}", **kw)
        p.set_defaults(handler=fn)
        return p

    add("mate", cmd_mate, b={"required": True})
    add("validate", cmd_validate, b={"required": True})
    add("norm", cmd_norm, b={"required": True}, f={"required": True})
    add("decay", cmd_decay, b={"required": True}, f={"required": True},
        n={"type": int, "default": 24}, csv={"default": None})
    add("classify", cmd_classify, b={"required": True}, f={"required": True})
    add("clark", cmd_clark, b={"required": True},
        alpha={"required": True, "help": "angle of alpha in radians"},
        csv={"default": None})
    add("sigma", cmd_sigma, b={"required": True})
    add("certify", cmd_certify, rule={"required": True,
                                      "choices": ("A", "B", "C")},
        b={"required": True}, f={"default": None}, g={"default": None},
        e_arcs={"default": None, "help": "start:end,start:end (radians)"},
        f_arcs={"default": None}, cover={"default": None,
                                         "help": "start:end:eta,..."})
    add("dirichlet", cmd_dirichlet, atoms={"required": True,
                                           "help": "theta:weight,..."},
        f={"required": True})
    add("theta", cmd_theta, theta={"required": True}, f={"required": True})
    add("verify", cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        if exc.code not in (0, None):
            raise SystemExit(2)
        raise
    if args.tol is not None:
        config.POINT_ZERO_TOL = float(args.tol)
    try:
        args.handler(args)
    except SystemExit:
        raise
    except (HBLabError, ParseError, ValueError, ZeroDivisionError,
            ArithmeticError) as exc:
        _fail(f"{type(exc).__name__}: {exc}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

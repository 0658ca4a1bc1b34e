"""Command line front end.

Reads a JSON document (a file path or ``-`` for stdin), runs one analysis
and writes a JSON document to stdout.

Input documents carry exactly one payload::

    {"mode": "exact",
     "frobenius_point": {"m": 2, "u": [0, 1], "eta_first": [1, -1],
                         "eta_second": [[..]], "d": "2", "kappa": [[..]]}}
    {"raw_system": {"U": [[..]], "V": [[..]]}}
    {"raw_system": {"U": [[..]], "Q": [[..]], "Udag": [[..]]}}

A scalar is an int, a ``"p/q"`` string, a float (float mode only) or a
two-element list ``[re, im]`` of those. Exact output values are written as
``["p/q", "p/q"]``; floats are written with 17 significant digits. A
top-level list is processed item by item.

Exit codes: 0 analysis completed (whatever the verdict), 2 malformed input,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .algebra import EXACT, FLOAT, GaussianRational, Matrix, PolyMatrix, SeriesMatrix, exact
from .exceptions import CDVError, FloatModeUnsupported, MatrixExpOverflow, ModeError, ToleranceNotMet
from .formal import RankOneSystem, exp_gauge_reduce, formal_reduce, gauge_residual
from .frobenius import (
    FrobeniusPoint,
    dim2_criterion,
    structure_constants,
    tate_structure_check,
    twisted_structure_constants,
    v_from_potential,
)
from .monodromy import equivalence_verdict
from .potentiality import DEFAULT_MAX_DEGREE, assemble_phi, solve_potentiality, verify_cgf

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_NUMERIC = 3

COMMANDS = ("vmatrix", "check-tate", "criterion-2d", "reduce", "monodromy", "potential")
FLOAT_DIGITS = 17


class MalformedInput(CDVError, ValueError):
    pass


# -- decoding -----------------------------------------------------------------


def _part(x, mode):
    if isinstance(x, bool):
        raise MalformedInput("booleans are not numbers")
    if isinstance(x, float):
        if mode == EXACT:
            raise ModeError(f"float {x!r} in an exact-mode document")
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return Fraction(x.strip()) if mode == EXACT else float(Fraction(x.strip()))
    raise MalformedInput(f"not a number: {x!r}")


def decode_scalar(x, mode: str):
    if isinstance(x, list):
        if len(x) != 2:
            raise MalformedInput(f"complex numbers are [re, im], got {x!r}")
        re, im = _part(x[0], mode), _part(x[1], mode)
    else:
        re, im = _part(x, mode), 0
    if mode == EXACT:
        return exact((re, im))
    return complex(float(re), float(im))


def decode_vector(xs, mode: str) -> list:
    if not isinstance(xs, list):
        raise MalformedInput("expected a list of numbers")
    return [decode_scalar(x, mode) for x in xs]


def decode_matrix(rows, mode: str) -> Matrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise MalformedInput("expected a square matrix as a list of rows")
    data = [decode_vector(r, mode) for r in rows]
    if any(len(r) != len(data) for r in data):
        raise MalformedInput("matrix is not square")
    return Matrix(data, mode=mode)


def _require(obj: dict, key: str):
    if key not in obj:
        raise MalformedInput(f"missing field {key!r}")
    return obj[key]


def decode_point(doc: dict) -> FrobeniusPoint:
    u = decode_vector(_require(doc, "u"), EXACT)
    if "m" in doc and doc["m"] != len(u):
        raise MalformedInput(f"m = {doc['m']} but u has {len(u)} entries")
    eta2 = decode_matrix(_require(doc, "eta_second"), EXACT)
    d = decode_scalar(_require(doc, "d"), EXACT)
    if not d.is_real():
        raise MalformedInput("the charge d must be real")
    kappa = decode_matrix(doc["kappa"], EXACT) if doc.get("kappa") is not None else None
    return FrobeniusPoint(tuple(u), tuple(decode_vector(_require(doc, "eta_first"), EXACT)), eta2, d.re, kappa)


def decode_document(doc, mode_flag: str | None):
    """Return ``(kind, payload, mode)`` with kind ``point``, ``uv`` or ``uqu``."""
    if not isinstance(doc, dict):
        raise MalformedInput("document must be a JSON object")
    mode = mode_flag or doc.get("mode", EXACT)
    if mode not in (EXACT, FLOAT):
        raise MalformedInput(f"unknown mode {mode!r}")
    variants = [k for k in ("frobenius_point", "raw_system") if k in doc]
    if len(variants) != 1:
        raise MalformedInput("exactly one of frobenius_point / raw_system is required")
    if variants[0] == "frobenius_point":
        if mode != EXACT:
            raise FloatModeUnsupported("point data is exact-only")
        return "point", decode_point(doc["frobenius_point"]), mode
    raw = doc["raw_system"]
    if not isinstance(raw, dict):
        raise MalformedInput("raw_system must be an object")
    u = decode_matrix(_require(raw, "U"), mode)
    if "V" in raw and "Q" not in raw and "Udag" not in raw:
        v = decode_matrix(raw["V"], mode)
        _same_dim(u, v)
        return "uv", (u, v), mode
    if "Q" in raw and "Udag" in raw and "V" not in raw:
        q, udag = decode_matrix(raw["Q"], mode), decode_matrix(raw["Udag"], mode)
        _same_dim(u, q, udag)
        return "uqu", (u, q, udag), mode
    raise MalformedInput("raw_system needs either {U, V} or {U, Q, Udag}")


def _same_dim(*ms: Matrix):
    if len({m.dim for m in ms}) != 1:
        raise MalformedInput("matrix dimensions differ")


# -- encoding -----------------------------------------------------------------


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _flt(x: float) -> float:
    return float(format(x, f".{FLOAT_DIGITS}g"))


def encode_scalar(x):
    if isinstance(x, GaussianRational):
        return [_frac(x.re), _frac(x.im)]
    if isinstance(x, Fraction):
        return [_frac(x), "0"]
    z = complex(x)
    return [_flt(z.real), _flt(z.imag)]


def encode_matrix(m: Matrix) -> list:
    return [[encode_scalar(x) for x in row] for row in m.rows]


def encode_poly(p: PolyMatrix | SeriesMatrix) -> list:
    return [encode_matrix(c) for c in p.coeffs]


def _is_zero_series(s) -> bool:
    return all(c.is_zero() for c in s.coeffs)


# -- commands -----------------------------------------------------------------


def _uv(kind, payload):
    if kind == "point":
        return payload.U, v_from_potential(payload)
    if kind == "uv":
        return payload
    raise MalformedInput("this command needs {U, V} or a frobenius_point")


def _exact_only(mode):
    if mode != EXACT:
        raise FloatModeUnsupported("this command runs in exact mode only")


def cmd_vmatrix(kind, payload, mode, args):
    if kind != "point":
        raise MalformedInput("vmatrix needs a frobenius_point")
    v = v_from_potential(payload)
    return {"derived": {"U": encode_matrix(payload.U), "V": encode_matrix(v), "Udag": encode_matrix(payload.Udag)}}


def cmd_check_tate(kind, payload, mode, args):
    if kind != "point":
        raise MalformedInput("check-tate needs a frobenius_point")
    report = tate_structure_check(payload)
    twisted = twisted_structure_constants(payload.kappa)
    return {
        "verdicts": {"tate": report.as_dict()},
        "derived": {
            "h_diagonal": [encode_scalar(h) for h in report.h_diagonal],
            "twisted_equals_plain": all(a == b for a, b in zip(twisted, structure_constants(payload.m))),
        },
    }


def cmd_criterion_2d(kind, payload, mode, args):
    if kind != "point":
        raise MalformedInput("criterion-2d needs a frobenius_point")
    crit = dim2_criterion(payload)
    v = v_from_potential(payload)
    return {
        "verdicts": {"strongly_potential": crit.strongly_potential},
        "derived": {
            "n": _frac(crit.n),
            "predicted_V": encode_matrix(crit.predicted_v),
            "V": encode_matrix(v),
            "U": encode_matrix(payload.U),
        },
        "diagnostics": {"V_matches_prediction": v == crit.predicted_v},
    }


def cmd_reduce(kind, payload, mode, args):
    if kind == "uqu":
        u, q, udag = payload
        system = RankOneSystem.cv(u, q, udag)
    else:
        u, v = _uv(kind, payload)
        system = RankOneSystem.saito(u, v)
    red = formal_reduce(system, args.order)
    residual = gauge_residual(system, red.gauge, red.normal_form.matrix())
    out = {
        "derived": {
            "normal_form": {
                "exponents": [encode_scalar(x) for x in red.normal_form.exponents],
                "residues": [encode_scalar(x) for x in red.normal_form.residues],
            },
            "gauge": encode_poly(red.gauge),
        },
        "verdicts": {"residue_free": red.normal_form.is_residue_free},
        "diagnostics": {"order": red.gauge.order, "residual_max_norm": max(c.norm() for c in residual.coeffs)},
    }
    if mode == EXACT:
        out["diagnostics"]["residual_zero"] = _is_zero_series(residual)
    if kind == "uqu" and q.is_zero():
        g = exp_gauge_reduce(u, udag, args.order)
        res = gauge_residual(system, g, PolyMatrix([u], u.dim, mode))
        out["derived"]["exp_gauge"] = encode_poly(g)
        out["diagnostics"]["exp_gauge_residual_max_norm"] = max(c.norm() for c in res.coeffs)
        if mode == EXACT:
            out["diagnostics"]["exp_gauge_residual_zero"] = _is_zero_series(res)
    return out


def cmd_monodromy(kind, payload, mode, args):
    _exact_only(mode)
    u, v = _uv(kind, payload)
    rep = equivalence_verdict(u, v, radius=args.radius, tol=args.tolerance, order=args.order)
    diag = dict(rep.diagnostics)
    if diag.get("v_eigenvalues") is not None:
        diag["v_eigenvalues"] = [encode_scalar(x) for x in diag["v_eigenvalues"]]
    for key, val in diag.items():
        if isinstance(val, float):
            diag[key] = _flt(val)
    return {
        "derived": {
            "levelt_residue": encode_matrix(rep.levelt_residue),
            "monodromy_exact": encode_matrix(rep.monodromy_exact),
            "monodromy_numeric": encode_matrix(rep.monodromy_numeric),
        },
        "verdicts": {k: getattr(rep.verdicts, k) for k in rep.verdicts.__dataclass_fields__},
        "diagnostics": diag,
    }


def cmd_potential(kind, payload, mode, args):
    _exact_only(mode)
    u, v = _uv(kind, payload)
    sol = solve_potentiality(u, v, max_degree=args.max_degree, strict=False)
    if not sol:
        return {
            "verdicts": {"strongly_potential": False},
            "diagnostics": {"reason": sol.reason, "step": sol.step, "max_degree": args.max_degree},
        }
    residual = verify_cgf(sol.psi, u, v)
    phi = assemble_phi(sol)
    return {
        "derived": {
            "psi": encode_poly(sol.psi),
            "ubar": [encode_scalar(b) for b in phi.ubar],
            "det_psi": [encode_scalar(c) for c in sol.psi.det()],
        },
        "verdicts": {"strongly_potential": True},
        "diagnostics": {"degree": sol.degree, "residual_zero": residual.degree < 0, "max_degree": args.max_degree},
    }


HANDLERS = {
    "vmatrix": cmd_vmatrix,
    "check-tate": cmd_check_tate,
    "criterion-2d": cmd_criterion_2d,
    "reduce": cmd_reduce,
    "monodromy": cmd_monodromy,
    "potential": cmd_potential,
}

NUMERIC_ERRORS = (ToleranceNotMet, MatrixExpOverflow, OverflowError, FloatingPointError)


def run_one(command: str, doc, args) -> tuple[dict, int]:
    """Process a single document; never raises for bad input."""
    out = {"command": command}
    try:
        kind, payload, mode = decode_document(doc, args.mode)
        out["mode"] = mode
        out.update(HANDLERS[command](kind, payload, mode, args))
        out["status"] = "ok"
        return out, EXIT_OK
    except NUMERIC_ERRORS as exc:
        return _error(out, exc, EXIT_NUMERIC)
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        return _error(out, exc, EXIT_MALFORMED)


def _error(out: dict, exc: Exception, code: int) -> tuple[dict, int]:
    out["status"] = "error"
    out["error"] = {"type": type(exc).__name__, "message": str(exc), "exit_code": code}
    return out, code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cdvpotential", description="Potentiality and monodromy checks for rank-one systems.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", default="-", help="JSON document path, '-' for stdin")
    p.add_argument("--order", type=int, default=None, help="series truncation order")
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE, help="largest psi degree tried")
    p.add_argument("--tolerance", type=float, default=1e-10, help="integrator tolerance")
    p.add_argument("--radius", type=float, default=1.0, help="radius of the transport loop")
    p.add_argument("--mode", choices=(EXACT, FLOAT), default=None, help="override the document mode")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input == "-":
            doc = json.load(sys.stdin)
        else:
            with open(args.input, encoding="utf-8") as fh:
                doc = json.load(fh)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        out, code = _error({"command": args.command}, exc, EXIT_MALFORMED)
        json.dump(out, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return code
    if isinstance(doc, list):
        results = [run_one(args.command, d, args) for d in doc]
        out = [r for r, _ in results]
        code = max((c for _, c in results), default=EXIT_OK)
    else:
        out, code = run_one(args.command, doc, args)
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

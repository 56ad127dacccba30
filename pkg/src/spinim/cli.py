"""Command-line front end.

Exit codes: 0 pass, 1 failed checks, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import clifford
from .catalog import (FIXTURES, GEOMETRY_NAMES, CatalogEntry, build_e_kappa_tau, build_fixture,
                      build_sol3, build_torus_bundle, catalog_list, named_geometry)
from .compatibility import check_compatibility
from .errors import InvalidData, SpinimError
from .frame import FrameGeometry, eta_einstein_split, load_geometry, ricci_matrix
from .killing import ImmersionData, load_immersion_data, spinor_report
from .obstruction import obstruct
from .spin import FramedSpinorField, ricci_identity_rhs, spinorial_curvature

SCHEMA = "spinim/1"
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False)


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(_dump(report) + "\n")
        return
    for line in _text_lines(report):
        out.write(line + "\n")


def _text_lines(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                yield f"{prefix}{k}:"
                yield from _text_lines(v, prefix + "  ")
            else:
                yield f"{prefix}{k}: {_short(v)}"
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                yield f"{prefix}-"
                yield from _text_lines(item, prefix + "  ")
            else:
                yield f"{prefix}- {_short(item)}"
    else:
        yield f"{prefix}{_short(obj)}"


def _is_flat(v) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) for x in v) or all(
        isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x) for x in v)


def _short(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, list):
        return "[" + ", ".join(str(_short(x)) for x in v) + "]"
    return v


def _resolve_geometry(args) -> tuple[FrameGeometry, CatalogEntry | None]:
    if args.fixture:
        entry = build_fixture(args.fixture)
        return entry.geometry, entry
    if not args.geometry:
        raise InputError("give --geometry or --fixture")
    if args.geometry in GEOMETRY_NAMES:
        entry = named_geometry(args.geometry, args.kappa, args.tau, args.alpha)
        return entry.geometry, entry
    path = Path(args.geometry)
    if not path.is_file():
        raise InputError(f"unknown geometry {args.geometry!r} (not a built-in name or a file)")
    return load_geometry(path), None


def _header(command: str, g: FrameGeometry, tol: float | None) -> dict:
    out = {"schema": SCHEMA, "command": command, "geometry": g.name}
    if tol is not None:
        out["tolerance"] = tol
    return out


def run_check(args, out=sys.stdout) -> int:
    g, entry = _resolve_geometry(args)
    if args.data:
        data = load_immersion_data(args.data)
    elif entry is not None and entry.fixtures:
        data = entry.fixtures[0].data
    else:
        raise InputError("check needs --data or --fixture")
    rep = check_compatibility(g, data, args.tolerance)
    report = _header("check", g, args.tolerance)
    report["data"] = data.to_json()
    report["report"] = rep.to_json()
    _emit(report, args.format, out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def run_obstruct(args, out=sys.stdout) -> int:
    g, _ = _resolve_geometry(args)
    res = obstruct(g, codazzi_tol=args.tolerance)
    report = _header("obstruct", g, args.tolerance)
    report["result"] = res.to_json()
    _emit(report, args.format, out)
    return EXIT_OK


def run_killing(args, out=sys.stdout) -> int:
    g, entry = _resolve_geometry(args)
    checks = []
    if args.data:
        obj = _read_json(args.data)
        data = ImmersionData.from_json(obj)
        if "spinor" in obj:
            field = FramedSpinorField.from_json(obj["spinor"])
        elif entry is not None and entry.special_spinor is not None:
            field = entry.special_spinor
        else:
            raise InputError("data file has no 'spinor' and the geometry has no special spinor")
        checks.append(spinor_report(g, field, data, args.tolerance))
    elif entry is not None and entry.fixtures:
        fx = entry.fixtures[0]
        for branch in sorted(fx.spinors, reverse=True):
            checks.append(spinor_report(g, fx.spinors[branch], fx.data.with_branch(branch),
                                        args.tolerance))
    else:
        raise InputError("killing needs --data or --fixture")
    report = _header("killing", g, args.tolerance)
    report["spinors"] = checks
    report["pass"] = all(c["pass"] for c in checks)
    _emit(report, args.format, out)
    return EXIT_OK if report["pass"] else EXIT_FAIL


def run_catalog_list(args, out=sys.stdout) -> int:
    entries = []
    for e in catalog_list():
        item = {"name": e.name, "parameters": e.parameters, "space_form": e.space_form,
                "geometry": e.geometry.to_json()}
        if e.special_spinor is not None:
            item["special_spinor"] = e.special_spinor.to_json()
        entries.append(item)
    _emit({"schema": SCHEMA, "command": "catalog-list", "entries": entries}, args.format, out)
    return EXIT_OK


def conventions_report(tol: float = 1e-10) -> dict:
    rep = clifford.check_representation()
    checks = {
        "-g1 g2 g3 = Id": rep["volume_element"] <= 1e-12,
        "anticommutation": rep["anticommutation"] <= 1e-12,
        "gamma anti-Hermitian": rep["anti_hermitian"] <= 1e-12,
        "e_i e_j = e_k (cyclic)": rep["cyclic_products"] <= 1e-12,
    }
    kt = build_e_kappa_tau(1.0, 1.0)
    expected = np.diag([1.0 - 2.0, 1.0 - 2.0, 2.0])
    checks["Ricci(E(kappa,tau)) calibration"] = bool(
        np.abs(ricci_matrix(kt.geometry) - expected).max() <= tol)
    checks["Ricci(Sol3) calibration"] = bool(
        np.abs(ricci_matrix(build_sol3().geometry) - np.diag([0.0, 0.0, -2.0])).max() <= tol)
    for label, entry in (("E(kappa,tau)", kt), ("Sol3", build_sol3()),
                         ("T_B", build_torus_bundle())):
        checks[f"{label} special spinor found"] = bool(
            entry.special_spinor is not None and entry.special_spinor_residuals().max() <= 1e-12)
    phi = np.array([0.6, 0.8j])
    worst = 0.0
    for entry in (kt, build_sol3(), build_torus_bundle(2.0)):
        for i in range(3):
            for j in range(3):
                if i != j:
                    diff = (spinorial_curvature(entry.geometry, i, j, phi)
                            - ricci_identity_rhs(entry.geometry, i, j, phi))
                    worst = max(worst, float(np.abs(diff).max()))
    checks["spinorial Ricci identity"] = worst <= tol
    return {
        "schema": SCHEMA,
        "command": "conventions",
        "gamma": "gamma_j = -i sigma_j (Pauli)",
        "hermitian_product": "<psi, phi> = sum psi_a conj(phi_a)",
        "spin_connection": "nabla_i = e_i + 1/2 sum_{j<k} Gamma[i][j][k] gamma_j gamma_k",
        "christoffel": "Gamma[i][j][k] = <nabla_{e_i} e_j, e_k>",
        "curvature": "R(X,Y) = nabla_Y nabla_X - nabla_X nabla_Y + nabla_[X,Y]; "
                     "R_ijkl = <R(e_i,e_j)e_k, e_l>, R_ijij = sectional curvature",
        "ricci": "Ric_ij = sum_k R_kikj",
        "checks": {k: "pass" if v else "FAIL" for k, v in checks.items()},
        "pass": all(checks.values()),
    }


def run_conventions(args, out=sys.stdout) -> int:
    report = conventions_report()
    _emit(report, args.format, out)
    return EXIT_OK if report["pass"] else EXIT_FAIL


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidData(f"{path}: {exc}") from exc


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--geometry", help=f"built-in ({', '.join(GEOMETRY_NAMES)}) or JSON file")
    common.add_argument("--kappa", type=float)
    common.add_argument("--tau", type=float)
    common.add_argument("--alpha", type=float)
    common.add_argument("--fixture", choices=FIXTURES)
    common.add_argument("--data", help="immersion data JSON file")
    common.add_argument("--tolerance", type=_positive, default=1e-9)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="spinim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, helptext in (
        ("check", run_check, "Gauss, Codazzi and structural residuals"),
        ("obstruct", run_obstruct, "non-immersibility test into R^4"),
        ("killing", run_killing, "generalized Killing / Dirac residuals"),
        ("catalog-list", run_catalog_list, "list built-in geometries"),
        ("conventions", run_conventions, "print sign conventions and calibration checks"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.set_defaults(func=fn)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (SpinimError, InputError, OSError) as exc:
        sys.stderr.write(f"spinim {args.command}: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

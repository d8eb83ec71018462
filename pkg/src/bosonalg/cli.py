"""Command-line front end.

Commands: verify, spectrum, classify, gershgorin, export-matrix.
Exit codes: 0 = success (paper findings included), 2 = usage error,
1 = internal failure / symbolic-numeric oracle disagreement.

Every artifact embeds the run manifest (command, parameters, version,
timestamp) verbatim; writes are atomic.  When a report goes to a file,
the matching figure (trajectory plot for sweeps, disk plot for
gershgorin) is rendered next to it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone

from . import __version__
from .scalars import ScalarError
from .spectral import (SpectralError, build_j0_matrix, char_poly,
                       closed_form_a_roots, eigenvector, gershgorin,
                       represent_j0, spectral_report, sweep_rows,
                       verify_roots)
from .verifier import OracleDisagreement, UnknownSuite, run_suite

LEGEND = """\
ASCII aliases: gamma (deformation), mu (su(1,1) deformation), w0 = omega_0,
w1/w2 = half-angle chain, J0/Jp/Jm (su(2)), Z* (su(1,1)), R*/Q* (fusion
towers), H*/Y* (Higgs), T1/T2/T3 = Theta_1..3 (Hahn), CJ/CZ/CR/CQ/CH
(Casimirs), OMp/OMm = Omega_+/-, lam/lam0/lam1 = lambda couplings,
s/s0/s1/sp = fusion scales, i = imaginary unit."""

SCHEMAS = {
    "verify": {
        "type": "object",
        "required": ["manifest", "suite", "params", "results"],
        "properties": {
            "manifest": {"$ref": "#/definitions/manifest"},
            "suite": {"type": "string"},
            "params": {"type": "object",
                       "properties": {"gamma": {}, "p": {"type": "integer"},
                                      "q": {"type": "integer"},
                                      "r": {"type": "integer"}}},
            "results": {"type": "array", "items": {
                "type": "object",
                "required": ["id", "anchor", "status", "residual",
                             "numeric_norms", "oracle_ok"],
                "properties": {
                    "status": {"enum": ["exact-zero", "nonzero-residual"]},
                    "numeric_norms": {"type": "array",
                                      "items": {"type": "number"}},
                    "oracle_ok": {"type": "boolean"}}}},
        },
    },
    "spectrum": {
        "type": "object",
        "required": ["manifest", "m", "gamma", "omega0", "matrix",
                     "gershgorin", "eigen"],
        "properties": {
            "gershgorin": {"type": "object",
                           "required": ["centers", "radius", "disjoint"]},
            "eigen": {"type": "array", "items": {
                "type": "object",
                "required": ["value", "vector", "pt"]}},
            "paper_diff": {"type": "array"},
        },
    },
    "manifest": {
        "type": "object",
        "required": ["command", "parameters", "tool", "version",
                     "timestamp"],
    },
}


def _manifest(cmd: str, params: dict) -> dict:
    return {
        "command": cmd,
        "parameters": params,
        "tool": "bosonalg",
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _atomic_write(path: str, text: str):
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _emit(doc_text: str, out: str | None):
    if out:
        _atomic_write(out, doc_text)
    else:
        sys.stdout.write(doc_text)
        if not doc_text.endswith("\n"):
            sys.stdout.write("\n")


def _parse_gamma(text: str, allow_sym: bool = True):
    if text in ("sym", "symbolic"):
        if not allow_sym:
            raise ValueError("this command needs a numeric gamma "
                             "(or --exact)")
        return None
    return float(text)


def _sidecar(out: str, suffix: str) -> str:
    base, _ = os.path.splitext(out)
    return base + suffix


# ---------------------------------------------------------------------------
# Subcommands


def cmd_verify(args) -> int:
    try:
        gamma = _parse_gamma(args.gamma)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    params = {"suite": args.suite, "gamma": args.gamma, "p": args.p,
              "q": args.q, "r": args.r, "seed": args.seed}
    try:
        report = run_suite(args.suite, p=args.p, q=args.q, r=args.r,
                           gamma=gamma, seed=args.seed)
    except UnknownSuite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ScalarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OracleDisagreement as exc:
        print(f"FAILURE: {exc}", file=sys.stderr)
        if exc.report is not None:
            doc = {"manifest": _manifest("verify", params), **exc.report}
            _emit(json.dumps(doc, indent=2, sort_keys=True), args.out)
        return 1
    doc = {"manifest": _manifest("verify", params), **report}
    if args.format == "json":
        _emit(json.dumps(doc, indent=2, sort_keys=True), args.out)
    else:
        buf = io.StringIO()
        buf.write(f"suite {report['suite']}  params {report['params']}\n")
        for e in report["results"]:
            norm = max(e["numeric_norms"])
            mark = "ok " if e["status"] == "exact-zero" else "FIND"
            buf.write(f"  [{mark}] {e['id']:28s} {e['status']:16s} "
                      f"max-norm {norm:.3e}\n")
            if e["status"] == "nonzero-residual":
                buf.write(f"         anchor: {e['anchor']}\n")
        findings = sum(1 for e in report["results"]
                       if e["status"] == "nonzero-residual")
        buf.write(f"{len(report['results'])} relations, "
                  f"{findings} findings, oracle agreement on all\n")
        buf.write(LEGEND + "\n")
        _emit(buf.getvalue(), args.out)
    return 0


def _sweep_grid(text: str):
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise ValueError(f"bad sweep spec {text!r}, expected a:b:n")
    if n < 2 or not (0.0 <= a < b < 1.0):
        raise ValueError(f"sweep grid {text!r} outside [0, 1)")
    return [a + (b - a) * k / (n - 1) for k in range(n)]


def cmd_spectrum(args) -> int:
    params = {"m": args.m, "gamma": args.gamma, "exact": args.exact,
              "sweep": args.sweep}
    if args.m < 1:
        print("error: m must be >= 1", file=sys.stderr)
        return 2
    if args.sweep:
        try:
            grid = _sweep_grid(args.sweep)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        rows = sweep_rows(args.m, grid)
        buf = io.StringIO()
        buf.write("# manifest: " + json.dumps(
            _manifest("spectrum", params), sort_keys=True) + "\n")
        w = csv.writer(buf)
        w.writerow(["gamma", "branch", "eigenvalue"])
        for g, k, val in rows:
            w.writerow([repr(g), k, repr(val)])
        _emit(buf.getvalue(), args.out)
        if args.out:
            from .plots import sweep_figure
            sweep_figure(rows, args.m, _sidecar(args.out, ".png"))
        return 0
    if args.exact:
        spec = build_j0_matrix(args.m)
        seq = char_poly(spec)
        bad = verify_roots(seq)
        doc = {
            "manifest": _manifest("spectrum", params),
            "m": args.m,
            "gamma": "symbolic",
            "eigenvalues_j0": [f"({args.m - 2 * k}/2)*w0"
                               for k in range(args.m + 1)],
            "root_check": "exact-zero" if not bad
            else f"FAILED at k={bad}",
            "eigenvectors": [[str(c) for c in eigenvector(seq, x)]
                             for x in closed_form_a_roots(args.m)],
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True), args.out)
        return 0 if not bad else 1
    try:
        gamma = _parse_gamma(args.gamma, allow_sym=False)
        report = spectral_report(args.m, gamma)
    except (ValueError, SpectralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = {"manifest": _manifest("spectrum", params), **report}
    _emit(json.dumps(doc, indent=2, sort_keys=True), args.out)
    return 0


def cmd_classify(args) -> int:
    try:
        gamma = _parse_gamma(args.gamma, allow_sym=False)
        report = spectral_report(args.m, gamma)
    except (ValueError, SpectralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = {
        "manifest": _manifest("classify", {"m": args.m,
                                           "gamma": args.gamma}),
        "m": args.m,
        "gamma": gamma,
        "states": [{"value": e["value"], "label": e["pt"]["label"],
                    "ratio": e["pt"]["ratio"]} for e in report["eigen"]],
    }
    _emit(json.dumps(doc, indent=2, sort_keys=True), args.out)
    return 0


def cmd_gershgorin(args) -> int:
    try:
        gamma = _parse_gamma(args.gamma, allow_sym=False)
        if not 0.0 < gamma < 1.0:
            raise ValueError(f"gamma={gamma} outside (0, 1)")
        disks = gershgorin(args.m, gamma)
    except (ValueError, SpectralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = {
        "manifest": _manifest("gershgorin", {"m": args.m,
                                             "gamma": args.gamma}),
        "m": args.m,
        "gamma": gamma,
        **disks,
    }
    _emit(json.dumps(doc, indent=2, sort_keys=True), args.out)
    if args.out:
        from .fock import MatrixRep, build_charge_sector, oracle_eigensolve
        from .plots import gershgorin_figure
        spec = build_j0_matrix(args.m)
        vals, _ = oracle_eigensolve(MatrixRep(
            build_charge_sector([(1, 1)], [args.m], 2),
            spec.numeric(gamma), "bargmann", False))
        gershgorin_figure(disks["centers"], disks["radius"], list(vals),
                          _sidecar(args.out, ".png"),
                          disjoint=disks["disjoint"])
    return 0


def cmd_export_matrix(args) -> int:
    try:
        gamma = _parse_gamma(args.gamma, allow_sym=False)
        rep = represent_j0(args.m, gamma)
    except (ValueError, SpectralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    man = _manifest("export-matrix", {"m": args.m, "gamma": args.gamma,
                                      "format": args.format})
    m = rep.to_numpy()
    if args.format == "csv":
        buf = io.StringIO()
        buf.write("# manifest: " + json.dumps(man, sort_keys=True) + "\n")
        w = csv.writer(buf)
        w.writerow(["row", "col", "re", "im"])
        for i in range(m.shape[0]):
            for j in range(m.shape[1]):
                if m[i, j] != 0:
                    w.writerow([i, j, repr(float(m[i, j].real)),
                                repr(float(m[i, j].imag))])
        _emit(buf.getvalue(), args.out)
    else:
        doc = {
            "manifest": man,
            "sector": rep.sector.metadata(),
            "scheme": rep.scheme,
            "entries": [[i, j, float(m[i, j].real), float(m[i, j].imag)]
                        for i in range(m.shape[0])
                        for j in range(m.shape[1]) if m[i, j] != 0],
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True), args.out)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bosonalg",
        description="Exact verification and spectral toolkit for deformed "
                    "boson-realized polynomial algebras.")
    p.add_argument("--help-schema", action="store_true",
                   help="print the JSON schemas of all artifacts and exit")
    sub = p.add_subparsers(dest="cmd")

    v = sub.add_parser("verify", help="run a relation suite")
    v.add_argument("--suite", required=True)
    v.add_argument("--gamma", default="sym",
                   help="'sym' or a number in (-1, 1)")
    v.add_argument("--p", type=int, default=1)
    v.add_argument("--q", type=int, default=1)
    v.add_argument("--r", type=int, default=0)
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--out")
    v.add_argument("--seed", type=int, default=None,
                   help="seed for the randomized free-parameter draws")
    v.set_defaults(fn=cmd_verify)

    s = sub.add_parser("spectrum", help="J0 spectrum on the degree-m "
                                        "sector")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--gamma", default="sym")
    s.add_argument("--exact", action="store_true",
                   help="symbolic closed form + exact root check")
    s.add_argument("--sweep", help="gamma grid a:b:n -> trajectory CSV")
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_spectrum)

    c = sub.add_parser("classify", help="partial-PT labels per eigenstate")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--gamma", required=True)
    c.add_argument("--out")
    c.set_defaults(fn=cmd_classify)

    g = sub.add_parser("gershgorin", help="disk table and verdict")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--gamma", required=True)
    g.add_argument("--out")
    g.set_defaults(fn=cmd_gershgorin)

    e = sub.add_parser("export-matrix", help="J0 matrix on the m-sector")
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--gamma", required=True)
    e.add_argument("--format", choices=("json", "csv"), default="json")
    e.add_argument("--out")
    e.set_defaults(fn=cmd_export_matrix)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.help_schema:
        print(json.dumps(SCHEMAS, indent=2, sort_keys=True))
        return 0
    if not getattr(args, "cmd", None):
        parser.print_help()
        return 2
    try:
        return args.fn(args)
    except OracleDisagreement as exc:
        print(f"FAILURE: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal failure contract
        print(f"internal error: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

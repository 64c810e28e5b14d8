"""Command-line front end: band structures, butterfly datasets, Lyapunov
scans, irrational-flux covers, loop states, and the invariant suite.

All artifacts are deterministic: floats printed with 15 significant digits,
UTF-8, "\n" line endings, ordering independent of the worker count.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import verify as verify_mod
from .dynamics import CocycleConfig, irrational_cover, lyapunov
from .errors import DomainError, HexspecError
from .flux import GOLDEN_MEAN, Flux, parse_flux
from .graph import ButterflyDataset, butterfly, graph_spectrum
from .hill import dirichlet_eigenvalues
from .loops import double_hexagon_state, verify_vertex_conditions
from .potentials import parse_potential


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _emit(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        _write_text(path, text)


def _threads(args) -> int:
    env = os.environ.get("HEXSPEC_THREADS")
    if args.threads is not None:
        return max(1, args.threads)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"bad HEXSPEC_THREADS value {env!r}")
    return 1


def _cmd_bands(args) -> int:
    V = parse_potential(args.potential)
    flux = parse_flux(args.flux)
    if not flux.is_rational:
        raise DomainError("bands needs a rational flux p/q")
    specs = graph_spectrum(V, flux, args.hill_bands)
    all_bands = [list(iv) for s in specs for iv in s.continuous_bands.intervals]
    payload = {
        "potential": V.describe(),
        "p": flux.p,
        "q": flux.q,
        "bands": all_bands,
        "measure": sum(hi - lo for lo, hi in all_bands),
        "hill_bands": [
            {
                "index": s.hill_band_index,
                "alpha": s.hill_band.alpha,
                "beta": s.hill_band.beta,
                "dirac_point": s.dirac_point,
                "dirichlet_points": list(s.dirichlet_points),
                "bands": [list(iv) for iv in s.continuous_bands.intervals],
            }
            for s in specs
        ],
    }
    _emit(args.output, json.dumps(payload, indent=2) + "\n")
    return 0


def _butterfly_csv(ds: ButterflyDataset) -> str:
    lines = ["p,q,hill_band,lo,hi"]
    for p, q, k, lo, hi in ds.rows:
        lines.append(f"{p},{q},{k},{_fmt(lo)},{_fmt(hi)}")
    return "\n".join(lines) + "\n"


def _butterfly_svg(ds: ButterflyDataset) -> str:
    width, height, ml, mb = 900, 640, 60, 40
    ys = [v for r in ds.rows for v in (r[3], r[4])]
    y0, y1 = min(ys), max(ys)
    pad = 0.02 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    def X(a):  # flux
        return ml + a * (width - ml - 20)

    def Y(v):  # energy, inverted axis
        return (height - mb) - (v - y0) / (y1 - y0) * (height - mb - 20)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="{height - 8}" font-size="14" '
        'text-anchor="middle">flux quantum p/q</text>',
        f'<text x="16" y="{height / 2:.0f}" font-size="14" text-anchor="middle" '
        f'transform="rotate(-90 16 {height / 2:.0f})">energy</text>',
    ]
    for p, q, _k, lo, hi in ds.rows:
        a = p / q
        parts.append(
            f'<line x1="{X(a):.2f}" y1="{Y(lo):.2f}" x2="{X(a):.2f}" '
            f'y2="{Y(hi):.2f}" stroke="black" stroke-width="0.6"/>'
        )
    for d in ds.dirichlet_lines:
        if y0 <= d <= y1:
            parts.append(
                f'<line x1="{X(0):.2f}" y1="{Y(d):.2f}" x2="{X(1):.2f}" '
                f'y2="{Y(d):.2f}" stroke="red" stroke-width="0.8" '
                'stroke-dasharray="6 4"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cmd_butterfly(args) -> int:
    V = parse_potential(args.potential)
    ds = butterfly(V, args.qmax, args.hill_bands, threads=_threads(args))
    out = args.output or "butterfly.csv"
    _write_text(out, _butterfly_csv(ds))
    sidecar = {
        "potential": ds.potential,
        "q_max": ds.q_max,
        "n_hill_bands": ds.n_hill_bands,
        "dirichlet_lines": list(ds.dirichlet_lines),
    }
    _write_text(out + ".json", json.dumps(sidecar, indent=2) + "\n")
    if args.svg:
        _write_text(args.svg, _butterfly_svg(ds))
    return 0


def _parse_lambdas(text: str) -> list[float]:
    if ":" in text:
        a, b, n = text.split(":")
        return [float(x) for x in np.linspace(float(a), float(b), int(n))]
    return [float(x) for x in text.split(",")]


def _cmd_lyapunov(args) -> int:
    flux = parse_flux(args.flux)
    cfg = CocycleConfig(flux=flux, theta_samples=args.theta_samples,
                        max_n=args.max_n, tolerance=args.tolerance)
    lines = ["lambda,L,converged"]
    for lam in _parse_lambdas(args.lambdas):
        est = lyapunov(lam, cfg)
        lines.append(f"{_fmt(lam)},{_fmt(est.value)},{int(est.converged)}")
    _emit(args.output, "\n".join(lines) + "\n")
    return 0


def _cmd_cover(args) -> int:
    alpha = parse_flux(args.alpha).alpha
    est = irrational_cover(alpha, args.level, args.c2)
    payload = {
        "alpha": alpha,
        "n": est.n,
        "p": est.p_n,
        "q": est.q_n,
        "radius": est.radius,
        "bands": [list(iv) for iv in est.intervals.intervals],
        "measure": est.intervals.measure,
        "bound": est.bound,
    }
    _emit(args.output, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_loopstate(args) -> int:
    V = parse_potential(args.potential)
    dirs = dirichlet_eigenvalues(V, args.lambda_max)
    if args.lambda_index < 1 or args.lambda_index > len(dirs):
        raise DomainError(
            f"lambda-index {args.lambda_index} out of range (found {len(dirs)} "
            f"Dirichlet eigenvalues below {args.lambda_max})"
        )
    lam = dirs[args.lambda_index - 1]
    state = double_hexagon_state(args.phi, lam, gamma1=args.gamma, V=V)
    report = verify_vertex_conditions(state, args.phi)
    payload = {
        "phi": args.phi,
        "dirichlet_lambda": lam,
        "gamma1": args.gamma,
        "outer_coeffs": [[a.real, a.imag] for a in state.outer_coeffs],
        "slicing_coeff": [state.slicing_coeff.real, state.slicing_coeff.imag],
        "slicing_beta": state.slicing_beta,
        "max_violation": report["max_violation"],
    }
    _emit(args.output, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_verify(args) -> int:
    ok = verify_mod.run_all()
    return 0 if ok else 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hexspec")
    ap.add_argument("--threads", type=int, default=None,
                    help="worker count (default: HEXSPEC_THREADS or 1)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bands", help="graph band structure at rational flux")
    p.add_argument("--potential", default="zero")
    p.add_argument("--flux", required=True)
    p.add_argument("--hill-bands", type=int, default=1)
    p.add_argument("--output", default=None)
    p.set_defaults(fn=_cmd_bands)

    p = sub.add_parser("butterfly", help="butterfly dataset over reduced p/q")
    p.add_argument("--potential", default="zero")
    p.add_argument("--qmax", type=int, default=50)
    p.add_argument("--hill-bands", type=int, default=5)
    p.add_argument("--output", default=None)
    p.add_argument("--svg", default=None)
    p.set_defaults(fn=_cmd_butterfly)

    p = sub.add_parser("lyapunov", help="Lyapunov exponent scan")
    p.add_argument("--flux", default="golden")
    p.add_argument("--lambdas", default="-6:10:17",
                   help="comma list or lo:hi:n range")
    p.add_argument("--theta-samples", type=int, default=256)
    p.add_argument("--max-n", type=int, default=2 ** 14)
    p.add_argument("--tolerance", type=float, default=5e-3)
    p.add_argument("--output", default=None)
    p.set_defaults(fn=_cmd_lyapunov)

    p = sub.add_parser("cover", help="certified cover at irrational flux")
    p.add_argument("--alpha", default="golden")
    p.add_argument("--level", type=int, default=6)
    p.add_argument("--c2", type=float, default=2.0)
    p.add_argument("--output", default=None)
    p.set_defaults(fn=_cmd_cover)

    p = sub.add_parser("loopstate", help="double-hexagon Dirichlet eigenstate")
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--lambda-index", type=int, default=1)
    p.add_argument("--lambda-max", type=float, default=250.0)
    p.add_argument("--potential", default="zero")
    p.add_argument("--gamma", type=int, default=0)
    p.add_argument("--output", default=None)
    p.set_defaults(fn=_cmd_loopstate)

    p = sub.add_parser("verify", help="run the cross-module invariant suite")
    p.set_defaults(fn=_cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except HexspecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

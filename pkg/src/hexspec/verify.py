"""Cross-module invariant suite behind the `hexspec verify` subcommand.

Each check is a named pure function returning (passed, detail); the runner
aggregates them deterministically (fixed RNG seed)."""

from __future__ import annotations

import math

import numpy as np

from . import jacobi
from .dynamics import irrational_cover, holder_probe
from .flux import Flux, GOLDEN_MEAN, golden_flux
from .hill import integrate_monodromy, hill_bands, dirichlet_eigenvalues
from .loops import double_hexagon_loop, hexagon_loop, rank_TPhi
from .potentials import parse_potential
from .qlambda import q_norm_bound, q_spectrum

SEED = 20260826


def _check_wronskian():
    worst = 0.0
    for spec in ("zero", "mathieu:20"):
        V = parse_potential(spec)
        for lam in np.linspace(-5.0, 100.0, 100):
            sol = integrate_monodromy(V, float(lam))
            worst = max(worst, abs(sol.wronskian - 1.0), abs(sol.c1 - sol.s1p))
    return worst <= 1e-9, f"max wronskian/symmetry deviation {worst:.2e}"


def _check_step_doubling():
    worst = 0.0
    for spec in ("zero", "mathieu:20"):
        V = parse_potential(spec)
        for lam in np.linspace(0.0, 100.0, 25):
            worst = max(worst, integrate_monodromy(V, float(lam)).step_error)
    return worst <= 1e-9, f"max step-doubling error {worst:.2e}"


def _check_band_dirichlet():
    worst = 0.0
    for spec, lmax in (("zero", 250.0), ("mathieu:20", 200.0)):
        V = parse_potential(spec)
        edges = [e for b in hill_bands(V, lmax) for e in (b.alpha, b.beta)]
        for d in dirichlet_eigenvalues(V, lmax):
            worst = max(worst, min(abs(d - e) for e in edges))
    return worst <= 1e-6, f"max Dirichlet/edge mismatch {worst:.2e}"


def _check_det_tr():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(50):
        q = int(rng.integers(1, 31))
        p = int(rng.integers(0, q))
        while math.gcd(p, q) != 1:
            p = int(rng.integers(0, q))
        theta = 0.5 + int(rng.integers(0, q)) / q
        lam = float(rng.uniform(-8, 8))
        det = np.linalg.det(lam * np.eye(q) - jacobi.build_Mq(theta, p, q))
        tr = jacobi._trace_Dq(np.array([lam]), theta, p, q)[0]
        worst = max(worst, abs(det - tr) / (1.0 + abs(tr)))
    return worst <= 1e-8, f"max relative det-tr deviation {worst:.2e}"


def _check_chambers():
    worst = 0.0
    for q in range(1, 51):
        p = 1 if q > 1 else 0
        lam = 1.37
        g1 = jacobi.chambers_Gq(lam, p, q)
        g2 = jacobi.chambers_Gq(lam, p, q, theta0=1.0 / (4.0 * q) + 0.137)
        worst = max(worst, abs(g1 - g2) / (1.0 + abs(g1)))
    return worst <= 1e-10, f"max theta-dependence {worst:.2e}"


def _check_lidskii():
    rng = np.random.default_rng(SEED + 1)
    for _ in range(100):
        q = int(rng.integers(1, 21))
        p = int(rng.integers(0, q))
        while math.gcd(p, q) != 1:
            p = int(rng.integers(0, q))
        theta = float(rng.uniform(0, 1))
        m = jacobi.theta_spectrum(p, q, theta).measure
        if m > 4.0 * abs(jacobi.coeff_c(theta)) + 1e-9:
            return False, f"measure {m} exceeds 4|c| at p/q={p}/{q}, theta={theta}"
    return True, "per-theta measure below 4|c(theta)| on 100 samples"


def _check_trace_identity():
    worst = 0.0
    rng = np.random.default_rng(SEED + 2)
    for _ in range(20):
        q = int(rng.integers(2, 15))
        p = int(rng.integers(1, q))
        while math.gcd(p, q) != 1:
            p = int(rng.integers(1, q))
        theta = float(rng.uniform(0.01, 0.45))
        lam = float(rng.uniform(-6, 6))
        flux = Flux.rational(p, q)
        D = jacobi.transfer_D_product(lam, theta, flux, q)
        prod_c = np.prod([jacobi.coeff_c(theta + j * p / q) for j in range(q)])
        tr_tilde = np.trace(D) / prod_c  # trace of the normalized cocycle
        lhs = tr_tilde * 2.0 * abs(math.sin(math.pi * q * (theta + 0.5)))
        rhs = np.trace(D) * 2.0 * abs(math.sin(math.pi * q * (theta + 0.5))) / abs(prod_c)
        worst = max(worst, abs(abs(lhs) - abs(rhs)))
        worst = max(worst, abs(abs(prod_c) - 2.0 * abs(math.sin(math.pi * q * (theta + 0.5)))))
    return worst <= 1e-9, f"normalized-trace identity deviation {worst:.2e}"


def _check_measure_decay():
    fib = [(1, 2), (2, 3), (3, 5), (5, 8), (8, 13), (13, 21)]
    prev = math.inf
    for p, q in fib:
        m = jacobi.rational_spectrum(p, q).measure
        if not m < 16.0 * math.pi / (3.0 * q) or not m < prev:
            return False, f"measure {m} fails at {p}/{q}"
        prev = m
    return True, "measures decrease along Fibonacci convergents"


def _check_q_symmetry():
    for q in range(1, 11):
        for p in range(q):
            if math.gcd(p, q) != 1:
                continue
            bands = q_spectrum(jacobi.rational_spectrum(p, q)).bands
            iv = np.array(bands.merged().intervals)
            neg = np.array(sorted([(-b, -a) for a, b in iv]))
            if np.max(np.abs(iv - neg)) > 1e-12 or not bands.contains(0.0):
                return False, f"symmetry/zero fails at {p}/{q}"
    return True, "negation symmetry and 0 membership for q <= 10"


def _check_norm_bound():
    vals = [q_norm_bound(2.0 * math.pi * k / 12) for k in range(1, 12)]
    if all(v < 1.0 for v in vals):
        return True, f"max bound {max(vals):.6f} < 1"
    return False, f"bound reaches {max(vals)}"


def _check_correction_integral():
    th = (np.arange(200000) + 0.5) / 200000
    val = float(np.mean(np.log(np.abs(jacobi.coeff_c(th)))))
    return abs(val) <= 1e-3, f"mean log|c| = {val:.2e}"


def _check_rank_dichotomy():
    for phi in np.linspace(0.0, 2.0 * math.pi, 50):
        for loop in (hexagon_loop(phi), double_hexagon_loop(phi)):
            x = (loop.q_enc * phi) % (2.0 * math.pi)
            trivial = min(x, 2.0 * math.pi - x) < 1e-9
            expected = loop.n_edges - (1 if trivial else 0)
            if rank_TPhi(loop, phi) != expected:
                return False, f"rank mismatch at phi={phi}, n={loop.n_edges}"
    return True, "rank dichotomy exact on 50-point flux grid"


def _check_cover_containment():
    g = golden_flux()
    ratios = [
        holder_probe(Flux.rational(*a), Flux.rational(*b))["ratio"]
        for a, b in zip(g.convergents[2:8], g.convergents[3:9])
    ]
    c2 = 1.5 * max(ratios)
    deep = jacobi.rational_spectrum(*g.convergents[7])
    cover = irrational_cover(GOLDEN_MEAN, 5, c2)
    ok = cover.intervals.covers(deep)
    return ok, f"fitted C2={c2:.3f}, containment={ok}"


CHECKS = [
    ("hill.wronskian_symmetry", _check_wronskian),
    ("hill.step_doubling", _check_step_doubling),
    ("hill.band_dirichlet_consistency", _check_band_dirichlet),
    ("jacobi.det_equals_tr", _check_det_tr),
    ("jacobi.chambers_theta_independence", _check_chambers),
    ("jacobi.lidskii_bound", _check_lidskii),
    ("jacobi.normalized_trace_identity", _check_trace_identity),
    ("jacobi.measure_decay", _check_measure_decay),
    ("qlambda.symmetry_and_zero", _check_q_symmetry),
    ("qlambda.norm_bound", _check_norm_bound),
    ("dynamics.correction_integral", _check_correction_integral),
    ("dynamics.cover_containment", _check_cover_containment),
    ("loops.rank_dichotomy", _check_rank_dichotomy),
]


def run_all(report=print) -> bool:
    all_ok = True
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        all_ok &= ok
        report(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return all_ok

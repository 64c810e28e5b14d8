"""Hill equation on one edge: monodromy, discriminant, bands, Dirichlet data.

Everything is driven by the fundamental solutions c and s of
-psi'' + V psi = lambda psi on (0,1) with (c, c')(0) = (1, 0) and
(s, s')(0) = (0, 1); the discriminant is Delta(lambda) = s'(1), which by
evenness of V equals c(1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import minimize_scalar

from .errors import DomainError, IntegrationError
from .potentials import PotentialSpec

DEFAULT_STEPS = 4096
WRONSKIAN_TOL = 1e-9
EDGE_TOL = 1e-12


@dataclass(frozen=True)
class MonodromySolution:
    """Values of the fundamental solutions at t=1 for a single energy."""

    lam: float
    c1: float
    c1p: float
    s1: float
    s1p: float
    delta: float
    step_error: float  # |Delta(steps) - Delta(2*steps)|

    @property
    def wronskian(self) -> float:
        return self.c1 * self.s1p - self.c1p * self.s1


@dataclass(frozen=True)
class HillBand:
    index: int  # 1-based
    alpha: float
    beta: float
    monotonicity: str  # "increasing" | "decreasing" (Delta on the interior)

    @property
    def width(self) -> float:
        return self.beta - self.alpha


def _rk4_loop(Vn: np.ndarray, lams: np.ndarray, steps: int):
    """RK4 over [0,1] on (u, u')' = (u', (V - lam) u) for both fundamental
    solutions; Vn holds V at step starts and midpoints."""
    h = 1.0 / steps
    c = np.ones_like(lams)
    cp = np.zeros_like(lams)
    s = np.zeros_like(lams)
    sp = np.ones_like(lams)
    for i in range(steps):
        w0 = Vn[2 * i] - lams
        wm = Vn[2 * i + 1] - lams
        w1 = Vn[2 * i + 2] - lams
        for idx in range(2):
            u, up = (c, cp) if idx == 0 else (s, sp)
            k1u = up
            k1p = w0 * u
            k2u = up + 0.5 * h * k1p
            k2p = wm * (u + 0.5 * h * k1u)
            k3u = up + 0.5 * h * k2p
            k3p = wm * (u + 0.5 * h * k2u)
            k4u = up + h * k3p
            k4p = w1 * (u + h * k3u)
            un = u + (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
            upn = up + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
            if idx == 0:
                c, cp = un, upn
            else:
                s, sp = un, upn
    return c, cp, s, sp


try:  # jit-compiled kernel; the numpy loop above is the fallback
    from numba import njit

    _rk4_loop = njit(cache=True)(_rk4_loop)
except ImportError:  # pragma: no cover
    pass


def _rk4_fundamental(V: PotentialSpec, lams: np.ndarray, steps: int):
    """Integrate c and s for a batch of energies; returns (c1, c1p, s1, s1p)."""
    h = 1.0 / steps
    # V at step starts and midpoints; nodes are lambda-independent
    t_nodes = np.arange(2 * steps + 1) * (0.5 * h)
    Vn = np.ascontiguousarray(V(t_nodes), dtype=float)
    lams = np.ascontiguousarray(lams, dtype=float)
    c, cp, s, sp = _rk4_loop(Vn, lams, steps)
    for arr in (c, cp, s, sp):
        if not np.all(np.isfinite(arr)):
            bad = lams[~np.isfinite(arr)][:1]
            raise IntegrationError(f"non-finite state integrating at lambda={bad}")
    return c, cp, s, sp


def integrate_monodromy(
    V: PotentialSpec, lam: float, steps: int = DEFAULT_STEPS
) -> MonodromySolution:
    """Monodromy data at one energy, with a step-doubling error estimate."""
    if steps < 64:
        raise DomainError("steps must be >= 64")
    lams = np.array([float(lam)])
    c1, c1p, s1, s1p = (x[0] for x in _rk4_fundamental(V, lams, steps))
    _, _, _, s1p_fine = (x[0] for x in _rk4_fundamental(V, lams, 2 * steps))
    return MonodromySolution(
        lam=float(lam),
        c1=float(c1),
        c1p=float(c1p),
        s1=float(s1),
        s1p=float(s1p_fine),
        delta=float(s1p_fine),
        step_error=abs(float(s1p) - float(s1p_fine)),
    )


def discriminant(V: PotentialSpec, lam: float, steps: int = DEFAULT_STEPS) -> float:
    return integrate_monodromy(V, lam, steps).delta


def discriminant_batch(
    V: PotentialSpec, lams, steps: int = DEFAULT_STEPS
) -> np.ndarray:
    """Delta at many energies in one vectorized integration (no step doubling)."""
    _, _, _, s1p = _rk4_fundamental(V, np.asarray(lams, dtype=float), steps)
    return s1p


def s_at_one_batch(V: PotentialSpec, lams, steps: int = DEFAULT_STEPS) -> np.ndarray:
    """s_lambda(1) at many energies (vanishes exactly on the Dirichlet spectrum)."""
    _, _, s1, _ = _rk4_fundamental(V, np.asarray(lams, dtype=float), steps)
    return s1


def _bisect(f, a, b, fa, fb, xtol=1e-12):
    """Plain bisection for a bracketed sign change."""
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    assert fa * fb < 0.0
    while b - a > xtol:
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if fa * fm < 0.0:
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def _bisect_many(eval_batch, lo, hi, flo, xtol=1e-13):
    """Bisection on many brackets at once; eval_batch maps a lambda array
    to function values (one vectorized integration per iteration)."""
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    sign_lo = np.sign(flo)
    while np.max(hi - lo) > xtol:
        mid = 0.5 * (lo + hi)
        fm = eval_batch(mid)
        left = sign_lo * fm > 0.0
        lo = np.where(left, mid, lo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def _grid_roots(vals, grid, eval_batch, xtol=1e-13):
    """Refine all sign changes of a sampled function to roots."""
    idx = np.nonzero(vals[:-1] * vals[1:] < 0.0)[0]
    exact = [float(grid[i]) for i in np.nonzero(vals == 0.0)[0]]
    if idx.size == 0:
        return sorted(exact)
    roots = _bisect_many(eval_batch, grid[idx], grid[idx + 1], vals[idx], xtol)
    return sorted(exact + list(roots))


def hill_bands(
    V: PotentialSpec,
    lambda_max: float,
    steps: int = DEFAULT_STEPS,
    grid_step: float = 0.25,
) -> list[HillBand]:
    """All Hill bands [alpha_n, beta_n] with beta_n <= lambda_max.

    Band edges satisfy Delta(lambda)^2 = 1, and by the Wronskian plus the
    symmetry c(1) = s'(1) one has Delta^2 - 1 = c'(1) * s(1).  Both factors
    are Sturm-Liouville eigenvalue conditions with simple roots, so the
    edges are found as sign changes of c'(1) and s(1) separately; a closed
    gap is where one root of each coincides.
    """
    lam_lo = min(0.0, V.min_value) - 1.0
    if lambda_max <= lam_lo:
        return []
    n_grid = max(16, int(np.ceil((lambda_max - lam_lo) / grid_step)) + 1)
    grid = np.linspace(lam_lo, lambda_max, n_grid)
    _, c1p, s1, _ = _rk4_fundamental(V, grid, steps)

    neumann = _grid_roots(
        c1p, grid, lambda l: _rk4_fundamental(V, l, steps)[1], xtol=EDGE_TOL
    )
    dirichlet = _grid_roots(
        s1, grid, lambda l: _rk4_fundamental(V, l, steps)[2], xtol=EDGE_TOL
    )
    edges = sorted(neumann + dirichlet)
    if len(edges) < 2:
        return []

    edge_delta = discriminant_batch(V, edges, steps)
    bands = []
    for k in range(0, len(edges) - 1, 2):
        lo, hi = edges[k], edges[k + 1]
        if hi > lambda_max + EDGE_TOL:
            break
        mono = "decreasing" if edge_delta[k] > 0.0 else "increasing"
        bands.append(HillBand(index=len(bands) + 1, alpha=lo, beta=hi, monotonicity=mono))
    return bands


def hill_bands_first_n(
    V: PotentialSpec, n_bands: int, steps: int = DEFAULT_STEPS
) -> list[HillBand]:
    """First n Hill bands, extending the scan window until all are found."""
    lam_max = max(30.0, 12.0 * n_bands**2)
    while True:
        bands = hill_bands(V, lam_max, steps)
        if len(bands) >= n_bands:
            return bands[:n_bands]
        lam_max *= 2.0


def dirichlet_eigenvalues(
    V: PotentialSpec,
    lambda_max: float,
    steps: int = DEFAULT_STEPS,
    grid_step: float = 0.25,
) -> list[float]:
    """Roots of s_lambda(1) below lambda_max, refined by bisection.

    Dirichlet eigenvalues of a regular Sturm-Liouville problem are simple
    and well-separated, so sign changes on the coarse grid find them all.
    """
    lam_lo = min(0.0, V.min_value) - 1.0
    n_grid = max(16, int(np.ceil((lambda_max - lam_lo) / grid_step)) + 1)
    grid = np.linspace(lam_lo, lambda_max, n_grid)
    s1 = s_at_one_batch(V, grid, steps)
    return _grid_roots(
        s1, grid, lambda l: _rk4_fundamental(V, l, steps)[2], xtol=EDGE_TOL
    )


def invert_discriminant_on_band(
    V: PotentialSpec, band: HillBand, w: float, steps: int = DEFAULT_STEPS
) -> float:
    """The unique lambda in the band with Delta(lambda) = w, |w| <= 1."""
    if not -1.0 <= w <= 1.0:
        raise DomainError(f"discriminant target {w} outside [-1, 1]")
    f = lambda lam: float(discriminant_batch(V, [lam], steps)[0])
    a, b = band.alpha, band.beta
    fa, fb = f(a) - w, f(b) - w
    # band edges carry Delta = +-1 exactly up to root tolerance
    if abs(fa) <= 1e-9 and (w == 1.0 or w == -1.0) and abs(f(a) - w) <= 1e-9:
        if abs(fa) <= abs(fb):
            return a
    if fa * fb > 0.0:
        # w at (or numerically beyond) an edge value
        return a if abs(fa) < abs(fb) else b
    return _bisect(lambda x: f(x) - w, a, b, fa, fb, xtol=1e-13)


class BandInverter:
    """Fast vectorized inverse of Delta on one Hill band.

    Delta is sampled densely on the band and modeled by a cubic spline
    (Delta is entire in lambda, so the model is accurate to ~1e-11);
    targets are then inverted by vectorized bisection on the spline.
    """

    def __init__(self, V: PotentialSpec, band: HillBand, n_samples: int = 2049,
                 steps: int = DEFAULT_STEPS):
        self.band = band
        lams = np.linspace(band.alpha, band.beta, n_samples)
        vals = discriminant_batch(V, lams, steps)
        self._spline = CubicSpline(lams, vals)
        self._increasing = band.monotonicity == "increasing"

    def __call__(self, w):
        """Invert an array of targets in [-1, 1]; returns lambdas in the band."""
        w = np.atleast_1d(np.asarray(w, dtype=float))
        if np.any(w < -1.0 - 1e-12) or np.any(w > 1.0 + 1e-12):
            raise DomainError("discriminant target outside [-1, 1]")
        w = np.clip(w, -1.0, 1.0)
        lo = np.full(w.shape, self.band.alpha)
        hi = np.full(w.shape, self.band.beta)
        sign = 1.0 if self._increasing else -1.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            below = sign * (self._spline(mid) - w) < 0.0
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return 0.5 * (lo + hi)

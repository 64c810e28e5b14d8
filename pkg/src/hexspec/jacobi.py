"""Reduced quasi-periodic Jacobi operator at rational flux: transfer matrices,
Chambers' polynomial G_q, the decoupled block M_q, the periodic block M_{q,nu},
and the per-theta / full rational-flux band structure."""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import ConsistencyError, DomainError
from .flux import Flux
from .intervals import BandList

#: tolerance for the theta in 1/2 + (1/q)Z membership test of build_Mq
THETA_LATTICE_TOL = 1e-12

#: default Chambers evaluation angle is 1/(4q); see chambers_Gq


def coeff_c(theta) -> complex:
    """Off-diagonal coefficient c(theta) = 1 + e^{-2 pi i theta}."""
    return 1.0 + np.exp(-2j * np.pi * np.asarray(theta, dtype=float))


def coeff_v(theta) -> float:
    """Diagonal coefficient v(theta) = 2 cos(2 pi theta)."""
    return 2.0 * np.cos(2.0 * np.pi * np.asarray(theta, dtype=float))


def transfer_D(lam: float, theta: float, flux: Flux) -> np.ndarray:
    """Singularity-free transfer matrix D = c * A at one angle.

    D(theta) = [[lam - v(theta), -conj(c(theta - alpha))], [c(theta), 0]].
    """
    alpha = flux.alpha
    return np.array(
        [
            [lam - coeff_v(theta), -np.conj(coeff_c(theta - alpha))],
            [coeff_c(theta), 0.0],
        ],
        dtype=complex,
    )


def transfer_D_product(lam: float, theta: float, flux: Flux, n: int) -> np.ndarray:
    """D_n(theta) = D(theta + (n-1) alpha) ... D(theta + alpha) D(theta)."""
    alpha = flux.alpha
    out = np.eye(2, dtype=complex)
    for j in range(n):
        out = transfer_D(lam, theta + j * alpha, flux) @ out
    return out


def _trace_Dq(lam, theta: float, p: int, q: int):
    """tr(D_q(theta)) for a batch of energies, computed as a scalar recursion
    on the four matrix entries (vectorized over lam)."""
    lam = np.asarray(lam, dtype=complex)
    alpha = p / q
    a = np.ones_like(lam)
    b = np.zeros_like(lam)
    c_ = np.zeros_like(lam)
    d = np.ones_like(lam)
    for j in range(q):
        th = theta + j * alpha
        t = lam - coeff_v(th)
        u = -np.conj(coeff_c(th - alpha))
        w = coeff_c(th)
        a, b, c_, d = t * a + u * c_, t * b + u * d, w * a, w * b
    return a + d


def chambers_Gq(lam, p: int, q: int, theta0: float | None = None):
    """Chambers' theta-independent polynomial G_q(lambda).

    tr(D_q(theta)) = -2 cos(2 pi q theta) + G_q(lambda); we evaluate at
    theta0 = 1/(4q), which stays away from the decoupling lattice and from
    the extremizers of the trace.
    """
    if theta0 is None:
        theta0 = 1.0 / (4.0 * q)
    tr = _trace_Dq(lam, theta0, p, q)
    g = tr + 2.0 * math.cos(2.0 * math.pi * q * theta0)
    g = np.real_if_close(g, tol=1e6)
    if np.iscomplexobj(g) and np.max(np.abs(np.imag(g))) > 1e-8 * (1 + np.max(np.abs(g))):
        raise ConsistencyError("Chambers polynomial came out complex")
    return np.real(g)


def build_Mq(theta: float, p: int, q: int) -> np.ndarray:
    """Decoupled q x q Hermitian block at theta in 1/2 + (1/q)Z.

    Satisfies det(lam*I - M_q(theta)) = tr(D_q(theta)).
    """
    x = (theta - 0.5) * q
    if abs(x - round(x)) > THETA_LATTICE_TOL * q:
        raise DomainError(f"theta={theta} not in 1/2 + (1/{q})Z")
    # every theta in the lattice yields the same decoupled block: the
    # restriction of the infinite matrix between two vanishing couplings,
    # anchored at the angle 1/2 where c vanishes
    alpha = p / q
    M = np.zeros((q, q), dtype=complex)
    for j in range(q):
        M[j, j] = coeff_v(0.5 - j * alpha)
    for j in range(q - 1):
        cj = coeff_c(0.5 - (j + 1) * alpha)
        M[j + 1, j] = cj
        M[j, j + 1] = np.conj(cj)
    return M


def build_Mq_nu(theta: float, nu: float, p: int, q: int) -> np.ndarray:
    """Periodic q x q Jacobi block with Floquet corner phase e^{2 pi i nu}.

    Diagonal v(theta - j p/q), off-diagonal |c(theta - (j+1) p/q)|, corners
    e^{+-2 pi i nu} |c(theta)|.  Real symmetric for nu in {0, 1/2}.
    """
    alpha = p / q
    if q == 1:
        val = coeff_v(theta) + 2.0 * math.cos(2.0 * math.pi * nu) * abs(coeff_c(theta))
        return np.array([[val]], dtype=complex)
    M = np.zeros((q, q), dtype=complex)
    for j in range(q):
        M[j, j] = coeff_v(theta - j * alpha)
    for j in range(q - 1):
        b = abs(coeff_c(theta - (j + 1) * alpha))
        M[j + 1, j] = b
        M[j, j + 1] = b
    # the wrap-around coupling accumulates: for q=2 it shares the entry with
    # the tridiagonal coupling
    corner = cmath.exp(2j * math.pi * nu) * abs(coeff_c(theta))
    M[0, q - 1] += corner
    M[q - 1, 0] += corner.conjugate()
    return M


def _eigs_nu(theta: float, nu: float, p: int, q: int) -> np.ndarray:
    return np.linalg.eigvalsh(build_Mq_nu(theta, nu, p, q))


def theta_spectrum(p: int, q: int, theta: float) -> BandList:
    """Per-theta spectrum: q possibly-touching bands whose k-th endpoints are
    the k-th eigenvalues of the nu=1/2 and nu=0 periodic blocks."""
    e_half = _eigs_nu(theta, 0.5, p, q)
    e_zero = _eigs_nu(theta, 0.0, p, q)
    los = np.minimum(e_half, e_zero)
    his = np.maximum(e_half, e_zero)
    # interlacing: consecutive bands may touch but must not overlap
    overlap = his[:-1] - los[1:]
    if q > 1 and np.max(overlap) > 1e-9 * (1.0 + np.max(np.abs(his))):
        raise ConsistencyError(
            f"band interlacing violated for p/q={p}/{q}, theta={theta}: "
            f"max overlap {np.max(overlap):.3e}"
        )
    return BandList.from_pairs(zip(los, his))


# extremizing angles for the full rational spectrum; the lower/upper envelope
# of the trace window [l_q(theta), L_q(theta)] is attained at these points
def _theta_stars(q: int) -> tuple[float, float]:
    if q % 2 == 0:
        return (q + 1) / (2.0 * q), 1.0 / (6.0 * q)
    return (3.0 * q - 1.0) / (6.0 * q), (q - 1.0) / (2.0 * q)


def rational_spectrum(p: int, q: int) -> BandList:
    """Sigma_{2 pi p/q}: union over theta of the per-theta spectra, realized as
    the band-wise hull of two extremizing angles; exactly q possibly-touching
    bands."""
    if math.gcd(p, q) != 1:
        raise DomainError(f"flux {p}/{q} is not reduced")
    th_a, th_b = _theta_stars(q)
    lo_a, hi_a = _endpoint_arrays(p, q, th_a)
    lo_b, hi_b = _endpoint_arrays(p, q, th_b)
    los = np.minimum(lo_a, lo_b)
    his = np.maximum(hi_a, hi_b)
    return BandList.from_pairs(zip(los, his))


def _endpoint_arrays(p: int, q: int, theta: float) -> tuple[np.ndarray, np.ndarray]:
    e_half = _eigs_nu(theta, 0.5, p, q)
    e_zero = _eigs_nu(theta, 0.0, p, q)
    return np.minimum(e_half, e_zero), np.maximum(e_half, e_zero)


def spectrum_measure(bands: BandList) -> float:
    """Lebesgue measure of a band list (after merging touching intervals)."""
    return bands.measure

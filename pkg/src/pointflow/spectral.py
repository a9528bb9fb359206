"""Periodic Fourier machinery and the Picard map for the perturbed problem.

Near the singularity the difference v between a very weak solution and
the matching Landau field solves a Stokes problem perturbed by the Landau
drift U and its own quadratic term,

    -Delta v + div( U (x) v + v (x) (U + v) ) + grad pi = f,   div v = 0.

The fixed point of the Picard map

    Phi(v) = StokesSolve( f - div( U (x) v + v (x) (U + v) ) )

is that solution, and Phi is a strict contraction when the drift and the
data are small.  This module demonstrates the mechanism at desk scale in
a deliberately simplified geometry: the ball with Dirichlet conditions
and its divergence-fixing corrector are replaced by a periodic torus of
side 4 pi (so the ball of radius 2 about the origin embeds), where the
Stokes inverse is exact in Fourier space after Leray projection.  The
contraction estimate itself (small drift and data force a ratio below
one half) does not depend on that geometry choice.

The drift is the Landau field with a C^3 radial cutoff vanishing inside
delta_in / 2 and outside delta_out, re-projected to be divergence free
(the torus grid cannot represent the 1/|x| singularity); the deviation
caused by the projection is reported.  Quadratic products are dealiased
by the 2/3 rule.
"""

import numpy as np
from dataclasses import dataclass
from functools import lru_cache

from .landau import LandauParams, landau_eval
from .quadrature import sobolev_norm
from .weakform import smoothstep7

__all__ = [
    "BOX", "SpectralField", "grid_coordinates",
    "leray_project", "stokes_solve", "dealias",
    "MollifiedDrift", "make_mollified_drift", "make_forcing",
    "picard_step", "IterationTrace", "ContractionDivergedError",
    "run_contraction",
]

# torus side: 2 pi * 2, chosen so the ball of radius 2 embeds
BOX = 4.0 * np.pi

_DIVERGENCE_FACTOR = 1e3


@lru_cache(maxsize=8)
def _wavenumbers(n):
    """(k, k^2, 1/k^2 with the zero mode masked) for an n^3 grid."""
    k1 = 2.0 * np.pi * np.fft.fftfreq(n, d=BOX / n)
    kx, ky, kz = np.meshgrid(k1, k1, k1, indexing="ij")
    k = np.stack([kx, ky, kz])
    k2 = kx**2 + ky**2 + kz**2
    inv_k2 = np.zeros_like(k2)
    inv_k2[k2 > 0.0] = 1.0 / k2[k2 > 0.0]
    return k, k2, inv_k2


@lru_cache(maxsize=8)
def _dealias_mask(n):
    """2/3-rule mask on integer frequencies."""
    f = np.fft.fftfreq(n, d=1.0 / n)
    fx, fy, fz = np.meshgrid(f, f, f, indexing="ij")
    cut = n // 3
    return (np.abs(fx) <= cut) & (np.abs(fy) <= cut) & (np.abs(fz) <= cut)


def grid_coordinates(n):
    """(3, n, n, n) coordinates of the torus grid, origin at a grid point."""
    x1 = (np.arange(n) - n // 2) * (BOX / n)
    return np.stack(np.meshgrid(x1, x1, x1, indexing="ij"))


@dataclass
class SpectralField:
    """Periodic 3-vector field stored as Fourier coefficients (3, n, n, n).

    Fields built from real samples have Hermitian-symmetric coefficients;
    the mean mode is kept at zero by the operations here.
    """

    coeff: np.ndarray

    def __post_init__(self):
        self.coeff = np.asarray(self.coeff, dtype=complex)
        n = self.coeff.shape[1]
        if self.coeff.shape != (3, n, n, n):
            raise ValueError("coefficients must have shape (3, n, n, n)")

    @property
    def n(self):
        return self.coeff.shape[1]

    @classmethod
    def zeros(cls, n):
        return cls(np.zeros((3, n, n, n), dtype=complex))

    @classmethod
    def from_physical(cls, values):
        values = np.asarray(values)
        return cls(np.fft.fftn(values, axes=(1, 2, 3)))

    def to_physical(self):
        """Real-space samples (3, n, n, n)."""
        return np.fft.ifftn(self.coeff, axes=(1, 2, 3)).real

    def reality_defect(self):
        """Largest imaginary part of the inverse transform."""
        return float(np.max(np.abs(np.fft.ifftn(self.coeff, axes=(1, 2, 3)).imag)))

    def divergence_defect(self):
        """max |k . vhat| over modes, scaled by the field's gradient size."""
        k, _, _ = _wavenumbers(self.n)
        div = np.einsum("aijk,aijk->ijk", k, self.coeff)
        scale = np.max(np.abs(k) * np.max(np.abs(self.coeff)))
        return float(np.max(np.abs(div)) / scale) if scale > 0.0 else 0.0

    def mean_mode(self):
        return self.coeff[:, 0, 0, 0] / self.n**3

    def copy(self):
        return SpectralField(self.coeff.copy())

    def __add__(self, other):
        return SpectralField(self.coeff + other.coeff)

    def __sub__(self, other):
        return SpectralField(self.coeff - other.coeff)

    def __rmul__(self, scalar):
        return SpectralField(scalar * self.coeff)

    def l2(self):
        """Physical L^2 norm over the torus (via Parseval)."""
        return float(np.sqrt(np.sum(np.abs(self.coeff)**2) *
                             BOX**3 / self.n**6))

    def w1r(self, r):
        """Discrete W^{1,r} norm with spectral gradients."""
        return sobolev_norm(self.to_physical(), BOX, r,
                            gradient="spectral").value


def leray_project(fld):
    """Project onto divergence-free fields: vhat -= k (k . vhat) / |k|^2.

    Idempotent, annihilates gradients, fixes solenoidal fields; the mean
    mode is zeroed.  The Nyquist planes are dropped as well: the
    projector's off-diagonal entries are odd in k, which those
    self-conjugate modes cannot represent without breaking the Hermitian
    symmetry of real fields.
    """
    n = fld.n
    k, _, inv_k2 = _wavenumbers(n)
    kdotv = np.einsum("aijk,aijk->ijk", k, fld.coeff)
    out = fld.coeff - k * (kdotv * inv_k2)
    out[:, 0, 0, 0] = 0.0
    if n % 2 == 0:
        out[:, n // 2, :, :] = 0.0
        out[:, :, n // 2, :] = 0.0
        out[:, :, :, n // 2] = 0.0
    return SpectralField(out)


def stokes_solve(forcing):
    """Exact periodic Stokes solve: -Delta v + grad pi = f, div v = 0.

    In Fourier space v = P f / |k|^2 with P the Leray projector; the
    pressure gradient is eliminated exactly.  Rejects forcing with a
    nonzero mean mode (the torus Stokes operator cannot balance it).
    """
    mean = np.abs(forcing.mean_mode())
    scale = np.max(np.abs(forcing.coeff)) / forcing.n**3
    if np.any(mean > 1e-10 * max(scale, 1e-300)):
        raise ValueError("forcing must have zero mean")
    k, _, inv_k2 = _wavenumbers(forcing.n)
    proj = leray_project(forcing)
    return SpectralField(proj.coeff * inv_k2)


def dealias(fld):
    """Zero every mode above the 2/3 cutoff."""
    return SpectralField(fld.coeff * _dealias_mask(fld.n))


@dataclass(frozen=True)
class MollifiedDrift:
    """Landau drift with a radial C^3 cutoff, realized on the torus grid.

    raw_samples holds chi * U, which vanishes exactly for |x| < delta_in/2
    and |x| > delta_out; `field` is its Leray projection (the grid drift
    must be divergence free), and projection_deviation is the relative
    grid-L^2 change caused by the projection.
    """

    params: LandauParams
    delta_in: float
    delta_out: float
    field: SpectralField
    raw_samples: np.ndarray
    projection_deviation: float
    phys_dealiased: np.ndarray = None  # derived; filled in __post_init__

    def __post_init__(self):
        phys = dealias(self.field).to_physical()
        object.__setattr__(self, "phys_dealiased", phys)

    @property
    def n(self):
        return self.field.n


def make_mollified_drift(params, n, delta_in=0.3, delta_out=1.5):
    """Sample chi(|x|) U^b on the n^3 torus grid and re-project.

    chi rises from 0 to 1 across [delta_in/2, delta_in] and falls back to
    0 across [3 delta_out/4, delta_out], both through the C^3 septic step,
    so the sampled drift is C^3 and band-limited enough for the grid.
    """
    delta_in = float(delta_in)
    delta_out = float(delta_out)
    if not (0.0 < delta_in < delta_out):
        raise ValueError("need 0 < delta_in < delta_out")
    if delta_out >= BOX / 2.0:
        raise ValueError("outer cutoff must fit inside the torus")
    n = int(n)

    coords = grid_coordinates(n)
    rho = np.sqrt((coords**2).sum(axis=0))
    rise, _, _, _ = smoothstep7((rho - delta_in / 2.0) / (delta_in / 2.0))
    fall, _, _, _ = smoothstep7((rho - 0.75 * delta_out) / (0.25 * delta_out))
    chi = rise * (1.0 - fall)

    samples = np.zeros((3, n, n, n))
    mask = chi > 0.0
    if params.beta > 0.0 and np.any(mask):
        pts = coords[:, mask].T
        u = landau_eval(params, pts).u
        samples[:, mask] = (chi[mask][:, None] * u).T

    raw = SpectralField.from_physical(samples)
    projected = leray_project(raw)
    norm_raw = np.linalg.norm(samples)
    if norm_raw > 0.0:
        deviation = float(np.linalg.norm(projected.to_physical() - samples)
                          / norm_raw)
    else:
        deviation = 0.0
    return MollifiedDrift(params=params, delta_in=delta_in, delta_out=delta_out,
                          field=projected, raw_samples=samples,
                          projection_deviation=deviation)


def make_forcing(n, amplitude, seed=None):
    """Smooth mean-zero divergence-free forcing with max speed `amplitude`.

    With seed None the deterministic shear triple (sin(y/2), sin(z/2),
    sin(x/2)) is used; an integer seed draws a random band-limited field
    instead (modes up to |k_int| <= 3), Leray-projected and rescaled so
    the maximal pointwise speed equals the amplitude.
    """
    n = int(n)
    amplitude = float(amplitude)
    if not np.isfinite(amplitude) or amplitude < 0.0:
        raise ValueError("amplitude must be finite and nonnegative")
    if seed is None:
        coords = grid_coordinates(n)
        phys = amplitude * np.stack([np.sin(0.5 * coords[1]),
                                     np.sin(0.5 * coords[2]),
                                     np.sin(0.5 * coords[0])])
        return SpectralField.from_physical(phys)
    rng = np.random.default_rng(seed)
    white = SpectralField.from_physical(rng.standard_normal((3, n, n, n)))
    f = np.fft.fftfreq(n, d=1.0 / n)
    fx, fy, fz = np.meshgrid(f, f, f, indexing="ij")
    band = (np.abs(fx) <= 3) & (np.abs(fy) <= 3) & (np.abs(fz) <= 3)
    low = SpectralField(white.coeff * band)
    proj = leray_project(low)
    speed = np.linalg.norm(proj.to_physical(), axis=0).max()
    if amplitude > 0.0 and speed == 0.0:
        raise RuntimeError("degenerate random forcing draw")
    scale = amplitude / speed if speed > 0.0 else 0.0
    return SpectralField(scale * proj.coeff)


def picard_step(v, drift, forcing):
    """One application of the Picard map Phi.

    Phi(v) solves the periodic Stokes problem with forcing
    f - div( U (x) v + v (x) (U + v) ); the tensor products are formed in
    physical space from 2/3-dealiased samples and the divergence is taken
    spectrally, with the result truncated to the dealiased band.
    """
    n = v.n
    k, _, _ = _wavenumbers(n)
    mask = _dealias_mask(n)
    v_phys = dealias(v).to_physical()
    # M[i, j] = U_i v_j + v_i (U + v)_j ; (div M)_i = d_j M_ij
    if drift is None:
        M = v_phys[:, None] * v_phys[None, :]
    else:
        if drift.n != n:
            raise ValueError("drift grid does not match the iterate")
        u_phys = drift.phys_dealiased
        M = (u_phys[:, None] * v_phys[None, :]
             + v_phys[:, None] * (u_phys + v_phys)[None, :])
    M_hat = np.fft.fftn(M, axes=(2, 3, 4))
    div_M = 1j * np.einsum("bijk,abijk->aijk", k, M_hat)
    div_M *= mask
    return stokes_solve(SpectralField(forcing.coeff - div_M))


@dataclass
class IterationTrace:
    """Per-iteration record of a Picard run.

    norms[i] is the W^{1,r} norm of the i-th iterate, increments[i] the
    norm of the i-th update, ratios[i] the successive increment quotient
    (one entry shorter).  residual is the W^{1,r} norm of the fixed-point
    defect v - Phi(v) at the final iterate, which for r = 2 equals the
    H^{-1}-type norm of the momentum equation residual.
    """

    norms: list
    increments: list
    ratios: list
    residual: float
    converged: bool
    exponent: float
    grid: int
    tol: float
    uniqueness_distance: float = None

    @property
    def iterations(self):
        return len(self.increments)


class ContractionDivergedError(RuntimeError):
    """Iterates left the contraction regime (norm grew a thousandfold)."""

    def __init__(self, trace):
        super().__init__(
            "Picard iteration diverged: the iterate norm exceeded 1000x the "
            "first iterate (forcing or drift outside the smallness regime)")
        self.trace = trace


def run_contraction(drift, forcing, r=2.0, max_iters=40, tol=1e-9,
                    second_start=True):
    """Iterate the Picard map from v = 0 and record the contraction trace.

    Stops when the W^{1,r} increment drops below tol or max_iters is
    reached; raises ContractionDivergedError when the iterate norm grows
    beyond a thousand times the first iterate (the cheap witness of
    leaving the smallness regime).  With second_start a second run from
    v0 = StokesSolve(f) is performed and the W^{1,r} distance between the
    two fixed points is reported, the numerical counterpart of the
    uniqueness argument.
    """
    r = float(r)
    if not (1.0 < r < 3.0):
        raise ValueError("norm exponent must lie in (1, 3)")
    max_iters = int(max_iters)
    if max_iters < 1:
        raise ValueError("need at least one iteration")
    tol = float(tol)
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")

    def iterate(v0, trace):
        v = v0
        first_norm = None
        previous_increment = None
        for _ in range(max_iters):
            v_next = picard_step(v, drift, forcing)
            increment = (v_next - v).w1r(r)
            norm = v_next.w1r(r)
            if trace is not None:
                trace.norms.append(norm)
                trace.increments.append(increment)
                if previous_increment is not None and previous_increment > 0.0:
                    trace.ratios.append(increment / previous_increment)
            if first_norm is None:
                first_norm = norm
            v = v_next
            if norm > _DIVERGENCE_FACTOR * first_norm and first_norm > 0.0:
                raise ContractionDivergedError(trace)
            if increment < tol:
                return v, True
            previous_increment = increment
        return v, False

    trace = IterationTrace(norms=[], increments=[], ratios=[], residual=np.nan,
                           converged=False, exponent=r, grid=forcing.n, tol=tol)
    v_star, converged = iterate(SpectralField.zeros(forcing.n), trace)
    trace.converged = converged
    trace.residual = (v_star - picard_step(v_star, drift, forcing)).w1r(r)

    if second_start:
        v_alt, _ = iterate(stokes_solve(forcing), None)
        trace.uniqueness_distance = (v_star - v_alt).w1r(r)
    return trace

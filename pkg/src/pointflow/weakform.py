"""Divergence-free test functions and the distributional momentum pairing.

A very weak solution u is one for which the pairing

    <NS(u), phi> = int ( -u . Lap(phi) - u_i u_j d_j phi_i ) dx

equals <f, phi> for every smooth compactly supported divergence-free phi.
For a Landau field the force is a point source b delta_0, so the pairing
must return b . phi(0) whenever the support of phi contains the origin,
and zero when it does not.  This is the quadrature-level verification of
the Dirac forcing.

Test functions are built as curls, phi = curl( psi(|x - x0|) (c x (x - x0)) / 2 ),
which makes div phi = 0 an identity.  The radial cutoff psi is 1 on
[0, a], 0 on [b, inf) and transitions through a septic polynomial matching
value and three derivatives at both ends, so phi is C^2 with continuous
Laplacian, and phi equals the constant vector c exactly on the plateau.

Since grad(phi) and Lap(phi) vanish identically on the plateau and outside
the support, the pairing integrand is supported exactly on the transition
annulus a <= |x - x0| <= b; integrating over that annulus with the graded
shell rule (whose panel ends coincide with the cutoff's gluing spheres)
makes the quadrature spectrally accurate.
"""

import numpy as np
from dataclasses import dataclass

from .landau import as_flow_field, as_vec3
from .quadrature import ball_shell_rule, flux_integral

__all__ = [
    "smoothstep7", "TestFunction", "make_test_function",
    "weak_residual", "WeakResidual", "extract_force_weak",
    "delta_limit_probe",
]


def smoothstep7(t):
    """C^3 unit step on [0, 1] and its first three derivatives.

    s(t) = 35 t^4 - 84 t^5 + 70 t^6 - 20 t^7 satisfies s(0) = 0, s(1) = 1
    with vanishing first, second and third derivatives at both ends.
    Inputs outside [0, 1] are clamped.
    """
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    s = t**4 * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)))
    s1 = t**3 * (140.0 + t * (-420.0 + t * (420.0 - 140.0 * t)))
    s2 = t**2 * (420.0 + t * (-1680.0 + t * (2100.0 - 840.0 * t)))
    s3 = t * (840.0 + t * (-5040.0 + t * (8400.0 - 4200.0 * t)))
    return s, s1, s2, s3


@dataclass(frozen=True)
class TestFunction:
    """Divergence-free bump phi with a constant plateau.

    phi(x) = c exactly for |x - center| <= plateau_radius, phi and all the
    derivatives used here vanish for |x - center| >= support_radius, and
    div phi = 0 identically (phi is a curl).
    """

    center: np.ndarray
    plateau_radius: float
    support_radius: float
    direction: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "center", as_vec3(self.center))
        object.__setattr__(self, "direction", as_vec3(self.direction))
        a = float(self.plateau_radius)
        b = float(self.support_radius)
        object.__setattr__(self, "plateau_radius", a)
        object.__setattr__(self, "support_radius", b)
        if not (0.0 < a < b):
            raise ValueError("radii must satisfy 0 < plateau < support")
        if np.all(self.direction == 0.0):
            raise ValueError("direction must be nonzero")

    def _cutoff(self, rho):
        """psi(rho) and three derivatives for the 1 -> 0 radial transition."""
        a, b = self.plateau_radius, self.support_radius
        width = b - a
        s, s1, s2, s3 = smoothstep7((rho - a) / width)
        return 1.0 - s, -s1 / width, -s2 / width**2, -s3 / width**3

    def _pieces(self, x):
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        y = x.reshape(-1, 3) - self.center
        rho = np.linalg.norm(y, axis=1)
        return y, rho, single

    def __call__(self, x):
        """phi(x); shape (..., 3)."""
        y, rho, single = self._pieces(x)
        psi, psi1, _, _ = self._cutoff(rho)
        rho_s = np.where(rho > 0.0, rho, 1.0)
        alpha = psi + rho * psi1 / 2.0
        gamma = psi1 / (2.0 * rho_s)
        yc = y @ self.direction
        phi = alpha[:, None] * self.direction - (gamma * yc)[:, None] * y
        return phi[0] if single else phi.reshape(np.shape(x))

    def gradient(self, x):
        """d_i phi_j(x); shape (..., 3, 3), first index the derivative."""
        y, rho, single = self._pieces(x)
        psi, psi1, psi2, _ = self._cutoff(rho)
        rho_s = np.where(rho > 0.0, rho, 1.0)
        alpha1 = 1.5 * psi1 + rho * psi2 / 2.0
        gamma = psi1 / (2.0 * rho_s)
        gamma1 = psi2 / (2.0 * rho_s) - psi1 / (2.0 * rho_s**2)
        yc = y @ self.direction
        yhat = y / rho_s[:, None]
        c = self.direction
        grad = (alpha1[:, None, None] * yhat[:, :, None] * c[None, None, :]
                - (gamma1 * yc)[:, None, None] * yhat[:, :, None] * y[:, None, :]
                - gamma[:, None, None] * c[None, :, None] * y[:, None, :]
                - (gamma * yc)[:, None, None] * np.eye(3))
        flat = rho <= self.plateau_radius
        grad[flat] = 0.0
        return grad[0] if single else grad.reshape(np.shape(x)[:-1] + (3, 3))

    def laplacian(self, x):
        """Lap(phi)(x); shape (..., 3).  Continuous (the cutoff is C^3)."""
        y, rho, single = self._pieces(x)
        psi, psi1, psi2, psi3 = self._cutoff(rho)
        rho_s = np.where(rho > 0.0, rho, 1.0)
        alpha1 = 1.5 * psi1 + rho * psi2 / 2.0
        alpha2 = 2.0 * psi2 + rho * psi3 / 2.0
        gamma = psi1 / (2.0 * rho_s)
        gamma1 = psi2 / (2.0 * rho_s) - psi1 / (2.0 * rho_s**2)
        gamma2 = psi3 / (2.0 * rho_s) - psi2 / rho_s**2 + psi1 / rho_s**3
        yc = y @ self.direction
        lap = ((alpha2 + 2.0 * alpha1 / rho_s - 2.0 * gamma)[:, None] * self.direction
               - ((gamma2 + 6.0 * gamma1 / rho_s) * yc)[:, None] * y)
        flat = rho <= self.plateau_radius
        lap[flat] = 0.0
        return lap[0] if single else lap.reshape(np.shape(x))


def make_test_function(center, a, b, c):
    """Divergence-free plateau bump centered at `center`.

    a is the plateau radius (phi = c there), b > a the support radius,
    c the nonzero plateau value.
    """
    return TestFunction(center=center, plateau_radius=a, support_radius=b,
                        direction=c)


def weak_residual(field, phi, rule=None, n_r=32, n_theta=32, n_phi=None):
    """Distributional momentum pairing of a flow probe against one phi.

    Returns the quadrature value of

        int ( -u . Lap(phi) - u_i u_j d_j phi_i ) dx.

    The integrand vanishes identically wherever grad(phi) and Lap(phi)
    do, so the default rule covers exactly the transition annulus of phi,
    where the quadrature is spectrally accurate.  A caller-provided rule
    must contain the support of phi.

    For an exact solution with point force b at the origin the value
    equals b . phi(0): the force component along the plateau direction
    when the plateau contains the origin, zero when the support avoids it.
    """
    fld = as_flow_field(field)
    if rule is None:
        rule = ball_shell_rule(phi.plateau_radius, phi.support_radius,
                               n_r, n_theta, n_phi, center=phi.center)
    state = fld(rule.nodes)
    lap = phi.laplacian(rule.nodes)
    grad = phi.gradient(rule.nodes)
    integrand = (-np.einsum("ki,ki->k", state.u, lap)
                 - np.einsum("ki,kj,kji->k", state.u, state.u, grad))
    return float(rule.weights @ integrand)


@dataclass(frozen=True)
class WeakResidual:
    """Force vector recovered from the pairing, one component per direction."""

    value: np.ndarray
    center: np.ndarray
    plateau_radius: float
    support_radius: float
    n_nodes: int

    def __post_init__(self):
        object.__setattr__(self, "value", as_vec3(self.value))
        object.__setattr__(self, "center", as_vec3(self.center))


def extract_force_weak(field, center=(0.0, 0.0, 0.0), a=0.5, b=1.0,
                       n_r=32, n_theta=32, n_phi=None):
    """Recover the full force vector from three axis-aligned pairings.

    Pairs the field against plateau bumps with directions e_x, e_y, e_z
    sharing one geometry; when the plateau contains the singularity each
    pairing returns one Cartesian component of the point force.
    """
    rule = ball_shell_rule(a, b, n_r, n_theta, n_phi,
                           center=np.asarray(center, dtype=float))
    components = []
    for k in range(3):
        c = np.zeros(3)
        c[k] = 1.0
        phi = make_test_function(center, a, b, c)
        components.append(weak_residual(field, phi, rule=rule))
    return WeakResidual(value=np.array(components), center=np.asarray(center, float),
                        plateau_radius=float(a), support_radius=float(b),
                        n_nodes=rule.n_nodes)


def delta_limit_probe(field, epsilons, n_theta=64, n_phi=None):
    """Momentum flux through shrinking spheres around the origin.

    Returns an (m, 3) array of flux_integral values, one row per radius.
    For an exact point-force solution the rows are identical (the flux is
    radius independent); a constant limit as the radii shrink is the
    numerical witness of the Dirac-source extraction, and drift across
    radii flags a field that is not a solution.
    """
    epsilons = np.atleast_1d(np.asarray(epsilons, dtype=float))
    if np.any((epsilons <= 0.0) | (epsilons >= 1.0)):
        raise ValueError("probe radii must lie in (0, 1)")
    fld = as_flow_field(field)
    return np.array([flux_integral(fld, eps, n_theta=n_theta, n_phi=n_phi)
                     for eps in epsilons])

"""Quadrature on spheres and ball shells, discrete norms, force extraction.

Product rules: Gauss-Legendre in cos(theta) crossed with a uniform
(trapezoidal, hence spectrally accurate) grid in the azimuth, and a radial
Gauss-Legendre rule after the substitution r = s^2.  The grading absorbs
the 1/r and 1/r^2 singularities that appear when point-force fields are
integrated against test functions, turning the weak-form integrands into
polynomially smooth functions of s.

The module also provides the discrete norm machinery used throughout:
Lorentz L^{p,q} quasinorms from weighted samples via the decreasing
rearrangement (q = inf gives the weak-L^p quasinorm), a discrete W^{1,r}
norm on periodic grids, and the weighted shell diagnostic
sup_R R^{3/q-1} sup_{|x|=R} |u - U^b| that measures the quality of the
Landau approximation near the singularity.

The central operation is flux_integral: the outward flux of the momentum
tensor through a sphere, which recovers the point-force vector of an
exact solution independently of the sphere radius.
"""

import numpy as np
from dataclasses import dataclass, field

from .landau import LandauField, as_flow_field, flux_tensor

__all__ = [
    "QuadratureRule", "sphere_rule", "ball_shell_rule",
    "flux_integral", "NormReport", "ball_samples", "lorentz_quasinorm",
    "weak_l3", "sobolev_norm", "decay_report",
]


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights on a sphere or ball shell.

    The weights sum to the exact measure of the domain (checked to 1e-12
    relative on construction) and `degree` declares the polynomial
    exactness of the rule.
    """

    nodes: np.ndarray
    weights: np.ndarray
    domain: str
    measure: float
    degree: int

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.ndim != 2 or nodes.shape[1] != 3 or len(weights) != len(nodes):
            raise ValueError("nodes must be (n, 3) with matching weights")
        if np.any(weights <= 0.0):
            raise ValueError("all quadrature weights must be positive")
        total = float(weights.sum())
        if abs(total - self.measure) > 1e-12 * abs(self.measure):
            raise ValueError(
                f"weights sum to {total!r}, expected measure {self.measure!r}")

    @property
    def n_nodes(self):
        return len(self.weights)

    def integrate(self, f):
        """Weighted sum of f over the nodes.

        f may be a vectorized callable on (n, 3) points or a precomputed
        array of node values (scalars or vectors).
        """
        values = f(self.nodes) if callable(f) else np.asarray(f)
        values = np.asarray(values, dtype=float)
        if values.shape[0] != self.n_nodes:
            raise ValueError("value array does not match the rule's nodes")
        return np.tensordot(self.weights, values, axes=(0, 0))


def sphere_rule(radius, n_theta, n_phi=None):
    """Product rule on the sphere of the given radius about the origin.

    Gauss-Legendre with n_theta nodes in cos(theta) crossed with n_phi
    equispaced azimuthal nodes; exact for spherical polynomials of degree
    up to min(2 n_theta - 1, n_phi - 1), weights summing to 4 pi R^2.
    """
    radius = float(radius)
    if radius <= 0.0:
        raise ValueError("sphere radius must be positive")
    n_theta = int(n_theta)
    n_phi = 2 * n_theta if n_phi is None else int(n_phi)
    if n_theta < 2:
        raise ValueError("need at least 2 polar nodes")
    if n_phi < 4:
        raise ValueError("need at least 4 azimuthal nodes")

    ct, wt = np.polynomial.legendre.leggauss(n_theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    st = np.sqrt(1.0 - ct**2)
    nodes = radius * np.stack(
        [np.outer(st, np.cos(phi)),
         np.outer(st, np.sin(phi)),
         np.broadcast_to(ct[:, None], (n_theta, n_phi))], axis=-1)
    weights = radius**2 * (2.0 * np.pi / n_phi) * np.broadcast_to(
        wt[:, None], (n_theta, n_phi))
    return QuadratureRule(
        nodes=nodes.reshape(-1, 3), weights=weights.reshape(-1).copy(),
        domain=f"sphere(R={radius:g})", measure=4.0 * np.pi * radius**2,
        degree=min(2 * n_theta - 1, n_phi - 1))


def ball_shell_rule(r0, r1, n_r, n_theta=16, n_phi=None, center=None):
    """Graded rule on the shell r0 <= |x - center| <= r1 (r0 = 0 allowed).

    Radial Gauss-Legendre after the substitution r = s^2, so integrands
    with integrable 1/r and 1/r^2 singularities at the shell's center
    become polynomially smooth in s; crossed with a sphere rule per
    radius.  Weights sum to the shell volume.
    """
    r0, r1 = float(r0), float(r1)
    if r0 < 0.0 or r1 <= r0:
        raise ValueError("need 0 <= r0 < r1")
    n_r = int(n_r)
    if n_r < 3:
        raise ValueError("need at least 3 radial nodes")

    sg, sw = np.polynomial.legendre.leggauss(n_r)
    s0, s1 = np.sqrt(r0), np.sqrt(r1)
    s = 0.5 * (s1 - s0) * sg + 0.5 * (s1 + s0)
    ws = 0.5 * (s1 - s0) * sw

    unit = sphere_rule(1.0, n_theta, n_phi)
    # volume element: r^2 dr = 2 s^5 ds under r = s^2
    nodes = (s**2)[:, None, None] * unit.nodes[None, :, :]
    weights = (2.0 * ws * s**5)[:, None] * unit.weights[None, :]
    if center is not None:
        center = np.asarray(center, dtype=float)
        nodes = nodes + center
        tag = f"shell({r0:g},{r1:g})@{tuple(np.round(center, 6))}"
    else:
        tag = f"shell({r0:g},{r1:g})"
    return QuadratureRule(
        nodes=nodes.reshape(-1, 3), weights=weights.reshape(-1).copy(),
        domain=tag, measure=4.0 * np.pi / 3.0 * (r1**3 - r0**3),
        degree=min(n_r - 3, unit.degree))


def _evaluate_or_blame(fld, nodes, what):
    """Evaluate a probe on nodes; on failure name the offending node."""
    try:
        state = fld(nodes)
    except Exception as exc:
        for pt in nodes:
            try:
                fld(pt[None, :])
            except Exception:
                raise RuntimeError(
                    f"{what}: field evaluation failed at node "
                    f"({pt[0]:.6g}, {pt[1]:.6g}, {pt[2]:.6g})") from exc
        raise RuntimeError(f"{what}: field evaluation failed: {exc}") from exc
    bad = ~(np.all(np.isfinite(state.u), axis=-1)
            & np.isfinite(state.p)
            & np.all(np.isfinite(state.grad_u), axis=(-2, -1)))
    if np.any(bad):
        pt = nodes[np.flatnonzero(bad)[0]]
        raise RuntimeError(
            f"{what}: non-finite field values at node "
            f"({pt[0]:.6g}, {pt[1]:.6g}, {pt[2]:.6g})")
    return state


def flux_integral(field, radius, n_theta=64, n_phi=None):
    """Point force from the outward momentum flux through a sphere.

    b_i = sum_k w_k T_ij(x_k) n_j(x_k) over a sphere rule of the given
    radius.  For an exact solution with a point source at the origin the
    result is independent of the radius.  The probe's own gradient mode
    is used (analytic when available, otherwise its finite differences).
    """
    fld = as_flow_field(field)
    rule = sphere_rule(radius, n_theta, n_phi)
    state = _evaluate_or_blame(fld, rule.nodes, f"flux_integral(R={radius:g})")
    T = flux_tensor(state)
    normals = rule.nodes / radius
    return np.einsum("k,kij,kj->i", rule.weights, T, normals)


@dataclass(frozen=True)
class NormReport:
    """A nonnegative norm value with its identification and resolution."""

    value: float
    norm_id: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (np.isfinite(self.value) and self.value >= 0.0):
            raise ValueError("norm value must be finite and nonnegative")


def ball_samples(f, radius, n_r=400, n_theta=16, n_phi=None):
    """(value, measure-weight) samples of |f| on a ball about the origin.

    The ball is split into n_r uniform radial cells crossed with the cells
    of a sphere rule; every sample carries the exact measure of its cell.
    Sample points sit on the outer edge of their radial cell, so a profile
    that blows up toward the center is never paired with more measure than
    its own level set: for radially nonincreasing functions the cumulative
    weights match mu(|f| >= value) exactly and the discrete weak-L^p
    quasinorm is exact up to the angular resolution.

    f is a vectorized callable on (m, 3) points returning scalars (take a
    magnitude first for vector fields).  Returns (values, weights).
    """
    radius = float(radius)
    if radius <= 0.0:
        raise ValueError("ball radius must be positive")
    n_r = int(n_r)
    if n_r < 2:
        raise ValueError("need at least 2 radial cells")
    edges = radius * np.arange(1, n_r + 1) / n_r
    cell_volumes = 4.0 * np.pi / 3.0 * np.diff(
        np.concatenate(([0.0], edges))**3)
    unit = sphere_rule(1.0, n_theta, n_phi)
    pts = edges[:, None, None] * unit.nodes[None, :, :]
    values = np.abs(np.asarray(f(pts.reshape(-1, 3)), dtype=float))
    weights = (cell_volumes[:, None]
               * (unit.weights / (4.0 * np.pi))[None, :]).reshape(-1)
    return values.reshape(-1), weights


def lorentz_quasinorm(values, weights, p, q):
    """Discrete Lorentz L^{p,q} quasinorm of weighted samples.

    Each sample is a (|value|, measure weight) pair; the decreasing
    rearrangement f* is the piecewise-constant function taking the sorted
    |values| on consecutive measure intervals.  For q < inf,

        ||f||^q = sum_k v_k^q (p/q) (t_k^{q/p} - t_{k-1}^{q/p}),

    with t_k the cumulative measure; for q = inf the supremum of
    t^{1/p} f*(t) is attained at the sample thresholds, so the quasinorm
    is max_k t_k^{1/p} v_k.  L^{p,p} reduces to the plain weighted L^p sum
    exactly.
    """
    values = np.abs(np.asarray(values, dtype=float)).ravel()
    weights = np.asarray(weights, dtype=float).ravel()
    if values.size == 0:
        raise ValueError("need at least one sample")
    if values.shape != weights.shape:
        raise ValueError("values and weights must have the same length")
    if np.any(weights <= 0.0):
        raise ValueError("measure weights must be positive")
    p = float(p)
    if not (1.0 < p < np.inf):
        raise ValueError("primary exponent must lie in (1, inf)")
    q = float(q)
    if not (1.0 <= q):
        raise ValueError("secondary exponent must lie in [1, inf]")

    order = np.argsort(values)[::-1]
    v = values[order]
    t = np.cumsum(weights[order])
    if np.isinf(q):
        value = float(np.max(t**(1.0 / p) * v))
        norm_id = "weak-L3" if p == 3.0 else f"weak-L{p:g}"
    else:
        tq = t**(q / p)
        increments = np.diff(np.concatenate(([0.0], tq)))
        value = float((p / q * np.sum(v**q * increments))**(1.0 / q))
        norm_id = f"L({p:g},{q:g})"
    return NormReport(value=value, norm_id=norm_id,
                      meta={"p": p, "q": q, "n_samples": int(values.size),
                            "total_measure": float(t[-1])})


def weak_l3(values, weights):
    """Weak-L^3 quasinorm sup_t t mu(|f| > t)^{1/3} of weighted samples."""
    return lorentz_quasinorm(values, weights, 3.0, np.inf)


def _periodic_gradient(values, box, spectral):
    """Gradient of (c, n, n, n) samples on a periodic cube of side box."""
    n = values.shape[1]
    if spectral:
        k1 = 2.0 * np.pi * np.fft.fftfreq(n, d=box / n)
        vhat = np.fft.fftn(values, axes=(1, 2, 3))
        grads = []
        for axis in range(3):
            shape = [1, 1, 1]
            shape[axis] = n
            k = k1.reshape(shape)
            grads.append(np.fft.ifftn(1j * k * vhat, axes=(1, 2, 3)).real)
        return np.stack(grads)
    h = box / n
    return np.stack([
        (np.roll(values, -1, axis=1 + axis) - np.roll(values, 1, axis=1 + axis))
        / (2.0 * h)
        for axis in range(3)])


def sobolev_norm(values, box, r, gradient="spectral"):
    """Discrete W^{1,r} norm ||f||_{L^r} + ||grad f||_{L^r} on a periodic grid.

    values holds samples on a uniform n^3 grid over a cube of side `box`:
    shape (n, n, n) for scalars or (c, n, n, n) for c-component fields.
    Pointwise magnitudes are Euclidean (Frobenius for the gradient);
    gradients are spectral or second-order central differences.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim == 3:
        values = values[None]
    if values.ndim != 4:
        raise ValueError("expected (n, n, n) or (c, n, n, n) grid samples")
    n = values.shape[1]
    if values.shape[1:] != (n, n, n):
        raise ValueError("grid must be cubic")
    if n < 8:
        raise ValueError("grid too small: need at least 8 points per axis")
    r = float(r)
    if not (1.0 < r < 3.0):
        raise ValueError("Sobolev exponent must lie in (1, 3)")
    if gradient not in ("spectral", "fd"):
        raise ValueError("gradient mode must be 'spectral' or 'fd'")
    box = float(box)
    if box <= 0.0:
        raise ValueError("box side must be positive")

    cell = (box / n)**3
    mag = np.sqrt((values**2).sum(axis=0))
    lr = float((np.sum(mag**r) * cell)**(1.0 / r))
    grads = _periodic_gradient(values, box, gradient == "spectral")
    gmag = np.sqrt((grads**2).sum(axis=(0, 1)))
    grad_lr = float((np.sum(gmag**r) * cell)**(1.0 / r))
    return NormReport(value=lr + grad_lr, norm_id=f"W^(1,{r:g})",
                      meta={"r": r, "grid": int(n), "box": box,
                            "lr": lr, "grad_lr": grad_lr,
                            "gradient": gradient})


def decay_report(field, reference, q, shells, n_theta=32, n_phi=None):
    """Weighted shell sup of the deviation from a reference Landau field.

    Computes, for each shell radius R in (0, 1],

        R^(3/q - 1) * sup_{|x| = R} |u(x) - U^ref(x)|

    on a sphere rule, and reports the maximum over shells; the per-shell
    values are kept in the metadata so growth as the shells shrink can be
    inspected.  A field matching its reference gives zero; mismatched
    point forces make the weighted sup blow up like R^(3/q - 2).
    """
    q = float(q)
    if not (1.0 < q < 3.0):
        raise ValueError("decay exponent must lie in (1, 3)")
    shells = np.atleast_1d(np.asarray(shells, dtype=float))
    if shells.size == 0:
        raise ValueError("need at least one shell radius")
    if np.any((shells <= 0.0) | (shells > 1.0)):
        raise ValueError("shell radii must lie in (0, 1]")
    fld = as_flow_field(field)
    ref = LandauField(reference)

    sups = []
    weighted = []
    for R in shells:
        rule = sphere_rule(R, n_theta, n_phi)
        du = fld(rule.nodes).u - ref(rule.nodes).u
        sup = float(np.max(np.linalg.norm(du, axis=1)))
        sups.append(sup)
        weighted.append(R**(3.0 / q - 1.0) * sup)
    return NormReport(value=float(np.max(weighted)),
                      norm_id=f"decay(q={q:g})",
                      meta={"q": q, "shells": shells.tolist(),
                            "shell_sups": sups,
                            "shell_weighted": weighted,
                            "n_theta": int(n_theta)})

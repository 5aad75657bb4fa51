"""Semiclassical energy surface: evaluation, stationary points, criticality.

The classical energy per j is expressed in two equivalent forms: the full
phase-space function of (q, p, j_z, phi), and the reduced surface E(u, v)
obtained by eliminating the field quadratures at their stationary values and
mapping the sphere through (u, v) = arccos(-j_z)(cos phi, sin phi).  The
reduced surface depends on rho = u^2 + v^2 through

    E(u, v) = omega0 * S(rho) * (A u^2 + B v^2) - omega0*C + (eta_z/2)*C^2,

with S(rho) = sin^2(sqrt(rho))/(2 rho), C = cos(sqrt(rho)), and lobe
coefficients A = eta_x/omega0 - f_plus, B = eta_y/omega0 - f_minus.  The
removable singularity at the origin (and the cancellation-prone derivatives of
S near it) are handled by series expansions below rho = 1e-3.

Everything here is independent of the quadratic-expansion module: criticality
is located by bisecting the origin curvature of this surface, which gives a
second route to the critical coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from itertools import product

import numpy as np
from scipy.optimize import minimize_scalar

from adicke.model import ModelParams, derive_scales

_SERIES_RHO = 1e-3
_STEP_CAP = 0.3
_BOUNDARY_PAD = 1e-9


@dataclass(frozen=True)
class PhaseSpacePoint:
    """Full classical configuration: boson quadratures plus spin direction."""

    q: float
    p: float
    jz: float
    phi: float

    def __post_init__(self) -> None:
        if abs(self.jz) > 1.0:
            raise ValueError("jz must lie in [-1, 1]")


@dataclass(frozen=True)
class SurfacePoint:
    """Reduced spin-plane point with its surface energy (units of omega0*j)."""

    u: float
    v: float
    energy: float


@dataclass(frozen=True)
class ExtremumPoint:
    """Classified stationary point of the reduced surface.

    kind is one of "min", "max", "saddle" (exported under the column name
    "class"); degenerate marks a Hessian eigenvalue inside the degeneracy
    tolerance, in which case kind reflects the non-degenerate directions.
    """

    location: tuple[float, float]
    energy: float
    kind: str
    hessian_eigenvalues: tuple[float, float]
    degenerate: bool


@dataclass(frozen=True)
class SearchConfig:
    """Multi-start search controls for find_extrema."""

    grid_points: int = 41
    newton_tol: float = 1e-12
    max_iter: int = 50
    dedup_tol: float = 1e-6
    degeneracy_tol: float = 1e-8
    ring_min_count: int = 8
    ring_energy_tol: float = 1e-9


@dataclass(frozen=True)
class ExtremaResult:
    """Deduplicated stationary points; a degenerate ring of minima is
    collapsed to one representative entry and flagged on the result."""

    points: tuple[ExtremumPoint, ...]
    degenerate_family: bool


def classical_energy(params: ModelParams, point: PhaseSpacePoint) -> float:
    """Classical Hamiltonian per j at a full phase-space configuration."""
    w0 = params.omega0
    s2 = 1.0 - point.jz * point.jz
    sin_theta = math.sqrt(s2) if s2 > 0.0 else 0.0
    cphi, sphi = math.cos(point.phi), math.sin(point.phi)
    return (
        0.5 * params.omega * (point.q * point.q + point.p * point.p)
        + point.jz * (w0 + 0.5 * params.eta_z * point.jz)
        + 0.5 * s2 * (params.eta_x * cphi * cphi + params.eta_y * sphi * sphi)
        + params.gamma * sin_theta * ((1.0 + params.xi) * point.q * cphi
                                      - (1.0 - params.xi) * point.p * sphi)
    )


def _lobe_coefficients(params: ModelParams) -> tuple[float, float]:
    s = derive_scales(params)
    return (params.eta_x / params.omega0 - s.f_plus,
            params.eta_y / params.omega0 - s.f_minus)


def surface_energy(params: ModelParams, u, v):
    """Reduced surface energy; vectorized over numpy arrays.

    Scalar inputs return a plain float.  The rho -> 0 limit is evaluated by
    series, so the origin value is exactly -omega0*(1 - eta_z/(2*omega0)).
    """
    a_c, b_c = _lobe_coefficients(params)
    w0, ez_half = params.omega0, 0.5 * params.eta_z
    uu = np.asarray(u, dtype=float)
    vv = np.asarray(v, dtype=float)
    rho = uu * uu + vv * vv
    small = rho < _SERIES_RHO
    rho_safe = np.where(small, 1.0, rho)
    st_closed = np.sin(np.sqrt(rho_safe)) ** 2 / (2.0 * rho_safe)
    st_series = 0.5 - rho / 6.0 + rho * rho / 45.0 - rho ** 3 / 630.0
    st = np.where(small, st_series, st_closed)
    c = np.cos(np.sqrt(rho))
    out = w0 * st * (a_c * uu * uu + b_c * vv * vv) - c * (w0 - ez_half * c)
    if out.ndim == 0:
        return float(out)
    return out


def _shape_functions(rho: float) -> tuple[float, float, float, float, float, float]:
    """(S, S', S'', C, S1, S1') at scalar rho; series below the switchover.

    S = sin^2(x)/(2x^2), S1 = sin(x)/(2x) with x = sqrt(rho); dC/drho = -S1.
    """
    if rho < _SERIES_RHO:
        st = 0.5 - rho / 6.0 + rho * rho / 45.0 - rho ** 3 / 630.0 + rho ** 4 / 14175.0
        stp = -1.0 / 6.0 + 2.0 * rho / 45.0 - rho * rho / 210.0 + 4.0 * rho ** 3 / 14175.0
        stpp = 2.0 / 45.0 - rho / 105.0 + 4.0 * rho * rho / 4725.0
        s1 = 0.5 - rho / 12.0 + rho * rho / 240.0 - rho ** 3 / 10080.0
        s1p = -1.0 / 12.0 + rho / 120.0 - rho * rho / 3360.0 + rho ** 3 / 181440.0
        c = math.cos(math.sqrt(rho)) if rho > 0.0 else 1.0
        return st, stp, stpp, c, s1, s1p
    x = math.sqrt(rho)
    sx, cx = math.sin(x), math.cos(x)
    s2x, c2x = math.sin(2.0 * x), math.cos(2.0 * x)
    st = sx * sx / (2.0 * rho)
    n = x * s2x - 2.0 * sx * sx
    np_ = c2x - s2x / (2.0 * x)
    stp = n / (4.0 * rho * rho)
    stpp = (np_ * rho - 2.0 * n) / (4.0 * rho ** 3)
    s1 = sx / (2.0 * x)
    s1p = (x * cx - sx) / (4.0 * rho * x)
    return st, stp, stpp, cx, s1, s1p


def surface_gradient_hessian(params: ModelParams, u: float, v: float):
    """Analytic gradient and Hessian of the reduced surface at one point.

    Derivatives chain through rho; near the origin the shape functions switch
    to series so the curvature limit is exact:
    H(0,0) = diag(omega0*(w_zx^2 - f_plus), omega0*(w_zy^2 - f_minus)).
    """
    a_c, b_c = _lobe_coefficients(params)
    w0, ez = params.omega0, params.eta_z
    rho = u * u + v * v
    st, stp, stpp, c, s1, s1p = _shape_functions(rho)
    q_lobe = a_c * u * u + b_c * v * v
    gp = (w0 - ez * c) * s1
    gpp = ez * s1 * s1 + (w0 - ez * c) * s1p
    pu = w0 * (stp * q_lobe + a_c * st) + gp
    pv = w0 * (stp * q_lobe + b_c * st) + gp
    grad = np.array([2.0 * u * pu, 2.0 * v * pv])
    core = w0 * stpp * q_lobe + gpp
    huu = 2.0 * pu + 4.0 * u * u * (core + 2.0 * w0 * a_c * stp)
    hvv = 2.0 * pv + 4.0 * v * v * (core + 2.0 * w0 * b_c * stp)
    huv = 4.0 * u * v * (core + w0 * (a_c + b_c) * stp)
    return grad, np.array([[huu, huv], [huv, hvv]])


def _newton_polish(params: ModelParams, u0: float, v0: float,
                   cfg: SearchConfig) -> tuple[float, float] | None:
    """Damped Newton on the gradient; converges to saddles and maxima too.

    Solves (H + lam*I) step = -grad with lam raised until the gradient norm
    decreases, so an indefinite or near-singular Hessian degrades gracefully
    toward a capped gradient step.  Returns None when no seed converges.
    """
    u, v = u0, v0
    (gu, gv), h = surface_gradient_hessian(params, u, v)
    gn = math.hypot(gu, gv)
    lam = 0.0
    for _ in range(cfg.max_iter):
        if gn <= cfg.newton_tol:
            return u, v
        accepted = False
        for _ in range(12):
            a = h[0, 0] + lam
            b = h[0, 1]
            d = h[1, 1] + lam
            det = a * d - b * b
            if det == 0.0 or not math.isfinite(det):
                lam = max(4.0 * lam, 1e-4)
                continue
            du = (-d * gu + b * gv) / det
            dv = (b * gu - a * gv) / det
            step = math.hypot(du, dv)
            if step > _STEP_CAP:
                du *= _STEP_CAP / step
                dv *= _STEP_CAP / step
            tu, tv = u + du, v + dv
            (tgu, tgv), th = surface_gradient_hessian(params, tu, tv)
            tgn = math.hypot(tgu, tgv)
            if tgn < gn or step < 1e-15:
                u, v, gu, gv, gn, h = tu, tv, tgu, tgv, tgn, th
                lam = 0.0 if lam < 1e-12 else lam / 3.0
                accepted = True
                break
            lam = max(4.0 * lam, 1e-4)
        if not accepted:
            return None
    return (u, v) if gn <= cfg.newton_tol else None


def _classify(eigs: tuple[float, float], tol: float) -> tuple[str, bool]:
    n_pos = sum(1 for x in eigs if x > tol)
    n_neg = sum(1 for x in eigs if x < -tol)
    degenerate = any(abs(x) <= tol for x in eigs)
    if n_neg == 0 and n_pos > 0:
        kind = "min"
    elif n_pos == 0 and n_neg > 0:
        kind = "max"
    elif n_pos and n_neg:
        kind = "saddle"
    else:
        kind = "saddle"  # fully flat within tolerance
    return kind, degenerate


def _hessian_eigs(h: np.ndarray) -> tuple[float, float]:
    a, b, d = float(h[0, 0]), float(h[0, 1]), float(h[1, 1])
    half = 0.5 * math.hypot(a - d, 2.0 * b)
    mid = 0.5 * (a + d)
    return mid - half, mid + half


def find_extrema(params: ModelParams, search: SearchConfig | None = None) -> ExtremaResult:
    """Multi-start stationary-point search over the principal disk.

    Seeds a uniform grid over [-pi, pi]^2 (seeds and converged points outside
    sqrt(u^2+v^2) < pi are discarded; the chart is singular on the boundary),
    polishes each seed, deduplicates, classifies, and detects a degenerate
    ring: ring_min_count or more distinct minima within ring_energy_tol of
    each other collapse to one representative flagged degenerate.
    """
    cfg = search or SearchConfig()
    axis = np.linspace(-math.pi, math.pi, cfg.grid_points)
    limit = math.pi - _BOUNDARY_PAD
    converged: list[tuple[float, float]] = []
    for u0, v0 in product(axis, axis):
        if math.hypot(u0, v0) > math.pi:
            continue
        hit = _newton_polish(params, float(u0), float(v0), cfg)
        if hit is None or math.hypot(*hit) >= limit:
            continue
        converged.append(hit)

    raw: list[ExtremumPoint] = []
    for u, v in converged:
        _, h = surface_gradient_hessian(params, u, v)
        eigs = _hessian_eigs(h)
        kind, degenerate = _classify(eigs, cfg.degeneracy_tol)
        raw.append(ExtremumPoint(
            location=(float(u), float(v)), energy=float(surface_energy(params, u, v)),
            kind=kind, hessian_eigenvalues=eigs, degenerate=degenerate,
        ))
    raw.sort(key=lambda p: (p.energy, p.location[0], p.location[1]))

    kept: list[ExtremumPoint] = []
    for p in raw:
        if any(math.hypot(p.location[0] - q.location[0],
                          p.location[1] - q.location[1]) < cfg.dedup_tol
               for q in kept):
            continue
        kept.append(p)

    minima = [p for p in kept if p.kind == "min"]
    family = False
    if len(minima) >= cfg.ring_min_count:
        energies = [p.energy for p in minima]
        if max(energies) - min(energies) < cfg.ring_energy_tol:
            family = True
            rep = replace(minima[0], degenerate=True)
            kept = [rep] + [p for p in kept if p.kind != "min"]
            kept.sort(key=lambda p: (p.energy, p.location[0], p.location[1]))
    return ExtremaResult(points=tuple(kept), degenerate_family=family)


def critical_coupling_from_surface(params: ModelParams) -> float:
    """Coupling where the origin loses stability along the u axis.

    Bisects the analytic u-curvature of the surface at the origin over
    gamma in [0, 5*sqrt(omega*omega0)] to 1e-10; the gamma carried by params
    is ignored.  This is an independent check of the closed-form gc_x (the
    v-curvature root would instead locate the phase-mode suppression onset).
    """
    def curvature(g: float) -> float:
        _, h = surface_gradient_hessian(replace(params, gamma=g), 0.0, 0.0)
        return h[0, 0]

    lo, hi = 0.0, 5.0 * math.sqrt(params.omega * params.omega0)
    f_lo, f_hi = curvature(lo), curvature(hi)
    if not (f_lo > 0.0 > f_hi):
        raise ValueError("origin curvature has no sign change in the bracket")
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if curvature(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def minimum_ring_variance(params: ModelParams, n_angles: int = 64) -> float:
    """Variance of the radially-minimized energy over equally spaced angles.

    Near zero for a continuously degenerate minimum ring; order of the lobe
    depth contrast otherwise.
    """
    energies = []
    for k in range(n_angles):
        phi = 2.0 * math.pi * k / n_angles
        cp, sp = math.cos(phi), math.sin(phi)

        def radial(r: float) -> float:
            return surface_energy(params, r * cp, r * sp)

        res = minimize_scalar(radial, bounds=(1e-8, math.pi - 1e-8),
                              method="bounded", options={"xatol": 1e-12})
        energies.append(min(float(res.fun), radial(0.0)))
    return float(np.var(energies))

"""Semiclassical energy surface: values, derivatives, extrema, criticality."""

import math
from dataclasses import replace

import numpy as np
from scipy.optimize import minimize

from adicke import (
    ModelParams,
    PhaseSpacePoint,
    classical_energy,
    critical_coupling_from_surface,
    derive_scales,
    find_extrema,
    ground_state_energy,
    minimum_ring_variance,
    order_parameters,
    surface_energy,
    surface_gradient_hessian,
)

from test_model import _random_params


def test_free_spin_energies():
    p = ModelParams(omega=1.0, omega0=1.0, gamma=0.0, xi=0.0)
    pt = PhaseSpacePoint(q=0.0, p=0.0, jz=-1.0, phi=0.3)
    assert classical_energy(p, pt) == -1.0
    # jz*(omega0 + eta_z*jz/2) cancels at eta_z = 2*omega0
    p = ModelParams(omega=1.0, omega0=1.0, gamma=0.0, xi=0.5, eta_z=2.0)
    assert classical_energy(p, pt) == 0.0


def test_origin_limit():
    p = ModelParams(omega=1.0, omega0=1.0, gamma=0.7, xi=0.5)
    assert surface_energy(p, 0.0, 0.0) == -1.0
    p = replace(p, eta_z=0.8)
    assert abs(surface_energy(p, 0.0, 0.0) - (-0.6)) < 1e-15


def test_surface_matches_boson_eliminated_classical_energy():
    # minimizing the full classical energy over (q, p) at fixed spin must
    # land exactly on the reduced surface
    rng = np.random.default_rng(23)
    for _ in range(50):
        pars = _random_params(rng)
        r = rng.uniform(0.05, 0.95 * math.pi)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        u, v = r * math.cos(phi), r * math.sin(phi)
        jz = -math.cos(r)
        sin_t = math.sqrt(max(0.0, 1.0 - jz * jz))
        q = -pars.gamma * (1.0 + pars.xi) / pars.omega * sin_t * math.cos(phi)
        p = pars.gamma * (1.0 - pars.xi) / pars.omega * sin_t * math.sin(phi)
        direct = classical_energy(pars, PhaseSpacePoint(q=q, p=p, jz=jz,
                                                        phi=phi))
        reduced = surface_energy(pars, u, v)
        assert abs(direct - reduced) < 1e-12 * max(1.0, abs(reduced))


def test_reflection_symmetry_exact():
    rng = np.random.default_rng(29)
    for _ in range(100):
        pars = _random_params(rng)
        u, v = rng.uniform(-3.0, 3.0, size=2)
        e = surface_energy(pars, u, v)
        assert surface_energy(pars, -u, v) == e
        assert surface_energy(pars, u, -v) == e
        assert surface_energy(pars, -u, -v) == e


def test_gradient_hessian_against_finite_differences():
    rng = np.random.default_rng(31)
    h = 1e-5
    for _ in range(40):
        pars = _random_params(rng)
        u, v = rng.uniform(-2.0, 2.0, size=2)
        grad, hess = surface_gradient_hessian(pars, u, v)

        def fd(f, x, step):
            # central difference with one Richardson refinement
            d1 = (f(x + step) - f(x - step)) / (2.0 * step)
            d2 = (f(x + 0.5 * step) - f(x - 0.5 * step)) / step
            return (4.0 * d2 - d1) / 3.0

        gu = fd(lambda x: surface_energy(pars, x, v), u, h)
        gv = fd(lambda x: surface_energy(pars, u, x), v, h)
        assert abs(grad[0] - gu) < 1e-6
        assert abs(grad[1] - gv) < 1e-6
        huu = fd(lambda x: surface_gradient_hessian(pars, x, v)[0][0], u, h)
        hvv = fd(lambda x: surface_gradient_hessian(pars, u, x)[0][1], v, h)
        huv = fd(lambda x: surface_gradient_hessian(pars, x, v)[0][1], u, h)
        assert abs(hess[0][0] - huu) < 1e-5
        assert abs(hess[1][1] - hvv) < 1e-5
        assert abs(hess[0][1] - huv) < 1e-5


def test_normal_phase_single_minimum():
    p = ModelParams(omega=1.0, omega0=1.0, gamma=0.4, xi=1.0)
    result = find_extrema(p)
    minima = [pt for pt in result.points if pt.kind == "min"]
    assert len(minima) == 1
    assert math.hypot(*minima[0].location) < 1e-8
    assert abs(minima[0].energy - (-1.0)) < 1e-12
    assert not result.degenerate_family


def test_two_lobe_structure():
    p = ModelParams(omega=1.0, omega0=1.0, gamma=0.6, xi=1.0)
    result = find_extrema(p)
    minima = [pt for pt in result.points if pt.kind == "min"]
    assert len(minima) == 2
    _, _, mu = order_parameters(p)
    ustar = math.acos(mu)
    us = sorted(pt.location[0] for pt in minima)
    assert abs(us[0] + ustar) < 1e-6
    assert abs(us[1] - ustar) < 1e-6
    assert all(abs(pt.location[1]) < 1e-6 for pt in minima)
    # lobe energy equals twice the per-spin ground energy
    for pt in minima:
        assert abs(pt.energy - 2.0 * ground_state_energy(p)) < 1e-9
        assert min(pt.hessian_eigenvalues) > 0.0
    # the origin survives as a non-minimal stationary point
    origin = [pt for pt in result.points
              if math.hypot(*pt.location) < 1e-6]
    assert origin and origin[0].kind != "min"


def test_degenerate_ring_detection():
    p = ModelParams(omega=1.0, omega0=1.0, gamma=1.5, xi=0.0)
    result = find_extrema(p)
    assert result.degenerate_family
    minima = [pt for pt in result.points if pt.kind == "min"]
    assert minima and minima[0].degenerate
    assert minimum_ring_variance(p) < 1e-10


def test_ring_variance_positive_for_lobes():
    # the two-lobe Z2 case is not a ring
    p = ModelParams(omega=1.0, omega0=1.0, gamma=0.8, xi=1.0)
    assert minimum_ring_variance(p) > 1e-4


def test_criticality_from_surface_values():
    assert abs(critical_coupling_from_surface(
        ModelParams(omega=1.0, omega0=1.0, gamma=0.1, xi=1.0)) - 0.5) < 1e-8
    assert abs(critical_coupling_from_surface(
        ModelParams(omega=1.0, omega0=1.0, gamma=0.1, xi=0.0, eta_x=0.9))
        - math.sqrt(1.9)) < 1e-8
    assert abs(critical_coupling_from_surface(
        ModelParams(omega=1.0, omega0=1.0, gamma=0.1, xi=0.5)) - 2.0 / 3.0) < 1e-8


def test_criticality_grid_consistency():
    for xi in (0.0, 0.5, 1.0):
        for dzx in (-0.5, 0.0, 0.5):
            p = ModelParams(omega=1.0, omega0=1.0, gamma=0.1, xi=xi,
                            eta_x=-dzx)
            gc = derive_scales(p).gc_x
            assert abs(critical_coupling_from_surface(p) - gc) < 1e-8


def _global_minimum_energy(pars: ModelParams) -> float:
    """Independent surface minimization: coarse grid argmin plus BFGS polish."""
    grid = np.linspace(-math.pi + 1e-3, math.pi - 1e-3, 61)
    uu, vv = np.meshgrid(grid, grid, indexing="ij")
    inside = np.hypot(uu, vv) < math.pi - 1e-3
    energy = np.where(inside, surface_energy(pars, uu, vv), np.inf)
    i, k = np.unravel_index(np.argmin(energy), energy.shape)

    def fun(x):
        return surface_energy(pars, x[0], x[1])

    def jac(x):
        return np.array(surface_gradient_hessian(pars, x[0], x[1])[0])

    best = surface_energy(pars, 0.0, 0.0)
    res = minimize(fun, np.array([uu[i, k], vv[i, k]]), jac=jac,
                   method="BFGS", options={"gtol": 1e-12})
    if math.hypot(*res.x) < math.pi - 1e-6:
        best = min(best, float(res.fun))
    return best


def test_minimum_energy_matches_twice_ground_energy():
    rng = np.random.default_rng(37)
    checked = 0
    while checked < 200:
        pars = _random_params(rng)
        if pars.eta_x > pars.eta_y:
            # keep the broken minimum in the u channel
            pars = replace(pars, eta_x=pars.eta_y, eta_y=pars.eta_x)
        s = derive_scales(pars)
        if abs(pars.gamma - s.gc_x) < 0.05:
            continue
        checked += 1
        assert abs(_global_minimum_energy(pars)
                   - 2.0 * ground_state_energy(pars)) < 1e-8


def test_tc_ring_energy_bridge():
    # U(1) ring energy at strong coupling equals twice the per-spin energy
    p = ModelParams(omega=1.0, omega0=1.0, gamma=2.0, xi=0.0)
    result = find_extrema(p)
    minima = [pt for pt in result.points if pt.kind == "min"]
    assert minima
    assert abs(minima[0].energy - 2.0 * ground_state_energy(p)) < 1e-9

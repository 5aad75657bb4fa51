"""Geometric phases of adiabatic circulations generated by the photon number
and by the displaced matter mode.

In the symmetry-broken phase the ground state carries finite boson
displacements, so cycling the corresponding conjugate angle produces a
geometric phase proportional to the occupation: 2*pi*<n> for the photon
circulation and 2*pi*<b'b> for the matter one.  The closed forms below are
reported per j alongside the definitional expectation-value forms; the two
families differ by a constant factor (2*omega0/(omega*w_zx^2) for the photon
phase, exactly 2 for the matter phase), which is pinned by tests rather than
silently reconciled.  The definitional values are the ones checked against
exact diagonalization.

Both phases vanish in the normal phase, rise continuously from the critical
coupling with a slope discontinuity there, and respond to the sign change of
w_zx^2 when d_eta_zx crosses omega0, which is the first-order-transition
signature this module flags.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from adicke.model import ModelParams, derive_scales


@dataclass(frozen=True)
class GeometricPhases:
    """Per-j geometric phases plus their definitional counterparts.

    gamma_n_per_j / gamma_m_per_j are the closed forms.  The definitional
    values are 2*pi*<n>/j = 4*pi*alpha^2 and 2*pi*<b'b>/j = 4*pi*beta^2; the
    raw fields carry the unscaled 2*pi*<occupation> at j = n_qubits/2.
    n_expectation_per_2j and m_expectation_per_2j are alpha^2 and beta^2, the
    quantities an exact-diagonalization run can check directly.
    formulas_valid goes False once w_zx^2 < 0 (beyond the first-order line),
    where the closed photon form changes sign.
    """

    gamma_n_per_j: float
    gamma_m_per_j: float
    gamma_n_definitional: float
    gamma_m_definitional: float
    gamma_n_raw: float
    gamma_m_raw: float
    n_expectation_per_2j: float
    m_expectation_per_2j: float
    broken: bool
    formulas_valid: bool


def geometric_phases(params: ModelParams) -> GeometricPhases:
    """Evaluate all phase variants at one parameter point.

    The broken branch is selected by mu_x in (0, 1), which coincides with
    gamma > gc_x wherever gc_x is real and extends the formulas continuously
    into the w_zx^2 < 0 region.
    """
    s = derive_scales(params)
    mu = s.mu_x
    broken = 0.0 < mu < 1.0
    if broken:
        gn_closed = 0.5 * math.pi * s.f_plus * s.w_zx2 * (1.0 - mu * mu)
        gm_closed = math.pi * (1.0 - mu)
        alpha2 = s.f_plus * (1.0 - mu * mu) * params.omega0 / (4.0 * params.omega)
        beta2 = 0.5 * (1.0 - mu)
    else:
        gn_closed = gm_closed = alpha2 = beta2 = 0.0
    return GeometricPhases(
        gamma_n_per_j=gn_closed,
        gamma_m_per_j=gm_closed,
        gamma_n_definitional=4.0 * math.pi * alpha2,
        gamma_m_definitional=4.0 * math.pi * beta2,
        gamma_n_raw=2.0 * math.pi * params.n_qubits * alpha2,
        gamma_m_raw=2.0 * math.pi * params.n_qubits * beta2,
        n_expectation_per_2j=alpha2,
        m_expectation_per_2j=beta2,
        broken=broken,
        formulas_valid=s.w_zx2 >= 0.0,
    )


def berry_photon(params: ModelParams) -> float:
    """Closed-form photon-circulation phase per j (0 in the normal phase)."""
    return geometric_phases(params).gamma_n_per_j


def berry_spin(params: ModelParams) -> float:
    """Closed-form matter-circulation phase per j, pi*(1 - mu_x) when broken."""
    return geometric_phases(params).gamma_m_per_j


def criticality_slopes(params: ModelParams, delta: float = 1e-4):
    """One-sided finite-difference slopes of both phases at gc_x.

    Returns ((n_below, n_above), (m_below, m_above)); the gamma carried by
    params is ignored.  Requires a real critical coupling.
    """
    s = derive_scales(params)
    if not s.w_zx2 > 0.0:
        raise ValueError("criticality slopes need a real gc_x (w_zx^2 > 0)")
    gc = s.gc_x

    def phases_at(g: float) -> GeometricPhases:
        return geometric_phases(replace(params, gamma=g))

    lo1, lo2 = phases_at(gc - 2.0 * delta), phases_at(gc - delta)
    hi1, hi2 = phases_at(gc + delta), phases_at(gc + 2.0 * delta)
    n_below = (lo2.gamma_n_per_j - lo1.gamma_n_per_j) / delta
    n_above = (hi2.gamma_n_per_j - hi1.gamma_n_per_j) / delta
    m_below = (lo2.gamma_m_per_j - lo1.gamma_m_per_j) / delta
    m_above = (hi2.gamma_m_per_j - hi1.gamma_m_per_j) / delta
    return (n_below, n_above), (m_below, m_above)


def kink_detected(params: ModelParams, delta: float = 1e-4) -> tuple[bool, bool]:
    """Slope-discontinuity test at gc_x for (photon, matter) phases.

    A kink is flagged when the one-sided slopes differ by more than ten times
    the smaller slope magnitude (plus a small absolute floor).
    """
    (nb, na), (mb, ma) = criticality_slopes(params, delta)

    def kink(below: float, above: float) -> bool:
        return abs(above - below) > 10.0 * min(abs(below), abs(above)) + 1e-9

    return kink(nb, na), kink(mb, ma)


def first_order_signature(params: ModelParams, d_eta_zx_values) -> dict:
    """Sweep d_eta_zx across omega0 at fixed coupling and flag the crossing.

    Each requested difference is realized through eta_x = -d_eta_zx with
    eta_z = 0 (eta_y kept from params), which leaves d_eta_zy untouched.
    Returns row dicts plus summary flags: sign_change marks the closed photon
    phase taking both signs across the sweep, validity_change marks the
    w_zx^2 sign flip.
    """
    rows = []
    for dzx in d_eta_zx_values:
        pr = replace(params, eta_x=-float(dzx), eta_z=0.0)
        s = derive_scales(pr)
        ph = geometric_phases(pr)
        gn = ph.gamma_n_per_j
        rows.append({
            "d_eta_zx": float(dzx),
            "w_zx2": s.w_zx2,
            "mu_x": s.mu_x,
            "gamma_n_per_j": gn,
            "gamma_m_per_j": ph.gamma_m_per_j,
            "gamma_n_definitional": ph.gamma_n_definitional,
            "gamma_m_definitional": ph.gamma_m_definitional,
            "gamma_n_sign": 0 if gn == 0.0 else math.copysign(1.0, gn),
            "formulas_valid": ph.formulas_valid,
        })
    signs = {r["gamma_n_sign"] for r in rows if r["gamma_n_sign"] != 0}
    return {
        "rows": rows,
        "sign_change": len(signs) > 1,
        "validity_change": len({r["formulas_valid"] for r in rows}) > 1,
    }

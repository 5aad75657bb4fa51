"""Model parameters, derived coupling scales, and phase classification.

The model couples a single boson mode (frequency ``omega``) to a collective
spin ``j = N/2`` (splitting ``omega0``) through rotating and counter-rotating
terms weighted by an anisotropy ``xi`` (``xi = 0``: rotating-wave limit,
``xi = 1``: symmetric coupling), plus collective quadratic spin interactions
``eta_x J_x^2 + eta_y J_y^2 + eta_z J_z^2`` scaled by ``1/N``.

Everything downstream (mode branches, energy surface, geometric phases, the
finite-N oracle) consumes the scales computed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class PhaseLabel(Enum):
    """Ground-state regime of the mean-field phase diagram."""

    NORMAL_DEFORMED = "normal_deformed"
    SUPERRADIANT_X = "superradiant_x"
    DEFORMED_SUPPRESSED = "deformed_suppressed"
    INVALID = "invalid"


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters. Energies share one unit; ``gamma`` is the coupling.

    n_qubits enters only the finite-N oracle (j = n_qubits / 2); the closed
    forms are all thermodynamic-limit expressions.
    """

    omega: float
    omega0: float
    gamma: float
    xi: float
    eta_x: float = 0.0
    eta_y: float = 0.0
    eta_z: float = 0.0
    n_qubits: int = 20

    def __post_init__(self) -> None:
        if not (self.omega > 0.0 and math.isfinite(self.omega)):
            raise ValueError(f"omega must be positive and finite, got {self.omega}")
        if not (self.omega0 > 0.0 and math.isfinite(self.omega0)):
            raise ValueError(f"omega0 must be positive and finite, got {self.omega0}")
        if not (self.gamma >= 0.0 and math.isfinite(self.gamma)):
            raise ValueError(f"gamma must be non-negative and finite, got {self.gamma}")
        if not (0.0 <= self.xi <= 1.0):
            raise ValueError(f"xi must lie in [0, 1], got {self.xi}")
        for name in ("eta_x", "eta_y", "eta_z"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not (isinstance(self.n_qubits, int) and self.n_qubits >= 1):
            raise ValueError(f"n_qubits must be a positive integer, got {self.n_qubits}")


@dataclass(frozen=True)
class DerivedScales:
    """Coupling scales and order-parameter building blocks.

    d_eta_zx, d_eta_zy : interaction differences eta_z - eta_x, eta_z - eta_y
    w_zx2, w_zy2       : 1 - d_eta_z{x,y}/omega0 (may be <= 0; then the
                         corresponding w_z{x,y} and gc_{x,y} are NaN)
    gc_plus, gc_minus  : bare critical couplings sqrt(omega*omega0)/(1 +- xi);
                         gc_minus is +inf at xi = 1 (unreachable channel)
    gc_x, gc_y         : dressed critical couplings gc_plus*w_zx, gc_minus*w_zy
    f_plus, f_minus    : (gamma/gc_plus)^2, (gamma/gc_minus)^2
    f_x, g_y           : (gamma/gc_x)^2, (gamma/gc_y)^2; g_y is identically 0
                         at xi = 1.  f_x is stored as f_plus/w_zx2, which stays
                         meaningful (negative) when w_zx2 < 0.
    fmu                : f_plus * mu_x evaluated as the exact ratio
                         f_plus/(f_plus + d_eta_zx/omega0); reused downstream
                         so that the broken-phase determinants cancel exactly
    mu_x               : inverse of w_zx2*(f_x - 1) + 1 = f_plus + d_eta_zx/omega0
    alpha, beta        : boson / spin displacement amplitudes (0 below gc_x)
    k                  : 1 - beta^2
    scales_valid       : False when w_zx2 <= 0 or w_zy2 <= 0
    """

    d_eta_zx: float
    d_eta_zy: float
    w_zx2: float
    w_zy2: float
    w_zx: float
    w_zy: float
    gc_plus: float
    gc_minus: float
    gc_x: float
    gc_y: float
    f_plus: float
    f_minus: float
    f_x: float
    g_y: float
    fmu: float
    mu_x: float
    alpha: float
    beta: float
    k: float
    scales_valid: bool


def derive_scales(params: ModelParams) -> DerivedScales:
    """Compute every derived scale for ``params``.

    The dressed critical coupling along the x-channel is
    ``gc_x = gc_plus * sqrt(1 - d_eta_zx/omega0)``: a repulsive J_z^2 term
    (d_eta_zx > 0) lowers it, an attractive J_x^2 term raises it.  The same
    convention with y-labels gives gc_y.
    """
    w, w0, g, xi = params.omega, params.omega0, params.gamma, params.xi
    dzx = params.eta_z - params.eta_x
    dzy = params.eta_z - params.eta_y
    w_zx2 = 1.0 - dzx / w0
    w_zy2 = 1.0 - dzy / w0
    valid = w_zx2 > 0.0 and w_zy2 > 0.0
    w_zx = math.sqrt(w_zx2) if w_zx2 >= 0.0 else math.nan
    w_zy = math.sqrt(w_zy2) if w_zy2 >= 0.0 else math.nan

    root = math.sqrt(w * w0)
    gc_plus = root / (1.0 + xi)
    gc_minus = root / (1.0 - xi) if xi < 1.0 else math.inf

    gc_x = gc_plus * w_zx
    gc_y = gc_minus * w_zy if xi < 1.0 else math.inf

    f_plus = (g / gc_plus) ** 2
    f_minus = (g / gc_minus) ** 2 if xi < 1.0 else 0.0
    # ratio forms keep the cancellation exact at gamma == gc (see modes.py)
    f_x = (g / gc_x) ** 2 if w_zx2 > 0.0 else (f_plus / w_zx2 if w_zx2 != 0.0 else math.inf)
    if xi < 1.0:
        g_y = (g / gc_y) ** 2 if w_zy2 > 0.0 else (f_minus / w_zy2 if w_zy2 != 0.0 else math.inf)
    else:
        g_y = 0.0

    denom = f_plus + dzx / w0
    mu = 1.0 / denom if denom != 0.0 else math.inf
    fmu = f_plus / denom if denom != 0.0 else math.nan

    # identity check: the two printed forms of 1/mu_x agree.
    if valid and mu > 0.0:
        alt = w_zx2 * (f_x - 1.0) + 1.0
        assert abs(alt - denom) <= 1e-12 * max(1.0, abs(denom))

    if valid and g > gc_x and 0.0 < mu < 1.0:
        alpha = g * (1.0 + xi) / (2.0 * w) * math.sqrt(1.0 - mu * mu)
        beta = math.sqrt(0.5 * (1.0 - mu))
    else:
        alpha = 0.0
        beta = 0.0
    k = 1.0 - beta * beta

    return DerivedScales(
        d_eta_zx=dzx, d_eta_zy=dzy,
        w_zx2=w_zx2, w_zy2=w_zy2, w_zx=w_zx, w_zy=w_zy,
        gc_plus=gc_plus, gc_minus=gc_minus, gc_x=gc_x, gc_y=gc_y,
        f_plus=f_plus, f_minus=f_minus, f_x=f_x, g_y=g_y,
        fmu=fmu, mu_x=mu, alpha=alpha, beta=beta, k=k,
        scales_valid=valid,
    )


def order_parameters(params: ModelParams) -> tuple[float, float, float]:
    """Return ``(alpha, beta, mu_x)`` for the energetically selected branch.

    Below (or at) gc_x the displacements vanish and mu_x is reported as the
    raw formula value (>= 1 there, inf at gamma = 0 with d_eta_zx = 0, NaN if
    the defining denominator is non-positive).  Above gc_x both displacements
    are positive and mu_x lies in (0, 1).
    """
    s = derive_scales(params)
    mu = s.mu_x
    if s.scales_valid and params.gamma > s.gc_x:
        if not (0.0 < mu <= 1.0):
            raise ValueError(f"mu_x = {mu} outside (0, 1] in the broken branch")
        return s.alpha, s.beta, mu
    if mu <= 0.0:
        mu = math.nan
    return 0.0, 0.0, mu


def stationarity_residuals(params: ModelParams, alpha: float, beta: float) -> tuple[float, float]:
    """Residuals of the two mean-field stationarity conditions at (alpha, beta).

    First: the boson equation  omega*alpha - gamma*sqrt(k)*beta*(1+xi).
    Second: the spin equation
      -omega0*beta + gamma*alpha*(1+xi)*(k - beta^2)/sqrt(k)
      - eta_x*beta*(k - beta^2) - eta_z*beta*(2*beta^2 - 1).
    Both vanish at the displacements returned by order_parameters.
    """
    w, w0, g, xi = params.omega, params.omega0, params.gamma, params.xi
    b2 = beta * beta
    k = 1.0 - b2
    sk = math.sqrt(k)
    r1 = w * alpha - g * sk * beta * (1.0 + xi)
    r2 = (-w0 * beta
          + g * alpha * (1.0 + xi) * (k - b2) / sk
          - params.eta_x * beta * (k - b2)
          - params.eta_z * beta * (2.0 * b2 - 1.0))
    return r1, r2


def classify_phase(params: ModelParams) -> PhaseLabel:
    """Classify the mean-field regime.

    Precedence: the xi = 1 suppressed regime (d_eta_zy >= omega0) wins at any
    coupling; otherwise imaginary scale factors mark the point Invalid;
    otherwise gamma > gc_x is the broken (superradiant-x) phase, with the
    boundary gamma = gc_x counted as normal.
    """
    s = derive_scales(params)
    if params.xi == 1.0 and s.d_eta_zy >= params.omega0:
        return PhaseLabel.DEFORMED_SUPPRESSED
    if not s.scales_valid:
        return PhaseLabel.INVALID
    if params.gamma > s.gc_x:
        return PhaseLabel.SUPERRADIANT_X
    return PhaseLabel.NORMAL_DEFORMED

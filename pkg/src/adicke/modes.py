"""Closed-form polariton branches from the quadratic bosonic expansion.

Both phases reduce to a quadratic form H = (1/2)[A(x1,x2) + B(p1,p2) - const]
where A couples the two coordinates and B the two momenta.  Each 2x2 block is
diagonalized by its own rotation; the phase (lower) and amplitude (upper)
branches are the products of the matched square-rooted eigenvalues,

    eps_minus = eps1_minus * eps2_minus,   eps_plus = eps1_plus * eps2_plus,

with eps1 from the coordinate block (energy units) and eps2 from the momentum
block (dimensionless).  The determinant of each block is evaluated in factored
form so that the zeros at the critical couplings are exact in floating point
(the phase mode at criticality and the Goldstone mode in the rotating-wave
limit come out identically 0.0, not 1e-8).

Square-root arguments in [-1e-12, 0) are treated as floating-point noise and
clamped to zero; anything more negative marks the branch invalid (the raw
squares are preserved for diagnostics) and the reported energy is 0.0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from adicke.model import (
    DerivedScales,
    ModelParams,
    PhaseLabel,
    classify_phase,
    derive_scales,
)

# square-root arguments above this are rounding noise, not instability
_CLAMP = -1e-12


@dataclass(frozen=True)
class NormalModeFactors:
    """Factor energies and rotation angles of the normal-phase blocks.

    eps1_* carry energy units (coordinate block, entries omega^2 and
    omega0^2*w_zx^2); eps2_* are dimensionless (momentum block, entries 1 and
    w_zy^2).  sq*_ hold the pre-square-root eigenvalues; a factor whose square
    is below the clamp window is reported as 0.0.  wN_* = eps1_*/eps2_* are
    the effective oscillator frequencies of the rotated modes.
    """

    eps1_minus: float
    eps1_plus: float
    eps2_minus: float
    eps2_plus: float
    sq1_minus: float
    sq1_plus: float
    sq2_minus: float
    sq2_plus: float
    theta1: float
    theta2: float
    wN_minus: float
    wN_plus: float


@dataclass(frozen=True)
class SuperradiantIntermediates:
    """Coefficient set of the displaced-frame quadratic Hamiltonian.

    wA..wF are the boson-form coefficients (wA the dressed matter frequency,
    wB/wC the squeezing terms, wD/wE the beam-splitter couplings, wF the
    displaced-frame constant carrying the extensive mean-field energy).
    chi/kappa repackage them for the quadrature blocks:

        coordinate block: diag(omega^2, wA^2*chi_plus), off-diag
            sqrt(omega*wA)*kappa_plus/2
        momentum block:   diag(1, chi_minus), off-diag
            kappa_minus/(2*sqrt(omega*wA))

    eps0_const is the full constant of the quadratic Hamiltonian (it includes
    the term proportional to 2j, evaluated at j = n_qubits/2), so
    (eps_minus + eps_plus - eps0_const)/2 is the quadratic-order estimate of
    the total ground energy.
    """

    wA: float
    wB: float
    wC: float
    wD: float
    wE: float
    wF: float
    chi_plus: float
    chi_minus: float
    kappa_plus: float
    kappa_minus: float
    phi1: float
    phi2: float
    eps1_minus: float
    eps1_plus: float
    eps2_minus: float
    eps2_plus: float
    sq1_minus: float
    sq1_plus: float
    sq2_minus: float
    sq2_plus: float
    wS_minus: float
    wS_plus: float
    eps0_const: float


@dataclass(frozen=True)
class ModeSpectrum:
    """Phase/amplitude branch energies at one parameter point.

    eps_minus/eps_plus are 0.0 whenever the corresponding validity flag is
    False (overdamped or suppressed branch); raw_squares keeps the four
    pre-square-root factor eigenvalues (sq1_minus, sq1_plus, sq2_minus,
    sq2_plus) for diagnostics.  zero_point is the quadratic-order total
    ground-state energy (extensive part included, j = n_qubits/2).
    """

    eps_minus: float
    eps_plus: float
    zero_point: float
    phase: PhaseLabel
    valid_minus: bool
    valid_plus: bool
    raw_squares: tuple[float, float, float, float]
    suppressed: bool = False


def _split22(p: float, q: float, s: float, det: float) -> tuple[float, float]:
    """Eigenvalues of [[p, s], [s, q]], smaller first.

    The determinant is supplied separately in algebraically factored form;
    the smaller eigenvalue is recovered as 2*det/(trace + sqrt(disc)), which
    preserves an exact zero of the factored determinant instead of losing it
    to cancellation in (trace - sqrt(disc))/2.
    """
    tr = p + q
    sd = math.sqrt((p - q) * (p - q) + 4.0 * s * s)
    top = tr + sd
    if top == 0.0:
        # both eigenvalues <= 0 with the larger exactly 0
        return tr, 0.0
    return 2.0 * det / top, 0.5 * top


def _rotation_angle(p: float, q: float, s: float) -> float:
    # branch (-pi/4, pi/4]; any branch decouples, this one is single-valued
    if q != p:
        return 0.5 * math.atan(2.0 * s / (q - p))
    if s == 0.0:
        return 0.0
    return math.copysign(math.pi / 4.0, s)


def _clamped_root(sq: float) -> float:
    if sq >= 0.0:
        return math.sqrt(sq)
    if sq >= _CLAMP:
        return 0.0
    return 0.0  # invalid branch, energy reported as zero; flag is set elsewhere


def _ratio(num: float, den: float) -> float:
    if den != 0.0:
        return num / den
    return math.inf if num > 0.0 else (-math.inf if num < 0.0 else math.nan)


def _normal_blocks(params: ModelParams, s: DerivedScales):
    """Block entries (p, q, off-diag, factored det) for the normal phase."""
    w, w0, g, xi = params.omega, params.omega0, params.gamma, params.xi
    ww0 = w * w0
    pA = w * w
    qA = w0 * w0 * s.w_zx2
    sA = g * (1.0 + xi) * math.sqrt(ww0)
    if s.w_zx2 > 0.0:
        detA = ww0 * ww0 * s.w_zx2 * (1.0 - s.f_x)
    else:
        detA = ww0 * ww0 * (s.w_zx2 - s.f_plus)
    pB = 1.0
    qB = s.w_zy2
    sB = g * (1.0 - xi) / math.sqrt(ww0)
    if s.w_zy2 > 0.0 and xi < 1.0:
        detB = s.w_zy2 * (1.0 - s.g_y)
    else:
        detB = s.w_zy2 - s.f_minus
    return (pA, qA, sA, detA), (pB, qB, sB, detB)


def normal_mode_factors(params: ModelParams) -> NormalModeFactors:
    """Factor energies of the normal (possibly matter-deformed) phase."""
    s = derive_scales(params)
    (pA, qA, sA, detA), (pB, qB, sB, detB) = _normal_blocks(params, s)
    sq1m, sq1p = _split22(pA, qA, sA, detA)
    sq2m, sq2p = _split22(pB, qB, sB, detB)
    e1m, e1p = _clamped_root(sq1m), _clamped_root(sq1p)
    e2m, e2p = _clamped_root(sq2m), _clamped_root(sq2p)
    return NormalModeFactors(
        eps1_minus=e1m, eps1_plus=e1p, eps2_minus=e2m, eps2_plus=e2p,
        sq1_minus=sq1m, sq1_plus=sq1p, sq2_minus=sq2m, sq2_plus=sq2p,
        theta1=_rotation_angle(pA, qA, sA), theta2=_rotation_angle(pB, qB, sB),
        wN_minus=_ratio(e1m, e2m), wN_plus=_ratio(e1p, e2p),
    )


def superradiant_intermediates(params: ModelParams) -> SuperradiantIntermediates:
    """Displaced-frame coefficients and factor energies, gamma > gc_x.

    Requires mu_x in (0, 1); mode_branches guarantees that by dispatching on
    the phase label.  The coefficients are evaluated exactly as printed in
    the closed-form derivation; kappa_minus uses the algebraically identical
    sqrt(f_minus) form, which stays real even when w_zy is imaginary.
    """
    w, w0, g, xi = params.omega, params.omega0, params.gamma, params.xi
    s = derive_scales(params)
    mu = s.mu_x
    ez = params.eta_z / w0
    ex = params.eta_x / w0
    ww0 = w * w0
    sqf = math.sqrt(s.f_plus)  # = gamma*(1+xi)/sqrt(omega*omega0)

    wA = 0.5 * w0 * ((1.0 / mu - ez) * (1.0 + mu) + ex * (1.0 - mu))
    if mu == 1.0:
        term_x = ex * 0.5
    else:
        term_x = ex * (3.0 * mu * mu - 2.0 * mu + 3.0) / (1.0 - mu * mu)
    wB = 0.5 * w0 * (1.0 - mu) / 4.0 * (
        (3.0 + mu) / ((1.0 + mu) * mu) + ez + term_x
    )
    wC = -(params.eta_y / 8.0) * (1.0 + mu)
    wD = -(math.sqrt(2.0) / 4.0) * sqf * math.sqrt(ww0) * (1.0 - mu) / math.sqrt(1.0 + mu)
    wE = g * math.sqrt(0.5 * (1.0 + mu))
    e0s = -(w0 / 2.0) * (0.5 * (mu + 1.0 / mu) - 0.5 * ez)
    wF = params.n_qubits * e0s - (w0 / 4.0) * s.f_plus * (1.0 - mu)

    chi_plus = 1.0 + 4.0 * wB / wA
    chi_minus = 1.0 - 4.0 * wC / wA
    kappa_plus = 4.0 * wD + math.sqrt(2.0) * sqf * math.sqrt(ww0) * math.sqrt(1.0 + mu)
    kappa_minus = math.sqrt(2.0) * g * (1.0 - xi) * math.sqrt(1.0 + mu)
    # constant of the quadratic Hamiltonian (2j part inside wF)
    eps1_const = w + wA - 2.0 * wF

    wwA = w * wA
    pA = w * w
    qA = wA * wA * chi_plus
    sA = math.sqrt(wwA) * kappa_plus / 2.0
    detA = wwA * (wwA * chi_plus - kappa_plus * kappa_plus / 4.0)
    sq1m, sq1p = _split22(pA, qA, sA, detA)

    # momentum block: det = chi_minus - b^2 with b^2 in fully cancelling form,
    # so the rotating-wave Goldstone zero is exact (b^2 = 1, chi_minus = 1)
    c_aniso = ((1.0 - xi) / (1.0 + xi)) ** 2
    w_denom = (1.0 + mu) * (1.0 - mu * ez) + ex * mu * (1.0 - mu)
    b2 = c_aniso * s.fmu * ((1.0 + mu) / w_denom)
    sB = kappa_minus / (2.0 * math.sqrt(wwA))
    detB = chi_minus - b2
    sq2m, sq2p = _split22(1.0, chi_minus, sB, detB)

    e1m, e1p = _clamped_root(sq1m), _clamped_root(sq1p)
    e2m, e2p = _clamped_root(sq2m), _clamped_root(sq2p)
    return SuperradiantIntermediates(
        wA=wA, wB=wB, wC=wC, wD=wD, wE=wE, wF=wF,
        chi_plus=chi_plus, chi_minus=chi_minus,
        kappa_plus=kappa_plus, kappa_minus=kappa_minus,
        phi1=_rotation_angle(pA, qA, sA), phi2=_rotation_angle(1.0, chi_minus, sB),
        eps1_minus=e1m, eps1_plus=e1p, eps2_minus=e2m, eps2_plus=e2p,
        sq1_minus=sq1m, sq1_plus=sq1p, sq2_minus=sq2m, sq2_plus=sq2p,
        wS_minus=_ratio(e1m, e2m), wS_plus=_ratio(e1p, e2p),
        eps0_const=eps1_const,
    )


def _assemble(sq1m, sq1p, sq2m, sq2p, e1m, e1p, e2m, e2p,
              const: float, phase: PhaseLabel) -> ModeSpectrum:
    vm = sq1m >= _CLAMP and sq2m >= _CLAMP
    vp = sq1p >= _CLAMP and sq2p >= _CLAMP
    eps_m = e1m * e2m if vm else 0.0
    eps_p = e1p * e2p if vp else 0.0
    zp = 0.5 * (eps_m + eps_p - const)
    return ModeSpectrum(
        eps_minus=eps_m, eps_plus=eps_p, zero_point=zp, phase=phase,
        valid_minus=vm, valid_plus=vp,
        raw_squares=(sq1m, sq1p, sq2m, sq2p),
    )


def normal_modes(params: ModelParams) -> ModeSpectrum:
    """Branch energies of the deformed normal phase.

    The quadratic-Hamiltonian constant is
    omega + omega0 - eta_z + 2j*omega0*(1 - eta_z/(2*omega0)),
    whose extensive part reproduces the mean-field normal energy.
    """
    f = normal_mode_factors(params)
    w0 = params.omega0
    const = (params.omega + w0 - params.eta_z
             + params.n_qubits * w0 * (1.0 - params.eta_z / (2.0 * w0)))
    return _assemble(f.sq1_minus, f.sq1_plus, f.sq2_minus, f.sq2_plus,
                     f.eps1_minus, f.eps1_plus, f.eps2_minus, f.eps2_plus,
                     const, classify_phase(params))


def superradiant_modes(params: ModelParams) -> ModeSpectrum:
    """Branch energies of the superradiant-x phase (gamma > gc_x)."""
    si = superradiant_intermediates(params)
    return _assemble(si.sq1_minus, si.sq1_plus, si.sq2_minus, si.sq2_plus,
                     si.eps1_minus, si.eps1_plus, si.eps2_minus, si.eps2_plus,
                     si.eps0_const, classify_phase(params))


def mode_branches(params: ModelParams) -> ModeSpectrum:
    """Dispatch on the phase label and apply the suppressed-phase rules.

    In the suppressed regime (xi = 1, d_eta_zy >= omega0) the phase mode is
    pinned to zero and reported as valid-but-suppressed; the amplitude mode
    follows the underlying branch and is additionally flagged invalid once
    d_eta_zx >= omega0.
    """
    phase = classify_phase(params)
    if phase is PhaseLabel.SUPERRADIANT_X:
        return superradiant_modes(params)
    if phase is PhaseLabel.DEFORMED_SUPPRESSED:
        # The suppressed ground state is not the x-displaced expansion (its
        # effective matter frequency can turn negative there), so the
        # amplitude value always comes from the zero-displacement factors.
        s = derive_scales(params)
        spec = normal_modes(params)
        vp = spec.valid_plus and s.d_eta_zx < params.omega0
        return ModeSpectrum(
            eps_minus=0.0, eps_plus=spec.eps_plus if vp else 0.0,
            zero_point=spec.zero_point, phase=phase,
            valid_minus=True, valid_plus=vp,
            raw_squares=spec.raw_squares, suppressed=True,
        )
    return normal_modes(params)


def critical_amplitude_gap(params: ModelParams) -> float:
    """Amplitude-mode energy at the critical coupling gc_x (closed form).

    NaN when the interaction differences exceed omega0 (imaginary scale
    factors make the expression meaningless there).
    """
    s = derive_scales(params)
    w, w0 = params.omega, params.omega0
    c = (1.0 - params.xi) / (1.0 + params.xi)
    inner = (1.0 - s.w_zy2) ** 2 + 4.0 * s.w_zx2 * c * c
    if inner < 0.0:
        return math.nan
    arg = 0.5 * (w * w + w0 * w0 * s.w_zx2) * ((1.0 + s.w_zy2) + math.sqrt(inner))
    return math.sqrt(arg) if arg >= 0.0 else math.nan


def roton_asymptote(params: ModelParams) -> float:
    """Large-coupling limit of the phase-mode energy, interaction-free form.

    Evaluated verbatim; meaningful for eta = 0.  Note the formula tends to
    omega*sqrt(2) in the rotating-wave limit even though the true limit there
    is a Goldstone zero; it is a gap formula for the discrete-symmetry cases.
    """
    c = (1.0 - params.xi) / (1.0 + params.xi)
    return params.omega * math.sqrt(1.0 + abs(c))


def suppression_window(params: ModelParams) -> tuple[float, bool]:
    """Width gc_x - gc_y of the coupling range with a suppressed phase mode.

    Returns (delta_gamma, window_exists); the window exists when gc_y < gc_x,
    so the momentum-block determinant goes negative before superradiance.
    Undefined in the fully anisotropy-broken limit xi = 1 (gc_y is infinite).
    """
    if params.xi == 1.0:
        raise ValueError("suppression window is undefined at xi = 1")
    s = derive_scales(params)
    delta = s.gc_x * (1.0 - (s.w_zy / s.w_zx) * (1.0 + params.xi) / (1.0 - params.xi))
    return delta, delta > 0.0


def ground_state_energy(params: ModelParams) -> float:
    """Mean-field ground energy per 2j, direct evaluation at (alpha, beta).

    The closed branch form is evaluated alongside and asserted to agree in
    debug runs.  In the suppressed regime the value still refers to the
    x-displaced branch and does not represent the true deformed ground state.
    """
    s = derive_scales(params)
    a, b = s.alpha, s.beta
    w, w0, g, xi = params.omega, params.omega0, params.gamma, params.xi
    b2 = b * b
    k = 1.0 - b2
    direct = (w * a * a + w0 * b2 - 0.5 * w0
              - 2.0 * g * math.sqrt(k) * a * b * (1.0 + xi)
              + params.eta_x * k * b2
              + params.eta_z * (b2 - 0.5) ** 2)
    closed = ground_state_energy_closed(params)
    assert abs(direct - closed) <= 1e-12 * max(1.0, abs(closed))
    return direct


def ground_state_energy_closed(params: ModelParams) -> float:
    """Closed branch form of the mean-field energy per 2j."""
    s = derive_scales(params)
    ez = params.eta_z / params.omega0
    if s.scales_valid and params.gamma > s.gc_x:
        mu = s.mu_x
        return -(params.omega0 / 2.0) * (0.5 * (mu + 1.0 / mu) - 0.5 * ez)
    return -(params.omega0 / 2.0) * (1.0 - 0.5 * ez)

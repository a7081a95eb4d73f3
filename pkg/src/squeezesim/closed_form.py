# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
"""
Analytic squeezing and readout formulas.

Quadratures follow ``X = (A + A†)/2``, ``Y = (A − A†)/2i``, so ``[X, Y] = i/2`` and the vacuum
variance is 1/4. Phases: ``φ_h`` is the homodyne angle, ``φ_z`` the phase of the longitudinal
coupling and ``φ_2pd`` half the phase of the two-photon drive. Rates are in any common unit.

The semiclassical readout splits the signal mode (rotated by ``φ_2pd``) into two quadrature
channels that relax independently at ``γ± = (κ_s ± 4Ω_2pd)/2``; signal and noise are sums over
these channels.
"""

from __future__ import annotations

import cmath
import dataclasses
import logging
import math
import typing

import numpy as np
import scipy.integrate
import scipy.special

from .errors import InvalidStateError, ModelError, QuadratureError, StabilityError

if typing.TYPE_CHECKING:
    from collections.abc import Callable

logger = logging.getLogger(__name__)

THREE_DB = -10 * math.log10(0.5)
UNCERTAINTY_BOUND = 1 / 16
QUAD_TOL = 1e-10
SERIES_CUTOFF = 1e-4


@dataclasses.dataclass(kw_only=True, frozen=True)
class SemiclassicalParams:
    """A signal mode under a classical two-photon drive, plus the nonlinear-correction parameters."""

    delta_s: float
    omega_2pd: float
    kappa_s: float
    lam: float = 0.0
    kappa_r: float = 1.0

    def __post_init__(self):
        if self.kappa_s <= 0:
            raise ModelError(f"κ_s must be positive, not {self.kappa_s}")
        if self.denominator <= 0:
            raise StabilityError(
                f"Semiclassical amplifier is unstable: Ω_2pd = {self.omega_2pd:g}, Δ_s = {self.delta_s:g}, κ_s = {self.kappa_s:g}"
            )

    @property
    def omega(self) -> complex:
        """``√(4Ω_2pd² − Δ_s²)``, real above threshold detuning and imaginary below it."""
        return cmath.sqrt(4 * self.omega_2pd**2 - self.delta_s**2)

    @property
    def denominator(self) -> float:
        """``κ_s² − 4ω² = κ_s² + 4Δ_s² − 16Ω_2pd²``; positive exactly when the amplifier is stable."""
        return self.kappa_s**2 + 4 * self.delta_s**2 - 16 * self.omega_2pd**2

    @property
    def mu(self) -> float:
        return 4 * abs(self.omega_2pd) / math.sqrt(self.kappa_s**2 + 4 * self.delta_s**2)

    @property
    def delta(self) -> float:
        return self.mu - 1


def _sinhc_terms(omega: complex, kappa: float, t: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``e^{−κt}``, ``e^{−κt} sinh(2ωt)/2ω`` and ``e^{−κt}(cosh(2ωt) − 1)/4ω²``, without overflow."""
    decay = np.exp(-kappa * t)
    x = 2 * omega * t
    small = np.abs(x) < SERIES_CUTOFF
    if abs(omega) == 0:
        return decay, decay * t, decay * t**2 / 2
    grow = np.exp((2 * omega - kappa) * t)
    shrink = np.exp((-2 * omega - kappa) * t)
    sinh_term = (grow - shrink) / (4 * omega)
    cosh_term = ((grow + shrink) / 2 - decay) / (4 * omega**2)
    series_sinh = decay * t * (1 + x**2 / 6)
    series_cosh = decay * t**2 / 2 * (1 + x**2 / 12)
    return decay, np.where(small, series_sinh, sinh_term), np.where(small, series_cosh, cosh_term)


def sc_moments(t, delta_s: float, omega_2pd: float, kappa_s: float) -> tuple:
    """
    ``(⟨a†a⟩(t), ⟨aa⟩(t))`` for a signal mode starting in vacuum under ``Δ_s a†a + Ω_2pd(a² + a†²)`` and loss ``κ_s``.

    ``t`` may be a scalar or an array.

    >>> n, m = sc_moments(1e6, 0.0, 0.2, 1.0)
    >>> round(n, 4)
    0.8889
    """
    params = SemiclassicalParams(delta_s=delta_s, omega_2pd=omega_2pd, kappa_s=kappa_s)
    times = np.asarray(t, dtype=float)
    if np.any(times < 0):
        raise ValueError("Moment evolution starts at t = 0")
    # y = (⟨a†a⟩ + ½, ⟨aa⟩, ⟨a†a†⟩) obeys dy/dt = (−κ_s + B) y + (κ_s/2, 0, 0), with B³ = 4ω²B
    b = np.array(
        [[0, 2j * omega_2pd, -2j * omega_2pd], [-4j * omega_2pd, -2j * delta_s, 0], [4j * omega_2pd, 0, 2j * delta_s]],
        dtype=complex,
    )
    steady_n = 8 * omega_2pd**2 / params.denominator
    steady_m = -2j * omega_2pd * (2 * steady_n + 1) / (kappa_s + 2j * delta_s)
    steady = np.array([steady_n + 0.5, steady_m, steady_m.conjugate()])
    offset = np.array([0.5, 0, 0], dtype=complex) - steady
    first = b @ offset
    second = b @ first
    decay, sinh_term, cosh_term = _sinhc_terms(params.omega, kappa_s, times)
    y = steady[:, None] + np.outer(offset, decay) + np.outer(first, sinh_term) + np.outer(second, cosh_term)
    n = y[0] - 0.5
    residual = float(np.abs(n.imag).max()) if n.size else 0.0
    if residual > 1e-10:
        raise ArithmeticError(f"⟨a†a⟩ picked up an imaginary part {residual:.3g}")
    n, m = n.real, y[1]
    if times.ndim == 0:
        return float(n[0]), complex(m[0])
    return n, m


def sc_xi2_ss(delta_s: float, omega_2pd: float, kappa_s: float) -> float:
    """
    Steady-state squeezing ``1/(1 + μ)`` of the semiclassical amplifier; never below the 3 dB value 0.5.

    >>> sc_xi2_ss(0.0, 0.125, 1.0)
    0.6666666666666666
    """
    params = SemiclassicalParams(delta_s=delta_s, omega_2pd=omega_2pd, kappa_s=kappa_s)
    return 1 / (1 + params.mu)


def sc_xi2_ss_nonlinear(delta: float, lam: float, kappa_r: float, *, form: typing.Literal["delta", "mu"] = "delta") -> float:
    """
    Steady-state squeezing with the leading correction from the residual pump–signal coupling.

    ``delta`` is the offset in ``μ = 1 + δ``; ``lam`` is the nonlinearity ``4g/√(2κ_pκ_s)`` and
    ``kappa_r = κ_p/κ_s``.
    """
    if delta == 0:
        raise ModelError("The nonlinear correction diverges at δ = 0")
    if delta > 0 or delta <= -1:
        raise StabilityError(f"δ must lie in (−1, 0), not {delta:g}")
    if lam < 0 or kappa_r <= 0:
        raise ModelError(f"Need λ ≥ 0 and κ_r > 0 (λ = {lam:g}, κ_r = {kappa_r:g})")
    match form:
        case "delta":
            d, k = delta, kappa_r
            bracket = k * (1 + d) / (2 + k) + (4 + k + (2 + k) * d + k * d**2) / ((2 + d) * (4 + k + 2 * d))
            return 1 / (2 + d) - lam**2 * (1 + d) / (2 * d * (2 + d) ** 2) * bracket
        case "mu":
            mu, k = 1 + delta, kappa_r
            bracket = mu * k / (k + 2) + (k * (1 - mu + mu**2) + 2 * (1 + mu)) / ((1 + mu) * (k + 2 * (1 + mu)))
            return 1 / (1 + mu) + lam**2 * mu / (2 * (1 + mu) ** 2 * (1 - mu)) * bracket
        case _:
            raise ValueError(f"Unknown form {form!r}")


def optimal_delta(lam: float, kappa_r: float) -> float:
    """
    Offset δ that minimizes the corrected squeezing for small λ.

    >>> round(optimal_delta(0.2, 2.0), 6)
    -0.141421
    """
    return -(lam / 2) * math.sqrt((2 + 3 * kappa_r) / (2 + kappa_r))


def fq_xi2_ss(cooperativity: float, r_p: float) -> float:
    """Steady-state pump squeezing ``(1 + 4𝒞e^{−2r_p})/(1 + 4𝒞)``; ``cooperativity=math.inf`` gives the limit e^{−2r_p}."""
    if cooperativity < 0 or r_p < 0:
        raise ModelError(f"Need 𝒞 ≥ 0 and r_p ≥ 0 (𝒞 = {cooperativity:g}, r_p = {r_p:g})")
    if math.isinf(cooperativity):
        return math.exp(-2 * r_p)
    return (1 + 4 * cooperativity * math.exp(-2 * r_p)) / (1 + 4 * cooperativity)


def fq_max_xi2(ratio: float) -> float:
    """Infinite-cooperativity squeezing ``(1 − G₊/G₋)/(1 + G₊/G₋)``."""
    if not 0 <= ratio < 1:
        raise ModelError(f"G₊/G₋ must lie in [0, 1), not {ratio:g}")
    return (1 - ratio) / (1 + ratio)


def r_p_from_ratio(ratio: float) -> float:
    if not 0 <= ratio < 1:
        raise ModelError(f"G₊/G₋ must lie in [0, 1), not {ratio:g}")
    return math.atanh(ratio)


def three_db_crossing(r_p: float) -> float:
    """
    Cooperativity at which the steady-state pump squeezing reaches 3 dB.

    >>> round(three_db_crossing(r_p_from_ratio(0.9)), 4)
    0.2794
    """
    margin = 1 - 2 * math.exp(-2 * r_p)
    if margin <= 0:
        raise ModelError(f"r_p = {r_p:g} never reaches 3 dB of squeezing")
    return 1 / (4 * margin)


def squeezing_db(xi2):
    """``−10 log₁₀ ξ²``."""
    return -10 * np.log10(xi2)


def output_squeezing(omega_2pd: float, kappa_s: float) -> float:
    """Output squeezing parameter ``r_out`` with ``4Ω_2pd/κ_s = tanh(r_out/2)``."""
    ratio = 4 * omega_2pd / kappa_s
    if not 0 <= ratio < 1:
        raise StabilityError(f"4Ω_2pd/κ_s = {ratio:g} is outside [0, 1)")
    return 2 * math.atanh(ratio)


def omega_for_output_squeezing(r_out: float, kappa_s: float) -> float:
    """
    >>> round(omega_for_output_squeezing(2.0, 1.0), 4)
    0.1904
    """
    return kappa_s * math.tanh(r_out / 2) / 4


def optimal_sc_phases(phi_2pd: float = 0.0) -> dict[str, float]:
    """Homodyne and coupling phases that put the whole signal in the squeezed channel."""
    return {"phi_h": phi_2pd + math.pi / 4, "phi_z": phi_2pd - math.pi / 4, "phi_2pd": phi_2pd}


def measurement_error(snr: float) -> float:
    """Misassignment probability ``½ erfc(SNR/2)``, evaluated directly in the tail."""
    return 0.5 * float(scipy.special.erfc(snr / 2))


def measurement_fidelity(snr: float) -> float:
    return 0.5 * (1 + float(scipy.special.erf(snr / 2)))


@dataclasses.dataclass(kw_only=True, frozen=True)
class SnrReport:
    signal_separation: float
    noise_up: float
    noise_down: float
    snr: float
    measurement_error: float
    fidelity: float

    @classmethod
    def from_components(cls, signal_separation: float, noise_up: float, noise_down: float) -> SnrReport:
        snr = abs(signal_separation) / math.sqrt(noise_up + noise_down)
        return cls(
            signal_separation=signal_separation,
            noise_up=noise_up,
            noise_down=noise_down,
            snr=snr,
            measurement_error=measurement_error(snr),
            fidelity=measurement_fidelity(snr),
        )


@dataclasses.dataclass(kw_only=True, frozen=True)
class ReadoutSpec:
    """
    Configuration of one longitudinal readout.

    ``variant`` picks which parameters matter: ``omega_2pd`` and ``kappa_s`` for the semiclassical
    readout, ``kappa``, ``cooperativity`` and ``r_p`` for the fully quantum one, and only ``kappa``
    for the standard readout without squeezing.
    """

    variant: typing.Literal["semiclassical", "fully_quantum", "standard"]
    chi_z: float
    phi_z: float = math.pi / 2
    phi_h: float = 0.0
    phi_2pd: float = 0.0
    tau: float = 1.0
    sigma: int = 1
    omega_2pd: float = 0.0
    kappa_s: float = 1.0
    kappa: float = 1.0
    cooperativity: float = 0.0
    r_p: float = 0.0

    def __post_init__(self):
        if self.variant not in ("semiclassical", "fully_quantum", "standard"):
            raise ModelError(f"Unknown readout variant {self.variant!r}")
        if self.tau <= 0:
            raise ModelError(f"Measurement time must be positive, not {self.tau:g}")
        if self.sigma not in (1, -1):
            raise ModelError(f"Qubit c-number σ must be +1 or −1, not {self.sigma!r}")
        if self.variant == "semiclassical" and 4 * self.omega_2pd >= self.kappa_s:
            raise StabilityError(f"Semiclassical readout needs Ω_2pd < κ_s/4 (Ω_2pd = {self.omega_2pd:g}, κ_s = {self.kappa_s:g})")

    @property
    def loss(self) -> float:
        """The loss rate that sets the readout bandwidth for this variant."""
        return self.kappa_s if self.variant == "semiclassical" else self.kappa

    def replace(self, **changes) -> ReadoutSpec:
        return dataclasses.replace(self, **changes)


def _check_sc(omega_2pd: float, kappa_s: float, tau: float):
    if kappa_s <= 0 or tau <= 0:
        raise ModelError(f"Need κ_s > 0 and τ > 0 (κ_s = {kappa_s:g}, τ = {tau:g})")
    if not 0 <= 4 * omega_2pd < kappa_s:
        raise StabilityError(f"Semiclassical readout needs 0 ≤ Ω_2pd < κ_s/4 (Ω_2pd = {omega_2pd:g}, κ_s = {kappa_s:g})")


def _channel_rates(omega_2pd: float, kappa_s: float) -> tuple[float, float]:
    return (kappa_s + 4 * omega_2pd) / 2, (kappa_s - 4 * omega_2pd) / 2


def _ramp_integral(gamma: float, tau: float) -> float:
    """``∫₀^τ (1 − e^{−γt})/γ dt``."""
    return (tau + math.expm1(-gamma * tau) / gamma) / gamma


def _channel_drives(chi_z: float, phi_z: float, phi_2pd: float, sigma: int) -> tuple[float, float]:
    theta = phi_z - phi_2pd
    return sigma * chi_z * (math.sin(theta) - math.cos(theta)), sigma * chi_z * (math.sin(theta) + math.cos(theta))


def sc_mean_signal(tau: float, chi_z: float, omega_2pd: float, kappa_s: float, phi_h: float, phi_z: float, phi_2pd: float = 0.0, sigma: int = 1) -> float:
    """Signed homodyne mean ``⟨M⟩_σ`` of the semiclassical readout over ``[0, τ]``."""
    _check_sc(omega_2pd, kappa_s, tau)
    gamma_plus, gamma_minus = _channel_rates(omega_2pd, kappa_s)
    big_phi = phi_h + phi_z - 2 * phi_2pd
    small_delta = phi_h - phi_z
    return (
        sigma
        * kappa_s
        * chi_z
        * (
            -(math.cos(big_phi) + math.sin(small_delta)) * _ramp_integral(gamma_plus, tau)
            + (math.cos(big_phi) - math.sin(small_delta)) * _ramp_integral(gamma_minus, tau)
        )
    )


def sc_signal_separation(tau: float, chi_z: float, omega_2pd: float, kappa_s: float, phi_h: float, phi_z: float, phi_2pd: float = 0.0) -> float:
    """``|⟨M⟩↑ − ⟨M⟩↓|``; reduces to the standard longitudinal separation at Ω_2pd = 0."""
    return abs(2 * sc_mean_signal(tau, chi_z, omega_2pd, kappa_s, phi_h, phi_z, phi_2pd, 1))


def _channel_variances(tau: float, omega_2pd: float, kappa_s: float) -> tuple[float, float]:
    """Integrated noise of the two quadrature channels; each is τ/2 without the drive."""
    gamma_plus, gamma_minus = _channel_rates(omega_2pd, kappa_s)
    beta_plus = -4 * omega_2pd * kappa_s / (kappa_s + 4 * omega_2pd)
    beta_minus = 4 * omega_2pd * kappa_s / (kappa_s - 4 * omega_2pd)

    def variance(gamma: float, beta: float) -> float:
        return 0.5 * (tau + 2 * beta * (tau / gamma + math.expm1(-gamma * tau) / gamma**2))

    return variance(gamma_plus, beta_plus), variance(gamma_minus, beta_minus)


def sc_noise(tau: float, omega_2pd: float, kappa_s: float, phi_h: float, phi_2pd: float = 0.0) -> float:
    """Homodyne noise ``⟨M_N²⟩`` of the semiclassical readout; κ_sτ at Ω_2pd = 0, smallest at ``φ_h − φ_2pd = π/4``."""
    _check_sc(omega_2pd, kappa_s, tau)
    v_plus, v_minus = _channel_variances(tau, omega_2pd, kappa_s)
    s = math.sin(2 * (phi_h - phi_2pd))
    return kappa_s * ((1 + s) * v_plus + (1 - s) * v_minus)


def snr_std(chi_z: float, kappa: float, tau: float) -> float:
    """
    SNR of standard longitudinal readout without squeezing.

    >>> round(snr_std(1.0, 1.0, 1.0), 4)
    1.2053
    """
    if kappa <= 0 or tau < 0:
        raise ModelError(f"Need κ > 0 and τ ≥ 0 (κ = {kappa:g}, τ = {tau:g})")
    if tau == 0:
        return 0.0
    x = kappa * tau
    return 8 * chi_z * tau * (1 + 2 * math.expm1(-x / 2) / x) / math.sqrt(2 * x)


def snr_sc(
    tau: float, chi_z: float, omega_2pd: float, kappa_s: float, phi_h: float | None = None, phi_z: float | None = None, phi_2pd: float = 0.0
) -> SnrReport:
    """Semiclassical readout report; missing phases default to the optimal ones."""
    optimal = optimal_sc_phases(phi_2pd)
    phi_h = optimal["phi_h"] if phi_h is None else phi_h
    phi_z = optimal["phi_z"] if phi_z is None else phi_z
    noise = sc_noise(tau, omega_2pd, kappa_s, phi_h, phi_2pd)
    return SnrReport.from_components(sc_signal_separation(tau, chi_z, omega_2pd, kappa_s, phi_h, phi_z, phi_2pd), noise, noise)


def sc_snr_ratio(tau: float, omega_2pd: float, kappa_s: float) -> float:
    """Optimal-phase semiclassical SNR over the standard one; independent of χ_z."""
    return snr_sc(tau, 1.0, omega_2pd, kappa_s).snr / snr_std(1.0, kappa_s, tau)


def sc_snr_asymptote(omega_2pd: float, kappa_s: float) -> float:
    """
    Long-time SNR improvement ``[κ_s/(κ_s + 4Ω_2pd)] e^{r_out}``, which simplifies to ``κ_s/(κ_s − 4Ω_2pd)``.

    >>> round(sc_snr_asymptote(omega_for_output_squeezing(2.0, 1.0), 1.0), 3)
    4.195
    """
    _check_sc(omega_2pd, kappa_s, 1.0)
    return kappa_s / (kappa_s + 4 * omega_2pd) * math.exp(output_squeezing(omega_2pd, kappa_s))


def _bracket(kappa: float, tau: float) -> float:
    x = kappa * tau
    return 1 + 2 * math.expm1(-x / 2) / x


def fq_signal_separation(tau: float, chi_z: float, kappa: float, phi_h: float, phi_z: float) -> float:
    if kappa <= 0 or tau <= 0:
        raise ModelError(f"Need κ > 0 and τ > 0 (κ = {kappa:g}, τ = {tau:g})")
    return 8 * chi_z * tau * abs(math.sin(phi_h - phi_z)) * _bracket(kappa, tau)


def fq_noise(tau: float, kappa: float, cooperativity: float, r_p: float, phi_h: float) -> float:
    if kappa <= 0 or tau <= 0 or cooperativity < 0:
        raise ModelError(f"Need κ > 0, τ > 0 and 𝒞 ≥ 0 (κ = {kappa:g}, τ = {tau:g}, 𝒞 = {cooperativity:g})")
    weight = 4 * cooperativity / (4 * cooperativity + 1)
    return kappa * tau * ((1 - weight) + weight * (math.cosh(2 * r_p) - math.cos(2 * phi_h) * math.sinh(2 * r_p)))


def snr_ratio_fq(cooperativity: float, r_p: float) -> float:
    """
    SNR gain of the fully quantum readout over standard readout.

    >>> round(snr_ratio_fq(5.0, 2.0), 3)
    3.92
    """
    return math.sqrt(1 / fq_xi2_ss(cooperativity, r_p))


def snr_fq(tau: float, chi_z: float, kappa: float, cooperativity: float, r_p: float, phi_h: float = 0.0, phi_z: float = math.pi / 2) -> SnrReport:
    if math.isinf(cooperativity):
        # the noise weight 4𝒞/(4𝒞 + 1) is exactly 1 in the limit
        noise = kappa * tau * (math.cosh(2 * r_p) - math.cos(2 * phi_h) * math.sinh(2 * r_p))
    else:
        noise = fq_noise(tau, kappa, cooperativity, r_p, phi_h)
    return SnrReport.from_components(fq_signal_separation(tau, chi_z, kappa, phi_h, phi_z), noise, noise)


def snr_report(spec: ReadoutSpec) -> SnrReport:
    match spec.variant:
        case "standard":
            return snr_fq(spec.tau, spec.chi_z, spec.kappa, 0.0, 0.0, spec.phi_h, spec.phi_z)
        case "fully_quantum":
            return snr_fq(spec.tau, spec.chi_z, spec.kappa, spec.cooperativity, spec.r_p, spec.phi_h, spec.phi_z)
        case _:
            return snr_sc(spec.tau, spec.chi_z, spec.omega_2pd, spec.kappa_s, spec.phi_h, spec.phi_z, spec.phi_2pd)


@dataclasses.dataclass(kw_only=True, frozen=True)
class TemporalModeStats:
    mean_x: float
    mean_y: float
    covariance: np.ndarray

    def __post_init__(self):
        covariance = np.asarray(self.covariance, dtype=float)
        if covariance.shape != (2, 2):
            raise InvalidStateError(f"Covariance must be 2×2, not {covariance.shape}")
        if abs(covariance[0, 1] - covariance[1, 0]) > 1e-12 * max(1.0, float(np.abs(covariance).max())):
            raise InvalidStateError("Covariance matrix is not symmetric")
        if np.linalg.eigvalsh(covariance).min() <= 0:
            raise InvalidStateError("Covariance matrix is not positive definite")
        if np.linalg.det(covariance) < UNCERTAINTY_BOUND - 1e-9:
            raise InvalidStateError(f"Covariance determinant {np.linalg.det(covariance):.6g} violates the uncertainty bound 1/16")
        object.__setattr__(self, "covariance", covariance)

    @property
    def mean(self) -> np.ndarray:
        return np.array([self.mean_x, self.mean_y])

    @property
    def squeezed_variance(self) -> float:
        return float(np.linalg.eigvalsh(self.covariance)[0])

    @property
    def normalized_squeezed_variance(self) -> float:
        """Squeezed-axis variance in units of the vacuum variance 1/4."""
        return 4 * self.squeezed_variance

    def variance_along(self, angle: float) -> float:
        direction = np.array([math.cos(angle), math.sin(angle)])
        return float(direction @ self.covariance @ direction)


def _rotation(angle: float) -> np.ndarray:
    return np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])


def _quad(function: Callable[[float], float], lower: float, upper: float) -> float:
    result = scipy.integrate.quad(function, lower, upper, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200, full_output=1)
    if len(result) > 3:
        raise QuadratureError(f"Adaptive quadrature over [{lower:g}, {upper:g}] did not converge: {result[3]}")
    return result[0]


def _sc_channel_statistics_by_quadrature(tau: float, chi_z: float, omega_2pd: float, kappa_s: float, phi_z: float, phi_2pd: float, sigma: int):
    gamma_plus, gamma_minus = _channel_rates(omega_2pd, kappa_s)
    drive_u, drive_v = _channel_drives(chi_z, phi_z, phi_2pd, sigma)
    mean_u = _quad(lambda t: drive_u * -math.expm1(-gamma_plus * t) / gamma_plus, 0, tau)
    mean_v = _quad(lambda t: drive_v * -math.expm1(-gamma_minus * t) / gamma_minus, 0, tau)

    def variance(gamma: float) -> float:
        # weight of the channel's input noise at time s in the integrated output quadrature
        ratio = kappa_s / gamma
        inside = _quad(lambda s: (1 - ratio * -math.expm1(-gamma * (tau - s))) ** 2, 0, tau)
        before = _quad(lambda s: (ratio * math.exp(gamma * s) * -math.expm1(-gamma * tau)) ** 2, -math.inf, 0)
        return 0.5 * (inside + before)

    return mean_u, mean_v, variance(gamma_plus), variance(gamma_minus)


def sc_temporal_mode_stats(spec: ReadoutSpec, *, tau: float | None = None, sigma: int | None = None, method: typing.Literal["closed", "quadrature"] = "closed") -> TemporalModeStats:
    """
    Gaussian statistics of the temporal mode ``A = τ^{−1/2} ∫₀^τ a_out dt`` for the semiclassical readout.

    The signal mode starts from its steady-state fluctuations with the coupling switched on at t = 0.
    ``method="quadrature"`` integrates the channel kernels numerically instead of using the closed forms.
    """
    tau = spec.tau if tau is None else tau
    sigma = spec.sigma if sigma is None else sigma
    kappa_s, omega_2pd = spec.kappa_s, spec.omega_2pd
    _check_sc(omega_2pd, kappa_s, tau)
    match method:
        case "closed":
            gamma_plus, gamma_minus = _channel_rates(omega_2pd, kappa_s)
            drive_u, drive_v = _channel_drives(spec.chi_z, spec.phi_z, spec.phi_2pd, sigma)
            mean_u = drive_u * _ramp_integral(gamma_plus, tau)
            mean_v = drive_v * _ramp_integral(gamma_minus, tau)
            v_plus, v_minus = _channel_variances(tau, omega_2pd, kappa_s)
        case "quadrature":
            mean_u, mean_v, v_plus, v_minus = _sc_channel_statistics_by_quadrature(
                tau, spec.chi_z, omega_2pd, kappa_s, spec.phi_z, spec.phi_2pd, sigma
            )
        case _:
            raise ValueError(f"Unknown method {method!r}")
    # channel u = x + y, v = x − y in the frame rotated by φ_2pd
    scale = math.sqrt(kappa_s / tau)
    mean_rotated = scale * np.array([(mean_u + mean_v) / 2, (mean_u - mean_v) / 2])
    covariance_rotated = np.array([[v_plus + v_minus, v_plus - v_minus], [v_plus - v_minus, v_plus + v_minus]]) / (4 * tau)
    rotation = _rotation(spec.phi_2pd)
    mean = rotation @ mean_rotated
    covariance = rotation @ covariance_rotated @ rotation.T
    covariance = 0.5 * (covariance + covariance.T)
    return TemporalModeStats(mean_x=float(mean[0]), mean_y=float(mean[1]), covariance=covariance)


def fq_temporal_mode_stats(spec: ReadoutSpec, *, tau: float | None = None, sigma: int | None = None) -> TemporalModeStats:
    """
    Temporal-mode statistics of the fully quantum readout.

    The intracavity pump is already in its squeezed steady state, so the normalized covariance
    does not depend on τ; X is the squeezed axis.
    """
    tau = spec.tau if tau is None else tau
    sigma = spec.sigma if sigma is None else sigma
    kappa = spec.kappa
    if kappa <= 0 or tau <= 0:
        raise ModelError(f"Need κ > 0 and τ > 0 (κ = {kappa:g}, τ = {tau:g})")
    if math.isinf(spec.cooperativity):
        weight = 1.0
    else:
        weight = 4 * spec.cooperativity / (4 * spec.cooperativity + 1)
    squeezed = (1 - weight) + weight * math.exp(-2 * spec.r_p)
    anti_squeezed = (1 - weight) + weight * math.exp(2 * spec.r_p)
    amplitude = -2j * sigma * spec.chi_z * cmath.exp(1j * spec.phi_z) / kappa
    mean = math.sqrt(kappa / tau) * amplitude * (tau - 2 * -math.expm1(-kappa * tau / 2) / kappa)
    return TemporalModeStats(mean_x=mean.real, mean_y=mean.imag, covariance=np.diag([squeezed, anti_squeezed]) / 4)


def gaussian_wigner(stats: TemporalModeStats, x, y) -> np.ndarray:
    """
    Wigner function ``exp(−½ GᵀD⁻¹G)/(2π√det D)`` of the temporal mode on the grid spanned by ``x`` and ``y``.

    Returns an array indexed ``[iy, ix]``.
    """
    determinant = float(np.linalg.det(stats.covariance))
    if determinant <= 0:
        raise InvalidStateError("Wigner function needs an invertible covariance")
    inverse = np.linalg.inv(stats.covariance)
    gx, gy = np.meshgrid(np.asarray(x, dtype=float) - stats.mean_x, np.asarray(y, dtype=float) - stats.mean_y)
    exponent = inverse[0, 0] * gx**2 + 2 * inverse[0, 1] * gx * gy + inverse[1, 1] * gy**2
    return np.exp(-0.5 * exponent) / (2 * math.pi * math.sqrt(determinant))


def contour_ellipse(stats: TemporalModeStats, n_sigma: float = 1.0, points: int = 128) -> tuple[np.ndarray, np.ndarray]:
    """Points on the level set ``GᵀD⁻¹G = n_sigma²`` of the Wigner function."""
    eigenvalues, vectors = np.linalg.eigh(stats.covariance)
    angles = np.linspace(0, 2 * math.pi, points)
    circle = np.vstack([np.cos(angles), np.sin(angles)]) * n_sigma * np.sqrt(eigenvalues)[:, None]
    ellipse = vectors @ circle
    return ellipse[0] + stats.mean_x, ellipse[1] + stats.mean_y


def headline_numbers(chi_z: float = 1.0, kappa: float = 1.0, tau: float = 1.0, cooperativity: float = 5.0, r_p: float = 2.0) -> dict[str, SnrReport]:
    """Standard, semiclassical and fully quantum readout at the same output squeezing."""
    omega_2pd = omega_for_output_squeezing(r_p, kappa)
    return {
        "standard": snr_fq(tau, chi_z, kappa, 0.0, 0.0),
        "semiclassical": snr_sc(tau, chi_z, omega_2pd, kappa),
        "fully_quantum": snr_fq(tau, chi_z, kappa, cooperativity, r_p),
        "fully_quantum_limit": snr_fq(tau, chi_z, kappa, math.inf, r_p),
    }

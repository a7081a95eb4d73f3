# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
"""
Master-equation models of the degenerate parametric amplifier and its qubit readout.

All models are written in the frame where the pump has been displaced by its macroscopic
amplitude, so only ``Ω_2pd = g α_p^d`` enters. Mode labels are ``pump`` (â_p), ``signal``
(â_s, or the signal Bogoliubov mode β̂_s in the frames where that is the natural basis) and
``qubit``.
"""

from __future__ import annotations

import cmath
import dataclasses
import functools
import logging
import math
import typing
import warnings

import numpy as np

from . import fock
from .errors import ModelError
from .fock import FockSpace, Operator, StateVector
from .lindblad import DensityMatrix, Dissipator, LindbladModel, ToneTerm
from .warnings import HierarchyWarning

if typing.TYPE_CHECKING:
    from collections.abc import Mapping

logger = logging.getLogger(__name__)

PUMP = "pump"
SIGNAL = "signal"
QUBIT = "qubit"

DEFAULT_PUMP_TRUNCATION = 40
DEFAULT_BOGOLIUBOV_TRUNCATION = 10
HIERARCHY_WARN_RATIO = 10.0
HIERARCHY_ERROR_RATIO = 3.0


@dataclasses.dataclass(kw_only=True, frozen=True)
class RawDrive:
    """Signal drive tones given directly by their amplitudes ℰ± and frequencies ω±."""

    e_plus: complex
    e_minus: complex
    omega_plus: float
    omega_minus: float


@dataclasses.dataclass(kw_only=True, frozen=True)
class TargetDrive:
    """Signal drive tones back-solved so the Bogoliubov-mode amplitudes are exactly ``alpha_plus`` and ``alpha_minus``."""

    alpha_plus: float
    alpha_minus: float

    def __post_init__(self):
        for name in ("alpha_plus", "alpha_minus"):
            value = getattr(self, name)
            if isinstance(value, complex) or not math.isfinite(value):
                raise ModelError(f"Target amplitude {name} must be a finite real number, not {value!r}")


@dataclasses.dataclass(kw_only=True, frozen=True)
class DpaParams:
    g: float
    delta_p: float
    delta_s: float
    omega_2pd: float
    kappa_p: float
    kappa_s: float
    drive: RawDrive | TargetDrive = TargetDrive(alpha_plus=0.0, alpha_minus=0.0)
    shift_compensation: bool = False

    def __post_init__(self):
        if self.kappa_p <= 0 or self.kappa_s <= 0:
            raise ModelError(f"Loss rates must be positive (κ_p = {self.kappa_p}, κ_s = {self.kappa_s})")
        if abs(2 * self.omega_2pd) >= abs(self.delta_s):
            raise ModelError(f"|2Ω_2pd| = {abs(2 * self.omega_2pd):g} must stay below |Δ_s| = {abs(self.delta_s):g}")
        if self.g == 0 and self.omega_2pd != 0:
            raise ModelError("Ω_2pd = g α_p^d needs a nonzero g")

    @property
    def alpha_p_d(self) -> float:
        return self.omega_2pd / self.g if self.g else 0.0


@dataclasses.dataclass(kw_only=True, frozen=True)
class DerivedCouplings:
    params: DpaParams
    r_s: float
    lambda_s: float
    g0: float
    g_c: float
    alpha_plus: complex
    alpha_minus: complex
    e_plus: complex
    e_minus: complex
    omega_plus: float
    omega_minus: float
    delta_shift: float
    alpha_p: complex
    g_plus: float
    g_minus: float
    g_eff: float
    r_p: float
    cooperativity: float

    @property
    def kappa_ad(self) -> float:
        """Loss the pump inherits from the signal mode once the latter is adiabatically eliminated."""
        return 4 * self.g_eff**2 / self.params.kappa_s

    @property
    def kappa(self) -> float:
        return self.params.kappa_p + self.kappa_ad

    @property
    def alpha_p_d(self) -> float:
        return self.params.alpha_p_d

    def as_dict(self) -> dict[str, object]:
        return {field.name: getattr(self, field.name) for field in dataclasses.fields(self) if field.name != "params"} | {
            "kappa_ad": self.kappa_ad,
            "kappa": self.kappa,
        }


def derive_couplings(p: DpaParams) -> DerivedCouplings:
    """
    Every coupling that follows from the physical parameters.

    >>> d = derive_couplings(DpaParams(g=1.0, delta_p=10.0, delta_s=100.0, omega_2pd=5.0, kappa_p=0.004, kappa_s=0.4))
    >>> round(d.r_s, 7), round(d.lambda_s, 4), round(d.g0, 6)
    (0.0501677, 99.4987, -0.100504)
    """
    r_s = 0.5 * math.atanh(2 * p.omega_2pd / p.delta_s)
    lambda_s = p.delta_s / math.cosh(2 * r_s)
    g0 = -p.g * math.sinh(2 * r_s)
    g_c = p.g * math.cosh(r_s) ** 2
    ch = math.cosh(r_s)

    delta_shift = 0.0
    match p.drive:
        case TargetDrive(alpha_plus=alpha_plus, alpha_minus=alpha_minus):
            if p.shift_compensation:
                delta_shift = 2 * g_c**2 * (alpha_plus**2 / lambda_s + alpha_minus**2 / (lambda_s - p.delta_p))
            omega_plus = lambda_s + p.delta_p
            omega_minus = lambda_s - p.delta_p + 2 * delta_shift
            e_plus = alpha_plus * (0.5j * p.kappa_s - lambda_s + omega_plus) / ch
            e_minus = alpha_minus * (0.5j * p.kappa_s - lambda_s + omega_minus) / ch
            alpha_plus, alpha_minus = complex(alpha_plus), complex(alpha_minus)
        case RawDrive(e_plus=e_plus, e_minus=e_minus, omega_plus=omega_plus, omega_minus=omega_minus):
            e_plus, e_minus = complex(e_plus), complex(e_minus)
            alpha_plus = ch * e_plus / (omega_plus - lambda_s + 0.5j * p.kappa_s)
            alpha_minus = ch * e_minus / (omega_minus - lambda_s + 0.5j * p.kappa_s)
            if p.shift_compensation:
                delta_shift = 2 * g_c**2 * (abs(alpha_plus) ** 2 / lambda_s + abs(alpha_minus) ** 2 / (lambda_s - p.delta_p))
                omega_minus = omega_minus + 2 * delta_shift
        case _:
            raise ModelError(f"Unknown drive specification {p.drive!r}")

    g_plus = g0 * abs(alpha_plus)
    g_minus = g0 * abs(alpha_minus)
    if abs(g_plus) >= abs(g_minus) and g_plus != 0:
        raise ModelError(f"|G₊| = {abs(g_plus):g} must be smaller than |G₋| = {abs(g_minus):g}; no pump squeezing parameter exists")
    r_p = math.atanh(abs(g_plus) / abs(g_minus)) if g_minus else 0.0
    g_eff = math.sqrt(g_minus**2 - g_plus**2)
    cooperativity = g_eff**2 / (p.kappa_s * p.kappa_p)
    # g(a_s² a_p† + h.c.) contains g₀(β̂_s†β̂_s + ½)(a_p + a_p†); the ½ is the β̂_s vacuum term
    alpha_p = g0 * (abs(alpha_plus) ** 2 + abs(alpha_minus) ** 2 + 0.5) / (0.5j * p.kappa_p - p.delta_p)
    derived = DerivedCouplings(
        params=p,
        r_s=r_s,
        lambda_s=lambda_s,
        g0=g0,
        g_c=g_c,
        alpha_plus=alpha_plus,
        alpha_minus=alpha_minus,
        e_plus=e_plus,
        e_minus=e_minus,
        omega_plus=float(omega_plus),
        omega_minus=float(omega_minus),
        delta_shift=delta_shift,
        alpha_p=alpha_p,
        g_plus=g_plus,
        g_minus=g_minus,
        g_eff=g_eff,
        r_p=r_p,
        cooperativity=cooperativity,
    )
    logger.debug("Derived couplings: %s", derived.as_dict())
    return derived


@dataclasses.dataclass(kw_only=True, frozen=True)
class Truncations:
    """
    Fock truncations per mode; ``None`` means the model builder picks one by the adequacy rule.

    With ``policy="report"`` an inadequate truncation is logged instead of raising.
    """

    pump: int | None = None
    signal: int | None = None
    policy: typing.Literal["strict", "report"] = "strict"

    def __post_init__(self):
        if self.policy not in ("strict", "report"):
            raise ValueError(f"Unknown truncation policy {self.policy!r}")

    @property
    def strict(self) -> bool:
        return self.policy == "strict"

    def _pump_default(self, r_p: float, mean_photons: float) -> int:
        if self.pump is not None:
            return self.pump
        if r_p <= 1:
            return max(DEFAULT_PUMP_TRUNCATION, fock.minimal_truncation(squeezing=r_p, mean_photons=mean_photons))
        return fock.minimal_truncation(squeezing=r_p, mean_photons=mean_photons, floor=DEFAULT_PUMP_TRUNCATION)

    def for_exact(self, d: DerivedCouplings) -> tuple[int, int]:
        """``(N_p, N_s)`` for the models written in the â_s or β̂_s basis, checked against the adequacy rule."""
        pump_photons = abs(d.alpha_p) ** 2
        signal_photons = abs(d.alpha_plus) ** 2 + abs(d.alpha_minus) ** 2
        n_p = self._pump_default(d.r_p, pump_photons)
        n_s = self.signal if self.signal is not None else math.ceil(6 * max(abs(d.alpha_plus), abs(d.alpha_minus)) ** 2 + 10)
        tails = {
            PUMP: fock.check_truncation(PUMP, n_p, squeezing=d.r_p, mean_photons=pump_photons, strict=self.strict),
            SIGNAL: fock.check_truncation(SIGNAL, n_s, squeezing=d.r_s, mean_photons=signal_photons, strict=self.strict),
        }
        logger.debug("Exact-model truncations N_p = %d, N_s = %d (tails %s)", n_p, n_s, tails)
        return n_p, n_s

    def for_effective(self, r_p: float, *, pump_photons: float = 0.0) -> tuple[int, int]:
        """``(N_p, N_β)`` for the effective models, where the signal Bogoliubov mode stays near its vacuum."""
        n_p = self._pump_default(r_p, pump_photons)
        n_b = self.signal if self.signal is not None else DEFAULT_BOGOLIUBOV_TRUNCATION
        fock.check_truncation(PUMP, n_p, squeezing=r_p, mean_photons=pump_photons, strict=self.strict)
        return n_p, n_b

    def as_dict(self) -> dict[str, object]:
        return {"pump": self.pump, "signal": self.signal, "policy": self.policy}


def _loss(op: Operator, rate: float) -> Dissipator:
    return Dissipator.single(op, rate)


def build_semiclassical_model(*, delta_s: float, omega_2pd: float, kappa_s: float, n: int) -> LindbladModel:
    """Single signal mode pumped by a classical two-photon drive: ``Δ_s a†a + Ω_2pd(a² + a†²)`` with loss ``κ_s``."""
    space = FockSpace.of((SIGNAL, n))
    a = fock.annihilation(space, SIGNAL)
    hamiltonian = delta_s * fock.number(space, SIGNAL) + omega_2pd * (a @ a).plus_hc()
    return LindbladModel(
        space=space,
        hamiltonian=hamiltonian.named("H_2pd"),
        dissipators=(_loss(a, kappa_s),),
        name="semiclassical",
        parameters={"delta_s": delta_s, "omega_2pd": omega_2pd, "kappa_s": kappa_s, "N_s": n},
    )


def _signal_tones(d: DerivedCouplings, drive_op: Operator) -> tuple[ToneTerm, ...]:
    return (
        ToneTerm(operator=drive_op, amplitude=d.e_plus, frequency=d.omega_plus),
        ToneTerm(operator=drive_op, amplitude=d.e_minus, frequency=d.omega_minus),
    )


def _model_parameters(d: DerivedCouplings, n_p: int, n_s: int, **extra: object) -> dict[str, object]:
    p = d.params
    return {
        "g": p.g,
        "delta_p": p.delta_p,
        "delta_s": p.delta_s,
        "omega_2pd": p.omega_2pd,
        "kappa_p": p.kappa_p,
        "kappa_s": p.kappa_s,
        "shift_compensation": p.shift_compensation,
        "N_p": n_p,
        "N_s": n_s,
    } | extra


def build_exact_displaced_model(d: DerivedCouplings, truncations: Truncations | None = None) -> LindbladModel:
    """
    ``Δ_p a_p†a_p + Δ_s a_s†a_s + Ω_2pd(a_s² + h.c.) + g(a_s² a_p† + h.c.)`` plus the two signal drive tones.
    """
    truncations = truncations or Truncations()
    p = d.params
    n_p, n_s = truncations.for_exact(d)
    space = FockSpace.of((PUMP, n_p), (SIGNAL, n_s))
    a_p = fock.annihilation(space, PUMP)
    a_s = fock.annihilation(space, SIGNAL)
    a_s2 = a_s @ a_s
    hamiltonian = (
        p.delta_p * fock.number(space, PUMP)
        + p.delta_s * fock.number(space, SIGNAL)
        + p.omega_2pd * a_s2.plus_hc()
        + p.g * (a_s2 @ a_p.dag()).plus_hc()
    )
    return LindbladModel(
        space=space,
        hamiltonian=hamiltonian.named("H_displaced"),
        tones=_signal_tones(d, a_s.dag().named("a_s†")),
        dissipators=(_loss(a_p.named("a_p"), p.kappa_p), _loss(a_s.named("a_s"), p.kappa_s)),
        name="exact_displaced",
        parameters=_model_parameters(d, n_p, n_s),
    )


def build_bogoliubov_frame_model(d: DerivedCouplings, truncations: Truncations | None = None, *, include_residuals: bool = True) -> LindbladModel:
    """
    The displaced model rewritten in terms of the signal Bogoliubov mode ``β̂_s = â_s cosh r_s + â_s† sinh r_s``.

    The ``signal`` factor holds β̂_s in its own Fock basis. The signal loss becomes a rank-one matrix
    dissipator over ``{β̂_s, β̂_s†}``. With ``include_residuals`` the residual parametric couplings
    ``g_c(β̂_s² a_p† + h.c.)``, ``g sinh²r_s(β̂_s†² a_p† + h.c.)`` and the static pump drive
    ``(g₀/2)(a_p + a_p†)`` are kept, which makes the model a pure change of frame of
    :func:`build_exact_displaced_model`.
    """
    truncations = truncations or Truncations()
    p = d.params
    n_p, n_s = truncations.for_exact(d)
    space = FockSpace.of((PUMP, n_p), (SIGNAL, n_s))
    a_p = fock.annihilation(space, PUMP)
    b = fock.annihilation(space, SIGNAL).named("β_s")
    ch, sh = math.cosh(d.r_s), math.sinh(d.r_s)
    pump_quadrature = a_p + a_p.dag()
    hamiltonian = p.delta_p * fock.number(space, PUMP) + d.lambda_s * fock.number(space, SIGNAL) + d.g0 * (b.dag() @ b @ pump_quadrature)
    if include_residuals:
        b2 = b @ b
        hamiltonian = (
            hamiltonian
            + d.g_c * (b2 @ a_p.dag()).plus_hc()
            + p.g * sh**2 * (b2.dag() @ a_p.dag()).plus_hc()
            + (d.g0 / 2) * pump_quadrature
        )
    # a_s = cosh r_s β̂_s − sinh r_s β̂_s†
    signal_loss = Dissipator((b, b.dag().named("β_s†")), p.kappa_s * np.array([[ch**2, -ch * sh], [-ch * sh, sh**2]]))
    drive_op = (ch * b.dag() - sh * b).named("a_s†")
    return LindbladModel(
        space=space,
        hamiltonian=hamiltonian.named("H_bogoliubov"),
        tones=_signal_tones(d, drive_op),
        dissipators=(_loss(a_p.named("a_p"), p.kappa_p), signal_loss),
        name="bogoliubov_frame" if include_residuals else "bogoliubov_frame_no_residuals",
        parameters=_model_parameters(d, n_p, n_s, include_residuals=include_residuals),
    )


def _effective_terms(space: FockSpace, d: DerivedCouplings) -> tuple[Operator, Operator, Operator]:
    a_p = fock.annihilation(space, PUMP).named("a_p")
    b = fock.annihilation(space, SIGNAL).named("β_s")
    hamiltonian = d.g_minus * (b.dag() @ a_p).plus_hc() + d.g_plus * (b.dag() @ a_p.dag()).plus_hc()
    return hamiltonian, a_p, b


def build_effective_model(d: DerivedCouplings, truncations: Truncations | None = None) -> LindbladModel:
    """``G₋(β̂_s† a_p + h.c.) + G₊(β̂_s† a_p† + h.c.)`` with losses ``κ_p 𝓛(a_p) + κ_s 𝓛(β̂_s)``."""
    truncations = truncations or Truncations()
    n_p, n_b = truncations.for_effective(d.r_p)
    space = FockSpace.of((PUMP, n_p), (SIGNAL, n_b))
    hamiltonian, a_p, b = _effective_terms(space, d)
    return LindbladModel(
        space=space,
        hamiltonian=hamiltonian.named("H_eff"),
        dissipators=(_loss(a_p, d.params.kappa_p), _loss(b, d.params.kappa_s)),
        name="effective",
        parameters={"G_plus": d.g_plus, "G_minus": d.g_minus, "C": d.cooperativity, "r_p": d.r_p, "N_p": n_p, "N_s": n_b},
    )


def _longitudinal(a_p: Operator, chi_z: float, phi_z: float) -> Operator:
    return chi_z * (cmath.exp(-1j * phi_z) * a_p).plus_hc()


def build_fq_readout_model(
    d: DerivedCouplings,
    truncations: Truncations | None = None,
    *,
    chi_z: float,
    phi_z: float,
    sigma: int | None = None,
) -> LindbladModel:
    """
    The effective model plus the longitudinal readout coupling ``χ_z σ_z(a_p e^{−iφ_z} + h.c.)``.

    With ``sigma = ±1`` the qubit is a c-number and the space is ``pump ⊗ signal``; with
    ``sigma=None`` the qubit is an explicit two-level factor in front, ``qubit ⊗ pump ⊗ signal``.
    """
    truncations = truncations or Truncations()
    mean_photons = (2 * chi_z / d.kappa) ** 2 if d.kappa else 0.0
    n_p, n_b = truncations.for_effective(d.r_p, pump_photons=mean_photons)
    if sigma is None:
        space = FockSpace.of((QUBIT, 2), (PUMP, n_p), (SIGNAL, n_b))
        qubit_z = fock.sigma_z(space, QUBIT)
    elif sigma in (1, -1):
        space = FockSpace.of((PUMP, n_p), (SIGNAL, n_b))
        qubit_z = sigma * fock.identity(space)
    else:
        raise ModelError(f"Qubit c-number σ must be +1 or −1, not {sigma!r}")
    hamiltonian, a_p, b = _effective_terms(space, d)
    hamiltonian = hamiltonian + qubit_z @ _longitudinal(a_p, chi_z, phi_z)
    return LindbladModel(
        space=space,
        hamiltonian=hamiltonian.named("H_z_fq"),
        dissipators=(_loss(a_p, d.params.kappa_p), _loss(b, d.params.kappa_s)),
        name="fq_readout" if sigma is None else f"fq_readout_sigma{sigma:+d}",
        parameters={"C": d.cooperativity, "r_p": d.r_p, "chi_z": chi_z, "phi_z": phi_z, "sigma": sigma, "N_p": n_p, "N_s": n_b},
    )


@dataclasses.dataclass(kw_only=True, frozen=True)
class SyntheticQubitParams:
    """A qubit coupled to the pump and driven far off resonance, producing an effective longitudinal coupling."""

    g_q: float
    e_q_d: float
    phi_z: float
    delta_q: float
    delta_q_d: float

    @property
    def chi_z(self) -> float:
        return self.e_q_d * self.g_q / self.delta_q_d

    @property
    def chi_x(self) -> float:
        return self.g_q**2 / self.delta_q_d

    def delta_z(self, alpha_p_d: float) -> float:
        """Static qubit frequency shift from the off-resonant terms."""
        return (self.g_q**2 + 2 * self.e_q_d**2) / self.delta_q_d + 2 * (self.g_q * alpha_p_d) ** 2 / self.delta_q

    def check_hierarchy(self, alpha_p_d: float) -> float:
        ratios = [abs(self.delta_q_d) / max(abs(self.g_q), abs(self.e_q_d))]
        if self.g_q * alpha_p_d:
            ratios.append(abs(self.delta_q) / abs(self.g_q * alpha_p_d))
        ratio = min(ratios)
        if ratio < HIERARCHY_ERROR_RATIO:
            raise ModelError(f"Detuning-to-coupling ratio {ratio:.3g} is below {HIERARCHY_ERROR_RATIO:g}; the perturbative reduction does not apply")
        if ratio < HIERARCHY_WARN_RATIO:
            warnings.warn(f"Detuning-to-coupling ratio {ratio:.3g} is below {HIERARCHY_WARN_RATIO:g}", HierarchyWarning, stacklevel=3)
        return ratio


def build_synthetic_models(
    d: DerivedCouplings,
    q: SyntheticQubitParams,
    truncations: Truncations | None = None,
    *,
    include_dispersive: bool = False,
    frame_compensation: bool = True,
) -> tuple[LindbladModel, LindbladModel]:
    """
    ``(full, reduced)`` models on ``qubit ⊗ pump ⊗ signal`` for the synthetic longitudinal coupling.

    The full model carries the three off-resonant qubit tones. With ``frame_compensation`` it also
    carries a static ``−½δ_z σ_z`` so its qubit lives in the same frame as the reduced model, which
    has the ``½δ_z σ_z`` shift removed. ``include_dispersive`` adds ``χ_x a_p†a_p σ_z`` to the
    reduced model.
    """
    truncations = truncations or Truncations()
    alpha_p_d = d.alpha_p_d
    ratio = q.check_hierarchy(alpha_p_d)
    n_p, n_b = truncations.for_effective(d.r_p, pump_photons=(2 * q.chi_z / d.kappa) ** 2 if d.kappa else 0.0)
    space = FockSpace.of((QUBIT, 2), (PUMP, n_p), (SIGNAL, n_b))
    hamiltonian, a_p, b = _effective_terms(space, d)
    sigma_minus = fock.sigma_minus(space, QUBIT).named("σ-")
    sigma_z = fock.sigma_z(space, QUBIT)
    dissipators = (_loss(a_p, d.params.kappa_p), _loss(b, d.params.kappa_s))
    delta_z = q.delta_z(alpha_p_d)

    full_static = hamiltonian - (0.5 * delta_z) * sigma_z if frame_compensation else hamiltonian
    full = LindbladModel(
        space=space,
        hamiltonian=full_static.named("H_T'"),
        tones=(
            ToneTerm(operator=(sigma_minus @ a_p.dag()).named("σ- a_p†"), amplitude=q.g_q, frequency=q.delta_q_d),
            ToneTerm(operator=sigma_minus, amplitude=q.e_q_d * cmath.exp(1j * q.phi_z), frequency=q.delta_q_d),
            ToneTerm(operator=sigma_minus, amplitude=q.g_q * alpha_p_d, frequency=q.delta_q),
        ),
        dissipators=dissipators,
        name="synthetic_full",
        parameters={"g_q": q.g_q, "e_q_d": q.e_q_d, "phi_z": q.phi_z, "delta_q": q.delta_q, "delta_q_d": q.delta_q_d}
        | {"delta_z": delta_z, "frame_compensation": frame_compensation, "hierarchy_ratio": ratio, "N_p": n_p, "N_s": n_b},
    )
    reduced_hamiltonian = hamiltonian + sigma_z @ _longitudinal(a_p, q.chi_z, q.phi_z)
    if include_dispersive:
        reduced_hamiltonian = reduced_hamiltonian + q.chi_x * (fock.number(space, PUMP) @ sigma_z)
    reduced = LindbladModel(
        space=space,
        hamiltonian=reduced_hamiltonian.named("H_T'_reduced"),
        dissipators=dissipators,
        name="synthetic_reduced",
        parameters={"chi_z": q.chi_z, "chi_x": q.chi_x, "include_dispersive": include_dispersive, "N_p": n_p, "N_s": n_b},
    )
    return full, reduced


def squeezing_parameter_from_moments(n: float, m: complex, mean: complex = 0j) -> float:
    """
    ``1 + 2(⟨a†a⟩ − |⟨aa⟩|)``, on moments centered by ``mean``.

    >>> squeezing_parameter_from_moments(0.0, 0j)
    1.0
    """
    centered_n = n - abs(mean) ** 2
    centered_m = m - mean**2
    return float(1 + 2 * (centered_n - abs(centered_m)))


def squeezing_parameter(
    state: DensityMatrix | StateVector | tuple[float, complex],
    label: str = PUMP,
    *,
    central: bool = True,
) -> float:
    """
    Squeezing parameter ξ² of mode ``label``; vacuum gives 1 and a squeezed vacuum gives e^{−2r}.

    A ``(⟨a†a⟩, ⟨aa⟩)`` pair can stand in for a state, in which case there is nothing to center.
    """
    if isinstance(state, tuple):
        n, m = state
        return squeezing_parameter_from_moments(float(np.real(n)), complex(m))
    a = fock.annihilation(state.space, label)
    n = state.expect(a.dag() @ a).real
    m = state.expect(a @ a)
    mean = state.expect(a) if central else 0j
    return squeezing_parameter_from_moments(n, m, mean)


def squeezing_observables(space: FockSpace, label: str = PUMP) -> dict[str, Operator]:
    """The three observables a trajectory needs to reconstruct ξ² of ``label``."""
    a = fock.annihilation(space, label)
    return {f"{label}_a": a, f"{label}_n": a.dag() @ a, f"{label}_aa": a @ a}


def squeezing_series(observables: Mapping[str, np.ndarray], label: str = PUMP, *, central: bool = True) -> np.ndarray:
    mean = observables[f"{label}_a"] if central else np.zeros_like(observables[f"{label}_n"])
    n = observables[f"{label}_n"].real
    return np.array([squeezing_parameter_from_moments(ni, mi, ai) for ni, mi, ai in zip(n, observables[f"{label}_aa"], mean, strict=True)])


def qubit_density_from_moments(sigma_minus: complex, sigma_z: float) -> np.ndarray:
    """
    Qubit density matrix in the ``(g, e)`` basis from ``Tr(σ₋ρ) = ρ_eg`` and ``Tr(σ_z ρ)``.

    >>> qubit_density_from_moments(0.5, 0.0).real.tolist()
    [[0.5, 0.5], [0.5, 0.5]]
    """
    excited = 0.5 * (1 + float(np.real(sigma_z)))
    coherence = complex(sigma_minus)
    return np.array([[1 - excited, coherence.conjugate()], [coherence, excited]])


def qubit_observables(space: FockSpace) -> dict[str, Operator]:
    return {"sigma_minus": fock.sigma_minus(space, QUBIT), "sigma_z": fock.sigma_z(space, QUBIT)}


def joint_vacuum(model: LindbladModel) -> DensityMatrix:
    return DensityMatrix.from_state(fock.vacuum(model.space))


def displaced_initial_state(d: DerivedCouplings, model: LindbladModel) -> DensityMatrix:
    """
    The exact model's state with the signal at its driven coherent amplitude and the pump at ``α_p``.

    The signal factor is the β̂_s vacuum (an â_s squeezed vacuum with ``r_s``) displaced to
    ``⟨â_s⟩ = cosh r_s α_b − sinh r_s α_b*``, with ``α_b = α₊ + α₋`` the Bogoliubov amplitude at t = 0.
    """
    n_p, n_s = model.space.dims
    alpha_b = d.alpha_plus + d.alpha_minus
    alpha_a = math.cosh(d.r_s) * alpha_b - math.sinh(d.r_s) * alpha_b.conjugate()
    signal = fock.displace(fock.squeezed_vacuum_state(d.r_s, n_s, SIGNAL), SIGNAL, alpha_a)
    pump = fock.coherent_state(FockSpace.of((PUMP, n_p)), PUMP, d.alpha_p)
    return DensityMatrix.from_state(pump.tensor(signal))


def displaced_bogoliubov_state(d: DerivedCouplings, model: LindbladModel) -> DensityMatrix:
    """:func:`displaced_initial_state` in the basis of the β̂_s frame model: the β̂_s vacuum displaced to ``α₊ + α₋``."""
    n_p, n_s = model.space.dims
    signal = fock.coherent_state(FockSpace.of((SIGNAL, n_s)), SIGNAL, d.alpha_plus + d.alpha_minus)
    pump = fock.coherent_state(FockSpace.of((PUMP, n_p)), PUMP, d.alpha_p)
    return DensityMatrix.from_state(pump.tensor(signal))


def signal_vacuum_in_bogoliubov_basis(d: DerivedCouplings, model: LindbladModel) -> DensityMatrix:
    """Joint vacuum of â_p and â_s, written in the basis of the β̂_s frame model."""
    n_p, n_s = model.space.dims
    signal = fock.squeezed_vacuum_state(-d.r_s, n_s, SIGNAL)
    return DensityMatrix.from_state(fock.vacuum(FockSpace.of((PUMP, n_p))).tensor(signal))


@functools.cache
def _plus_state() -> StateVector:
    space = FockSpace.of((QUBIT, 2))
    return StateVector(space, np.array([1, 1], dtype=complex) / math.sqrt(2))


def qubit_plus_state() -> DensityMatrix:
    """``(|g⟩ + |e⟩)/√2``."""
    return DensityMatrix.from_state(_plus_state())

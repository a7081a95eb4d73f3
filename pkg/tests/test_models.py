# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
import math

import numpy as np
import pytest
from pytest import raises, warns

from squeezesim import closed_form, fock
from squeezesim.errors import ModelError, TruncationError
from squeezesim.lindblad import evolve, steady_state
from squeezesim.models import (
    PUMP,
    QUBIT,
    SIGNAL,
    DpaParams,
    RawDrive,
    SyntheticQubitParams,
    TargetDrive,
    Truncations,
    build_bogoliubov_frame_model,
    build_effective_model,
    build_exact_displaced_model,
    build_fq_readout_model,
    build_semiclassical_model,
    build_synthetic_models,
    derive_couplings,
    displaced_bogoliubov_state,
    displaced_initial_state,
    joint_vacuum,
    qubit_density_from_moments,
    qubit_observables,
    qubit_plus_state,
    squeezing_observables,
    squeezing_parameter,
    squeezing_series,
)
from squeezesim.warnings import HierarchyWarning


def device(ratio: float = 0.5, **changes) -> DpaParams:
    values = {"g": 1.0, "delta_p": 10.0, "delta_s": 100.0, "omega_2pd": 5.0, "kappa_p": 0.004, "kappa_s": 0.4}
    values.update(changes)
    return DpaParams(**values, drive=TargetDrive(alpha_plus=ratio, alpha_minus=1.0))


def test_target_drive_sets_the_bogoliubov_amplitudes():
    d = derive_couplings(device(0.5))
    assert d.alpha_plus == pytest.approx(0.5)
    assert d.alpha_minus == pytest.approx(1.0)
    assert d.r_p == pytest.approx(math.atanh(0.5))
    assert d.g_plus / d.g_minus == pytest.approx(0.5)
    assert d.cooperativity == pytest.approx(d.g0**2 * 0.75 / (0.4 * 0.004))
    assert d.kappa == pytest.approx(0.004 + 4 * d.g_eff**2 / 0.4)


def test_raw_drive_round_trips_the_target():
    target = derive_couplings(device(0.7))
    raw = derive_couplings(
        DpaParams(
            g=1.0,
            delta_p=10.0,
            delta_s=100.0,
            omega_2pd=5.0,
            kappa_p=0.004,
            kappa_s=0.4,
            drive=RawDrive(e_plus=target.e_plus, e_minus=target.e_minus, omega_plus=target.omega_plus, omega_minus=target.omega_minus),
        )
    )
    assert raw.alpha_plus == pytest.approx(0.7)
    assert raw.alpha_minus == pytest.approx(1.0)
    assert raw.r_p == pytest.approx(target.r_p)


def test_shift_compensation_retunes_the_minus_tone():
    plain = derive_couplings(device(0.5))
    compensated = derive_couplings(device(0.5, shift_compensation=True))
    assert plain.delta_shift == 0
    assert compensated.delta_shift > 0
    assert compensated.omega_minus == pytest.approx(plain.omega_minus + 2 * compensated.delta_shift)
    assert compensated.omega_plus == plain.omega_plus


@pytest.mark.parametrize(
    ["changes", "message"],
    [
        ({"kappa_p": 0.0}, "Loss rates"),
        ({"omega_2pd": 60.0}, "must stay below"),
        ({"g": 0.0}, "nonzero g"),
    ],
)
def test_params_validation(changes, message):
    with raises(ModelError, match=message):
        device(0.5, **changes)


def test_pump_squeezing_needs_g_plus_below_g_minus():
    with raises(ModelError, match="must be smaller"):
        derive_couplings(device(1.0))


def test_target_drive_must_be_real():
    with raises(ModelError, match="finite real"):
        TargetDrive(alpha_plus=0.5j, alpha_minus=1.0)


def test_as_dict_covers_the_derived_rates():
    entries = derive_couplings(device(0.5)).as_dict()
    assert {"r_s", "lambda_s", "g_plus", "g_minus", "r_p", "cooperativity", "kappa", "kappa_ad"} <= set(entries)
    assert "params" not in entries


def test_semiclassical_model_reaches_the_closed_form():
    model = build_semiclassical_model(delta_s=0.0, omega_2pd=0.125, kappa_s=1.0, n=30)
    rho = steady_state(model)
    assert squeezing_parameter(rho, SIGNAL) == pytest.approx(closed_form.sc_xi2_ss(0.0, 0.125, 1.0), rel=1e-6)
    n, m = closed_form.sc_moments(1e6, 0.0, 0.125, 1.0)
    assert rho.expect(fock.number(model.space, SIGNAL)).real == pytest.approx(n, rel=1e-6)
    assert rho.expect(fock.annihilation(model.space, SIGNAL) @ fock.annihilation(model.space, SIGNAL)) == pytest.approx(m, rel=1e-6)


def test_semiclassical_moments_follow_the_master_equation():
    model = build_semiclassical_model(delta_s=0.3, omega_2pd=0.1, kappa_s=1.0, n=20)
    times = np.linspace(0, 4, 9)
    trajectory = evolve(model, joint_vacuum(model), times, dt=0.01, observables=squeezing_observables(model.space, SIGNAL))
    n, m = closed_form.sc_moments(times, 0.3, 0.1, 1.0)
    assert np.allclose(trajectory.observables["signal_n"].real, n, atol=1e-8)
    assert np.allclose(trajectory.observables["signal_aa"], m, atol=1e-8)


def test_effective_model_reaches_the_eliminated_steady_state():
    # κ_s far above the couplings so the signal follows the pump adiabatically
    d = derive_couplings(device(0.5, kappa_s=10.0, kappa_p=0.001))
    model = build_effective_model(d, Truncations(pump=24, signal=4))
    assert model.space.labels == (PUMP, SIGNAL)
    rho = steady_state(model, direct_max_dim=96)
    assert squeezing_parameter(rho) == pytest.approx(closed_form.fq_xi2_ss(d.cooperativity, d.r_p), rel=2e-3)


def test_fq_readout_model_spaces():
    d = derive_couplings(device(0.5))
    truncations = Truncations(pump=10, signal=3, policy="report")
    assert build_fq_readout_model(d, truncations, chi_z=0.01, phi_z=math.pi / 2, sigma=1).space.labels == (PUMP, SIGNAL)
    assert build_fq_readout_model(d, truncations, chi_z=0.01, phi_z=math.pi / 2).space.labels == (QUBIT, PUMP, SIGNAL)
    with raises(ModelError, match="must be"):
        build_fq_readout_model(d, truncations, chi_z=0.01, phi_z=0.0, sigma=2)


def test_bogoliubov_frame_dissipator_is_rank_one():
    d = derive_couplings(device(0.5))
    model = build_bogoliubov_frame_model(d, Truncations(pump=6, signal=8, policy="report"))
    assert len(model.channels) == 2
    assert model.channels[1][0] == pytest.approx(d.params.kappa_s * math.cosh(2 * d.r_s))
    assert model.time_dependent


def test_strict_truncation_rejects_a_small_pump():
    d = derive_couplings(device(0.9))
    with raises(TruncationError):
        build_effective_model(d, Truncations(pump=6, signal=3))


def test_truncation_policy_is_checked():
    with raises(ValueError, match="policy"):
        Truncations(policy="lenient")


def synthetic(delta_q_d: float, e_q_d: float = 10.0) -> SyntheticQubitParams:
    return SyntheticQubitParams(g_q=1.0, e_q_d=e_q_d, phi_z=math.pi / 2, delta_q=delta_q_d + 10.0, delta_q_d=delta_q_d)


def test_synthetic_coupling_rates():
    q = synthetic(200.0)
    assert q.chi_z == pytest.approx(0.05)
    assert q.chi_x == pytest.approx(0.005)
    assert q.delta_z(5.0) == pytest.approx(201 / 200 + 50 / 210)


def test_synthetic_models_share_a_space():
    d = derive_couplings(device(0.7))
    full, reduced = build_synthetic_models(d, synthetic(200.0), Truncations(pump=6, signal=3, policy="report"))
    assert full.space == reduced.space
    assert full.space.labels == (QUBIT, PUMP, SIGNAL)
    assert len(full.tones) == 3
    assert not reduced.time_dependent
    assert full.parameters["hierarchy_ratio"] == pytest.approx(20.0)


def test_synthetic_hierarchy_checks():
    d = derive_couplings(device(0.7))
    truncations = Truncations(pump=6, signal=3, policy="report")
    with warns(HierarchyWarning, match="below 10"):
        build_synthetic_models(d, synthetic(50.0), truncations)
    with raises(ModelError, match="does not apply"):
        build_synthetic_models(d, synthetic(20.0), truncations)


def test_squeezing_series_matches_the_final_state():
    d = derive_couplings(device(0.5, kappa_s=2.0, kappa_p=0.05))
    model = build_effective_model(d, Truncations(pump=24, signal=4))
    trajectory = evolve(model, joint_vacuum(model), [0.0, 5.0, 10.0], observables=squeezing_observables(model.space))
    series = squeezing_series(trajectory.observables)
    assert series[0] == pytest.approx(1)
    assert series[-1] == pytest.approx(squeezing_parameter(trajectory.final_state), rel=1e-10)
    assert series[-1] < 1


def test_qubit_helpers():
    plus = qubit_plus_state()
    observables = qubit_observables(plus.space)
    assert plus.expect(observables["sigma_minus"]) == pytest.approx(0.5)
    assert plus.expect(observables["sigma_z"]) == pytest.approx(0)
    rho = qubit_density_from_moments(plus.expect(observables["sigma_minus"]), plus.expect(observables["sigma_z"]).real)
    assert np.allclose(rho, plus.matrix)


def test_squeezing_parameter_from_moment_pair():
    r = 0.3
    assert squeezing_parameter((math.sinh(r) ** 2, -math.sinh(r) * math.cosh(r))) == pytest.approx(math.exp(-2 * r))


@pytest.mark.parametrize(
    ["ratio", "expected"],
    [
        (0.5, 0.367),
        (0.7, 0.236),
    ],
)
def test_effective_steady_state_at_the_transient_parameters(ratio, expected):
    d = derive_couplings(device(ratio))
    model = build_effective_model(d, Truncations(pump=30, signal=4, policy="report"))
    rho = steady_state(model, direct_max_dim=200)
    assert squeezing_parameter(rho) == pytest.approx(expected, abs=2e-2)


@pytest.mark.slow
@pytest.mark.parametrize("delta_s", [0.0, 0.2, 0.5, 1.0, -0.3])
@pytest.mark.parametrize("omega_2pd", [0.05, 0.1, 0.15, 0.2])
def test_semiclassical_moment_grid(delta_s, omega_2pd):
    model = build_semiclassical_model(delta_s=delta_s, omega_2pd=omega_2pd, kappa_s=1.0, n=25)
    times = np.linspace(0, 4, 5)
    trajectory = evolve(model, joint_vacuum(model), times, dt=0.01, observables=squeezing_observables(model.space, SIGNAL))
    n, m = closed_form.sc_moments(times, delta_s, omega_2pd, 1.0)
    assert np.allclose(trajectory.observables["signal_n"].real, n, atol=1e-4)
    assert np.allclose(trajectory.observables["signal_aa"], m, atol=1e-4)


def odd_pump_population(rho) -> float:
    populations = np.diag(rho.partial_trace(PUMP).matrix).real
    return float(populations[1::2].sum())


def test_odd_pump_populations_vanish_as_cooperativity_grows():
    odd = []
    for kappa_p in (0.004, 0.0004, 0.00004):
        d = derive_couplings(device(0.5, kappa_p=kappa_p))
        rho = steady_state(build_effective_model(d, Truncations(pump=20, signal=4, policy="report")), direct_max_dim=100)
        odd.append(odd_pump_population(rho))
    # pump loss feeds odd Fock states at a rate that falls off as 1/𝒞
    assert odd[0] > 1e-3
    assert odd[0] > odd[1] > odd[2]
    assert odd[2] < 1e-3


def test_effective_steady_state_improves_with_cooperativity():
    xi2 = []
    for kappa_p in np.geomspace(0.4, 0.004, 5):
        d = derive_couplings(device(0.5, kappa_p=float(kappa_p)))
        rho = steady_state(build_effective_model(d, Truncations(pump=24, signal=4, policy="report")), direct_max_dim=96)
        xi2.append(squeezing_parameter(rho))
    assert xi2[0] < 1
    assert np.all(np.diff(xi2) <= 1e-9)


def test_weak_readout_displaces_without_changing_the_squeezing():
    d = derive_couplings(device(0.5))
    truncations = Truncations(pump=24, signal=4, policy="report")
    plain = steady_state(build_effective_model(d, truncations), direct_max_dim=96)
    readout = build_fq_readout_model(d, truncations, chi_z=0.01 * d.kappa, phi_z=math.pi / 2, sigma=1)
    displaced = steady_state(readout, direct_max_dim=96)
    assert abs(displaced.expect(fock.annihilation(readout.space, PUMP))) > 1e-4
    assert squeezing_parameter(displaced) == pytest.approx(squeezing_parameter(plain), abs=1e-3)


def fast_tier_device(ratio: float = 0.5) -> DpaParams:
    return device(ratio, delta_s=30.0, delta_p=3.0, omega_2pd=1.5)


@pytest.mark.slow
def test_bogoliubov_frame_is_a_change_of_frame():
    d = derive_couplings(fast_tier_device())
    truncations = Truncations(pump=6, signal=14, policy="report")
    exact = build_exact_displaced_model(d, truncations)
    frame = build_bogoliubov_frame_model(d, truncations)
    bare = build_bogoliubov_frame_model(d, truncations, include_residuals=False)
    # κ_s t ≤ 0.5
    times = np.linspace(0, 1.25, 6)
    observables = squeezing_observables(exact.space)
    reference = evolve(exact, displaced_initial_state(d, exact), times, observables=observables).observables
    start = displaced_bogoliubov_state(d, frame)
    rotated = evolve(frame, start, times, observables=observables).observables
    assert np.allclose(rotated["pump_n"].real, reference["pump_n"].real, atol=1e-3)
    assert np.allclose(np.abs(rotated["pump_aa"]), np.abs(reference["pump_aa"]), atol=1e-3)
    # without the residual terms the static pump drive is missing and ⟨a_p†a_p⟩ drifts
    ablated = evolve(bare, start, times, observables=observables).observables
    drift = np.abs(ablated["pump_n"].real - rotated["pump_n"].real).max()
    assert 1e-5 < drift < 5e-2

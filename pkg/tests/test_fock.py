# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
import logging
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import raises

from squeezesim import fock
from squeezesim.errors import DimensionMismatchError, ModelError, TruncationError, UnknownModeError
from squeezesim.fock import FockSpace
from squeezesim.lindblad import DensityMatrix
from squeezesim.models import squeezing_parameter


def test_space_rejects_duplicate_labels():
    with raises(ValueError, match="more than once"):
        FockSpace.of(("pump", 3), ("pump", 4))


def test_space_rejects_tiny_truncation():
    with raises(ValueError, match="at least 2"):
        FockSpace.of(("pump", 1))


def test_unknown_mode_is_a_key_error():
    space = FockSpace.of(("pump", 3))
    with raises(UnknownModeError):
        space.index("signal")
    with raises(KeyError):
        fock.annihilation(space, "signal")


def test_tensor_and_subspace():
    space = FockSpace.of(("qubit", 2)).tensor(FockSpace.of(("pump", 4), ("signal", 3)))
    assert space.labels == ("qubit", "pump", "signal")
    assert space.total_dim == 24
    assert space.subspace("signal", "qubit").dims == (3, 2)
    assert str(space) == "qubit(2) ⊗ pump(4) ⊗ signal(3)"


def test_truncated_commutator():
    space = FockSpace.of(("a", 5))
    a = fock.annihilation(space, "a")
    commutator = fock.commutator(a, a.dag()).to_dense()
    # the top level pays for the truncation
    assert np.allclose(np.diag(commutator).real, [1, 1, 1, 1, -4])
    assert np.allclose(commutator - np.diag(np.diag(commutator)), 0)


def test_operators_on_different_spaces_do_not_mix():
    a = fock.annihilation(FockSpace.of(("a", 3)), "a")
    b = fock.annihilation(FockSpace.of(("a", 4)), "a")
    with raises(DimensionMismatchError):
        _ = a + b
    with raises(DimensionMismatchError):
        _ = a @ b


def test_embedding_acts_on_the_right_factor():
    space = FockSpace.of(("pump", 3), ("signal", 4))
    state = fock.basis_state(space, {"pump": 2, "signal": 1})
    assert state.expect(fock.number(space, "pump")) == pytest.approx(2)
    assert state.expect(fock.number(space, "signal")) == pytest.approx(1)


def test_hermitian_flag_is_checked():
    space = FockSpace.of(("a", 3))
    a = fock.annihilation(space, "a")
    assert a.plus_hc().hermitian
    with raises(ModelError, match="flagged Hermitian"):
        fock.Operator(space, a.matrix, hermitian=True)


def test_sigma_operators():
    space = FockSpace.of(("qubit", 2), ("pump", 3))
    excited = fock.basis_state(space, {"qubit": 1})
    assert excited.expect(fock.sigma_z(space)) == pytest.approx(1)
    assert fock.vacuum(space).expect(fock.sigma_z(space)) == pytest.approx(-1)
    assert np.allclose(fock.sigma_plus(space).apply(fock.vacuum(space).amplitudes), excited.amplitudes)
    with raises(ValueError, match="two-level"):
        fock.sigma_z(space, "pump")


def test_coherent_state_leaves_other_modes_in_vacuum():
    space = FockSpace.of(("pump", 25), ("signal", 3))
    state = fock.coherent_state(space, "pump", 0.8j)
    assert state.expect(fock.annihilation(space, "pump")) == pytest.approx(0.8j, abs=1e-10)
    assert state.expect(fock.number(space, "signal")) == pytest.approx(0, abs=1e-14)


def test_displaced_vacuum_mean():
    space = FockSpace.of(("pump", 30))
    state = fock.displace(fock.vacuum(space), "pump", 1.5 - 0.5j)
    assert state.expect(fock.annihilation(space, "pump")) == pytest.approx(1.5 - 0.5j, rel=1e-8)
    assert state.expect(fock.number(space, "pump")) == pytest.approx(2.5, rel=1e-8)


def test_generator_must_be_anti_hermitian():
    space = FockSpace.of(("pump", 4))
    a = fock.annihilation(space, "pump")
    with raises(ModelError, match="anti-Hermitian"):
        fock.matrix_exponential_apply(a + a.dag(), fock.vacuum(space))


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0])
def test_squeezed_vacuum_is_annihilated_by_its_bogoliubov_operator(r):
    state = fock.squeezed_vacuum_state(r, 40)
    beta = fock.bogoliubov_operator(state.space, "pump", r)
    assert fock.interior_norm(beta.apply(state.amplitudes), state.space) <= 1e-6
    assert np.all(state.amplitudes[1::2] == 0)
    assert state.expect(fock.number(state.space, "pump")) == pytest.approx(math.sinh(r) ** 2, rel=1e-3)


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0])
def test_photon_loss_leaves_one_bogoliubov_excitation(r):
    state = fock.squeezed_vacuum_state(r, 40)
    jumped = fock.annihilation(state.space, "pump").apply(state.amplitudes)
    excited = fock.bogoliubov_operator(state.space, "pump", r).dag().apply(state.amplitudes)
    # a = β cosh r − β† sinh r, so a|Φ⟩ = −sinh r β†|Φ⟩
    assert fock.interior_norm(jumped + math.sinh(r) * excited, state.space) <= 1e-6
    excitation = fock.bogoliubov_excitation_state(r, 40)
    assert np.all(excitation.amplitudes[0::2] == 0)
    assert abs(excitation.overlap(fock.StateVector.normalized(state.space, excited))) == pytest.approx(1)


def test_squeezed_vacuum_matches_the_squeeze_operator():
    r = 0.4
    series = fock.squeezed_vacuum_state(r, 40)
    propagated = fock.squeeze(fock.vacuum(series.space), "pump", r)
    assert abs(series.overlap(propagated)) == pytest.approx(1, abs=1e-8)


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=0.0, max_value=0.8))
def test_squeezed_vacuum_squeezing_parameter(r):
    state = DensityMatrix.from_state(fock.squeezed_vacuum_state(r, 60))
    assert squeezing_parameter(state) == pytest.approx(math.exp(-2 * r), rel=1e-6)


def test_bogoliubov_excitation_is_normalized_and_orthogonal():
    r = 0.3
    excited = fock.bogoliubov_excitation_state(r, 30)
    vacuum = fock.squeezed_vacuum_state(r, 30)
    assert abs(excited.overlap(vacuum)) < 1e-10


def test_squeezed_vacuum_needs_room():
    with raises(TruncationError, match="too small"):
        fock.squeezed_vacuum_state(3.0, 10)


@pytest.mark.parametrize(
    ["squeezing", "mean_photons"],
    [
        (0.5, 0.0),
        (0.0, 4.0),
        (1.2, 1.0),
    ],
)
def test_minimal_truncation_is_adequate(squeezing, mean_photons):
    n = fock.minimal_truncation(squeezing=squeezing, mean_photons=mean_photons)
    assert fock.truncation_tail(n, squeezing=squeezing, mean_photons=mean_photons) <= fock.TAIL_TOL
    assert fock.check_truncation("pump", n, squeezing=squeezing, mean_photons=mean_photons) <= fock.TAIL_TOL


def test_check_truncation_policies(caplog):
    with raises(TruncationError, match="top two levels"):
        fock.check_truncation("pump", 6, squeezing=1.0)
    with caplog.at_level(logging.WARNING, logger="squeezesim.fock"):
        tail = fock.check_truncation("pump", 6, squeezing=1.0, strict=False)
    assert tail > fock.TAIL_TOL
    assert "reduced truncation" in caplog.text


def test_interior_norm_ignores_the_edge():
    space = FockSpace.of(("pump", 3), ("signal", 3))
    edge = fock.basis_state(space, {"pump": 2})
    assert fock.interior_norm(edge.amplitudes, space) == 0
    assert fock.interior_norm(fock.vacuum(space).amplitudes, space) == pytest.approx(1)

# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
"""
Lindblad master equations with multi-tone Hamiltonians and matrix-coefficient dissipators.

The generator is applied directly to dense density matrices with sparse operator products, so
one application costs O(nnz · dim) rather than building the dim² × dim² superoperator. The
superoperator is only assembled for small direct steady-state solves.
"""

from __future__ import annotations

import cmath
import dataclasses
import functools
import logging
import math
import time
import typing
import warnings

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.integrate import solve_ivp

from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    IntegrationError,
    InvalidStateError,
    ModelError,
    StepSizeError,
)
from .fock import HERMITIAN_TOL, FockSpace, Operator, StateVector
from .util import format_key_values, format_value, write_csv, write_key_values
from .warnings import ConservationWarning

if typing.TYPE_CHECKING:
    import pathlib
    from collections.abc import Iterable, Mapping, Sequence

logger = logging.getLogger(__name__)

PSD_TOL = -1e-10
CHANNEL_CUTOFF = 1e-10
TRACE_DRIFT_TOL = 1e-7
HERMITICITY_TOL = 1e-9
STEADY_STATE_RESIDUAL = 1e-9
STEPS_PER_PERIOD = 20
RK4_STABILITY = 2.0


@dataclasses.dataclass(kw_only=True, frozen=True)
class ToneTerm:
    """
    A drive term ``A e^{−iωt} O``.

    With ``conjugate_pair`` the Hermitian conjugate ``A* e^{iωt} O†`` is added. Without it, ``O``
    must be Hermitian and the term contributes ``Re(A e^{−iωt}) O``.
    """

    operator: Operator
    amplitude: complex
    frequency: float
    conjugate_pair: bool = True

    def __post_init__(self):
        if not math.isfinite(self.frequency):
            raise ModelError(f"Tone frequency must be finite, not {self.frequency}")
        if not self.conjugate_pair and self.operator.hermitian_error() > HERMITIAN_TOL:
            raise ModelError("A tone without its conjugate needs a Hermitian operator")

    def coefficient(self, t: float) -> complex:
        return complex(self.amplitude) * cmath.exp(-1j * self.frequency * t)

    def matrix_at(self, t: float) -> sp.csr_array:
        c = self.coefficient(t)
        if self.conjugate_pair:
            return c * self.operator.matrix + c.conjugate() * self.operator.matrix.conj().T
        return c.real * self.operator.matrix


@dataclasses.dataclass(frozen=True, eq=False)
class Dissipator:
    """
    ``Σ_jk γ_jk (L_j ρ L_k† − ½{L_k† L_j, ρ})`` over a basis of jump operators.

    The coefficient matrix must be Hermitian and positive semidefinite; rank-deficient matrices
    (such as the dissipator of a squeezed frame) are accepted.
    """

    jumps: tuple[Operator, ...]
    rates: np.ndarray

    def __post_init__(self):
        jumps = tuple(self.jumps)
        rates = np.atleast_2d(np.asarray(self.rates, dtype=complex))
        if not jumps:
            raise ModelError("A dissipator needs at least one jump operator")
        if rates.shape != (len(jumps), len(jumps)):
            raise ModelError(f"Coefficient matrix of shape {rates.shape} does not match {len(jumps)} jump operators")
        if np.abs(rates - rates.conj().T).max() > HERMITIAN_TOL:
            raise ModelError("Dissipator coefficient matrix is not Hermitian")
        smallest = float(np.linalg.eigvalsh(rates).min())
        if smallest < PSD_TOL:
            raise ModelError(f"Dissipator coefficient matrix is not positive semidefinite (eigenvalue {smallest:.3g})")
        for jump in jumps[1:]:
            if jump.space != jumps[0].space:
                raise DimensionMismatchError("Jump operators live on different spaces")
        object.__setattr__(self, "jumps", jumps)
        object.__setattr__(self, "rates", rates)

    @classmethod
    def single(cls, jump: Operator, rate: float) -> Dissipator:
        return cls((jump,), np.array([[rate]]))

    @property
    def space(self) -> FockSpace:
        return self.jumps[0].space

    @functools.cached_property
    def channels(self) -> tuple[tuple[float, Operator], ...]:
        """Independent Lindblad channels ``(rate, L)`` from diagonalizing the coefficient matrix."""
        eigenvalues, vectors = np.linalg.eigh(self.rates)
        cutoff = CHANNEL_CUTOFF * max(float(eigenvalues.max()), 0.0)
        channels = []
        for value, vector in zip(eigenvalues, vectors.T, strict=True):
            if value <= cutoff:
                continue
            jump = functools.reduce(lambda left, right: left + right, (complex(u) * op for u, op in zip(vector, self.jumps, strict=True)))
            channels.append((float(value), jump))
        return tuple(channels)

    def describe(self) -> str:
        names = ",".join(jump.name or "?" for jump in self.jumps)
        return f"jumps=[{names}] rates={format_value(self.rates.real.tolist() if np.allclose(self.rates.imag, 0) else self.rates.tolist())}"


@dataclasses.dataclass(frozen=True, eq=False, kw_only=True)
class LindbladModel:
    space: FockSpace
    hamiltonian: Operator
    tones: tuple[ToneTerm, ...] = ()
    dissipators: tuple[Dissipator, ...] = ()
    name: str = "model"
    parameters: Mapping[str, object] = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "tones", tuple(self.tones))
        object.__setattr__(self, "dissipators", tuple(self.dissipators))
        if self.hamiltonian.space != self.space:
            raise DimensionMismatchError(f"Hamiltonian acts on {self.hamiltonian.space}, model space is {self.space}")
        scale = max(1.0, float(abs(self.hamiltonian.matrix).max()) if self.hamiltonian.matrix.nnz else 1.0)
        if self.hamiltonian.hermitian_error() > HERMITIAN_TOL * scale:
            raise ModelError(f"Static Hamiltonian of {self.name} is not Hermitian")
        for tone in self.tones:
            if tone.operator.space != self.space:
                raise DimensionMismatchError(f"Tone operator {tone.operator.name} acts on {tone.operator.space}, model space is {self.space}")
        for dissipator in self.dissipators:
            if dissipator.space != self.space:
                raise DimensionMismatchError(f"Dissipator acts on {dissipator.space}, model space is {self.space}")

    @property
    def time_dependent(self) -> bool:
        return bool(self.tones)

    @property
    def max_frequency(self) -> float:
        return max((abs(tone.frequency) for tone in self.tones), default=0.0)

    @functools.cached_property
    def channels(self) -> tuple[tuple[float, Operator], ...]:
        return tuple(channel for dissipator in self.dissipators for channel in dissipator.channels)

    @functools.cached_property
    def _drift(self) -> sp.csr_array:
        # H − (i/2) Σ γ L†L
        drift = self.hamiltonian.matrix.copy()
        for rate, jump in self.channels:
            drift = drift - 0.5j * rate * (jump.matrix.conj().T @ jump.matrix)
        return sp.csr_array(drift)

    @functools.cached_property
    def _drift_conj(self) -> sp.csr_array:
        return sp.csr_array(self._drift.conj())

    @functools.cached_property
    def _jumps(self) -> tuple[tuple[float, sp.csr_array, sp.csr_array], ...]:
        return tuple((rate, jump.matrix, sp.csr_array(jump.matrix.conj())) for rate, jump in self.channels)

    def hamiltonian_at(self, t: float) -> sp.csr_array:
        matrix = self.hamiltonian.matrix
        for tone in self.tones:
            matrix = matrix + tone.matrix_at(t)
        return sp.csr_array(matrix)

    def spectral_bound(self) -> float:
        """Upper bound on the spectral radius of the generator, from Gershgorin discs of the Hamiltonian."""
        hamiltonian = self.hamiltonian.matrix
        centers = hamiltonian.diagonal().real
        radii = np.asarray(abs(hamiltonian).sum(axis=1)).ravel() - np.abs(hamiltonian.diagonal())
        spread = float((centers + radii).max() - (centers - radii).min())
        for tone in self.tones:
            spread += 2 * abs(tone.amplitude) * float(spla.norm(tone.operator.matrix, ord=np.inf))
        dissipation = sum(
            2 * rate * float(spla.norm(jump.matrix, ord=np.inf)) * float(spla.norm(jump.matrix.conj().T, ord=np.inf)) for rate, jump in self.channels
        )
        return spread + dissipation

    def describe(self) -> str:
        entries: dict[str, object] = {"model": self.name, "space": str(self.space), "dim": self.space.total_dim}
        for key, value in self.parameters.items():
            entries[f"param.{key}"] = value
        for index, tone in enumerate(self.tones):
            entries[f"tone.{index}"] = (
                f"operator={tone.operator.name or '?'} amplitude={format_value(tone.amplitude)} "
                f"frequency={format_value(tone.frequency)} conjugate_pair={tone.conjugate_pair}"
            )
        for index, dissipator in enumerate(self.dissipators):
            entries[f"dissipator.{index}"] = dissipator.describe()
        for index, (rate, jump) in enumerate(self.channels):
            entries[f"channel.{index}"] = f"rate={format_value(rate)} nnz={jump.matrix.nnz}"
        return format_key_values(entries)


@dataclasses.dataclass(frozen=True, eq=False)
class DensityMatrix:
    space: FockSpace
    matrix: np.ndarray
    metadata: Mapping[str, object] = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=complex)
        expected = (self.space.total_dim, self.space.total_dim)
        if matrix.shape != expected:
            raise DimensionMismatchError(f"Density matrix shape {matrix.shape} does not match space {self.space}")
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def from_state(cls, state: StateVector) -> DensityMatrix:
        return cls(state.space, np.outer(state.amplitudes, state.amplitudes.conj()))

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def purity(self) -> float:
        return float(np.vdot(self.matrix, self.matrix).real)

    def hermiticity_error(self) -> float:
        return float(np.abs(self.matrix - self.matrix.conj().T).max())

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T)).min())

    def validate(self, *, trace_tol: float = 1e-8, hermitian_tol: float = 1e-10, eigenvalue_tol: float = 1e-8):
        if abs(self.trace() - 1) > trace_tol:
            raise InvalidStateError(f"Density matrix trace is {self.trace():.12g}")
        if self.hermiticity_error() > hermitian_tol:
            raise InvalidStateError(f"Density matrix is not Hermitian (deviation {self.hermiticity_error():.3g})")
        if self.min_eigenvalue() < -eigenvalue_tol:
            raise InvalidStateError(f"Density matrix has a negative eigenvalue {self.min_eigenvalue():.3g}")

    def tensor(self, other: DensityMatrix) -> DensityMatrix:
        return DensityMatrix(self.space.tensor(other.space), np.kron(self.matrix, other.matrix))

    def partial_trace(self, *keep: str) -> DensityMatrix:
        """Reduced state on the modes in ``keep``, in the order they appear in the space."""
        kept = sorted(self.space.index(label) for label in keep)
        if not kept:
            raise ValueError("partial_trace needs at least one mode to keep")
        dims = self.space.dims
        n = len(dims)
        tensor = self.matrix.reshape(dims + dims)
        for position in reversed(range(n)):
            if position in kept:
                continue
            current = tensor.ndim // 2
            tensor = np.trace(tensor, axis1=position, axis2=position + current)
        sub = self.space.subspace(*(self.space.labels[i] for i in kept))
        return DensityMatrix(sub, tensor.reshape(sub.total_dim, sub.total_dim))

    def expect(self, op: Operator) -> complex:
        return expect(op, self)


@dataclasses.dataclass(frozen=True, eq=False, kw_only=True)
class Trajectory:
    times: np.ndarray
    observables: Mapping[str, np.ndarray]
    final_state: DensityMatrix
    metadata: Mapping[str, object] = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        if times.ndim != 1 or (times.size > 1 and np.any(np.diff(times) <= 0)):
            raise ValueError("Trajectory times must be strictly increasing")
        object.__setattr__(self, "times", times)

    def to_csv(self, path: pathlib.Path, comments: Iterable[str] = ()) -> pathlib.Path:
        columns = [("time", "simulation time")]
        for label in self.observables:
            columns.append((f"{label}_re", f"Re Tr({label} ρ(t))"))
            columns.append((f"{label}_im", f"Im Tr({label} ρ(t))"))
        rows = []
        for index, t in enumerate(self.times):
            row: list[object] = [float(t)]
            for series in self.observables.values():
                row.extend((float(series[index].real), float(series[index].imag)))
            rows.append(row)
        write_csv(path, columns, rows, comments=comments)
        return path

    def write_metadata(self, path: pathlib.Path) -> pathlib.Path:
        write_key_values(path, self.metadata)
        return path


def _as_matrix(rho: DensityMatrix | np.ndarray, space: FockSpace) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        if rho.space != space:
            raise DimensionMismatchError(f"State on {rho.space} does not match model space {space}")
        return rho.matrix
    matrix = np.asarray(rho)
    if matrix.shape != (space.total_dim, space.total_dim):
        raise DimensionMismatchError(f"Matrix of shape {matrix.shape} does not match model space {space}")
    return matrix


def liouvillian_apply(model: LindbladModel, rho: DensityMatrix | np.ndarray, t: float = 0.0) -> np.ndarray:
    """Evaluate ``dρ/dt`` at time ``t``."""
    rho = _as_matrix(rho, model.space)
    # ρ S = (Sᵀ ρᵀ)ᵀ keeps every product sparse-times-dense
    result = -1j * (model._drift @ rho) + 1j * (model._drift_conj @ rho.T).T
    for tone in model.tones:
        drive = tone.matrix_at(t)
        result = result - 1j * (drive @ rho) + 1j * (drive.T @ rho.T).T
    for rate, jump, jump_conj in model._jumps:
        result = result + rate * (jump @ (jump_conj @ rho.T).T)
    return result


def liouvillian_superoperator(model: LindbladModel) -> sp.csc_array:
    """Generator of a time-independent model acting on row-major vectorized density matrices."""
    if model.time_dependent:
        raise ModelError("The superoperator is only defined for time-independent models")
    eye = sp.identity(model.space.total_dim, dtype=complex, format="csr")
    # vec(A ρ B) = (A ⊗ Bᵀ) vec(ρ) for row-major vec
    superop = -1j * sp.kron(model._drift, eye) + 1j * sp.kron(eye, model._drift_conj)
    for rate, jump, jump_conj in model._jumps:
        superop = superop + rate * sp.kron(jump, jump_conj)
    return sp.csc_array(superop)


def expect(op: Operator, rho: DensityMatrix | StateVector) -> complex:
    """``Tr(op ρ)``."""
    if isinstance(rho, StateVector):
        return rho.expect(op)
    if op.space != rho.space:
        raise DimensionMismatchError(f"Operator on {op.space} does not act on {rho.space}")
    coo = op.matrix.tocoo()
    return complex(np.sum(coo.data * rho.matrix[coo.col, coo.row]))


def _as_qubit(rho: DensityMatrix | np.ndarray) -> np.ndarray:
    matrix = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if matrix.shape != (2, 2):
        raise InvalidStateError(f"Fidelity needs 2×2 density matrices, not {matrix.shape}")
    if np.abs(matrix - matrix.conj().T).max() > 1e-10 or abs(np.trace(matrix) - 1) > 1e-8:
        raise InvalidStateError("Not a valid qubit density matrix")
    if np.linalg.eigvalsh(matrix).min() < -1e-8:
        raise InvalidStateError("Qubit density matrix is not positive")
    return matrix


def uhlmann_fidelity(rho: DensityMatrix | np.ndarray, sigma: DensityMatrix | np.ndarray) -> float:
    """
    Fidelity ``[Tr √(√ρ σ √ρ)]²`` of two qubit states, via the closed two-level form.

    >>> uhlmann_fidelity(np.diag([1.0, 0.0]), np.eye(2) / 2)
    0.5
    """
    rho = _as_qubit(rho)
    sigma = _as_qubit(sigma)
    overlap = float(np.vdot(rho, sigma).real)
    determinants = max(float(np.linalg.det(rho).real), 0.0) * max(float(np.linalg.det(sigma).real), 0.0)
    return min(max(overlap + 2 * math.sqrt(determinants), 0.0), 1.0)


def tone_step_limit(model: LindbladModel) -> float:
    if not model.tones or model.max_frequency == 0:
        return math.inf
    return (2 * math.pi / model.max_frequency) / STEPS_PER_PERIOD


def suggest_step(model: LindbladModel) -> float:
    """Largest rk4 step that resolves every tone and stays inside the stability region."""
    bound = model.spectral_bound()
    stability = RK4_STABILITY / bound if bound > 0 else math.inf
    step = min(stability, tone_step_limit(model))
    if not math.isfinite(step):
        step = 1.0
    return step


def _rk4_advance(model: LindbladModel, rho: np.ndarray, start: float, stop: float, dt: float) -> tuple[np.ndarray, int]:
    steps = max(1, math.ceil((stop - start) / dt - 1e-9))
    h = (stop - start) / steps
    t = start
    for step in range(steps):
        k1 = liouvillian_apply(model, rho, t)
        k2 = liouvillian_apply(model, rho + 0.5 * h * k1, t + 0.5 * h)
        k3 = liouvillian_apply(model, rho + 0.5 * h * k2, t + 0.5 * h)
        k4 = liouvillian_apply(model, rho + h * k3, t + h)
        rho = rho + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        t = start + (step + 1) * h
        if not cmath.isfinite(np.trace(rho)):
            raise IntegrationError(f"Density matrix became non-finite at t = {t:g} (step size {h:g})", time=t, step=step)
    return rho, steps


def _adaptive_advance(
    model: LindbladModel, rho: np.ndarray, start: float, stop: float, *, rtol: float, atol: float, method: str = "RK45"
) -> tuple[np.ndarray, int]:
    dim = model.space.total_dim

    def rhs(t, y):
        return liouvillian_apply(model, y.reshape(dim, dim), t).ravel()

    solution = solve_ivp(rhs, (start, stop), rho.ravel(), method=method, rtol=rtol, atol=atol)
    if not solution.success:
        raise IntegrationError(f"Adaptive integration failed between t = {start:g} and {stop:g}: {solution.message}", time=start)
    final = solution.y[:, -1].reshape(dim, dim)
    if not np.isfinite(final).all():
        raise IntegrationError(f"Density matrix became non-finite before t = {stop:g}", time=stop)
    return final, int(solution.nfev)


def evolve(
    model: LindbladModel,
    rho0: DensityMatrix,
    times: Sequence[float] | np.ndarray,
    *,
    solver: typing.Literal["rk4", "adaptive"] = "rk4",
    dt: float | None = None,
    rtol: float = 1e-8,
    atol: float = 1e-10,
    observables: Mapping[str, Operator] | None = None,
    renormalize: bool = False,
    symmetrize: bool = False,
) -> Trajectory:
    """
    Propagate ``rho0`` over ``times`` and record observables at every grid time.

    ``rk4`` uses a fixed step (``dt``, or :func:`suggest_step`) adjusted down to land on each grid
    time. ``adaptive`` uses an embedded 5(4) pair between grid times.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0 or np.any(np.diff(times) <= 0):
        raise ValueError("Evolution times must be a non-empty, strictly increasing sequence")
    rho = _as_matrix(rho0, model.space).copy()
    observables = dict(observables or {})
    for label, op in observables.items():
        if op.space != model.space:
            raise DimensionMismatchError(f"Observable {label} acts on {op.space}, model space is {model.space}")

    if solver == "rk4":
        limit = tone_step_limit(model)
        if dt is None:
            dt = suggest_step(model)
        elif dt > limit:
            raise StepSizeError(f"Step {dt:g} does not resolve the fastest tone (needs dt ≤ {limit:g})")
    elif solver != "adaptive":
        raise ValueError(f"Unknown solver {solver!r}")

    records = {label: np.empty(times.size, dtype=complex) for label in observables}
    coo = {label: op.matrix.tocoo() for label, op in observables.items()}

    def record(index: int, state: np.ndarray):
        for label, matrix in coo.items():
            records[label][index] = np.sum(matrix.data * state[matrix.col, matrix.row])

    started = time.perf_counter()
    work = 0
    max_drift = abs(np.trace(rho).real - 1)
    max_asymmetry = float(np.abs(rho - rho.conj().T).max())
    renormalizations = 0
    symmetrizations = 0
    record(0, rho)
    for index in range(1, times.size):
        start, stop = times[index - 1], times[index]
        if solver == "rk4":
            rho, count = _rk4_advance(model, rho, start, stop, dt)
        else:
            rho, count = _adaptive_advance(model, rho, start, stop, rtol=rtol, atol=atol)
        work += count
        trace = np.trace(rho).real
        drift = abs(trace - 1)
        asymmetry = float(np.abs(rho - rho.conj().T).max())
        max_drift = max(max_drift, drift)
        max_asymmetry = max(max_asymmetry, asymmetry)
        if renormalize and drift > TRACE_DRIFT_TOL:
            rho = rho / trace
            renormalizations += 1
            logger.warning("Renormalized trace %.12g at t = %g", trace, stop)
        if symmetrize and asymmetry > HERMITICITY_TOL:
            rho = 0.5 * (rho + rho.conj().T)
            symmetrizations += 1
            logger.warning("Symmetrized density matrix (deviation %.3g) at t = %g", asymmetry, stop)
        record(index, rho)
        logger.debug("t = %g: trace drift %.3g, Hermiticity error %.3g", stop, drift, asymmetry)

    if max_drift > TRACE_DRIFT_TOL or max_asymmetry > HERMITICITY_TOL:
        warnings.warn(
            f"{model.name}: trace drift {max_drift:.3g}, Hermiticity error {max_asymmetry:.3g} over the run",
            ConservationWarning,
            stacklevel=2,
        )
    metadata = {
        "model": model.name,
        "space": str(model.space),
        "solver": solver,
        "dt": dt if solver == "rk4" else None,
        "rtol": rtol if solver == "adaptive" else None,
        "atol": atol if solver == "adaptive" else None,
        "work": work,
        "max_trace_drift": max_drift,
        "max_hermiticity_error": max_asymmetry,
        "renormalizations": renormalizations,
        "symmetrizations": symmetrizations,
        "wall_time": time.perf_counter() - started,
    }
    return Trajectory(times=times, observables=records, final_state=DensityMatrix(model.space, rho), metadata=metadata)


def _direct_steady_state(model: LindbladModel) -> np.ndarray:
    dim = model.space.total_dim
    superop = sp.csr_array(liouvillian_superoperator(model))
    # the ρ_00 equation is implied by the others; swap it for Tr ρ = 1
    trace_row = sp.csr_array((np.ones(dim, dtype=complex), (np.zeros(dim, dtype=int), np.arange(dim) * (dim + 1))), shape=(1, dim * dim))
    system = sp.csc_array(sp.vstack([trace_row, superop[1:]]))
    rhs = np.zeros(dim * dim, dtype=complex)
    rhs[0] = 1
    return spla.spsolve(system, rhs).reshape(dim, dim)


def _integrated_steady_state(
    model: LindbladModel, initial: np.ndarray, *, tol: float, max_time: float, check_interval: float, rtol: float, atol: float
) -> tuple[np.ndarray, float]:
    rho = initial
    elapsed = 0.0
    streak = 0
    residual = math.inf
    while elapsed < max_time:
        rho, _ = _adaptive_advance(model, rho, elapsed, elapsed + check_interval, rtol=rtol, atol=atol, method="DOP853")
        elapsed += check_interval
        residual = float(np.linalg.norm(liouvillian_apply(model, rho), ord="nuc"))
        streak = streak + 1 if residual < tol else 0
        logger.debug("Steady-state check at t = %g: ‖dρ/dt‖₁ = %.3g", elapsed, residual)
        if streak >= 3:
            return rho, elapsed
    raise ConvergenceError(f"{model.name} did not reach a steady state by t = {elapsed:g} (‖dρ/dt‖₁ = {residual:.3g})", residual=residual, elapsed=elapsed)


def steady_state(
    model: LindbladModel,
    *,
    method: typing.Literal["auto", "direct", "integrate"] = "auto",
    direct_max_dim: int = 64,
    initial: DensityMatrix | None = None,
    tol: float = 1e-10,
    max_time: float = 1e5,
    check_interval: float | None = None,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> DensityMatrix:
    """
    Stationary state of a time-independent model.

    ``auto`` solves the sparse null-space problem directly up to ``direct_max_dim`` and otherwise
    integrates until ``‖dρ/dt‖₁ < tol`` on three consecutive checks.
    """
    if model.time_dependent:
        raise ModelError(f"{model.name} has drive tones; rotate them away before asking for a steady state")
    dim = model.space.total_dim
    if method == "auto":
        method = "direct" if dim <= direct_max_dim else "integrate"
    started = time.perf_counter()
    metadata: dict[str, object] = {"steady_state_method": method}
    if method == "direct":
        rho = _direct_steady_state(model)
    elif method == "integrate":
        if initial is None:
            start = np.zeros((dim, dim), dtype=complex)
            start[0, 0] = 1
        else:
            start = _as_matrix(initial, model.space).copy()
        if check_interval is None:
            total_rate = sum(rate for rate, _ in model.channels)
            check_interval = 10.0 / total_rate if total_rate > 0 else 10.0
        rho, elapsed = _integrated_steady_state(model, start, tol=tol, max_time=max_time, check_interval=check_interval, rtol=rtol, atol=atol)
        metadata["steady_state_time"] = elapsed
    else:
        raise ValueError(f"Unknown steady-state method {method!r}")
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    residual = float(np.abs(liouvillian_apply(model, rho)).max())
    if residual > STEADY_STATE_RESIDUAL:
        raise ConvergenceError(f"{model.name}: steady-state residual {residual:.3g} exceeds {STEADY_STATE_RESIDUAL:g}", residual=residual, elapsed=0.0)
    metadata["steady_state_residual"] = residual
    metadata["wall_time"] = time.perf_counter() - started
    logger.info("Steady state of %s by %s (residual %.3g)", model.name, method, residual)
    return DensityMatrix(model.space, rho, metadata=metadata)

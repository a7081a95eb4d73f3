# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
"""
Sparse operators and pure states on truncated (tensor-product) Fock spaces.

Operators are stored as compressed-row sparse matrices; only density matrices
(see :mod:`squeezesim.lindblad`) are dense.
"""

from __future__ import annotations

import dataclasses
import functools
import logging
import math
import operator
import typing

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla
import scipy.stats
from more_itertools import duplicates_everseen

from .errors import DimensionMismatchError, ModelError, TruncationError, UnknownModeError

if typing.TYPE_CHECKING:
    from collections.abc import Mapping

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-12
ANTI_HERMITIAN_TOL = 1e-10
NORM_TOL = 1e-10
TAIL_TOL = 1e-6


@dataclasses.dataclass(kw_only=True, frozen=True)
class Mode:
    label: str
    dim: int


@dataclasses.dataclass(frozen=True)
class FockSpace:
    modes: tuple[Mode, ...]

    def __post_init__(self):
        if not self.modes:
            raise ValueError("A Fock space needs at least one mode")
        for label in duplicates_everseen(mode.label for mode in self.modes):
            raise ValueError(f"Mode label {label!r} is used more than once")
        for mode in self.modes:
            if mode.dim < 2:
                raise ValueError(f"Mode {mode.label!r} needs a truncation of at least 2, not {mode.dim}")

    @classmethod
    def of(cls, *modes: tuple[str, int]) -> FockSpace:
        """
        >>> FockSpace.of(("pump", 4), ("signal", 3)).total_dim
        12
        """
        return cls(tuple(Mode(label=label, dim=dim) for label, dim in modes))

    @functools.cached_property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(mode.dim for mode in self.modes)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(mode.label for mode in self.modes)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownModeError(f"No mode {label!r} in {self}") from None

    def dim_of(self, label: str) -> int:
        return self.modes[self.index(label)].dim

    def tensor(self, other: FockSpace) -> FockSpace:
        return FockSpace(self.modes + other.modes)

    def subspace(self, *labels: str) -> FockSpace:
        return FockSpace(tuple(self.modes[self.index(label)] for label in labels))

    def __str__(self):
        return " ⊗ ".join(f"{mode.label}({mode.dim})" for mode in self.modes)


def _csr(matrix) -> sp.csr_array:
    return sp.csr_array(matrix, dtype=complex)


def _embed(space: FockSpace, label: str, single) -> sp.csr_array:
    position = space.index(label)
    factors = [single if i == position else sp.identity(mode.dim, dtype=complex, format="csr") for i, mode in enumerate(space.modes)]
    return _csr(functools.reduce(lambda left, right: sp.kron(left, right, format="csr"), factors))


def _structurally_adjoint(left: sp.csr_array, right: sp.csr_array) -> bool:
    return (left - right.conj().T).count_nonzero() == 0


@dataclasses.dataclass(frozen=True, eq=False)
class Operator:
    space: FockSpace
    matrix: sp.csr_array
    hermitian: bool = False
    diagonal: bool = False
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "matrix", _csr(self.matrix))
        expected = (self.space.total_dim, self.space.total_dim)
        if self.matrix.shape != expected:
            raise DimensionMismatchError(f"Operator shape {self.matrix.shape} does not match space {self.space} ({expected})")
        if self.hermitian and self.hermitian_error() > HERMITIAN_TOL:
            raise ModelError(f"Operator {self.name or '<unnamed>'} is flagged Hermitian but is not")

    def hermitian_error(self) -> float:
        difference = self.matrix - self.matrix.conj().T
        if difference.nnz == 0:
            return 0.0
        return float(abs(difference).max())

    def named(self, name: str) -> Operator:
        return dataclasses.replace(self, name=name)

    def _check_space(self, other: Operator):
        if other.space != self.space:
            raise DimensionMismatchError(f"Cannot combine operators on {self.space} and {other.space}")

    def __add__(self, other: Operator) -> Operator:
        if not isinstance(other, Operator):
            return NotImplemented
        self._check_space(other)
        hermitian = (self.hermitian and other.hermitian) or _structurally_adjoint(self.matrix, other.matrix)
        return Operator(self.space, self.matrix + other.matrix, hermitian=hermitian, diagonal=self.diagonal and other.diagonal)

    def __sub__(self, other: Operator) -> Operator:
        if not isinstance(other, Operator):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> Operator:
        return Operator(self.space, -self.matrix, hermitian=self.hermitian, diagonal=self.diagonal, name=f"-{self.name}" if self.name else "")

    def __mul__(self, scalar: complex) -> Operator:
        if isinstance(scalar, Operator):
            return NotImplemented
        real = complex(scalar).imag == 0
        return Operator(self.space, self.matrix * complex(scalar), hermitian=self.hermitian and real, diagonal=self.diagonal)

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> Operator:
        return self * (1 / complex(scalar))

    def __matmul__(self, other: Operator) -> Operator:
        if not isinstance(other, Operator):
            return NotImplemented
        self._check_space(other)
        diagonal = self.diagonal and other.diagonal
        hermitian = (diagonal and self.hermitian and other.hermitian) or _structurally_adjoint(self.matrix, other.matrix)
        return Operator(self.space, self.matrix @ other.matrix, hermitian=hermitian, diagonal=diagonal)

    def __pow__(self, exponent: int) -> Operator:
        if exponent < 1:
            raise ValueError("Only positive integer powers are supported")
        return compose(*([self] * exponent))

    def dag(self) -> Operator:
        name = f"{self.name}†" if self.name else ""
        return Operator(self.space, self.matrix.conj().T, hermitian=self.hermitian, diagonal=self.diagonal, name=name)

    def plus_hc(self) -> Operator:
        """Return ``A + A†``, flagged Hermitian."""
        return Operator(self.space, self.matrix + self.matrix.conj().T, hermitian=True, diagonal=self.diagonal)

    def tensor(self, other: Operator) -> Operator:
        return Operator(
            self.space.tensor(other.space),
            sp.kron(self.matrix, other.matrix, format="csr"),
            hermitian=self.hermitian and other.hermitian,
            diagonal=self.diagonal and other.diagonal,
        )

    def apply(self, amplitudes: np.ndarray) -> np.ndarray:
        return self.matrix @ amplitudes

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()


def compose(*ops: Operator) -> Operator:
    """Operator product, left to right."""
    if not ops:
        raise ValueError("compose needs at least one operator")
    return functools.reduce(operator.matmul, ops)


def tensor(*ops: Operator) -> Operator:
    if not ops:
        raise ValueError("tensor needs at least one operator")
    return functools.reduce(lambda left, right: left.tensor(right), ops)


def commutator(left: Operator, right: Operator) -> Operator:
    return left @ right - right @ left


def annihilation(space: FockSpace, label: str) -> Operator:
    """
    >>> annihilation(FockSpace.of(("a", 2)), "a").to_dense().real.tolist()
    [[0.0, 1.0], [0.0, 0.0]]
    """
    n = space.dim_of(label)
    single = sp.diags(np.sqrt(np.arange(1, n, dtype=float)), offsets=1, shape=(n, n), format="csr", dtype=complex)
    return Operator(space, _embed(space, label, single), name=f"a_{label}")


def creation(space: FockSpace, label: str) -> Operator:
    return annihilation(space, label).dag()


def number(space: FockSpace, label: str) -> Operator:
    n = space.dim_of(label)
    single = sp.diags(np.arange(n, dtype=float), format="csr", dtype=complex)
    return Operator(space, _embed(space, label, single), hermitian=True, diagonal=True, name=f"n_{label}")


def identity(space: FockSpace) -> Operator:
    return Operator(space, sp.identity(space.total_dim, dtype=complex, format="csr"), hermitian=True, diagonal=True, name="I")


def sigma_minus(space: FockSpace, label: str = "qubit") -> Operator:
    """Qubit lowering operator |g⟩⟨e| on a two-level mode, with |0⟩ the ground state."""
    if space.dim_of(label) != 2:
        raise ValueError(f"Mode {label!r} is not a two-level mode")
    return annihilation(space, label).named(f"σ-_{label}")


def sigma_plus(space: FockSpace, label: str = "qubit") -> Operator:
    return sigma_minus(space, label).dag().named(f"σ+_{label}")


def sigma_z(space: FockSpace, label: str = "qubit") -> Operator:
    if space.dim_of(label) != 2:
        raise ValueError(f"Mode {label!r} is not a two-level mode")
    return (2.0 * number(space, label) - identity(space)).named(f"σz_{label}")


def bogoliubov_operator(space: FockSpace, label: str, r: float) -> Operator:
    """``a cosh r + a† sinh r`` embedded at ``label``."""
    if not math.isfinite(r):
        raise ValueError(f"Squeezing parameter must be finite, not {r}")
    n = space.dim_of(label)
    if math.sinh(r) ** 2 > n / 6:
        raise TruncationError(f"Truncation {n} of mode {label!r} is too small for a Bogoliubov mode with r = {r:g}")
    a = annihilation(space, label)
    return (math.cosh(r) * a + math.sinh(r) * a.dag()).named(f"β_{label}")


def displacement_generator(space: FockSpace, label: str, alpha: complex) -> Operator:
    """Generator ``α a† − α* a`` of the displacement D(α)."""
    a = annihilation(space, label)
    return complex(alpha) * a.dag() - complex(alpha).conjugate() * a


def squeeze_generator(space: FockSpace, label: str, r: float) -> Operator:
    """Generator ``(r/2)(a² − a†²)``; the squeezed vacuum it produces has ⟨a a⟩ = −sinh r cosh r."""
    a = annihilation(space, label)
    a2 = a @ a
    return (r / 2) * (a2 - a2.dag())


@dataclasses.dataclass(frozen=True, eq=False)
class StateVector:
    space: FockSpace
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if amplitudes.shape != (self.space.total_dim,):
            raise DimensionMismatchError(f"State of shape {amplitudes.shape} does not match space {self.space}")
        norm = np.linalg.norm(amplitudes)
        if abs(norm - 1) > NORM_TOL:
            raise ValueError(f"State is not normalized (norm {norm:.12g})")
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def normalized(cls, space: FockSpace, amplitudes: np.ndarray) -> StateVector:
        amplitudes = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(amplitudes)
        if norm == 0:
            raise ValueError("Cannot normalize the zero vector")
        return cls(space, amplitudes / norm)

    def overlap(self, other: StateVector) -> complex:
        if other.space != self.space:
            raise DimensionMismatchError(f"Cannot overlap states on {self.space} and {other.space}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def expect(self, op: Operator) -> complex:
        if op.space != self.space:
            raise DimensionMismatchError(f"Operator on {op.space} does not act on {self.space}")
        return complex(np.vdot(self.amplitudes, op.apply(self.amplitudes)))

    def tensor(self, other: StateVector) -> StateVector:
        return StateVector(self.space.tensor(other.space), np.kron(self.amplitudes, other.amplitudes))


def basis_state(space: FockSpace, levels: Mapping[str, int] | None = None) -> StateVector:
    """Product Fock state; modes not named in ``levels`` are in vacuum."""
    levels = dict(levels or {})
    for label in levels:
        space.index(label)
    index = np.ravel_multi_index(tuple(levels.get(label, 0) for label in space.labels), space.dims)
    amplitudes = np.zeros(space.total_dim, dtype=complex)
    amplitudes[index] = 1
    return StateVector(space, amplitudes)


def vacuum(space: FockSpace) -> StateVector:
    return basis_state(space)


def matrix_exponential_apply(generator: Operator, target: StateVector | Operator) -> StateVector | Operator:
    """
    Apply ``exp(G)`` for an anti-Hermitian generator ``G``.

    States are propagated with a scaled truncated Taylor series (``expm_multiply``); operators are
    left-multiplied by the exponential, computed by scaling and squaring.
    """
    deviation = 0.0
    anti = generator.matrix + generator.matrix.conj().T
    if anti.nnz:
        deviation = float(abs(anti).max())
    if deviation > ANTI_HERMITIAN_TOL:
        raise ModelError(f"Generator is not anti-Hermitian (deviation {deviation:.3g})")
    if target.space != generator.space:
        raise DimensionMismatchError(f"Generator on {generator.space} cannot act on {target.space}")
    if isinstance(target, StateVector):
        propagated = spla.expm_multiply(generator.matrix, target.amplitudes, traceA=complex(generator.matrix.trace()))
        return StateVector(target.space, propagated)
    unitary = scipy.linalg.expm(generator.to_dense())
    return Operator(target.space, _csr(unitary) @ target.matrix)


def displace(state: StateVector, label: str, alpha: complex) -> StateVector:
    return matrix_exponential_apply(displacement_generator(state.space, label, alpha), state)


def squeeze(state: StateVector, label: str, r: float) -> StateVector:
    return matrix_exponential_apply(squeeze_generator(state.space, label, r), state)


def coherent_state(space: FockSpace, label: str, alpha: complex) -> StateVector:
    """``D(α)|0⟩`` on ``label``, every other mode in vacuum."""
    return displace(vacuum(space), label, alpha)


def squeezed_vacuum_state(r: float, n: int, label: str = "pump") -> StateVector:
    """
    Fock expansion of the squeezed vacuum annihilated by ``a cosh r + a† sinh r``.

    >>> state = squeezed_vacuum_state(0.0, 4)
    >>> state.amplitudes.real.tolist()
    [1.0, 0.0, 0.0, 0.0]
    """
    if math.sinh(r) ** 2 > n / 6:
        raise TruncationError(f"Truncation {n} is too small for a squeezed vacuum with r = {r:g} (needs sinh²r ≤ N/6)")
    ratio = -math.tanh(r)
    amplitudes = np.zeros(n, dtype=complex)
    coefficient = 1 / math.sqrt(math.cosh(r))
    amplitudes[0] = coefficient
    for k in range(1, (n - 1) // 2 + 1):
        coefficient *= ratio * math.sqrt((2 * k - 1) / (2 * k))
        amplitudes[2 * k] = coefficient
    return StateVector.normalized(FockSpace.of((label, n)), amplitudes)


def bogoliubov_excitation_state(r: float, n: int, label: str = "pump") -> StateVector:
    """The single Bogoliubov excitation ``β†|Φ_sv(r)⟩`` left behind by one photon loss."""
    vacuum_state = squeezed_vacuum_state(r, n, label)
    beta = bogoliubov_operator(vacuum_state.space, label, r)
    return StateVector.normalized(vacuum_state.space, beta.dag().apply(vacuum_state.amplitudes))


def interior_norm(amplitudes: np.ndarray, space: FockSpace, margin: int = 1) -> float:
    """Norm restricted to Fock indices at least ``margin`` below every truncation edge."""
    block = np.asarray(amplitudes).reshape(space.dims)
    interior = tuple(slice(0, dim - margin) for dim in space.dims)
    return float(np.linalg.norm(block[interior]))


def squeezed_tail(r: float, n: int, levels: int = 2) -> float:
    """Population the untruncated squeezed vacuum puts on the top ``levels`` Fock states of an ``n``-level mode."""
    if r == 0:
        return 0.0
    log_t2 = 2 * math.log(abs(math.tanh(r)))
    total = 0.0
    for index in range(max(n - levels, 0), n):
        if index % 2:
            continue
        k = index // 2
        log_p = k * log_t2 + math.lgamma(2 * k + 1) - 2 * math.lgamma(k + 1) - 2 * k * math.log(2) - math.log(math.cosh(r))
        total += math.exp(log_p)
    return total


def coherent_tail(mean_photons: float, n: int, levels: int = 2) -> float:
    if mean_photons <= 0:
        return 0.0
    return float(scipy.stats.poisson.pmf(np.arange(max(n - levels, 0), n), mean_photons).sum())


def truncation_tail(n: int, *, squeezing: float = 0.0, mean_photons: float = 0.0) -> float:
    return max(squeezed_tail(squeezing, n), coherent_tail(mean_photons, n))


def check_truncation(label: str, n: int, *, squeezing: float = 0.0, mean_photons: float = 0.0, strict: bool = True) -> float:
    """
    Estimate the top-two-level population of a mode and fail if it exceeds the adequacy threshold.

    With ``strict=False`` the estimate is only logged, for deliberately reduced truncations.
    """
    tail = truncation_tail(n, squeezing=squeezing, mean_photons=mean_photons)
    if tail > TAIL_TOL:
        message = f"Truncation {n} of mode {label!r} leaves {tail:.2e} of the predicted population in its top two levels"
        if strict:
            raise TruncationError(message)
        logger.warning("%s; continuing with a reduced truncation", message)
    else:
        logger.debug("Mode %s truncated at %d, tail estimate %.2e", label, n, tail)
    return tail


def minimal_truncation(*, squeezing: float = 0.0, mean_photons: float = 0.0, floor: int = 2, ceiling: int = 400) -> int:
    for n in range(floor, ceiling + 1):
        if truncation_tail(n, squeezing=squeezing, mean_photons=mean_photons) <= TAIL_TOL:
            return n
    raise TruncationError(f"No truncation up to {ceiling} is adequate for r = {squeezing:g}, |α|² = {mean_photons:g}")

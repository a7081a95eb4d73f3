# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
from __future__ import annotations


class SqueezeSimError(Exception):
    pass


class DimensionMismatchError(SqueezeSimError, ValueError):
    pass


class UnknownModeError(SqueezeSimError, KeyError):
    def __str__(self):
        # KeyError quotes its argument; keep the message readable
        return str(self.args[0]) if self.args else ""


class TruncationError(SqueezeSimError):
    pass


class ModelError(SqueezeSimError, ValueError):
    pass


class StabilityError(ModelError):
    pass


class IntegrationError(SqueezeSimError):
    def __init__(self, message: str, *, time: float | None = None, step: int | None = None):
        super().__init__(message)
        self.time = time
        self.step = step


class StepSizeError(IntegrationError):
    pass


class ConvergenceError(SqueezeSimError):
    def __init__(self, message: str, *, residual: float, elapsed: float):
        super().__init__(message)
        self.residual = residual
        self.elapsed = elapsed


class QuadratureError(SqueezeSimError):
    pass


class ConfigError(SqueezeSimError):
    pass


class InvalidStateError(SqueezeSimError, ValueError):
    pass

# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
"""
Scenario configuration.

A config file is TOML restricted to ``key = value`` lines inside the sections ``[scenario]``,
``[params]``, ``[solver]`` and ``[truncations]``. Every scenario publishes a schema whose
defaults are its preset; ``0`` stands for "pick automatically" in ``[solver]`` and
``[truncations]``.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import os
import pathlib
import tomllib
import typing

from .errors import ConfigError

if typing.TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

logger = logging.getLogger(__name__)

SECTIONS = ("scenario", "params", "solver", "truncations")
THREADS_ENV = "SQUEEZESIM_THREADS"
OUT_ENV = "SQUEEZESIM_OUT"
DEFAULT_OUT = pathlib.Path("out")

Kind = typing.Literal["float", "int", "bool", "str", "floats"]


@dataclasses.dataclass(kw_only=True, frozen=True)
class Setting:
    name: str
    kind: Kind
    default: object = None
    help: str = ""
    choices: tuple[str, ...] = ()

    @property
    def required(self) -> bool:
        return self.default is None

    def coerce(self, value: object, *, where: str) -> object:
        """Check ``value`` against this setting; ints widen to floats, nothing else converts."""
        problem = f"{where}.{self.name} = {value!r}"
        match self.kind:
            case "float":
                if isinstance(value, bool) or not isinstance(value, int | float):
                    raise ConfigError(f"{problem}: expected a number")
                return float(value)
            case "int":
                if isinstance(value, bool) or not isinstance(value, int):
                    raise ConfigError(f"{problem}: expected an integer")
                return value
            case "bool":
                if not isinstance(value, bool):
                    raise ConfigError(f"{problem}: expected true or false")
                return value
            case "str":
                if not isinstance(value, str):
                    raise ConfigError(f"{problem}: expected a string")
                if self.choices and value not in self.choices:
                    raise ConfigError(f"{problem}: expected one of {', '.join(self.choices)}")
                return value
            case "floats":
                if not isinstance(value, list | tuple) or not value:
                    raise ConfigError(f"{problem}: expected a non-empty array of numbers")
                if any(isinstance(item, bool) or not isinstance(item, int | float) for item in value):
                    raise ConfigError(f"{problem}: expected an array of numbers")
                return tuple(float(item) for item in value)
        raise AssertionError(self.kind)


def _settings(*settings: Setting) -> dict[str, Setting]:
    return {setting.name: setting for setting in settings}


SCENARIO_SETTINGS = _settings(
    Setting(name="id", kind="str", default="", help="Scenario to run"),
    Setting(name="out", kind="str", default="", help="Output directory (default ./out)"),
    Setting(name="svg", kind="bool", default=False, help="Also render SVG plots"),
    Setting(name="strict", kind="bool", default=True, help="Reject unknown keys"),
    Setting(name="threads", kind="int", default=0, help="Worker threads (default 1)"),
)

SOLVER_SETTINGS = _settings(
    Setting(name="integrator", kind="str", default="rk4", choices=("rk4", "adaptive"), help="Time integrator"),
    Setting(name="dt", kind="float", default=0.0, help="Fixed rk4 step; 0 picks one from the model"),
    Setting(name="rtol", kind="float", default=1e-8, help="Relative tolerance of the adaptive integrator"),
    Setting(name="atol", kind="float", default=1e-10, help="Absolute tolerance of the adaptive integrator"),
    Setting(name="steady_state", kind="str", default="auto", choices=("auto", "direct", "integrate"), help="Steady-state method"),
    Setting(name="direct_max_dim", kind="int", default=64, help="Largest Hilbert-space dimension solved directly"),
    Setting(name="renormalize", kind="bool", default=False, help="Renormalize the trace when it drifts"),
)

TRUNCATION_SETTINGS = _settings(
    Setting(name="pump", kind="int", default=0, help="Pump Fock truncation; 0 picks one by the adequacy rule"),
    Setting(name="signal", kind="int", default=0, help="Signal Fock truncation; 0 picks one by the adequacy rule"),
    Setting(name="policy", kind="str", default="strict", choices=("strict", "report"), help="Raise or only log on an inadequate truncation"),
)


@dataclasses.dataclass(kw_only=True, frozen=True)
class ScenarioSchema:
    id: str
    summary: str
    params: Mapping[str, Setting]
    solver: Mapping[str, object] = dataclasses.field(default_factory=dict)
    truncations: Mapping[str, object] = dataclasses.field(default_factory=dict)
    slow: bool = False

    def settings(self, section: str) -> Mapping[str, Setting]:
        match section:
            case "scenario":
                return SCENARIO_SETTINGS
            case "params":
                return self.params
            case "solver":
                return _with_defaults(SOLVER_SETTINGS, self.solver)
            case "truncations":
                return _with_defaults(TRUNCATION_SETTINGS, self.truncations)
        raise ConfigError(f"Unknown section [{section}]")

    @property
    def required(self) -> tuple[str, ...]:
        return tuple(name for name, setting in self.params.items() if setting.required)


def _with_defaults(settings: Mapping[str, Setting], defaults: Mapping[str, object]) -> dict[str, Setting]:
    return {name: dataclasses.replace(setting, default=defaults.get(name, setting.default)) for name, setting in settings.items()}


def _dpa_settings(**defaults: float) -> tuple[Setting, ...]:
    helps = {
        "g": "Single-photon parametric coupling g",
        "delta_p": "Pump detuning Δ_p",
        "delta_s": "Signal detuning Δ_s",
        "omega_2pd": "Two-photon drive Ω_2pd = g α_p^d",
        "kappa_p": "Pump loss rate κ_p",
        "kappa_s": "Signal loss rate κ_s",
        "alpha_minus": "Bogoliubov amplitude |α₋| of the ω₋ tone (G₋ = g₀|α₋|)",
    }
    return tuple(Setting(name=name, kind="float", default=defaults.get(name), help=text) for name, text in helps.items())


_TAU_SWEEP = (
    Setting(name="tau_min", kind="float", default=0.01, help="Shortest κτ"),
    Setting(name="tau_max", kind="float", default=10.0, help="Longest κτ"),
    Setting(name="points", kind="int", default=121, help="Points on the log-spaced τ axis"),
)
_READOUT = (
    Setting(name="kappa", kind="float", default=1.0, help="Total pump loss κ (the unit of time)"),
    Setting(name="chi_z", kind="float", default=1.0, help="Longitudinal coupling χ_z"),
    Setting(name="r_p", kind="float", default=2.0, help="Intracavity pump squeezing r_p"),
    Setting(name="cooperativity", kind="float", default=5.0, help="DPA cooperativity 𝒞"),
    Setting(name="r_out", kind="float", default=2.0, help="Semiclassical output squeezing r_out, with κ_s = κ"),
)
_PHASE_SPACE = (
    Setting(name="taus", kind="floats", default=(0.4, 2.0, 5.0), help="Measurement times κτ"),
    Setting(name="chi_z", kind="float", default=1.0, help="Longitudinal coupling χ_z"),
    Setting(name="sigmas", kind="floats", default=(1.0, 2.0), help="Contour levels in standard deviations"),
    Setting(name="contour_points", kind="int", default=129, help="Points per contour"),
)

SCHEMAS: dict[str, ScenarioSchema] = {
    schema.id: schema
    for schema in (
        ScenarioSchema(
            id="fig1b",
            summary="Pump squeezing ξ_p²(t): effective model against the exact three-tone model",
            params=_settings(
                Setting(name="tier", kind="str", default="full", choices=("full", "fast"), help="full: Δ_s = 100g; fast: Δ_s = 30g"),
                Setting(name="g", kind="float", default=1.0, help="Single-photon parametric coupling g"),
                Setting(name="delta_s", kind="float", default=0.0, help="Signal detuning Δ_s; 0 uses the tier's value"),
                Setting(name="delta_p_ratio", kind="float", default=0.1, help="Δ_p / Δ_s"),
                Setting(name="omega_ratio", kind="float", default=0.05, help="Ω_2pd / Δ_s"),
                Setting(name="kappa_p", kind="float", default=0.004, help="Pump loss rate κ_p"),
                Setting(name="kappa_s", kind="float", default=0.4, help="Signal loss rate κ_s"),
                Setting(name="alpha_minus", kind="float", default=1.0, help="Bogoliubov amplitude |α₋| of the ω₋ tone (G₋ = g₀|α₋|)"),
                Setting(name="ratios", kind="floats", default=(0.5, 0.7), help="G₊/G₋ values"),
                Setting(name="kappa_s_t_max", kind="float", default=50.0, help="End of the run in units of 1/κ_s"),
                Setting(name="samples", kind="int", default=51, help="Recorded times"),
                Setting(name="shift_compensation", kind="bool", default=True, help="Retune ω₋ to absorb the Stark shift"),
                Setting(name="initial_state", kind="str", default="displaced", choices=("displaced", "vacuum"), help="Initial state of the exact model"),
                Setting(name="include_exact", kind="bool", default=True, help="Also integrate the exact model"),
            ),
            slow=True,
        ),
        ScenarioSchema(
            id="fig1c",
            summary="Steady-state pump squeezing against cooperativity",
            params=_settings(
                Setting(name="ratios", kind="floats", default=(0.8, 0.9, 0.99), help="G₊/G₋ values"),
                Setting(name="c_min", kind="float", default=0.01, help="Smallest cooperativity"),
                Setting(name="c_max", kind="float", default=1000.0, help="Largest cooperativity"),
                Setting(name="points", kind="int", default=161, help="Points on the log-spaced 𝒞 axis"),
            ),
        ),
        ScenarioSchema(
            id="fig2a",
            summary="Fully quantum SNR improvement against r_p",
            params=_settings(
                Setting(name="cooperativities", kind="floats", default=(5.0, 10.0, 30.0, math.inf), help="Cooperativities; inf is the limit"),
                Setting(name="r_p_max", kind="float", default=3.0, help="Largest r_p"),
                Setting(name="points", kind="int", default=121, help="Points on the r_p axis"),
            ),
        ),
        ScenarioSchema(
            id="fig2b",
            summary="SNR against measurement time for the fully quantum, semiclassical and standard readouts",
            params=_settings(*_READOUT, *_TAU_SWEEP),
        ),
        ScenarioSchema(
            id="fig2c",
            summary="Measurement error against measurement time",
            params=_settings(*_READOUT, *_TAU_SWEEP),
        ),
        ScenarioSchema(
            id="fig2d",
            summary="Fully quantum SNR and measurement error against cooperativity at τ = 1/κ",
            params=_settings(
                *_READOUT[:3],
                Setting(name="tau", kind="float", default=1.0, help="Measurement time κτ"),
                Setting(name="c_min", kind="float", default=0.1, help="Smallest cooperativity"),
                Setting(name="c_max", kind="float", default=1000.0, help="Largest cooperativity"),
                Setting(name="points", kind="int", default=121, help="Points on the log-spaced 𝒞 axis"),
            ),
        ),
        ScenarioSchema(
            id="figS1a",
            summary="Semiclassical steady-state squeezing against Ω_2pd, bounded by 3 dB",
            params=_settings(
                Setting(name="delta_s", kind="float", default=0.0, help="Signal detuning Δ_s"),
                Setting(name="kappa_s", kind="float", default=1.0, help="Signal loss rate κ_s"),
                Setting(name="omega_max_fraction", kind="float", default=0.999, help="Largest Ω_2pd as a fraction of the stability edge"),
                Setting(name="points", kind="int", default=101, help="Points on the Ω_2pd axis"),
            ),
        ),
        ScenarioSchema(
            id="figS1b",
            summary="Semiclassical squeezing with the nonlinear correction at the optimal offset",
            params=_settings(
                Setting(name="kappa_rs", kind="floats", default=(0.5, 1.0, 2.0), help="κ_r = κ_p/κ_s values"),
                Setting(name="lambda_min", kind="float", default=1e-4, help="Smallest λ"),
                Setting(name="lambda_max", kind="float", default=0.5, help="Largest λ"),
                Setting(name="points", kind="int", default=101, help="Points on the λ axis"),
            ),
        ),
        ScenarioSchema(
            id="figS3",
            summary="Semiclassical SNR improvement against measurement time",
            params=_settings(
                Setting(name="r_outs", kind="floats", default=(1.0, 1.5, 2.0), help="Output squeezing values"),
                Setting(name="kappa_s", kind="float", default=1.0, help="Signal loss rate κ_s"),
                Setting(name="tau_min", kind="float", default=0.01, help="Shortest κ_sτ"),
                Setting(name="tau_max", kind="float", default=1000.0, help="Longest κ_sτ"),
                Setting(name="points", kind="int", default=161, help="Points on the log-spaced τ axis"),
            ),
        ),
        ScenarioSchema(
            id="figS4",
            summary="Wigner-function contours of the semiclassical readout",
            params=_settings(
                Setting(name="r_out", kind="float", default=1.5, help="Output squeezing r_out"),
                Setting(name="kappa_s", kind="float", default=1.0, help="Signal loss rate κ_s"),
                Setting(name="phi_2pd", kind="float", default=0.0, help="Half the phase of the two-photon drive"),
                *_PHASE_SPACE,
            ),
        ),
        ScenarioSchema(
            id="figS5",
            summary="Wigner-function contours of the fully quantum readout",
            params=_settings(
                Setting(name="r_p", kind="float", default=1.5, help="Intracavity pump squeezing r_p"),
                Setting(name="cooperativity", kind="float", default=math.inf, help="DPA cooperativity 𝒞"),
                Setting(name="kappa", kind="float", default=1.0, help="Total pump loss κ"),
                Setting(name="phi_z", kind="float", default=math.pi / 2, help="Phase of the longitudinal coupling"),
                *_PHASE_SPACE,
            ),
        ),
        ScenarioSchema(
            id="figS6",
            summary="Qubit state error of the synthetic longitudinal coupling",
            params=_settings(
                *_dpa_settings(g=1.0, delta_p=10.0, delta_s=100.0, omega_2pd=5.0, kappa_p=0.004, kappa_s=0.4, alpha_minus=1.0),
                Setting(name="ratio", kind="float", default=0.7, help="G₊/G₋"),
                Setting(name="g_q", kind="float", default=1.0, help="Qubit–pump coupling g_q"),
                Setting(name="e_q_d", kind="float", default=10.0, help="Qubit drive ℰ_q^d"),
                Setting(name="delta_q_d", kind="float", default=200.0, help="Qubit drive detuning Δ_q^d; Δ_q = Δ_q^d + Δ_p"),
                Setting(name="phi_z", kind="float", default=math.pi / 2, help="Qubit drive phase φ_z"),
                Setting(name="kappa_tau_max", kind="float", default=5.0, help="End of the run in units of 1/κ"),
                Setting(name="samples", kind="int", default=26, help="Recorded times"),
                Setting(name="include_dispersive", kind="bool", default=False, help="Add χ_x a_p†a_p σ_z to the reduced model"),
            ),
            solver={"direct_max_dim": 400},
            truncations={"pump": 15, "signal": 10, "policy": "report"},
            slow=True,
        ),
        ScenarioSchema(
            id="tableS1",
            summary="SNR of standard, semiclassical and fully quantum readout at r = 2",
            params=_settings(
                Setting(name="r", kind="float", default=2.0, help="r_p = r_out"),
                Setting(name="cooperativity", kind="float", default=5.0, help="DPA cooperativity 𝒞"),
                Setting(name="kappa", kind="float", default=1.0, help="Total loss κ = κ_s"),
                Setting(name="chi_z", kind="float", default=1.0, help="Longitudinal coupling χ_z"),
                Setting(name="tau", kind="float", default=1.0, help="Measurement time κτ"),
            ),
        ),
        ScenarioSchema(
            id="custom",
            summary="Derived couplings, effective steady state and readout for one parameter set",
            params=_settings(
                *_dpa_settings(),
                Setting(name="alpha_plus", kind="float", help="Bogoliubov amplitude |α₊| of the ω₊ tone"),
                Setting(name="shift_compensation", kind="bool", default=False, help="Retune ω₋ to absorb the Stark shift"),
                Setting(name="chi_z", kind="float", default=0.0, help="Longitudinal coupling χ_z; 0 skips the readout"),
                Setting(name="tau", kind="float", default=1.0, help="Measurement time in units of 1/κ"),
            ),
            solver={"direct_max_dim": 400},
        ),
    )
}


@dataclasses.dataclass(kw_only=True, frozen=True)
class ScenarioConfig:
    scenario: str
    params: Mapping[str, object]
    solver: Mapping[str, object]
    truncations: Mapping[str, object]
    out: pathlib.Path = DEFAULT_OUT
    svg: bool = False
    strict: bool = True
    threads: int = 1

    @property
    def schema(self) -> ScenarioSchema:
        return SCHEMAS[self.scenario]

    @property
    def output_dir(self) -> pathlib.Path:
        return self.out / self.scenario

    def snapshot(self) -> dict[str, object]:
        """Flat ``section.key`` view of everything that shaped the run."""
        entries: dict[str, object] = {
            "scenario.id": self.scenario,
            "scenario.out": str(self.out),
            "scenario.svg": self.svg,
            "scenario.strict": self.strict,
            "scenario.threads": self.threads,
        }
        for section in ("params", "solver", "truncations"):
            entries.update({f"{section}.{name}": value for name, value in getattr(self, section).items()})
        return entries


def _load(path: pathlib.Path) -> dict[str, dict[str, object]]:
    try:
        with path.open("rb") as handle:
            raw = tomllib.load(handle)
    except OSError as exc:
        raise ConfigError(f"Cannot read config {path}: {exc.strerror}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path} is not valid TOML: {exc}") from exc
    for section, body in raw.items():
        if section not in SECTIONS:
            raise ConfigError(f"{path}: unknown section [{section}] (sections: {', '.join(SECTIONS)})")
        if not isinstance(body, dict):
            raise ConfigError(f"{path}: {section} must be a [{section}] section")
        for key, value in body.items():
            if isinstance(value, dict):
                raise ConfigError(f"{path}: [{section}] {key} must be a plain value, not a table")
    return {section: dict(raw.get(section, {})) for section in SECTIONS}


def parse_override(text: str) -> tuple[str, str, object]:
    """
    Split a ``--set`` argument into ``(section, key, value)``.

    Bare keys go to ``params``. Values are TOML; anything that does not parse stays a string.

    >>> parse_override("solver.integrator=adaptive")
    ('solver', 'integrator', 'adaptive')
    >>> parse_override("ratios = [0.5, 0.9]")
    ('params', 'ratios', [0.5, 0.9])
    """
    key, separator, value_text = text.partition("=")
    key, value_text = key.strip(), value_text.strip()
    if not separator or not key or not value_text:
        raise ConfigError(f"Override {text!r} is not of the form key=value")
    section, dot, name = key.rpartition(".")
    if not dot:
        section, name = "params", key
    if section not in SECTIONS:
        raise ConfigError(f"Override {text!r} names unknown section {section!r}")
    try:
        value = tomllib.loads(f"value = {value_text}")["value"]
    except tomllib.TOMLDecodeError:
        value = value_text
    return section, name, value


def _env_threads(environ: Mapping[str, str]) -> int | None:
    text = environ.get(THREADS_ENV)
    if not text:
        return None
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV}={text!r} is not an integer") from None


def _resolve(owner: str, section: str, settings: Mapping[str, Setting], given: Mapping[str, object], *, strict: bool) -> dict[str, object]:
    unknown = sorted(set(given) - set(settings))
    if unknown:
        message = f"{owner} has no [{section}] key{'s' if len(unknown) > 1 else ''} {', '.join(unknown)}"
        if strict:
            raise ConfigError(f"{message} (known: {', '.join(settings)})")
        logger.warning("%s; ignoring", message)
    resolved = {}
    missing = []
    for name, setting in settings.items():
        if name in given:
            resolved[name] = setting.coerce(given[name], where=section)
        elif setting.required:
            missing.append(name)
        else:
            resolved[name] = setting.default
    if missing:
        raise ConfigError(f"{owner} requires [{section}] keys: {', '.join(missing)}")
    return resolved


def parse_config(
    path: pathlib.Path | None = None,
    *,
    scenario: str | None = None,
    overrides: Sequence[str] = (),
    out: pathlib.Path | None = None,
    threads: int | None = None,
    svg: bool | None = None,
    strict: bool | None = None,
    environ: Mapping[str, str] | None = None,
) -> ScenarioConfig:
    """
    Merge a config file, ``--set`` overrides and flags into a checked :class:`ScenarioConfig`.

    Flags (and for ``threads``/``out`` their environment variables) win over the file, which wins
    over the scenario's preset.
    """
    environ = os.environ if environ is None else environ
    sections = _load(path) if path is not None else {section: {} for section in SECTIONS}
    for section, name, value in (parse_override(text) for text in overrides):
        sections[section][name] = value

    header = _resolve("The config", "scenario", SCENARIO_SETTINGS, sections["scenario"], strict=True)
    scenario_id = scenario or header["id"]
    if not scenario_id:
        raise ConfigError("No scenario given; pass --scenario or set id in [scenario]")
    if scenario and header["id"] and header["id"] != scenario:
        logger.info("--scenario %s overrides config scenario %s", scenario, header["id"])
    if scenario_id not in SCHEMAS:
        raise ConfigError(f"Unknown scenario {scenario_id!r} (known: {', '.join(SCHEMAS)})")
    schema = SCHEMAS[scenario_id]
    strict = header["strict"] if strict is None else strict

    resolved_threads = threads if threads is not None else _env_threads(environ)
    if resolved_threads is None:
        resolved_threads = header["threads"] or 1
    if resolved_threads < 1:
        raise ConfigError(f"Need at least one worker thread, not {resolved_threads}")
    if out is None:
        out = pathlib.Path(environ[OUT_ENV]) if environ.get(OUT_ENV) else pathlib.Path(header["out"]) if header["out"] else DEFAULT_OUT

    owner = f"Scenario {scenario_id}"
    config = ScenarioConfig(
        scenario=scenario_id,
        params=_resolve(owner, "params", schema.settings("params"), sections["params"], strict=strict),
        solver=_resolve(owner, "solver", schema.settings("solver"), sections["solver"], strict=strict),
        truncations=_resolve(owner, "truncations", schema.settings("truncations"), sections["truncations"], strict=strict),
        out=out,
        svg=header["svg"] if svg is None else svg,
        strict=strict,
        threads=resolved_threads,
    )
    logger.debug("Config for %s: %s", scenario_id, config.snapshot())
    return config

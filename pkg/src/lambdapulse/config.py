"""Scenario configuration: flat-sectioned ``key = value`` text and presets.

Format (``#`` starts a comment, keys are case-insensitive)::

    [atom]
    omega31 = 3.0
    omega21 = 0.4

    [pump]              # couples |3> and |1>
    shape = gaussian    # or: sinc
    omega_carrier = 3.0
    rabi_peak = 0.76
    tau_p = 4.7
    chirp = 0.016       # optional, default 0 (Gaussian only)
    # cep = 0.0         # optional, default 0 (sinc only)

    [stokes]            # couples |3> and |2>, same keys as [pump]
    ...

    [grid]              # optional; default window follows the pulse shapes
    t_start = -14.1
    t_end = 14.1
    dt = 0.0005         # optional

    [sweep]             # optional; axis2_* keys make the sweep 2-D
    observable = final_rho22
    axis1 = chirp
    axis1_start = 0.012
    axis1_end = 0.02
    axis1_count = 17

    [output]            # optional
    directory = runs/example
    store_every = 20

Unknown sections or keys are hard errors, so typos cannot silently fall
back to defaults.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass

from .dynamics import DEFAULT_DT, TimeGrid
from .errors import ParseError, UnknownKeyError, ValidationError
from .pulses import PulseShape, PulseSpec
from .scenario import (
    DEFAULT_STORE_EVERY,
    Scenario,
    gaussian_reference_scenario,
    sinc_reference_scenario,
)
from .sweep import (
    AxisParam,
    Observable,
    SweepAxis,
    SweepSpec,
    cep_sweep_defaults,
    chirp_sweep_defaults,
    rabi_map_defaults,
    width_sweep_defaults,
)
from .atom import LambdaAtom


@dataclass(frozen=True)
class SweepSection:
    axes: tuple[SweepAxis, ...]
    observable: Observable = Observable.FINAL_RHO22


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: Scenario
    sweep: SweepSection | None = None
    out_dir: str | None = None

    def sweep_spec(self) -> SweepSpec:
        if self.sweep is None:
            raise ValidationError("configuration has no [sweep] section")
        return SweepSpec(
            base=self.scenario, axes=self.sweep.axes, observable=self.sweep.observable
        )


_PULSE_SECTIONS = ("pump", "stokes")
_SECTION_KEYS = {
    "atom": {"omega31", "omega21"},
    "pump": {"shape", "omega_carrier", "rabi_peak", "tau_p", "chirp", "cep"},
    "stokes": {"shape", "omega_carrier", "rabi_peak", "tau_p", "chirp", "cep"},
    "grid": {"t_start", "t_end", "dt"},
    "sweep": {
        "observable",
        "axis1", "axis1_start", "axis1_end", "axis1_count",
        "axis2", "axis2_start", "axis2_end", "axis2_count",
    },
    "output": {"directory", "store_every"},
}
_REQUIRED_SECTIONS = ("atom", "pump", "stokes")


def _require(section: dict, name: str, key: str) -> str:
    if key not in section:
        raise ValidationError(f"[{name}] missing required key '{key}'")
    return section[key]


def _as_float(name: str, key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ParseError(f"[{name}] {key}: not a number: {raw!r}") from None


def _as_int(name: str, key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"[{name}] {key}: not an integer: {raw!r}") from None


def _as_enum(enum_cls, name: str, key: str, raw: str):
    try:
        return enum_cls(raw.strip().lower())
    except ValueError:
        choices = ", ".join(e.value for e in enum_cls)
        raise ValidationError(f"[{name}] {key} must be one of: {choices}; got {raw!r}") from None


def _parse_pulse(name: str, section: dict) -> PulseSpec:
    shape = _as_enum(PulseShape, name, "shape", _require(section, name, "shape"))
    try:
        return PulseSpec(
            shape=shape,
            omega_carrier=_as_float(name, "omega_carrier", _require(section, name, "omega_carrier")),
            rabi_peak=_as_float(name, "rabi_peak", _require(section, name, "rabi_peak")),
            tau_p=_as_float(name, "tau_p", _require(section, name, "tau_p")),
            chirp=_as_float(name, "chirp", section.get("chirp", "0")),
            cep=_as_float(name, "cep", section.get("cep", "0")),
        )
    except ValidationError as e:
        raise ValidationError(f"[{name}] {e}") from e


def _parse_axis(section: dict, which: int) -> SweepAxis | None:
    keys = [f"axis{which}", f"axis{which}_start", f"axis{which}_end", f"axis{which}_count"]
    present = [k for k in keys if k in section]
    if not present:
        return None
    if len(present) != len(keys):
        missing = sorted(set(keys) - set(present))
        raise ValidationError(f"[sweep] incomplete axis{which}: missing {missing}")
    param = _as_enum(AxisParam, "sweep", keys[0], section[keys[0]])
    try:
        return SweepAxis(
            param=param,
            start=_as_float("sweep", keys[1], section[keys[1]]),
            end=_as_float("sweep", keys[2], section[keys[2]]),
            count=_as_int("sweep", keys[3], section[keys[3]]),
        )
    except ValidationError as e:
        raise ValidationError(f"[sweep] {e}") from e


def parse_config(text: str) -> ScenarioConfig:
    """Parse configuration text; every key maps one-to-one onto the domain types."""
    cp = configparser.ConfigParser(
        delimiters=("=",),
        comment_prefixes=("#",),
        inline_comment_prefixes=("#",),
        interpolation=None,
    )
    try:
        cp.read_string(text)
    except configparser.Error as e:
        raise ParseError(str(e)) from e

    sections = {name: dict(cp.items(name)) for name in cp.sections()}
    for name, content in sections.items():
        if name not in _SECTION_KEYS:
            raise UnknownKeyError(f"unknown section [{name}]")
        for key in content:
            if key not in _SECTION_KEYS[name]:
                raise UnknownKeyError(f"[{name}] unknown key '{key}'")
    for name in _REQUIRED_SECTIONS:
        if name not in sections:
            raise ValidationError(f"missing required section [{name}]")

    atom_sec = sections["atom"]
    try:
        atom = LambdaAtom(
            omega31=_as_float("atom", "omega31", _require(atom_sec, "atom", "omega31")),
            omega21=_as_float("atom", "omega21", _require(atom_sec, "atom", "omega21")),
        )
    except ValidationError as e:
        if str(e).startswith("["):
            raise
        raise ValidationError(f"[atom] {e}") from e

    pump = _parse_pulse("pump", sections["pump"])
    stokes = _parse_pulse("stokes", sections["stokes"])

    grid = None
    if "grid" in sections:
        sec = sections["grid"]
        try:
            grid = TimeGrid(
                t_start=_as_float("grid", "t_start", _require(sec, "grid", "t_start")),
                t_end=_as_float("grid", "t_end", _require(sec, "grid", "t_end")),
                dt=_as_float("grid", "dt", sec.get("dt", repr(DEFAULT_DT))),
            )
        except ValidationError as e:
            if str(e).startswith("["):
                raise
            raise ValidationError(f"[grid] {e}") from e

    out_dir = None
    store_every = DEFAULT_STORE_EVERY
    if "output" in sections:
        sec = sections["output"]
        out_dir = sec.get("directory")
        if "store_every" in sec:
            store_every = _as_int("output", "store_every", sec["store_every"])

    sweep = None
    if "sweep" in sections:
        sec = sections["sweep"]
        axis1 = _parse_axis(sec, 1)
        if axis1 is None:
            raise ValidationError("[sweep] missing required key 'axis1'")
        axis2 = _parse_axis(sec, 2)
        observable = _as_enum(
            Observable, "sweep", "observable",
            sec.get("observable", Observable.FINAL_RHO22.value),
        )
        axes = (axis1,) if axis2 is None else (axis1, axis2)
        sweep = SweepSection(axes=axes, observable=observable)

    try:
        scenario = Scenario(atom=atom, pump=pump, stokes=stokes, grid=grid,
                            store_every=store_every)
    except ValidationError as e:
        raise ValidationError(f"[output] {e}") from e
    if sweep is not None:
        # surfaces axis/parameter mismatches at parse time
        SweepSpec(base=scenario, axes=sweep.axes, observable=sweep.observable)
    return ScenarioConfig(scenario=scenario, sweep=sweep, out_dir=out_dir)


def _fmt(value: float) -> str:
    return repr(float(value))


def _emit_pulse(lines: list[str], name: str, spec: PulseSpec) -> None:
    lines.append(f"[{name}]")
    lines.append(f"shape = {spec.shape.value}")
    lines.append(f"omega_carrier = {_fmt(spec.omega_carrier)}")
    lines.append(f"rabi_peak = {_fmt(spec.rabi_peak)}")
    lines.append(f"tau_p = {_fmt(spec.tau_p)}")
    lines.append(f"chirp = {_fmt(spec.chirp)}")
    lines.append(f"cep = {_fmt(spec.cep)}")
    lines.append("")


def emit_config(config: ScenarioConfig) -> str:
    """Canonical text form; parse_config(emit_config(c)) == c for valid c."""
    sc = config.scenario
    lines: list[str] = ["[atom]"]
    lines.append(f"omega31 = {_fmt(sc.atom.omega31)}")
    lines.append(f"omega21 = {_fmt(sc.atom.omega21)}")
    lines.append("")
    _emit_pulse(lines, "pump", sc.pump)
    _emit_pulse(lines, "stokes", sc.stokes)
    if sc.grid is not None:
        lines.append("[grid]")
        lines.append(f"t_start = {_fmt(sc.grid.t_start)}")
        lines.append(f"t_end = {_fmt(sc.grid.t_end)}")
        lines.append(f"dt = {_fmt(sc.grid.dt)}")
        lines.append("")
    if config.sweep is not None:
        lines.append("[sweep]")
        lines.append(f"observable = {config.sweep.observable.value}")
        for i, axis in enumerate(config.sweep.axes, start=1):
            lines.append(f"axis{i} = {axis.param.value}")
            lines.append(f"axis{i}_start = {_fmt(axis.start)}")
            lines.append(f"axis{i}_end = {_fmt(axis.end)}")
            lines.append(f"axis{i}_count = {axis.count}")
        lines.append("")
    lines.append("[output]")
    if config.out_dir is not None:
        lines.append(f"directory = {config.out_dir}")
    lines.append(f"store_every = {sc.store_every}")
    lines.append("")
    return "\n".join(lines)


def _sweep_config(spec: SweepSpec) -> ScenarioConfig:
    return ScenarioConfig(
        scenario=spec.base,
        sweep=SweepSection(axes=spec.axes, observable=spec.observable),
    )


PRESETS: dict[str, tuple[str, object]] = {
    "gaussian_fig2": (
        "chirped-Gaussian reference run (near-complete transfer to |2>)",
        lambda: ScenarioConfig(scenario=gaussian_reference_scenario()),
    ),
    "sinc_fig3": (
        "unchirped-sinc reference run, zero carrier-envelope phases",
        lambda: ScenarioConfig(scenario=sinc_reference_scenario()),
    ),
    "width_gaussian": (
        "final transfer vs Gaussian temporal width, 4-6 fs",
        lambda: _sweep_config(width_sweep_defaults(PulseShape.GAUSSIAN_CHIRPED)),
    ),
    "width_sinc": (
        "final transfer vs sinc temporal width, 4.94-5.17 fs",
        lambda: _sweep_config(width_sweep_defaults(PulseShape.SINC)),
    ),
    "chirp_gaussian": (
        "final transfer vs chirp rate of both pulses, 0.012-0.020 fs^-3",
        lambda: _sweep_config(chirp_sweep_defaults()),
    ),
    "cep_map_sinc": (
        "final transfer vs both carrier-envelope phases, 9x9 over a full cycle",
        lambda: _sweep_config(cep_sweep_defaults()),
    ),
    "rabi_map_gaussian": (
        "final transfer vs both Gaussian peak Rabi amplitudes, 40x40 map",
        lambda: _sweep_config(rabi_map_defaults(PulseShape.GAUSSIAN_CHIRPED)),
    ),
    "rabi_map_sinc": (
        "final transfer vs both sinc peak Rabi amplitudes, 40x40 map",
        lambda: _sweep_config(rabi_map_defaults(PulseShape.SINC)),
    ),
}


def preset_names() -> list[str]:
    return list(PRESETS)


def load_preset(name: str) -> ScenarioConfig:
    if name not in PRESETS:
        known = ", ".join(PRESETS)
        raise ValidationError(f"unknown preset {name!r}; available: {known}")
    return PRESETS[name][1]()

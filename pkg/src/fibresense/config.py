"""Strict YAML run configuration for the command-line tools.

Unknown keys are rejected by dotted path and invariant violations name
the offending section: a silently misspelled sensor constant would
corrupt everything computed downstream.  Every key has a documented
default, so the minimal useful document is just a fibre diameter.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

import yaml

from .calibration import load_model
from .design import DesignSpace, LinearityError, UsableRangeLength, VoltageSpan
from .errors import ConfigError
from .geometry import (SILVER_TAPE, WHITE_RESIN, WHITE_TAPE, MountingConfig,
                       ReflectorProfile, SurfaceFinish)
from .kinematics import ChainLink, JointChain, calibrated_link
from .optics import FiberSpec, full_scale_k_v
from .response import ADC_STEP_10BIT_5V, NoiseModel, angle_grid

KNOWN_SURFACES = {
    SILVER_TAPE.label: SILVER_TAPE.reflectance,
    WHITE_TAPE.label: WHITE_TAPE.reflectance,
    WHITE_RESIN.label: WHITE_RESIN.reflectance,
}

OBJECTIVE_NAMES = ("voltage-span", "usable-range", "linearity")


@dataclass(frozen=True)
class SweepSpec:
    t_min: tuple[float, float, int] = (1.0, 2.0, 2)
    t_max: tuple[float, float, int] = (2.0, 5.0, 4)
    alpha: tuple[float, float, int] = (120.0, 180.0, 3)
    reflectance: tuple[float, float, int] = (0.6, 0.95, 3)
    objective: str = "voltage-span"
    window: tuple[float, float] | None = None
    min_slope: float = 0.01
    angle_step: float = 1.0
    budget: int = 10 ** 6


@dataclass(frozen=True)
class LinkSpec:
    length: float
    profile: str
    model_path: str | None = None
    order: int = 5
    window: tuple[float, float] | None = None


@dataclass(frozen=True)
class ChainSpec:
    links: tuple[LinkSpec, ...]
    base_pose: tuple[float, float, float] = (0.0, 0.0, 0.0)


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration with all defaults applied."""

    fiber_base: FiberSpec
    auto_k_v: bool
    profiles: dict[str, ReflectorProfile]
    standoff: float | None
    beta_offset: float
    base_radius: float
    noise: NoiseModel | None
    angles_start: float
    angles_stop: float | None
    angles_step: float
    output_dir: str
    plot: bool
    png: bool
    sweep: SweepSpec | None
    chain: ChainSpec | None
    base_dir: Path

    def profile(self, name: str | None = None) -> tuple[str, ReflectorProfile]:
        if name is not None:
            if name not in self.profiles:
                raise ConfigError(
                    f"profile '{name}' is not defined "
                    f"(have: {', '.join(sorted(self.profiles))})"
                )
            return name, self.profiles[name]
        if len(self.profiles) == 1:
            return next(iter(self.profiles.items()))
        raise ConfigError(
            "several profiles are defined, select one "
            f"(have: {', '.join(sorted(self.profiles))})"
        )

    def mount_for(self, profile: ReflectorProfile) -> MountingConfig:
        standoff = self.standoff if self.standoff is not None else profile.t_max + 1.0
        return MountingConfig(standoff, self.beta_offset, self.base_radius)

    def fiber_for(self, profile: ReflectorProfile, mount: MountingConfig) -> FiberSpec:
        """Resolve k_v = auto to a full-scale gain at the closest approach."""
        if not self.auto_k_v:
            return self.fiber_base
        h_min = mount.standoff - profile.t_max
        k_v = full_scale_k_v(self.fiber_base, h_min, profile.surface)
        return replace(self.fiber_base, k_v=k_v)

    def grid_for(self, profile: ReflectorProfile, mount: MountingConfig):
        stop = self.angles_stop
        if stop is None:
            stop = profile.alpha - mount.beta_offset
        return angle_grid(self.angles_start, stop, self.angles_step)

    def design_space(self) -> DesignSpace:
        spec = self.sweep or SweepSpec()
        try:
            space = DesignSpace(
                t_min=spec.t_min, t_max=spec.t_max, alpha=spec.alpha,
                reflectance=spec.reflectance, fiber=self.fiber_base,
                angle_step=spec.angle_step,
            )
        except ValueError as exc:
            raise ConfigError(f"sweep: {exc}") from exc
        if self.auto_k_v:
            best = SurfaceFinish("best", space.reflectance[1])
            k_v = full_scale_k_v(space.fiber, space.clearance, best)
            space = replace(space, fiber=replace(space.fiber, k_v=k_v))
        return space

    def objective(self, name: str | None = None):
        spec = self.sweep or SweepSpec()
        name = name or spec.objective
        window = spec.window
        if window is None:
            window = (0.0, spec.alpha[0])
        if name == "voltage-span":
            return VoltageSpan(window)
        if name == "usable-range":
            return UsableRangeLength(spec.min_slope)
        if name == "linearity":
            return LinearityError(window)
        raise ConfigError(
            f"unknown objective '{name}' (have: {', '.join(OBJECTIVE_NAMES)})"
        )

    def joint_chain(self) -> JointChain:
        if self.chain is None:
            raise ConfigError("config has no chain section")
        links = []
        for i, spec in enumerate(self.chain.links, start=1):
            profile = self.profiles[spec.profile]
            mount = self.mount_for(profile)
            fiber = self.fiber_for(profile, mount)
            if spec.model_path is not None:
                model = load_model(self.base_dir / spec.model_path)
                links.append(ChainLink(spec.length, fiber, profile, mount, model))
            else:
                links.append(calibrated_link(
                    spec.length, fiber, profile, mount,
                    order=spec.order, window=spec.window, step=self.angles_step,
                ))
        return JointChain(tuple(links), self.chain.base_pose)


def _mapping(node, path: str) -> dict:
    if node is None:
        return {}
    if not isinstance(node, dict):
        raise ConfigError(f"key {path}: expected a mapping, got {type(node).__name__}")
    return node


def _check_keys(d: dict, allowed: tuple[str, ...], path: str) -> None:
    for key in d:
        if key not in allowed:
            where = f"{path}.{key}" if path else str(key)
            raise ConfigError(f"unknown key: {where}")


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"key {path}: expected a number, got {value!r}")
    return float(value)


def _integer(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"key {path}: expected an integer, got {value!r}")
    return value


def _boolean(value, path: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(f"key {path}: expected a boolean, got {value!r}")
    return value


def _string(value, path: str) -> str:
    if not isinstance(value, str):
        raise ConfigError(f"key {path}: expected a string, got {value!r}")
    return value


def _pair(value, path: str) -> tuple[float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigError(f"key {path}: expected [low, high], got {value!r}")
    return (_number(value[0], path), _number(value[1], path))


def _axis(value, path: str) -> tuple[float, float, int]:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        v = float(value)
        return (v, v, 1)
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise ConfigError(f"key {path}: expected [low, high, count] or a number, got {value!r}")
    return (_number(value[0], path), _number(value[1], path), _integer(value[2], path))


def _parse_fiber(node, path: str = "fiber") -> tuple[FiberSpec, bool]:
    d = _mapping(node, path)
    _check_keys(d, ("d_mm", "theta_deg", "phi_src", "coupler_factor", "k_v", "v_max_v"), path)
    auto = True
    k_v = 1.0
    if "k_v" in d:
        raw = d["k_v"]
        if isinstance(raw, str):
            if raw != "auto":
                raise ConfigError(f"key {path}.k_v: expected a number or 'auto', got {raw!r}")
        else:
            k_v = _number(raw, f"{path}.k_v")
            auto = False
    try:
        fiber = FiberSpec(
            d=_number(d.get("d_mm", 0.9), f"{path}.d_mm"),
            theta=_number(d.get("theta_deg", 10.0), f"{path}.theta_deg"),
            phi_src=_number(d.get("phi_src", 1.0), f"{path}.phi_src"),
            coupler_factor=_number(d.get("coupler_factor", 0.5), f"{path}.coupler_factor"),
            k_v=k_v,
            v_max=_number(d.get("v_max_v", 5.0), f"{path}.v_max_v"),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return fiber, auto


def _parse_profile(name: str, node) -> ReflectorProfile:
    path = f"profiles.{name}"
    d = _mapping(node, path)
    _check_keys(d, ("t_min_mm", "t_max_mm", "alpha_deg", "surface", "reflectance", "table"), path)
    label = _string(d.get("surface", SILVER_TAPE.label), f"{path}.surface")
    if "reflectance" in d:
        reflectance = _number(d["reflectance"], f"{path}.reflectance")
    elif label in KNOWN_SURFACES:
        reflectance = KNOWN_SURFACES[label]
    else:
        raise ConfigError(
            f"profile '{name}': surface '{label}' is not a known finish, "
            "set reflectance explicitly"
        )
    points = None
    if "table" in d:
        for geom_key in ("t_min_mm", "t_max_mm", "alpha_deg"):
            if geom_key in d:
                raise ConfigError(
                    f"profile '{name}': give either table or {geom_key}, not both"
                )
        table = d["table"]
        if not isinstance(table, (list, tuple)):
            raise ConfigError(f"key {path}.table: expected a list of [beta, t] pairs")
        points = [_pair(p, f"{path}.table") for p in table]
    try:
        surface = SurfaceFinish(label, reflectance)
        if points is not None:
            return ReflectorProfile.from_table(points, surface)
        return ReflectorProfile.linear(
            _number(d.get("t_min_mm", 1.0), f"{path}.t_min_mm"),
            _number(d.get("t_max_mm", 5.0), f"{path}.t_max_mm"),
            _number(d.get("alpha_deg", 120.0), f"{path}.alpha_deg"),
            surface,
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"profile '{name}': {exc}") from exc


def _parse_noise(node, path: str = "noise") -> NoiseModel:
    d = _mapping(node, path)
    _check_keys(d, ("sigma_v", "adc_step_v", "seed"), path)
    try:
        return NoiseModel(
            sigma_v=_number(d.get("sigma_v", 0.02), f"{path}.sigma_v"),
            adc_step=_number(d.get("adc_step_v", ADC_STEP_10BIT_5V), f"{path}.adc_step_v"),
            seed=_integer(d.get("seed", 0), f"{path}.seed"),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _parse_sweep(node, path: str = "sweep") -> SweepSpec:
    d = _mapping(node, path)
    _check_keys(d, ("t_min_mm", "t_max_mm", "alpha_deg", "reflectance", "objective",
                    "window_deg", "min_slope_v_per_deg", "angle_step_deg", "budget"), path)
    defaults = SweepSpec()
    objective = _string(d.get("objective", defaults.objective), f"{path}.objective")
    if objective not in OBJECTIVE_NAMES:
        raise ConfigError(
            f"key {path}.objective: unknown objective '{objective}' "
            f"(have: {', '.join(OBJECTIVE_NAMES)})"
        )
    return SweepSpec(
        t_min=_axis(d.get("t_min_mm", defaults.t_min), f"{path}.t_min_mm"),
        t_max=_axis(d.get("t_max_mm", defaults.t_max), f"{path}.t_max_mm"),
        alpha=_axis(d.get("alpha_deg", defaults.alpha), f"{path}.alpha_deg"),
        reflectance=_axis(d.get("reflectance", defaults.reflectance), f"{path}.reflectance"),
        objective=objective,
        window=_pair(d["window_deg"], f"{path}.window_deg") if "window_deg" in d else None,
        min_slope=_number(d.get("min_slope_v_per_deg", defaults.min_slope),
                          f"{path}.min_slope_v_per_deg"),
        angle_step=_number(d.get("angle_step_deg", defaults.angle_step),
                           f"{path}.angle_step_deg"),
        budget=_integer(d.get("budget", defaults.budget), f"{path}.budget"),
    )


def _parse_chain(node, profiles: dict, path: str = "chain") -> ChainSpec:
    d = _mapping(node, path)
    _check_keys(d, ("base_pose", "links"), path)
    base_pose = (0.0, 0.0, 0.0)
    if "base_pose" in d:
        raw = d["base_pose"]
        if not isinstance(raw, (list, tuple)) or len(raw) != 3:
            raise ConfigError(f"key {path}.base_pose: expected [x, y, heading], got {raw!r}")
        base_pose = tuple(_number(v, f"{path}.base_pose") for v in raw)
    raw_links = d.get("links")
    if not isinstance(raw_links, list) or not raw_links:
        raise ConfigError(f"key {path}.links: expected a non-empty list of links")
    links = []
    for i, raw in enumerate(raw_links, start=1):
        lpath = f"{path}.links[{i}]"
        ld = _mapping(raw, lpath)
        _check_keys(ld, ("length_mm", "profile", "model", "order", "window_deg"), lpath)
        if "length_mm" not in ld:
            raise ConfigError(f"key {lpath}: length_mm is required")
        profile_name = _string(ld.get("profile", "default"), f"{lpath}.profile")
        if profile_name not in profiles:
            raise ConfigError(
                f"{lpath}: profile '{profile_name}' is not defined "
                f"(have: {', '.join(sorted(profiles))})"
            )
        length = _number(ld["length_mm"], f"{lpath}.length_mm")
        if length <= 0.0:
            raise ConfigError(f"key {lpath}.length_mm: must be positive, got {length:g}")
        links.append(LinkSpec(
            length=length,
            profile=profile_name,
            model_path=_string(ld["model"], f"{lpath}.model") if "model" in ld else None,
            order=_integer(ld.get("order", 5), f"{lpath}.order"),
            window=_pair(ld["window_deg"], f"{lpath}.window_deg") if "window_deg" in ld else None,
        ))
    return ChainSpec(tuple(links), base_pose)


def parse_config(text: str, base_dir: Path | str = ".") -> RunConfig:
    """Parse and validate a YAML configuration document."""
    try:
        doc = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        line = mark.line + 1 if mark is not None else "?"
        raise ConfigError(f"syntax error at line {line}: {exc.problem}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"syntax error: {exc}") from exc
    doc = _mapping(doc, "")
    _check_keys(doc, ("fiber", "profiles", "mount", "noise", "angles", "sweep",
                      "chain", "output"), "")

    fiber, auto_k_v = _parse_fiber(doc.get("fiber"))

    profiles: dict[str, ReflectorProfile] = {}
    raw_profiles = _mapping(doc.get("profiles"), "profiles")
    if raw_profiles:
        for name, node in raw_profiles.items():
            profiles[str(name)] = _parse_profile(str(name), node)
    else:
        profiles["default"] = ReflectorProfile.linear(1.0, 5.0, 120.0, SILVER_TAPE)

    mount = _mapping(doc.get("mount"), "mount")
    _check_keys(mount, ("standoff_mm", "beta_offset_deg", "base_radius_mm"), "mount")
    standoff = _number(mount["standoff_mm"], "mount.standoff_mm") if "standoff_mm" in mount else None
    beta_offset = _number(mount.get("beta_offset_deg", 0.0), "mount.beta_offset_deg")
    base_radius = _number(mount.get("base_radius_mm", 10.0), "mount.base_radius_mm")

    angles = _mapping(doc.get("angles"), "angles")
    _check_keys(angles, ("start_deg", "stop_deg", "step_deg"), "angles")
    angles_start = _number(angles.get("start_deg", 0.0), "angles.start_deg")
    angles_stop = _number(angles["stop_deg"], "angles.stop_deg") if "stop_deg" in angles else None
    angles_step = _number(angles.get("step_deg", 1.0), "angles.step_deg")
    if angles_step <= 0.0:
        raise ConfigError(f"key angles.step_deg: must be positive, got {angles_step:g}")

    output = _mapping(doc.get("output"), "output")
    _check_keys(output, ("directory", "plot", "png"), "output")

    return RunConfig(
        fiber_base=fiber,
        auto_k_v=auto_k_v,
        profiles=profiles,
        standoff=standoff,
        beta_offset=beta_offset,
        base_radius=base_radius,
        noise=_parse_noise(doc["noise"]) if "noise" in doc else None,
        angles_start=angles_start,
        angles_stop=angles_stop,
        angles_step=angles_step,
        output_dir=_string(output.get("directory", "out"), "output.directory"),
        plot=_boolean(output.get("plot", True), "output.plot"),
        png=_boolean(output.get("png", False), "output.png"),
        sweep=_parse_sweep(doc["sweep"]) if "sweep" in doc else None,
        chain=_parse_chain(doc["chain"], profiles) if "chain" in doc else None,
        base_dir=Path(base_dir),
    )


def load_config(path) -> RunConfig:
    path = Path(path)
    return parse_config(path.read_text(encoding="utf-8"), base_dir=path.parent)

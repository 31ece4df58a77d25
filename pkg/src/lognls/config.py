"""Run configuration: a flat dotted-key file plus command-line overrides.

File syntax, one assignment per line::

    # comment
    command = stability
    equation.lambda = 1.0
    solver.dt = 1e-4

Unknown keys, duplicate keys, and out-of-range values are rejected with the
offending key path in the message. Overrides (``--set key=value``) replace
file values; the subcommand picked on the command line replaces ``command``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .evolution import SolverConfig
from .grid import Geometry
from .nonlinearity import REG_FAMILIES, NonlinearitySpec

__all__ = ["ConfigError", "RunConfig", "parse_config", "COMMANDS"]

COMMANDS = ("simulate", "stability", "gausson", "limit", "zygmund",
            "smoothing", "localize", "ineq", "gronwall")


class ConfigError(ValueError):
    pass


def _parse_float(raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"expected a number, got {raw!r}") from None
    if not np.isfinite(value):
        raise ConfigError(f"expected a finite number, got {raw!r}")
    return value


def _parse_int(raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"expected an integer, got {raw!r}") from None


def _parse_bool(raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {raw!r}")


def _parse_str(raw: str) -> str:
    return raw.strip()


def _parse_float_list(raw: str) -> list[float]:
    return [_parse_float(part) for part in raw.split(",") if part.strip()]


def _parse_int_list(raw: str) -> list[int]:
    return [_parse_int(part) for part in raw.split(",") if part.strip()]


def _choice(options):
    def parse(raw: str) -> str:
        value = raw.strip()
        if value not in options:
            raise ConfigError(f"expected one of {', '.join(options)}, got {raw!r}")
        return value
    return parse


def _positive(value):
    if not value > 0:
        raise ConfigError(f"must be positive, got {value}")
    return value


def _nonnegative(value):
    if value < 0:
        raise ConfigError(f"must be >= 0, got {value}")
    return value


def _alpha_range(value):
    # dimension-dependent ceiling re-checked against geometry.d at assembly
    if not value > 0:
        raise ConfigError(f"must satisfy 0 < alpha < 4/(d-2)_+, got {value}")
    return value


def _open_unit(value):
    if not 0 < value < 1:
        raise ConfigError(f"must lie in (0, 1), got {value}")
    return value


def _half_open_unit(value):
    if not 0 < value <= 1:
        raise ConfigError(f"must lie in (0, 1], got {value}")
    return value


def _identity(value):
    return value


# key -> (parser, validator, default)
SCHEMA: dict[str, tuple] = {
    "command": (_choice(COMMANDS), _identity, None),
    "seed": (_parse_int, _nonnegative, 0),
    "output_dir": (_parse_str, _identity, "out"),
    "equation.lambda": (_parse_float, _identity, 1.0),
    "equation.mu": (_parse_float, _identity, 0.0),
    "equation.alpha": (_parse_float, _alpha_range, 2.0),
    "equation.reg_family": (_choice(REG_FAMILIES), _identity, "exact"),
    "equation.epsilon": (_parse_float, _nonnegative, 0.0),
    "geometry.d": (_parse_int, _identity, 1),
    "geometry.L": (_parse_float, _positive, 2.0 * np.pi),
    "geometry.N": (_parse_int, _identity, 256),
    "solver.scheme": (_choice(("lie", "strang")), _identity, "strang"),
    "solver.dt": (_parse_float, _positive, 1e-3),
    "solver.t_final": (_parse_float, _nonnegative, 1.0),
    "solver.snapshot_every": (_parse_int, _positive, 10),
    "solver.hs_norms": (_parse_float_list, _identity, []),
    "simulate.data_s": (_parse_float, _nonnegative, 1.0),
    "simulate.data_norm": (_parse_float, _nonnegative, 1.0),
    "stability.pairs": (_parse_int, _positive, 20),
    "stability.tol": (_parse_float, _positive, 0.05),
    "stability.rel_min": (_parse_float, _positive, 1e-3),
    "stability.rel_max": (_parse_float, _positive, 1e-1),
    "stability.data_s": (_parse_float, _nonnegative, 1.0),
    "gausson.omega": (_parse_float, _identity, 0.0),
    "gausson.tol": (_parse_float, _positive, 1e-4),
    "limit.epsilons": (_parse_float_list, _identity, [1e-2, 1e-3, 1e-4]),
    "limit.data": (_choice(("hs_random", "modulus_floor")), _identity, "hs_random"),
    "limit.data_s": (_parse_float, _nonnegative, 0.5),
    "zygmund.n_list": (_parse_int_list, _identity, [32, 64, 128, 256]),
    "zygmund.samples": (_parse_int, _positive, 50),
    "zygmund.time_samples": (_parse_int, _positive, 256),
    "zygmund.slope": (_parse_float, _positive, 0.6),
    "zygmund.growth_tol": (_parse_float, _positive, 0.10),
    "zygmund.false_scaling": (_parse_bool, _identity, False),
    "smoothing.s": (_parse_float, _half_open_unit, 0.5),
    "smoothing.r_list": (_parse_float_list, _identity, [4.0, 8.0, 16.0, 32.0]),
    "smoothing.time_steps": (_parse_int, _positive, 1024),
    "smoothing.k_max": (_parse_int, _positive, 700),
    "smoothing.ratio_tol": (_parse_float, _positive, 2.0),
    "smoothing.false_normalization": (_parse_bool, _identity, False),
    "localize.s": (_parse_float, _open_unit, 0.5),
    "localize.r_list": (_parse_float_list, _identity, [8.0, 16.0, 32.0, 64.0]),
    "localize.data_norm": (_parse_float, _positive, 1.0),
    "localize.slope_slack": (_parse_float, _positive, 0.2),
    "localize.seeds": (_parse_int, _positive, 3),
    "ineq.which": (_choice(("ch", "g1", "g2", "growth")), _identity, "ch"),
    "ineq.samples": (_parse_int, _positive, 1_000_000),
    "ineq.deltas": (_parse_float_list, _identity, [0.5, 0.1, 0.02, 0.005]),
    "gronwall.a": (_parse_float, _nonnegative, 1.0),
    "gronwall.b": (_parse_float, _nonnegative, 1.0),
    "gronwall.delta": (_parse_float, _open_unit, 0.5),
    "gronwall.samples": (_parse_int, _positive, 1024),
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int
    output_dir: str
    equation: NonlinearitySpec
    geometry: Geometry
    solver: SolverConfig
    params: dict

    def resolved(self) -> dict:
        """Flat, fully-defaulted key/value view (embedded in every report)."""
        out = dict(self.params)
        out.update({
            "command": self.command,
            "seed": self.seed,
            "output_dir": self.output_dir,
            "equation.lambda": self.equation.lam,
            "equation.mu": self.equation.mu,
            "equation.alpha": self.equation.alpha,
            "equation.reg_family": self.equation.reg_family,
            "equation.epsilon": self.equation.epsilon,
            "geometry.d": self.geometry.d,
            "geometry.L": self.geometry.L,
            "geometry.N": self.geometry.N,
            "solver.scheme": self.solver.scheme,
            "solver.dt": self.solver.dt,
            "solver.t_final": self.solver.t_final,
            "solver.snapshot_every": self.solver.snapshot_every,
            "solver.hs_norms": list(self.solver.hs_norms),
        })
        return out


def _read_file(path) -> dict[str, str]:
    text = Path(path).read_text()
    data: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key in data:
            raise ConfigError(f"duplicate key {key!r} (line {lineno})")
        data[key] = value.strip()
    return data


def parse_config(path=None, overrides=None, command: str | None = None) -> RunConfig:
    """Assemble a validated RunConfig from a file, overrides, and a command."""
    raw = _read_file(path) if path is not None else {}
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        key, _, value = item.partition("=")
        raw[key.strip()] = value.strip()
    if command is not None:
        raw["command"] = command

    unknown = sorted(set(raw) - set(SCHEMA))
    if unknown:
        raise ConfigError(f"unknown key {unknown[0]!r}")

    values: dict = {}
    for key, (parser, validator, default) in SCHEMA.items():
        if key in raw:
            try:
                values[key] = validator(parser(raw[key]))
            except ConfigError as err:
                raise ConfigError(f"{key}: {err}") from None
        else:
            values[key] = default

    if values["command"] is None:
        raise ConfigError("missing required field 'command'")

    try:
        equation = NonlinearitySpec(
            lam=values["equation.lambda"], mu=values["equation.mu"],
            alpha=values["equation.alpha"], reg_family=values["equation.reg_family"],
            epsilon=values["equation.epsilon"])
        geometry = Geometry(d=values["geometry.d"], L=values["geometry.L"],
                            N=values["geometry.N"])
        equation.validate_alpha(geometry.d)
        solver = SolverConfig(
            scheme=values["solver.scheme"], dt=values["solver.dt"],
            t_final=values["solver.t_final"] if values["solver.t_final"] > 0 else 0.0,
            snapshot_every=values["solver.snapshot_every"],
            hs_norms=tuple(values["solver.hs_norms"]))
    except ValueError as err:
        raise ConfigError(str(err)) from None

    reserved = {"command", "seed", "output_dir"}
    section_keys = {k for k in SCHEMA
                    if k.split(".", 1)[0] in ("equation", "geometry", "solver")}
    params = {k: v for k, v in values.items()
              if k not in reserved and k not in section_keys}
    return RunConfig(command=values["command"], seed=values["seed"],
                     output_dir=values["output_dir"], equation=equation,
                     geometry=geometry, solver=solver, params=params)

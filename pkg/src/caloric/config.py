"""Run configuration: a plain-text ``key = value`` file under a ``[run]`` section.

Ranges are written ``a..b`` (inclusive), rational lists as comma separated
``p/q`` values. Floats are rejected.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .ratpoly import format_rational, parse_rational

ENV_VAR = "CALORIC_CONFIG"
FORMATS = ("csv", "json")


class ConfigError(ValueError):
    pass


def parse_range(text: str) -> tuple[int, int]:
    s = text.strip()
    try:
        if ".." in s:
            lo, hi = (int(part) for part in s.split("..", 1))
        else:
            lo = hi = int(s)
    except ValueError:
        raise ConfigError(f"bad integer range {text!r}; expected a..b") from None
    if lo > hi:
        raise ConfigError(f"empty range {text!r}")
    return lo, hi


def format_range(r: tuple[int, int]) -> str:
    return f"{r[0]}..{r[1]}"


def parse_rational_list(text: str) -> tuple[Fraction, ...]:
    items = [s for s in (part.strip() for part in text.split(",")) if s]
    try:
        return tuple(parse_rational(s) for s in items)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


@dataclass(frozen=True)
class RunConfig:
    n_range: tuple[int, int] = (1, 2)
    degree_range: tuple[int, int] = (0, 6)
    k_range: tuple[int, int] = (0, 2)
    nodes: tuple[Fraction, ...] | None = None
    radii: tuple[Fraction, ...] = field(default_factory=lambda: tuple(Fraction(2**i) for i in range(4)))
    output_format: str = "csv"
    output_path: str | None = None
    parallelism: int = 1

    def __post_init__(self):
        for name in ("n_range", "degree_range", "k_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ConfigError(f"{name} is empty")
        if self.n_range[0] < 1:
            raise ConfigError("n_range must start at 1 or above")
        if self.degree_range[0] < 0 or self.k_range[0] < 0:
            raise ConfigError("degree and k ranges must be nonnegative")
        if not self.radii or any(r <= 0 for r in self.radii):
            raise ConfigError("radii must be a nonempty list of positive rationals")
        if self.output_format not in FORMATS:
            raise ConfigError(f"output_format must be one of {FORMATS}")
        if self.parallelism < 0:
            raise ConfigError("parallelism must be nonnegative (0 = auto)")

    @property
    def ns(self) -> list[int]:
        return list(range(self.n_range[0], self.n_range[1] + 1))

    @property
    def degrees(self) -> list[int]:
        return list(range(self.degree_range[0], self.degree_range[1] + 1))

    @property
    def ks(self) -> list[int]:
        return list(range(self.k_range[0], self.k_range[1] + 1))

    def workers(self) -> int:
        return self.parallelism or (os.cpu_count() or 1)

    def to_text(self) -> str:
        lines = [
            "[run]",
            f"n_range = {format_range(self.n_range)}",
            f"degree_range = {format_range(self.degree_range)}",
            f"k_range = {format_range(self.k_range)}",
        ]
        if self.nodes is not None:
            lines.append("nodes = " + ", ".join(format_rational(t) for t in self.nodes))
        lines.append("radii = " + ", ".join(format_rational(r) for r in self.radii))
        lines.append(f"output_format = {self.output_format}")
        if self.output_path is not None:
            lines.append(f"output_path = {self.output_path}")
        lines.append(f"parallelism = {self.parallelism}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunConfig":
        cp = configparser.ConfigParser()
        try:
            cp.read_string(text)
        except configparser.Error as exc:
            raise ConfigError(str(exc)) from None
        if not cp.has_section("run"):
            raise ConfigError("config needs a [run] section")
        sec = cp["run"]
        known = {"n_range", "degree_range", "k_range", "nodes", "radii", "output_format",
                 "output_path", "parallelism"}
        unknown = set(sec) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kw = {}
        for name in ("n_range", "degree_range", "k_range"):
            if name in sec:
                kw[name] = parse_range(sec[name])
        if "nodes" in sec:
            kw["nodes"] = parse_rational_list(sec["nodes"])
        if "radii" in sec:
            kw["radii"] = parse_rational_list(sec["radii"])
        if "output_format" in sec:
            kw["output_format"] = sec["output_format"].strip()
        if "output_path" in sec:
            kw["output_path"] = sec["output_path"].strip()
        if "parallelism" in sec:
            try:
                kw["parallelism"] = int(sec["parallelism"])
            except ValueError:
                raise ConfigError("parallelism must be an integer") from None
        return cls(**kw)

    @classmethod
    def load(cls, path: str | None) -> "RunConfig":
        path = path or os.environ.get(ENV_VAR)
        if not path:
            return cls()
        try:
            with open(path, encoding="utf-8") as fh:
                return cls.from_text(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None

    def updated(self, **changes) -> "RunConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

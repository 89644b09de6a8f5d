"""Run configuration: a flat INI file with typed sections.

Sections and keys (all optional, with defaults suiting a quick desk run):

    [growth]
    kind = affine | explicit
    multipliers = 3            ; affine: scalar or comma list
    q1 = 1
    count = 12
    terms = 1,4,13,40          ; explicit

    [lifetime]
    kind = powerlaw | delta | geometric | csv
    alpha = 0.8                ; powerlaw
    horizon = 20000            ; powerlaw mass prefix
    n = 1                      ; delta
    p = 0.5                    ; geometric
    path = masses.csv          ; csv

    [markov]
    kind = harmonic | constant | power | from_lifetime
    exponent = 1.0             ; power: u_n = (n+1)**-exponent

    [run]
    n_max = 200
    renewal_horizon = 20000
    depth = auto               ; or an integer >= the auto rule
    precision = double | exact
    out = out
    checkpoints = 100,1000,10000
    g2_points = 0,1/2,1/3      ; rationals diagnosed in the growth report
    theta_min = 1e-3
    theta_max = 1e-1
    theta_points = 200
    window_fraction = 0.5

Every parsed value is echoed into the outputs, and the SHA-256 of the
canonical key=value listing stamps each report so identical configurations
produce byte-identical files.
"""

from __future__ import annotations

import configparser
import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import ConfigError
from .growth import GrowthSequence, make_affine_sequence, AffineSequence
from .renewal import (LifetimeDistribution, RenewalSequence, delta_lifetime,
                      geometric_lifetime, harmonic_renewal, lifetime_from_csv,
                      power_law_lifetime, power_renewal,
                      renewal_from_lifetime)

__all__ = ["RunConfig", "DEFAULTS"]

DEFAULTS: dict[str, dict[str, str]] = {
    "growth": {"kind": "affine", "multipliers": "3", "q1": "1", "count": "12"},
    "lifetime": {"kind": "powerlaw", "alpha": "0.8", "horizon": "20000"},
    "markov": {"kind": "harmonic"},
    "run": {
        "n_max": "200",
        "renewal_horizon": "20000",
        "depth": "auto",
        "precision": "double",
        "out": "out",
        "checkpoints": "100,1000,10000",
        "g2_points": "0,1/2,1/3",
        "theta_min": "1e-3",
        "theta_max": "1e-1",
        "theta_points": "200",
        "window_fraction": "0.5",
    },
}


def _parse_int(section: str, key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"[{section}] {key}={text!r} is not an integer")


def _parse_float(section: str, key: str, text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"[{section}] {key}={text!r} is not a number")


@dataclass
class RunConfig:
    """Parsed and validated configuration plus its provenance hash."""

    values: dict[str, dict[str, str]]
    config_hash: str = field(default="")
    base_dir: Path = field(default_factory=Path)

    def __post_init__(self) -> None:
        extra = {"growth": {"terms"}, "lifetime": {"n", "p", "path"},
                 "markov": {"exponent"}, "run": set()}
        merged = {s: dict(kv) for s, kv in DEFAULTS.items()}
        for section, kv in self.values.items():
            if section not in merged:
                raise ConfigError(f"unknown config section [{section}]")
            for key, val in kv.items():
                if key not in merged[section] and key not in extra[section]:
                    known = ", ".join(sorted(set(DEFAULTS[section])
                                             | extra[section]))
                    raise ConfigError(f"unknown key {key!r} in [{section}] "
                                      f"(known: {known})")
                merged[section][key] = val.strip()
        self.values = merged
        canon = "\n".join(f"{s}.{k}={v}"
                          for s in sorted(merged)
                          for k, v in sorted(merged[s].items()))
        self.config_hash = hashlib.sha256(canon.encode()).hexdigest()[:16]
        self._validate()

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        p = Path(path)
        if not p.is_file():
            raise ConfigError(f"config file not found: {p}")
        parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
        try:
            parser.read_string(p.read_text(encoding="utf-8"))
        except configparser.Error as exc:
            raise ConfigError(f"cannot parse {p}: {exc}")
        values = {s: dict(parser.items(s)) for s in parser.sections()}
        return cls(values, base_dir=p.parent)

    @classmethod
    def default(cls) -> "RunConfig":
        return cls({})

    def _validate(self) -> None:
        run = self.values["run"]
        for key in ("n_max", "renewal_horizon", "theta_points"):
            if _parse_int("run", key, run[key]) < 1:
                raise ConfigError(f"[run] {key} must be positive")
        if run["precision"] not in ("double", "exact"):
            raise ConfigError("[run] precision must be double or exact")
        if run["depth"] != "auto":
            _parse_int("run", "depth", run["depth"])
        wf = _parse_float("run", "window_fraction", run["window_fraction"])
        if not 0 < wf <= 1:
            raise ConfigError("[run] window_fraction must lie in (0, 1]")
        tmin = _parse_float("run", "theta_min", run["theta_min"])
        tmax = _parse_float("run", "theta_max", run["theta_max"])
        if not 0 < tmin < tmax:
            raise ConfigError("[run] need 0 < theta_min < theta_max")
        if self.values["lifetime"]["kind"] == "csv":
            path = self.values["lifetime"].get("path")
            if not path:
                raise ConfigError("[lifetime] kind=csv needs a path")
            if not (self.base_dir / path).is_file():
                raise ConfigError(f"[lifetime] csv file not found: "
                                  f"{self.base_dir / path}")
        if self.values["run"]["precision"] == "exact":
            if self.values["lifetime"]["kind"] in ("powerlaw", "geometric"):
                raise ConfigError("exact precision needs an exactly "
                                  "normalized lifetime (delta or rational "
                                  "csv), not powerlaw/geometric")
            if self.renewal_horizon > 2000:
                raise ConfigError("exact precision is quadratic time; keep "
                                  "renewal_horizon <= 2000")

    # typed accessors ----------------------------------------------------

    @property
    def n_max(self) -> int:
        return _parse_int("run", "n_max", self.values["run"]["n_max"])

    @property
    def renewal_horizon(self) -> int:
        return _parse_int("run", "renewal_horizon",
                          self.values["run"]["renewal_horizon"])

    @property
    def depth(self) -> int | None:
        text = self.values["run"]["depth"]
        return None if text == "auto" else _parse_int("run", "depth", text)

    @property
    def precision(self) -> str:
        return self.values["run"]["precision"]

    @property
    def out_dir(self) -> Path:
        return self.base_dir / self.values["run"]["out"]

    @property
    def checkpoints(self) -> list[int]:
        text = self.values["run"]["checkpoints"]
        return [_parse_int("run", "checkpoints", t)
                for t in text.split(",") if t.strip()]

    @property
    def g2_points(self) -> list[Fraction]:
        out = []
        for t in self.values["run"]["g2_points"].split(","):
            t = t.strip()
            if not t:
                continue
            try:
                out.append(Fraction(t))
            except ValueError:
                raise ConfigError(f"[run] g2_points entry {t!r} is not "
                                  "a rational")
        return out

    @property
    def theta_grid(self) -> tuple[float, float, int]:
        run = self.values["run"]
        return (_parse_float("run", "theta_min", run["theta_min"]),
                _parse_float("run", "theta_max", run["theta_max"]),
                _parse_int("run", "theta_points", run["theta_points"]))

    @property
    def window_fraction(self) -> float:
        return _parse_float("run", "window_fraction",
                            self.values["run"]["window_fraction"])

    # builders -----------------------------------------------------------

    def build_growth(self) -> tuple[GrowthSequence, AffineSequence | None]:
        g = self.values["growth"]
        if g["kind"] == "affine":
            mults_text = g["multipliers"]
            mults = [_parse_int("growth", "multipliers", t)
                     for t in mults_text.split(",") if t.strip()]
            count = _parse_int("growth", "count", g["count"])
            if len(mults) == 1:
                mults = mults * max(count - 1, 0)
            try:
                aff = make_affine_sequence(mults,
                                           _parse_int("growth", "q1", g["q1"]),
                                           count)
            except ValueError as exc:
                raise ConfigError(f"[growth] {exc}")
            return aff.sequence, aff
        if g["kind"] == "explicit":
            if "terms" not in g:
                raise ConfigError("[growth] kind=explicit needs terms")
            terms = tuple(_parse_int("growth", "terms", t)
                          for t in g["terms"].split(",") if t.strip())
            try:
                return GrowthSequence(terms), None
            except ValueError as exc:
                raise ConfigError(f"[growth] {exc}")
        raise ConfigError(f"[growth] unknown kind {g['kind']!r}")

    def build_lifetime(self) -> LifetimeDistribution:
        lf = self.values["lifetime"]
        try:
            if lf["kind"] == "powerlaw":
                return power_law_lifetime(
                    _parse_float("lifetime", "alpha", lf["alpha"]),
                    _parse_int("lifetime", "horizon", lf["horizon"]))
            if lf["kind"] == "delta":
                return delta_lifetime(_parse_int("lifetime", "n",
                                                 lf.get("n", "1")))
            if lf["kind"] == "geometric":
                return geometric_lifetime(
                    _parse_float("lifetime", "p", lf.get("p", "0.5")))
            if lf["kind"] == "csv":
                return lifetime_from_csv(self.base_dir / lf["path"])
        except ConfigError:
            raise
        except (ValueError, OSError) as exc:
            raise ConfigError(f"[lifetime] {exc}")
        raise ConfigError(f"[lifetime] unknown kind {lf['kind']!r}")

    def build_markov_u(self, horizon: int) -> RenewalSequence:
        mk = self.values["markov"]
        try:
            if mk["kind"] == "harmonic":
                return harmonic_renewal(horizon)
            if mk["kind"] == "constant":
                return power_renewal(0.0, horizon)
            if mk["kind"] == "power":
                return power_renewal(
                    _parse_float("markov", "exponent",
                                 mk.get("exponent", "1.0")), horizon)
            if mk["kind"] == "from_lifetime":
                return renewal_from_lifetime(self.build_lifetime(), horizon,
                                             mode=self.precision)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"[markov] {exc}")
        raise ConfigError(f"[markov] unknown kind {mk['kind']!r}")

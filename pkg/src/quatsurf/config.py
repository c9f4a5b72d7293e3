"""INI run configuration: curve sections, surface options, probe manifests.

Example::

    [alpha]
    family = proper_helix
    kappa = 1.0
    tau = 2.0
    s_max = 0.2

    [beta]
    family = clifford_factor
    r1 = 0.8660254037844386
    r2 = 0.5

    [surface]
    delta = 0.001

Probe manifests use one ``[probe:<id>]`` section per probe; values with
commas are lists.
"""

from __future__ import annotations

import configparser
import inspect
import math
import re
from pathlib import Path

from .curves import DEFAULT_STEP, FAMILIES, CurveSpec, random_seed, read_table_csv
from .errors import ConfigError
from .probes import PROBES, parse_profile

CURVE_KEYS = {"family", "kappa", "tau", "b", "sign", "r1", "r2", "table", "s_min", "s_max", "step", "seed"}

DEFAULT_MANIFEST = """\
[probe:flat_constant_F]
b_values = 0.5, 1, 2
kappa_profiles = 1, sin:1:0.3:2
C_values = 0, -0.5, 0.3

[probe:cmc_great_circles]
C_values = 0, 0.3, -0.3, 0.5, -0.5, 0.9, -0.9
seeds = 11, 12

[probe:helix_frame_circles]
b_values = 0, 0.5, 1, 2
kappa_profiles = 1, sin:1:0.3:2

[probe:flat_patch_unit_torsion]
kappa_pairs = 1/1, 1/sin:1:0.3:2, 0/1
thetas = 0.5235987755982988, 0.7853981633974483, 1.0471975511965976

[probe:nonexistence_minimal]
kappas = 0.5, 1, 2
taus = -2, -1, 0, 1, 2
seeds = 1, 2

[probe:no_umbilic]
"""


class Config:
    """A parsed INI file that remembers where each key came from."""

    def __init__(self, text: str, path: str = "<config>"):
        self.path = path
        self.text = text
        self.parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
        self.parser.optionxform = str
        try:
            self.parser.read_string(text, source=path)
        except configparser.Error as exc:
            raise ConfigError(f"{path}: {exc}") from exc

    @classmethod
    def from_file(cls, path) -> "Config":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from exc
        return cls(text, str(path))

    def line_of(self, section: str, key: str | None = None) -> int | None:
        current = None
        for lineno, line in enumerate(self.text.splitlines(), start=1):
            m = re.match(r"\s*\[([^\]]+)\]", line)
            if m:
                current = m.group(1).strip()
                if key is None and current == section:
                    return lineno
                continue
            if current == section and key is not None:
                m = re.match(r"\s*([^=:#;\s][^=:]*?)\s*[=:]", line)
                if m and m.group(1) == key:
                    return lineno
        return None

    def error(self, section: str, key: str | None, msg: str) -> ConfigError:
        line = self.line_of(section, key)
        where = f"{self.path}:{line}" if line else self.path
        field = f"[{section}]" + (f" {key}" if key else "")
        return ConfigError(f"{where}: {field}: {msg}")

    def has(self, section: str) -> bool:
        return self.parser.has_section(section)

    def get(self, section: str, key: str, default=None):
        if not self.parser.has_option(section, key):
            return default
        return self.parser.get(section, key)

    def number(self, section: str, key: str, default=None, lo=None, hi=None, open_lo=False) -> float:
        raw = self.get(section, key)
        if raw is None:
            if default is None:
                raise self.error(section, key, "missing required value")
            return default
        try:
            v = float(raw)
        except ValueError:
            raise self.error(section, key, f"expected a number, got {raw!r}") from None
        if not math.isfinite(v):
            raise self.error(section, key, "value must be finite")
        if lo is not None and (v <= lo if open_lo else v < lo):
            raise self.error(section, key, f"value {v!r} below allowed range")
        if hi is not None and v > hi:
            raise self.error(section, key, f"value {v!r} above allowed range")
        return v


def _seed(cfg: Config, section: str):
    raw = (cfg.get(section, "seed", "identity") or "identity").strip()
    if raw == "identity":
        return None
    if raw.startswith("random:"):
        try:
            return random_seed(int(raw.split(":", 1)[1]))
        except ValueError:
            pass
    raise cfg.error(section, "seed", f"expected identity or random:<int>, got {raw!r}")


def curve_spec(cfg: Config, section: str, step: float | None = None) -> CurveSpec:
    """Build a :class:`CurveSpec` from one config section."""
    if not cfg.has(section):
        raise cfg.error(section, None, "section is missing")
    for key in cfg.parser.options(section):
        if key not in CURVE_KEYS:
            raise cfg.error(section, key, "unknown key")
    family = (cfg.get(section, "family") or "").strip()
    if family not in FAMILIES:
        raise cfg.error(section, "family", f"expected one of {', '.join(FAMILIES)}")
    h = step if step is not None else cfg.number(section, "step", DEFAULT_STEP, lo=0.0, open_lo=True)
    s_min = cfg.number(section, "s_min", 0.0)
    s_max = cfg.number(section, "s_max", 2 * math.pi if family in ("great_circle", "clifford_factor") else 1.0)
    if family != "tabulated" and s_max <= s_min:
        raise cfg.error(section, "s_max", "must exceed s_min")
    seed = _seed(cfg, section)

    def profile(key):
        raw = cfg.get(section, key)
        if raw is None:
            raise cfg.error(section, key, "missing required value")
        try:
            return parse_profile(raw)
        except ValueError:
            raise cfg.error(section, key, f"expected a number or sin:mean:amp:freq, got {raw!r}") from None

    try:
        if family == "great_circle":
            return CurveSpec.great_circle(s_min, s_max, h, seed=seed)
        if family == "proper_helix":
            return CurveSpec.proper_helix(cfg.number(section, "kappa", lo=0.0),
                                          cfg.number(section, "tau"), s_min, s_max, h, seed=seed)
        if family == "general_helix":
            sign = cfg.number(section, "sign", 1.0)
            if sign not in (1.0, -1.0):
                raise cfg.error(section, "sign", "must be +1 or -1")
            return CurveSpec.general_helix(cfg.number(section, "b"), int(sign), profile("kappa"),
                                           s_min, s_max, h, seed=seed)
        if family == "clifford_factor":
            return CurveSpec.clifford_factor(cfg.number(section, "r1", lo=0.0),
                                             cfg.number(section, "r2", lo=0.0), s_min, s_max, h)
        table = cfg.get(section, "table")
        if table is None:
            raise cfg.error(section, "table", "tabulated curves need a CSV table")
        path = Path(table)
        if not path.is_absolute():
            path = Path(cfg.path).parent / path
        try:
            k, t = read_table_csv(path)
        except (OSError, ValueError) as exc:
            raise cfg.error(section, "table", str(exc)) from None
        lo = cfg.number(section, "s_min", k.s[0])
        hi = cfg.number(section, "s_max", k.s[-1])
        return CurveSpec.tabulated(k, t, lo, hi, h, seed=seed)
    except ConfigError:
        raise
    except ValueError as exc:
        raise cfg.error(section, None, str(exc)) from None


def _value(raw: str):
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    out = []
    for p in parts:
        if "/" in p:
            out.append(tuple(p.split("/", 1)))
            continue
        try:
            out.append(float(p))
        except ValueError:
            out.append(p)
    return out


def probe_manifest(cfg: Config, delta: float | None = None) -> dict:
    """``{probe_id: kwargs}`` from ``[probe:<id>]`` sections, in file order."""
    manifest = {}
    for section in cfg.parser.sections():
        if not section.startswith("probe:"):
            continue
        pid = section.split(":", 1)[1].strip()
        if pid not in PROBES:
            raise cfg.error(section, None, f"unknown probe; known: {', '.join(PROBES)}")
        params = inspect.signature(PROBES[pid]).parameters
        kwargs = {}
        for key in cfg.parser.options(section):
            if key not in params:
                raise cfg.error(section, key, "unknown parameter for this probe")
            vals = _value(cfg.get(section, key))
            default = params[key].default
            if isinstance(default, tuple):
                kwargs[key] = tuple(vals)
            elif len(vals) == 1 and isinstance(vals[0], float):
                kwargs[key] = vals[0]
            else:
                raise cfg.error(section, key, "expected a single number")
        if delta is not None and "delta" in params:
            kwargs["delta"] = delta
        manifest[pid] = kwargs
    if not manifest:
        raise ConfigError(f"{cfg.path}: no [probe:<id>] sections")
    return manifest


def default_manifest() -> Config:
    return Config(DEFAULT_MANIFEST, "<default manifest>")

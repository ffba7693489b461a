"""``key = value`` configuration files for the experiment runner."""
from dataclasses import dataclass, fields, replace
import math

from .quadrature import QuadratureConfig


class ConfigError(ValueError):
    pass


def _floats(text):
    return tuple(float(x) for x in text.split(",") if x.strip())


def _ints(text):
    return tuple(int(x) for x in text.split(",") if x.strip())


@dataclass(frozen=True)
class Config:
    # quadrature
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_depth: int = 40
    theta_grid: int = 1024
    divergence_threshold: float = 1e-3
    seed: int = 20240611
    # zero sequences (None: per-experiment default)
    n_zeros: int = None
    rule: str = None
    gpv_samples: int = 256
    gamma_rad: int = 16
    gamma_ang: int = 64
    eval_extra: int = 20
    # frostman
    frostman_grid: int = 4096
    brv_zeros: int = 25
    candidate_zeros: int = 16
    candidate_thetas: int = 16
    # domains
    domain: str = None
    grid_n: int = 2048
    n_slits: int = 30
    t_max: float = 1e8
    spiral_n_min: int = 10
    spiral_n_max: int = 1000
    hp_samples: int = 100000
    j_points: tuple = (2, 5, 10, 20)
    exp_samples: int = 9
    comb_samples: int = 200
    diameter_samples: int = 8
    # identities
    identity_pairs: int = 100
    identity_degree: int = 8
    spower_max: int = 20
    # classes
    lacunary_k: int = 10
    h1_terms: int = 19
    h1_m: int = 1 << 20
    h1_j: tuple = (5, 14)
    ui_eps: tuple = (0.2, 0.1, 0.05)
    ui_thetas: int = 32
    probe_n: int = 12
    probe_thetas: int = 32

    def __post_init__(self):
        QuadratureConfig(self.abs_tol, self.rel_tol, self.max_depth, self.divergence_threshold,
                         self.theta_grid)
        if self.theta_grid & (self.theta_grid - 1) or self.frostman_grid & (self.frostman_grid - 1):
            raise ValueError("theta grids must be powers of two")
        if self.domain not in (None, "comb", "spiral_reciprocal", "spiral_exponential"):
            raise ValueError(f"unknown domain {self.domain!r}")
        if self.grid_n < 64:
            raise ValueError("grid_n must be >= 64")
        if not math.isfinite(self.t_max) or self.t_max <= 1:
            raise ValueError("t_max must be finite and > 1")

    @property
    def quadrature(self):
        return QuadratureConfig(self.abs_tol, self.rel_tol, self.max_depth,
                                self.divergence_threshold, self.theta_grid)

    def with_defaults(self, **defaults):
        """Fill keys left as None with experiment defaults."""
        return replace(self, **{k: v for k, v in defaults.items() if getattr(self, k) is None})

    def echo(self):
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = list(v) if isinstance(v, tuple) else v
        return out


_PARSERS = {}
for _f in fields(Config):
    default = _f.default
    if isinstance(default, tuple):
        _PARSERS[_f.name] = _floats if default and isinstance(default[0], float) else _ints
    elif isinstance(default, bool):
        _PARSERS[_f.name] = lambda s: s.lower() in ("1", "true", "yes")
    elif isinstance(default, int):
        _PARSERS[_f.name] = int
    elif isinstance(default, float):
        _PARSERS[_f.name] = float
    else:
        _PARSERS[_f.name] = str
_PARSERS["n_zeros"] = int


def parse_config(text, source="<config>"):
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (p.strip() for p in line.split("=", 1))
        if key not in _PARSERS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = _PARSERS[key](value)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {value!r}") from None
    try:
        return Config(**values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_config(path):
    if path is None:
        return Config()
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, str(path))

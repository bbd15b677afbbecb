"""Cell-based Monte Carlo of corrosion cracking on a bridge deck.

The deck is divided into cells holding one bar each. Every cell draws its
chloride and corrosion parameters from independent truncated normals and is
counted as damaged once ``t1 + t2`` has elapsed. Each cell has its own random
substream (spawned from the seed by cell index), and each parameter its own
substream within the cell, so results do not depend on evaluation order or
on the number of worker threads.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import chloride
from .errors import DomainError, SamplingError

PARAMETERS = ("C0", "Cth", "Dca", "cover", "i_corr")
MAX_REJECTIONS = 10_000


@dataclass(frozen=True)
class NormalSpec:
    mean: float
    sd: float = 0.0
    lower: float = 0.0
    upper: float = math.inf

    def __post_init__(self):
        if self.sd < 0:
            raise DomainError("standard deviation must be non-negative")
        if not self.lower <= self.upper:
            raise DomainError("truncation bounds are reversed")


def _default_params():
    return {
        "C0": NormalSpec(3.5, 0.0, 0.0),
        "Cth": NormalSpec(1.2, 0.0, 0.0),
        "Dca": NormalSpec(2e-8, 0.0, 0.0),
        "cover": NormalSpec(50.0, 0.0, 0.0),
        "i_corr": NormalSpec(1.0, 0.0, 0.0),
    }


@dataclass(frozen=True)
class DeckSimConfig:
    """Simulation settings.

    ``params`` maps each of ``C0, Cth, Dca, cover, i_corr`` to a
    :class:`NormalSpec` in canonical units. ``t2_model`` is ``"morinaga"``,
    ``"bazant"`` (needs ``delta_D`` in mm) or ``"wang"`` (needs ``f_cu``).
    """

    cells: int = 1000
    params: dict = field(default_factory=_default_params)
    bar_diameter: float = 16.0  # mm
    t2_model: str = "morinaga"
    delta_D: float = 0.05
    f_cu: float = 3.0
    target: float = 0.25
    dt: float = 0.25
    horizon: float = 100.0
    seed: int = 0

    def __post_init__(self):
        if self.cells < 1:
            raise DomainError("need at least one cell")
        if not 0 < self.target <= 1:
            raise DomainError("target fraction must lie in (0, 1]")
        if not (self.dt > 0 and self.horizon > 0):
            raise DomainError("time step and horizon must be positive")
        missing = set(PARAMETERS) - set(self.params)
        if missing:
            raise DomainError(f"missing parameter distributions: {sorted(missing)}")
        if self.t2_model not in ("morinaga", "bazant", "wang"):
            raise DomainError(f"unsupported t2 model {self.t2_model!r}")

    @classmethod
    def from_dict(cls, d: dict) -> "DeckSimConfig":
        d = dict(d)
        params = _default_params()
        for k, v in d.pop("params", {}).items():
            if k not in PARAMETERS:
                raise DomainError(f"unknown parameter {k!r}")
            params[k] = NormalSpec(**v)
        known = set(cls.__dataclass_fields__) - {"params"}
        extra = set(d) - known
        if extra:
            raise DomainError(f"unknown config keys {sorted(extra)}")
        return cls(params=params, **d)


def truncated_normal(rng: np.random.Generator, spec: NormalSpec) -> float:
    """One draw from ``spec`` by rejection."""
    if spec.sd == 0:
        if not spec.lower <= spec.mean <= spec.upper:
            raise SamplingError(f"fixed value {spec.mean} lies outside [{spec.lower}, {spec.upper}]")
        return float(spec.mean)
    for _ in range(MAX_REJECTIONS):
        v = rng.normal(spec.mean, spec.sd)
        if spec.lower <= v <= spec.upper:
            return float(v)
    raise SamplingError(f"no draw inside [{spec.lower}, {spec.upper}] after {MAX_REJECTIONS} tries")


def _cell_damage_time(cfg: DeckSimConfig, seq: np.random.SeedSequence) -> float:
    streams = seq.spawn(len(PARAMETERS))
    v = {
        name: truncated_normal(np.random.default_rng(s), cfg.params[name])
        for name, s in zip(PARAMETERS, streams)
    }
    if v["C0"] <= 0 or v["Cth"] <= 0 or v["Dca"] <= 0 or v["cover"] <= 0:
        raise SamplingError("sampled C0, Cth, Dca and cover must be positive; tighten the lower bounds")
    env = chloride.ChlorideEnvironment(v["C0"], v["Cth"], v["Dca"], v["cover"])
    t1 = chloride.t1_fick(env)
    if math.isinf(t1):
        return math.inf
    geom = chloride.RebarGeometry(cfg.bar_diameter)
    kin = chloride.CorrosionKinetics(v["i_corr"])
    if cfg.t2_model == "morinaga":
        t2 = chloride.t2_morinaga(geom, v["cover"], kin)
    elif cfg.t2_model == "bazant":
        t2 = chloride.t2_bazant(geom, kin, cfg.delta_D)
    else:
        t2 = chloride.t2_wang(geom, v["cover"], cfg.f_cu, kin)
    return t1 + t2


def damage_times(cfg: DeckSimConfig, workers: int = 1) -> np.ndarray:
    """Per-cell ``t1 + t2`` in years (``inf`` where cracking never occurs)."""
    seqs = np.random.SeedSequence(cfg.seed).spawn(cfg.cells)
    if workers <= 1:
        return np.array([_cell_damage_time(cfg, s) for s in seqs])
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.array(list(pool.map(lambda s: _cell_damage_time(cfg, s), seqs)))


@dataclass(frozen=True)
class DamageSeries:
    t: np.ndarray
    fraction: np.ndarray

    def to_csv(self) -> str:
        lines = ["t,fraction"]
        lines += [f"{a!r},{b!r}" for a, b in zip(self.t.tolist(), self.fraction.tolist())]
        return "\n".join(lines) + "\n"


def simulate_deck(cfg: DeckSimConfig, workers: int = 1) -> DamageSeries:
    """Damaged-cell fraction on the grid ``0, dt, ..., horizon``."""
    times = np.sort(damage_times(cfg, workers))
    n_steps = int(math.floor(cfg.horizon / cfg.dt + 1e-9))
    t = np.arange(n_steps + 1) * cfg.dt
    frac = np.searchsorted(times, t, side="right") / cfg.cells
    return DamageSeries(t, frac)


def time_to_fraction(series: DamageSeries, target: float) -> float:
    """First time the damaged fraction reaches ``target``, interpolated within the step.

    Returns ``math.inf`` when the series never gets there.
    """
    t, f = series.t, series.fraction
    if target <= 0:
        return 0.0
    hit = np.flatnonzero(f >= target)
    if hit.size == 0:
        return math.inf
    k = int(hit[0])
    if k == 0:
        return float(t[0])
    f0, f1 = f[k - 1], f[k]
    return float(t[k - 1] + (target - f0) / (f1 - f0) * (t[k] - t[k - 1]))

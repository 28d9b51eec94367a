"""Deterministic synthetic instance generator.

Every parameter family draws from its own seeded substream, so changing how
many values one family consumes never perturbs another, and the same seed
always yields byte-identical instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core import (
    TOL,
    AircraftSpec,
    HangarConfig,
    Instance,
    Kind,
    rects_separated,
)

#: (width, length) catalog of aircraft footprints, small to large.
DEFAULT_MODELS: tuple[tuple[float, float], ...] = (
    (24.0, 22.0), (26.0, 24.0), (28.0, 26.0), (30.0, 30.0),
    (34.0, 34.0), (36.0, 38.0), (40.0, 42.0), (45.0, 48.0),
)

_STREAMS = ("model", "eta", "service", "buffer_time", "vip", "p_rej", "current")


@dataclass(frozen=True)
class GeneratorConfig:
    n_future: int
    n_current: int = 0
    seed: int = 0
    hangar: HangarConfig = field(default_factory=HangarConfig)
    models: tuple[tuple[float, float], ...] = DEFAULT_MODELS
    vip_share: float = 0.2
    eta_span_per_aircraft: float = 80.0
    service_range: tuple[float, float] = (100.0, 400.0)
    buffer_time_range: tuple[float, float] = (24.0, 72.0)
    p_rej_range: tuple[int, int] = (700, 1200)
    p_rej_range_vip: tuple[int, int] = (1500, 2000)
    p_arr: float = 10.0
    p_dep: float = 20.0
    p_arr_vip: float = 30.0
    p_dep_vip: float = 60.0
    congestion: float = 1.0          # <1 compresses the arrival horizon
    rejection_multiplier: float = 1.0


def _rngs(seed: int) -> dict[str, np.random.Generator]:
    return {name: np.random.default_rng(np.random.SeedSequence([seed, k]))
            for k, name in enumerate(_STREAMS)}


def _discrete(u: float, lo: int, hi: int) -> float:
    """Map one uniform draw to an integer in [lo, hi]."""
    return float(lo + min(int(u * (hi - lo + 1)), hi - lo))


def _bottom_left_spot(w: float, l: float, placed: list[AircraftSpec],
                      h: HangarConfig):
    xs = np.arange(h.buffer, h.hw - h.buffer - w + TOL, h.grid_step)
    ys = np.arange(h.buffer, h.hl - h.buffer - l + TOL, h.grid_step)
    for y in ys:
        for x in xs:
            if all(rects_separated(x, y, w, l, p.x_init, p.y_init,
                                   p.width, p.length, h.buffer)
                   for p in placed):
                return float(x), float(y)
    return None


def _try_pack(idx: list[int], models, h: HangarConfig):
    placed: list[AircraftSpec] = []
    spots = []
    for k in idx:
        w, l = models[k]
        spot = _bottom_left_spot(w, l, placed, h)
        if spot is None:
            return None
        spots.append((w, l, spot))
        placed.append(AircraftSpec(
            id=f"tmp{len(placed)}", kind=Kind.CURRENT, width=w, length=l,
            eta=0.0, etd=1.0, service=0.5, x_init=spot[0], y_init=spot[1]))
    return spots


def _place_current(model_idx: list[int], models, hangar: HangarConfig,
                   services: list[float], buffers: list[float]) -> list[AircraftSpec]:
    """Greedy bottom-left packing of the aircraft already in the hangar.

    A spot is admissible when it is in bounds and buffer-separated from every
    placed aircraft; aircraft stacked behind others in the same lane are
    allowed (the solvers order their departures top-first).  When the drawn
    models do not all fit, the largest is repeatedly downsized to the next
    smaller catalog model until the whole set packs, so the requested count is
    met whenever geometrically possible.
    """
    h = hangar
    by_area = sorted(range(len(models)), key=lambda k: models[k][0] * models[k][1])
    rank = {k: r for r, k in enumerate(by_area)}
    idx = list(model_idx)
    while idx:
        spots = _try_pack(idx, models, h)
        if spots is not None:
            return [AircraftSpec(
                id=f"c{i + 1:02d}", kind=Kind.CURRENT, width=w, length=l,
                eta=0.0, etd=services[i] + buffers[i], service=services[i],
                p_dep=20.0, x_init=spot[0], y_init=spot[1])
                for i, (w, l, spot) in enumerate(spots)]
        big = max(range(len(idx)), key=lambda i: rank[idx[i]])
        if rank[idx[big]] == 0:
            idx.pop()  # all at the smallest model; drop the last aircraft
        else:
            idx[big] = by_area[rank[idx[big]] - 1]
    return []


def generate(config: GeneratorConfig) -> Instance:
    """Build one reproducible instance from the seeded substreams."""
    rng = _rngs(config.seed)
    n = config.n_future
    h = config.hangar

    model_idx = rng["model"].integers(0, len(config.models), size=n)
    etas = rng["eta"].uniform(0.0, n * config.eta_span_per_aircraft, size=n)
    services = rng["service"].uniform(*config.service_range, size=n)
    t_buffers = rng["buffer_time"].uniform(*config.buffer_time_range, size=n)
    vips = rng["vip"].random(size=n) < config.vip_share
    p_rej_u = rng["p_rej"].random(size=n)

    if config.congestion != 1.0 and n > 0:
        eta_min = float(np.min(etas))
        etas = eta_min + config.congestion * (etas - eta_min)

    future = []
    for i in range(n):
        w, l = config.models[model_idx[i]]
        vip = bool(vips[i])
        lo, hi = config.p_rej_range_vip if vip else config.p_rej_range
        p_rej = _discrete(p_rej_u[i], lo, hi) * config.rejection_multiplier
        eta = float(etas[i])
        service = float(services[i])
        future.append(AircraftSpec(
            id=f"a{i + 1:02d}", kind=Kind.FUTURE, width=w, length=l,
            eta=eta, etd=eta + service + float(t_buffers[i]), service=service,
            p_rej=p_rej,
            p_arr=config.p_arr_vip if vip else config.p_arr,
            p_dep=config.p_dep_vip if vip else config.p_dep,
            vip=vip))

    current: list[AircraftSpec] = []
    if config.n_current > 0:
        cr = rng["current"]
        idx = cr.integers(0, len(config.models), size=config.n_current)
        c_serv = cr.uniform(*config.service_range, size=config.n_current)
        c_buf = cr.uniform(*config.buffer_time_range, size=config.n_current)
        current = _place_current([int(j) for j in idx], config.models, h,
                                 [float(s) for s in c_serv],
                                 [float(b) for b in c_buf])

    label = f"Inst-{n:02d}-{config.seed:04d}"
    return Instance(hangar=h, current=tuple(current), future=tuple(future),
                    label=label)


def generate_batch(n_future: int, seeds: Sequence[int],
                   n_current: int = 0, **kwargs) -> list[Instance]:
    return [generate(GeneratorConfig(n_future=n_future, n_current=n_current,
                                     seed=s, **kwargs)) for s in seeds]

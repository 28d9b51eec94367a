"""Deterministic constructive heuristic: prioritize, then place one aircraft
at a time on the spatial grid, delaying roll-in in eps_t steps until the delay
cost would exceed the rejection penalty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    TOL,
    AircraftSpec,
    Assignment,
    Instance,
    Kind,
    Provenance,
    Solution,
    intervals_overlap,
    is_above,
    lanes_overlap,
)

#: One committed placement: the aircraft and its (final) assignment.
Committed = tuple[AircraftSpec, Assignment]


@dataclass(frozen=True)
class PlacementCandidate:
    x: float
    y: float
    t_in: float
    t_out: float

    @property
    def score(self) -> float:
        return self.x + self.y


def prioritize(instance: Instance) -> list[str]:
    """Future aircraft ids sorted by (-p_rej, eta, service, id)."""
    return [f.id for f in sorted(instance.future,
                                 key=lambda f: (-f.p_rej, f.eta, f.service, f.id))]


def max_admissible_time(aircraft: AircraftSpec) -> float:
    """Latest roll-in time before rejecting becomes cheaper than delaying."""
    if aircraft.p_arr is None or aircraft.p_arr <= 0:
        return math.inf
    return aircraft.eta + aircraft.p_rej / aircraft.p_arr


def _events(fixed: Sequence[Committed], eps_t: float) -> np.ndarray:
    """Separation-relevant movement times of the committed schedule."""
    ts = []
    for spec, asg in fixed:
        if not asg.accept:
            continue
        if spec.kind is Kind.FUTURE:
            ts.append(asg.roll_in)
        ts.append(asg.roll_out)
    return np.asarray(sorted(ts))


def _separated(t: float, events: np.ndarray, eps_t: float) -> bool:
    if events.size == 0:
        return True
    return float(np.min(np.abs(events - t))) >= eps_t - TOL


def resolve_roll_out(aircraft: AircraftSpec, t_in: float,
                     fixed_schedule: Sequence[Committed],
                     eps_t: float = 0.1) -> float:
    """Smallest time >= t_in + service keeping eps_t separation from every
    committed movement, stepping in eps_t increments."""
    events = _events(fixed_schedule, eps_t)
    base = t_in + aircraft.service
    k = 0
    while not _separated(base + k * eps_t, events, eps_t):
        k += 1
    return base + k * eps_t


def _pair_ok(aircraft: AircraftSpec, x: float, y: float, t_in: float, t_out: float,
             spec_b: AircraftSpec, asg_b: Assignment, buffer: float) -> bool:
    """All pairwise conditions against one committed aircraft: buffered
    non-overlap while co-present and no blocking at any of the four movement
    events of the pair."""
    if not asg_b.accept:
        return True
    in_b, out_b = asg_b.roll_in, asg_b.roll_out
    co_present = intervals_overlap((t_in, t_out), (in_b, out_b))
    lane = lanes_overlap(x, aircraft.width, asg_b.x, spec_b.width, buffer)
    if co_present:
        y_sep = (y >= asg_b.y + spec_b.length + buffer - TOL
                 or asg_b.y >= y + aircraft.length + buffer - TOL)
        if not y_sep and lane:
            return False
    if lane:
        b_above = is_above(asg_b.y, spec_b.length, y, aircraft.length, buffer)
        c_above = is_above(y, aircraft.length, asg_b.y, spec_b.length, buffer)
        # candidate's own entry and exit must not be blocked by b
        if b_above and in_b < t_in - TOL and t_in < out_b - TOL:
            return False
        if b_above and in_b < t_out - TOL and t_out < out_b - TOL:
            return False
        # candidate must not block b's committed entry or exit
        if c_above and t_in < in_b - TOL and in_b < t_out - TOL:
            return False
        if c_above and t_in < out_b - TOL and out_b < t_out - TOL:
            return False
    return True


def is_valid_spot(aircraft: AircraftSpec, x: float, y: float, t_in: float,
                  fixed_schedule: Sequence[Committed], instance: Instance,
                  t_out: Optional[float] = None) -> bool:
    """Scalar reference check for one candidate placement.

    True iff the placement keeps the partial plan feasible: in bounds, buffered
    non-overlap against co-present aircraft, eps_t movement separation, and no
    entry/exit blocking in either direction.
    """
    h = instance.hangar
    if x < h.buffer - TOL or x + aircraft.width > h.hw - h.buffer + TOL:
        return False
    if y < h.buffer - TOL or y + aircraft.length > h.hl - h.buffer + TOL:
        return False
    if t_out is None:
        t_out = resolve_roll_out(aircraft, t_in, fixed_schedule, h.eps_t)
    events = _events(fixed_schedule, h.eps_t)
    if not _separated(t_in, events, h.eps_t):
        return False
    if not _separated(t_out, events, h.eps_t):
        return False
    return all(_pair_ok(aircraft, x, y, t_in, t_out, sb, ab, h.buffer)
               for sb, ab in fixed_schedule)


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    n = int(math.floor((hi - lo) / step + TOL))
    if n < 0:
        return np.asarray([])
    return lo + step * np.arange(n + 1)


def find_best_placement(aircraft: AircraftSpec, t_in: float,
                        fixed_schedule: Sequence[Committed],
                        instance: Instance) -> Optional[PlacementCandidate]:
    """Exhaustive grid scan at roll-in time t_in; returns the valid spot with
    minimal x + y (ties: smaller y, then smaller x), or None."""
    h = instance.hangar
    xs = _grid(h.buffer, h.hw - h.buffer - aircraft.width, h.grid_step)
    ys = _grid(h.buffer, h.hl - h.buffer - aircraft.length, h.grid_step)
    if xs.size == 0 or ys.size == 0:
        return None

    events = _events(fixed_schedule, h.eps_t)
    if not _separated(t_in, events, h.eps_t):
        return None
    t_out = resolve_roll_out(aircraft, t_in, fixed_schedule, h.eps_t)

    valid = np.ones((xs.size, ys.size), dtype=bool)
    X = xs[:, None]
    Y = ys[None, :]
    for spec_b, asg_b in fixed_schedule:
        if not asg_b.accept:
            continue
        in_b, out_b = asg_b.roll_in, asg_b.roll_out
        lane = ((X > asg_b.x - aircraft.width - h.buffer + TOL)
                & (X < asg_b.x + spec_b.width + h.buffer - TOL))
        co_present = intervals_overlap((t_in, t_out), (in_b, out_b))
        if co_present:
            y_overlap = ((Y > asg_b.y - aircraft.length - h.buffer + TOL)
                         & (Y < asg_b.y + spec_b.length + h.buffer - TOL))
            valid &= ~(lane & y_overlap)
        b_above = Y <= asg_b.y - aircraft.length - h.buffer + TOL
        c_above = Y >= asg_b.y + spec_b.length + h.buffer - TOL
        if (in_b < t_in - TOL and t_in < out_b - TOL) or \
           (in_b < t_out - TOL and t_out < out_b - TOL):
            valid &= ~(lane & b_above)
        if (t_in < in_b - TOL and in_b < t_out - TOL) or \
           (t_in < out_b - TOL and out_b < t_out - TOL):
            valid &= ~(lane & c_above)
        if not valid.any():
            return None

    if not valid.any():
        return None
    score = X + Y
    best = np.min(score[valid])
    tie = valid & (np.abs(score - best) < 1e-9)
    yi = np.min(np.where(tie.any(axis=0))[0])
    xi = np.min(np.where(tie[:, yi])[0])
    return PlacementCandidate(float(xs[xi]), float(ys[yi]), t_in, t_out)


def _commit_current(instance: Instance) -> list[Committed]:
    """Pre-commit current aircraft: fixed position, roll-in 0, minimal-shift
    roll-out respecting blocking order (aircraft above in the lane leave
    first) and movement separation."""
    h = instance.hangar
    fixed: list[Committed] = []
    order = sorted(instance.current, key=lambda c: (-c.y_init, c.id))
    for c in order:
        t0 = c.service
        for spec_b, asg_b in fixed:
            if (is_above(asg_b.y, spec_b.length, c.y_init, c.length, h.buffer)
                    and lanes_overlap(c.x_init, c.width, asg_b.x, spec_b.width, h.buffer)):
                t0 = max(t0, asg_b.roll_out + h.eps_t)
        events = _events(fixed, h.eps_t)
        k = 0
        while not _separated(t0 + k * h.eps_t, events, h.eps_t):
            k += 1
        t_out = t0 + k * h.eps_t
        fixed.append((c, Assignment(
            aircraft_id=c.id, accept=True, x=c.x_init, y=c.y_init,
            roll_in=0.0, roll_out=t_out,
            d_arr=0.0, d_dep=max(0.0, t_out - c.etd))))
    return fixed


def solve(instance: Instance) -> Solution:
    """Run the full heuristic; rejection is a normal outcome."""
    h = instance.hangar
    fixed = _commit_current(instance)
    by_id = {f.id: f for f in instance.future}
    assignments: dict[str, Assignment] = {s.id: a for s, a in fixed}

    for fid in prioritize(instance):
        f = by_id[fid]
        t_max = max_admissible_time(f)
        placed = False
        k = 0
        while True:
            t = f.eta + k * h.eps_t
            if t > t_max + TOL:
                break
            cand = find_best_placement(f, t, fixed, instance)
            if cand is not None:
                asg = Assignment(
                    aircraft_id=fid, accept=True, x=cand.x, y=cand.y,
                    roll_in=cand.t_in, roll_out=cand.t_out,
                    d_arr=max(0.0, cand.t_in - f.eta),
                    d_dep=max(0.0, cand.t_out - f.etd))
                fixed.append((f, asg))
                assignments[fid] = asg
                placed = True
                break
            k += 1
        if not placed:
            assignments[fid] = Assignment(aircraft_id=fid, accept=False)

    ordered = tuple(assignments[a.id] for a in instance.all_aircraft())
    return Solution(instance_label=instance.label, assignments=ordered,
                    provenance=Provenance.HEURISTIC)

"""Desk-scale exact oracle.

Depth-first branch and bound over acceptance subsets, event-driven roll-in
candidates, and grid placements, certifying the optimum relative to that
discretization.  Placements are optimized per complete schedule: the pairwise
separation disjunctions are enumerated and each choice reduces to monotone
difference constraints per axis, whose least fixpoint (snapped up to the
spatial grid) is the componentwise-minimal layout.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from . import ach, validator
from .core import (
    TOL,
    AircraftSpec,
    Assignment,
    CostBreakdown,
    Instance,
    Provenance,
    Solution,
    evaluate_cost,
    intervals_overlap,
)


class InstanceTooLarge(Exception):
    """The instance exceeds the documented desk-scale bound (override with
    ``allow_large=True``)."""


class OracleStatus(str, Enum):
    PROVEN_OPTIMAL_ON_GRID = "ProvenOptimalOnGrid"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class OracleConfig:
    grid_step: Optional[float] = None      # falls back to hangar grid_step
    time_grid_step: Optional[float] = None  # None = event-driven candidates
    node_budget: int = 2_000_000
    time_budget: float = 300.0
    allow_large: bool = False

    def __post_init__(self) -> None:
        if self.node_budget <= 0 or self.time_budget <= 0:
            raise ValueError("budgets must be positive")


@dataclass
class OracleResult:
    solution: Solution
    cost: CostBreakdown
    status: OracleStatus
    nodes_explored: int


MAX_FUTURE = 4

# Pairwise separation options: (kind, first, second); a_right_b means the
# first aircraft sits fully right of the second (buffered), a_above_b likewise
# in y.
_RIGHT = "right"
_ABOVE = "above"


class _Budget:
    def __init__(self, config: OracleConfig):
        self.node_budget = config.node_budget
        self.deadline = time.monotonic() + config.time_budget
        self.nodes = 0
        self.exhausted = False

    def tick(self, n: int = 1) -> bool:
        self.nodes += n
        if self.nodes > self.node_budget or time.monotonic() > self.deadline:
            self.exhausted = True
        return self.exhausted


def _snap_up(value: float, lo: float, step: float) -> float:
    k = math.ceil((value - lo) / step - 1e-9)
    return lo + max(0, k) * step


def _events_of(spec: AircraftSpec, t_in: float, t_out: float) -> list[float]:
    if spec.kind.value == "current":
        return [t_out]
    return [t_in, t_out]


def _present(t_in: float, t_out: float, e: float) -> bool:
    return e - t_in > TOL and t_out - e > TOL


def _min_positioning(instance: Instance,
                     free: Sequence[tuple[AircraftSpec, float, float]],
                     fixed: Sequence[tuple[AircraftSpec, Assignment]],
                     budget: _Budget):
    """Minimal sum-of-coordinates grid layout for the accepted future aircraft
    of a complete schedule, or None if spatially infeasible.

    ``free``: (spec, roll_in, roll_out) triples.  ``fixed``: committed current
    aircraft.  Returns (positioning_sum, {id: (x, y)}).
    """
    h = instance.hangar
    step = h.grid_step
    if not free:
        return 0.0, {}
    for spec, _, _ in free:
        if (spec.width > h.hw - 2 * h.buffer + TOL
                or spec.length > h.hl - 2 * h.buffer + TOL):
            return None

    entities = [(spec, t_in, t_out, None) for spec, t_in, t_out in free] + \
               [(spec, asg.roll_in, asg.roll_out, (asg.x, asg.y)) for spec, asg in fixed]

    # Pairs needing a separation choice: co-present with at least one free.
    pairs = []
    for i in range(len(entities)):
        for j in range(i + 1, len(entities)):
            if entities[i][3] is not None and entities[j][3] is not None:
                continue
            if intervals_overlap(entities[i][1:3], entities[j][1:3]):
                pairs.append((i, j))

    def above_ok(upper: int, lower: int) -> bool:
        # upper blocks lower's path: no movement of lower while upper present
        u = entities[upper]
        lo = entities[lower]
        return not any(_present(u[1], u[2], e)
                       for e in _events_of(lo[0], lo[1], lo[2]))

    options_per_pair = []
    for i, j in pairs:
        opts = [(_RIGHT, i, j), (_RIGHT, j, i)]
        if above_ok(i, j):
            opts.append((_ABOVE, i, j))
        if above_ok(j, i):
            opts.append((_ABOVE, j, i))
        if not opts:
            return None
        options_per_pair.append(opts)

    n_free = len(free)
    best = None  # (total, positions tuple)

    for combo in itertools.product(*options_per_pair):
        if budget.tick():
            break
        # Split the chosen relations into per-axis difference constraints.
        lower: dict[tuple[str, int], list] = {}
        upper: dict[tuple[str, int], float] = {}
        feasible = True
        for kind, hi, lo_idx in combo:
            axis = "x" if kind == _RIGHT else "y"
            size = (entities[lo_idx][0].width if axis == "x"
                    else entities[lo_idx][0].length)
            gap = size + h.buffer
            hi_fixed = entities[hi][3]
            lo_fixed = entities[lo_idx][3]
            if hi_fixed is not None and lo_fixed is not None:
                continue
            if lo_fixed is not None:
                base = lo_fixed[0] if axis == "x" else lo_fixed[1]
                lower.setdefault((axis, hi), []).append(("const", base + gap))
            elif hi_fixed is not None:
                # free aircraft must stay below/left of the fixed one
                cap = (hi_fixed[0] if axis == "x" else hi_fixed[1])
                own = (entities[lo_idx][0].width if axis == "x"
                       else entities[lo_idx][0].length)
                key = (axis, lo_idx)
                bound = cap - own - h.buffer
                upper[key] = min(upper.get(key, math.inf), bound)
            else:
                lower.setdefault((axis, hi), []).append(("var", lo_idx, gap))

        pos = {("x", i): h.buffer for i in range(n_free)}
        pos.update({("y", i): h.buffer for i in range(n_free)})

        def wall(axis: str, i: int) -> float:
            spec = entities[i][0]
            if axis == "x":
                return h.hw - h.buffer - spec.width
            return h.hl - h.buffer - spec.length

        changed = True
        passes = 0
        while changed and feasible:
            changed = False
            passes += 1
            if passes > n_free + 2:
                feasible = False  # positive cycle in the chosen relations
                break
            for (axis, i), cons in lower.items():
                req = h.buffer
                for c in cons:
                    if c[0] == "const":
                        req = max(req, c[1])
                    else:
                        req = max(req, pos[(axis, c[1])] + c[2])
                req = _snap_up(req, h.buffer, step)
                if req > pos[(axis, i)] + 1e-9:
                    pos[(axis, i)] = req
                    changed = True
                if req > wall(axis, i) + TOL:
                    feasible = False
                    break
        if not feasible:
            continue
        ok = True
        for (axis, i), cap in upper.items():
            if pos[(axis, i)] > cap + TOL:
                ok = False
                break
        if not ok:
            continue
        for i in range(n_free):
            if pos[("x", i)] > wall("x", i) + TOL or pos[("y", i)] > wall("y", i) + TOL:
                ok = False
                break
        if not ok:
            continue

        total = sum(pos[("x", i)] + pos[("y", i)] for i in range(n_free))
        layout = tuple((pos[("x", i)], pos[("y", i)]) for i in range(n_free))
        cand = (total, layout)
        if best is None or cand < best:
            best = cand

    if best is None:
        return None
    total, layout = best
    return total, {free[i][0].id: layout[i] for i in range(n_free)}


def _time_candidates(spec: AircraftSpec, events: list[float], eps_t: float,
                     t_max: float, grid_step: Optional[float]) -> list[float]:
    if grid_step is not None:
        cands = []
        k = 0
        while True:
            t = spec.eta + k * grid_step
            if t > t_max + TOL:
                break
            cands.append(t)
            k += 1
    else:
        cands = [spec.eta] + [e + eps_t for e in events if e + eps_t > spec.eta - TOL]
    out = []
    for t in sorted(set(round(t, 9) for t in cands)):
        if t > t_max + TOL:
            continue
        if all(abs(t - e) >= eps_t - TOL for e in events):
            out.append(t)
    return out


def solve_exact(instance: Instance, config: Optional[OracleConfig] = None) -> OracleResult:
    config = config or OracleConfig()
    if len(instance.future) > MAX_FUTURE and not config.allow_large:
        raise InstanceTooLarge(
            f"{len(instance.future)} future aircraft (documented bound {MAX_FUTURE}); "
            "pass allow_large=True to override")

    h = instance.hangar
    if config.grid_step is not None and config.grid_step != h.grid_step:
        from dataclasses import replace
        instance = Instance(hangar=replace(h, grid_step=config.grid_step),
                            current=instance.current, future=instance.future,
                            label=instance.label)
        h = instance.hangar

    budget = _Budget(config)
    fixed_current = ach._commit_current(instance)
    current_cost = sum(a.p_dep * asg.d_dep for (a, asg) in fixed_current)
    order = [instance.aircraft(fid) for fid in ach.prioritize(instance)]

    # Fallback incumbent: keep the current aircraft, reject everything else.
    all_reject = _compose(instance, fixed_current, {}, {})
    best = {
        "cost": evaluate_cost(instance, all_reject).total,
        "vector": _vector(instance, all_reject),
        "solution": all_reject,
    }

    def leaf(committed_times: dict[str, tuple[float, float]],
             committed_cost: float) -> None:
        free = [(spec, committed_times[spec.id][0], committed_times[spec.id][1])
                for spec in order if spec.id in committed_times]
        res = _min_positioning(instance, free, fixed_current, budget)
        if res is None:
            return
        pos_sum, layout = res
        total = committed_cost + h.eps_p * pos_sum
        solution = _compose(instance, fixed_current, committed_times, layout)
        vec = _vector(instance, solution)
        if (total < best["cost"] - 1e-9
                or (abs(total - best["cost"]) <= 1e-9 and vec < best["vector"])):
            report = validator.validate(instance, solution)
            if not report.feasible:  # pragma: no cover - search soundness guard
                raise AssertionError("oracle produced infeasible candidate:\n"
                                     + validator.explain(report))
            best["cost"] = total
            best["vector"] = vec
            best["solution"] = solution

    def dfs(idx: int, committed_times: dict[str, tuple[float, float]],
            events: list[float], committed_cost: float) -> None:
        if budget.tick():
            return
        if committed_cost > best["cost"] + TOL:
            return
        if idx == len(order):
            leaf(committed_times, committed_cost)
            return
        spec = order[idx]
        t_max = ach.max_admissible_time(spec)
        sched = fixed_current + [
            (s, Assignment(aircraft_id=s.id, accept=True, roll_in=tin, roll_out=tout))
            for s, (tin, tout) in ((o, committed_times[o.id]) for o in order[:idx]
                                   if o.id in committed_times)]
        for t in _time_candidates(spec, events, h.eps_t, t_max, config.time_grid_step):
            t_out = ach.resolve_roll_out(spec, t, sched, h.eps_t)
            delay_cost = (spec.p_arr * max(0.0, t - spec.eta)
                          + spec.p_dep * max(0.0, t_out - spec.etd))
            committed_times[spec.id] = (t, t_out)
            new_events = events + ([t, t_out] if spec.kind.value == "future" else [t_out])
            dfs(idx + 1, committed_times, new_events, committed_cost + delay_cost)
            del committed_times[spec.id]
            if budget.exhausted:
                return
        dfs(idx + 1, committed_times, events, committed_cost + spec.p_rej)

    initial_events = []
    for s, asg in fixed_current:
        initial_events.append(asg.roll_out)
    dfs(0, {}, initial_events, current_cost)

    status = (OracleStatus.BUDGET_EXHAUSTED if budget.exhausted
              else OracleStatus.PROVEN_OPTIMAL_ON_GRID)
    solution = best["solution"]
    return OracleResult(solution=solution,
                        cost=evaluate_cost(instance, solution),
                        status=status,
                        nodes_explored=budget.nodes)


def _compose(instance: Instance,
             fixed_current: Sequence[tuple[AircraftSpec, Assignment]],
             committed_times: dict[str, tuple[float, float]],
             layout: dict[str, tuple[float, float]]) -> Solution:
    assignments = {asg.aircraft_id: asg for _, asg in fixed_current}
    for f in instance.future:
        if f.id in committed_times and f.id in layout:
            t_in, t_out = committed_times[f.id]
            x, y = layout[f.id]
            assignments[f.id] = Assignment(
                aircraft_id=f.id, accept=True, x=x, y=y,
                roll_in=t_in, roll_out=t_out,
                d_arr=max(0.0, t_in - f.eta), d_dep=max(0.0, t_out - f.etd))
        else:
            assignments[f.id] = Assignment(aircraft_id=f.id, accept=False)
    ordered = tuple(assignments[a.id] for a in instance.all_aircraft())
    return Solution(instance_label=instance.label, assignments=ordered,
                    provenance=Provenance.ORACLE)


def _vector(instance: Instance, solution: Solution):
    by_id = solution.by_id()
    vec = []
    for a in instance.all_aircraft():
        asg = by_id[a.id]
        vec.append((0 if asg.accept else 1, asg.x, asg.y, asg.roll_in, asg.roll_out))
    return tuple(vec)

"""Shared fixture builders and an independent unpruned brute-force optimizer.

The brute force enumerates full candidate cross-products (acceptance x times x
grid positions) and checks feasibility only through the validator, so it shares
no search code with the optimized oracle it cross-checks.
"""

from __future__ import annotations

import itertools
from typing import Optional, Sequence

import pytest

from hangarplan.core import (
    AircraftSpec,
    Assignment,
    HangarConfig,
    Instance,
    Kind,
    Provenance,
    Solution,
    evaluate_cost,
)
from hangarplan import validator


def make_future(aid: str, *, width=24.0, length=22.0, eta=0.0, service=100.0,
                slack=30.0, p_rej=800.0, p_arr=10.0, p_dep=20.0,
                vip=False, etd: Optional[float] = None) -> AircraftSpec:
    if etd is None:
        etd = eta + service + slack
    return AircraftSpec(id=aid, kind=Kind.FUTURE, width=width, length=length,
                        eta=eta, etd=etd, service=service,
                        p_rej=p_rej, p_arr=p_arr, p_dep=p_dep, vip=vip)


def make_current(aid: str, *, width=24.0, length=22.0, x=5.0, y=5.0,
                 service=100.0, slack=30.0, p_dep=20.0,
                 etd: Optional[float] = None) -> AircraftSpec:
    if etd is None:
        etd = service + slack
    return AircraftSpec(id=aid, kind=Kind.CURRENT, width=width, length=length,
                        eta=0.0, etd=etd, service=service, p_dep=p_dep,
                        x_init=x, y_init=y)


def make_instance(future: Sequence[AircraftSpec] = (),
                  current: Sequence[AircraftSpec] = (),
                  hangar: Optional[HangarConfig] = None,
                  label: str = "fixture") -> Instance:
    return Instance(hangar=hangar or HangarConfig(),
                    current=tuple(current), future=tuple(future), label=label)


def manual_solution(instance: Instance, by_id: dict[str, Assignment]) -> Solution:
    """Solution in instance order; unlisted aircraft become rejections."""
    assignments = []
    for a in instance.all_aircraft():
        assignments.append(by_id.get(
            a.id, Assignment(aircraft_id=a.id, accept=False)))
    return Solution(instance_label=instance.label, assignments=tuple(assignments),
                    provenance=Provenance.MANUAL)


def accept(aid: str, x: float, y: float, roll_in: float, roll_out: float,
           eta: float = 0.0, etd: float = 0.0) -> Assignment:
    return Assignment(aircraft_id=aid, accept=True, x=x, y=y,
                      roll_in=roll_in, roll_out=roll_out,
                      d_arr=max(0.0, roll_in - eta),
                      d_dep=max(0.0, roll_out - etd))


#: Small hangar keeping brute-force cross-products tractable.
TINY_HANGAR = HangarConfig(hw=20.0, hl=18.0, buffer=2.0, eps_t=0.1,
                           eps_p=0.001, grid_step=2.0)


def _grid_positions(hangar: HangarConfig, spec: AircraftSpec) -> list[tuple[float, float]]:
    xs, ys = [], []
    x = hangar.buffer
    while x + spec.width <= hangar.hw - hangar.buffer + 1e-9:
        xs.append(x)
        x += hangar.grid_step
    y = hangar.buffer
    while y + spec.length <= hangar.hl - hangar.buffer + 1e-9:
        ys.append(y)
        y += hangar.grid_step
    return [(x, y) for x in xs for y in ys]


def _time_pool(instance: Instance, spec: AircraftSpec) -> list[float]:
    """Generous candidate roll-in times: the aircraft's ETA, small eps_t shifts,
    and every combination of other aircraft's departures plus shifts."""
    eps = instance.hangar.eps_t
    bases = {spec.eta}
    others = [a for a in instance.all_aircraft() if a.id != spec.id]
    for r in range(1, len(others) + 1):
        for combo in itertools.combinations(others, r):
            # possible chained departure time of the combo, with and without
            # waiting for this aircraft's own ETA first
            chain = max(o.eta for o in combo) + sum(o.service for o in combo)
            bases.add(chain)
            bases.add(max(spec.eta, max(o.eta for o in combo))
                      + sum(o.service for o in combo))
    pool = set()
    for b in bases:
        for k in range(4):
            pool.add(round(b + k * eps, 9))
    t_max = spec.eta + spec.p_rej / spec.p_arr if spec.p_arr > 0 else float("inf")
    return sorted(t for t in pool
                  if spec.eta - 1e-9 <= t <= t_max + 1e-9)


def brute_force_optimum(instance: Instance) -> tuple[float, Solution]:
    """Unpruned exhaustive enumeration over the full candidate cross-product;
    feasibility decided solely by the validator.  Only viable for tiny
    hangars and at most two future aircraft."""
    assert len(instance.future) <= 2, "brute force is limited to N<=2"
    h = instance.hangar
    eps = h.eps_t

    current_assignments = {}
    for c in instance.current:
        # current aircraft: fixed spot, depart at first separated slot
        t_out = c.service
        taken = [a.roll_out for a in current_assignments.values()]
        while any(abs(t_out - e) < eps - 1e-9 for e in taken):
            t_out += eps
        current_assignments[c.id] = accept(c.id, c.x_init, c.y_init, 0.0, t_out,
                                           eta=0.0, etd=c.etd)

    best_cost = float("inf")
    best_sol = None
    futures = list(instance.future)
    for mask in itertools.product([False, True], repeat=len(futures)):
        chosen = [f for f, m in zip(futures, mask) if m]
        axes = []
        for f in chosen:
            opts = []
            for t in _time_pool(instance, f):
                for k_out in range(3):
                    t_out = round(t + f.service + k_out * eps, 9)
                    for pos in _grid_positions(h, f):
                        opts.append((t, t_out, pos))
            axes.append(opts)
        for combo in itertools.product(*axes):
            by_id = dict(current_assignments)
            for f, (t, t_out, (x, y)) in zip(chosen, combo):
                by_id[f.id] = accept(f.id, x, y, t, t_out, eta=f.eta, etd=f.etd)
            sol = manual_solution(instance, by_id)
            rep = validator.validate(instance, sol)
            if not rep.feasible:
                continue
            if rep.cost.total < best_cost - 1e-12:
                best_cost = rep.cost.total
                best_sol = sol
    assert best_sol is not None, "brute force found no feasible plan"
    return best_cost, best_sol


@pytest.fixture
def tiny_hangar() -> HangarConfig:
    return TINY_HANGAR


# ---------------------------------------------------------------------------
# Directed infeasibility fixtures: one per violation kind.  Each value is
# (instance, solution); the solution violates exactly the named rule.
# ---------------------------------------------------------------------------

def directed_fixtures():
    from hangarplan.validator import ViolationKind as VK

    fixtures = {}

    # Accepted aircraft parked inside the wall buffer.
    f = make_future("a", eta=0.0, service=100.0)
    inst = make_instance(future=[f])
    fixtures[VK.OUT_OF_BOUNDS] = (inst, manual_solution(inst, {
        "a": accept("a", 2.0, 5.0, 0.0, 100.0, eta=f.eta, etd=f.etd)}))

    # Two co-present aircraft without buffered separation.
    fa = make_future("a", eta=0.0, service=100.0)
    fb = make_future("b", eta=0.0, service=100.0)
    inst = make_instance(future=[fa, fb])
    fixtures[VK.SPATIAL_OVERLAP] = (inst, manual_solution(inst, {
        "a": accept("a", 5.0, 5.0, 0.0, 100.0, eta=fa.eta, etd=fa.etd),
        "b": accept("b", 10.0, 5.0, 0.3, 100.5, eta=fb.eta, etd=fb.etd)}))

    # Stay shorter than the service requirement.
    f = make_future("a", eta=0.0, service=100.0)
    inst = make_instance(future=[f])
    fixtures[VK.SERVICE_TOO_SHORT] = (inst, manual_solution(inst, {
        "a": accept("a", 5.0, 5.0, 0.0, 50.0, eta=f.eta, etd=f.etd)}))

    # Roll-in before the expected arrival.
    f = make_future("a", eta=10.0, service=100.0)
    inst = make_instance(future=[f])
    fixtures[VK.EARLY_ROLL_IN] = (inst, manual_solution(inst, {
        "a": accept("a", 5.0, 5.0, 5.0, 105.0, eta=f.eta, etd=f.etd)}))

    # Two roll-ins closer than the separation slot.
    fa = make_future("a", eta=0.0, service=100.0)
    fb = make_future("b", eta=0.0, service=100.2)
    inst = make_instance(future=[fa, fb])
    fixtures[VK.MOVEMENT_TOO_CLOSE] = (inst, manual_solution(inst, {
        "a": accept("a", 5.0, 5.0, 0.0, 100.0, eta=fa.eta, etd=fa.etd),
        "b": accept("b", 36.0, 5.0, 0.05, 100.25, eta=fb.eta, etd=fb.etd)}))

    # Lower aircraft exits while an upper lane-mate is still parked.
    fa = make_future("a", eta=0.0, service=100.0, slack=0.0)   # ETD 100
    fb = make_future("b", eta=0.0, service=119.8, slack=10.0)
    inst = make_instance(future=[fa, fb])
    fixtures[VK.EXIT_BLOCKED] = (inst, manual_solution(inst, {
        "a": accept("a", 5.0, 5.0, 0.0, 100.0, eta=fa.eta, etd=fa.etd),
        "b": accept("b", 5.0, 32.0, 0.2, 120.0, eta=fb.eta, etd=fb.etd)}))

    # Lower aircraft rolls in underneath a parked upper lane-mate.
    fa = make_future("a", eta=50.0, service=100.0)
    fb = make_future("b", eta=0.0, service=120.0)
    inst = make_instance(future=[fa, fb])
    fixtures[VK.ENTRY_BLOCKED] = (inst, manual_solution(inst, {
        "a": accept("a", 5.0, 5.0, 50.0, 160.0, eta=fa.eta, etd=fa.etd),
        "b": accept("b", 5.0, 32.0, 0.0, 120.0, eta=fb.eta, etd=fb.etd)}))

    # Current aircraft moved away from its fixed initial position.
    c = make_current("c", x=5.0, y=5.0, service=100.0)
    inst = make_instance(current=[c])
    fixtures[VK.CURRENT_STATE_MISMATCH] = (inst, manual_solution(inst, {
        "c": accept("c", 10.0, 5.0, 0.0, 100.0, etd=c.etd)}))

    # Negative movement time.
    f = make_future("a", eta=0.0, service=100.0)
    inst = make_instance(future=[f])
    fixtures[VK.NEGATIVE_TIME] = (inst, manual_solution(inst, {
        "a": accept("a", 5.0, 5.0, -5.0, 95.0, eta=f.eta, etd=f.etd)}))

    return fixtures


#: Constraint-row families that implement each semantic rule.
FAMILY_BY_KIND = {
    "OutOfBounds": {"eq7_xmin", "eq8_xmax", "eq9_ymin", "eq10_ymax"},
    "SpatialOverlap": {"eq13_rel"},
    "ServiceTooShort": {"eq4_servt"},
    "EarlyRollIn": {"eq3_rollin_eta"},
    "MovementTooClose": {"eq14_outin", "eq15_inin", "eq16_inin",
                         "eq15b_outout", "eq16b_outout",
                         "eq16c_inout", "eq16d_inout"},
    "ExitBlocked": {"eq17_exit_block"},
    "EntryBlocked": {"eq18_entry_block"},
    "CurrentStateMismatch": {"fix19_accept", "fix20_xinit",
                             "fix21_yinit", "fix22_rollin"},
    "NegativeTime": {"dom_nonneg"},
}

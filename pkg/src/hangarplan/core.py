"""Shared domain types, geometry helpers, Big-M derivation, and the cost evaluator."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional

#: Absolute comparison tolerance for times (hours) and coordinates (meters).
TOL = 1e-6


class MissingAssignment(Exception):
    """A solution lacks an assignment for some aircraft of the instance."""


class Kind(str, Enum):
    CURRENT = "current"
    FUTURE = "future"


class Provenance(str, Enum):
    HEURISTIC = "heuristic"
    ORACLE = "oracle"
    IMPORTED = "imported"
    MANUAL = "manual"


@dataclass(frozen=True)
class AircraftSpec:
    """Physical footprint, schedule targets, and penalty economics of one aircraft.

    Current aircraft carry a fixed initial position (``x_init``/``y_init``) and
    interpret ``service`` as the remaining service time.  Future aircraft carry
    rejection and arrival-delay penalties instead.
    """

    id: str
    kind: Kind
    width: float
    length: float
    eta: float
    etd: float
    service: float
    p_dep: float = 0.0
    p_rej: Optional[float] = None
    p_arr: Optional[float] = None
    x_init: Optional[float] = None
    y_init: Optional[float] = None
    vip: bool = False

    def __post_init__(self) -> None:
        if self.width <= 0 or self.length <= 0:
            raise ValueError(f"{self.id}: footprint must be positive")
        if self.service <= 0:
            raise ValueError(f"{self.id}: service time must be positive")
        if self.eta < 0:
            raise ValueError(f"{self.id}: eta must be non-negative")
        if self.kind is Kind.CURRENT:
            if self.x_init is None or self.y_init is None:
                raise ValueError(f"{self.id}: current aircraft needs x_init/y_init")
        else:
            if self.p_rej is None or self.p_arr is None:
                raise ValueError(f"{self.id}: future aircraft needs p_rej/p_arr")
            if self.x_init is not None or self.y_init is not None:
                raise ValueError(f"{self.id}: future aircraft must not carry an initial position")


@dataclass(frozen=True)
class HangarConfig:
    """Hangar geometry, safety buffer, and the small model constants."""

    hw: float = 65.0
    hl: float = 60.0
    buffer: float = 5.0
    eps_t: float = 0.1
    eps_p: float = 0.001
    grid_step: float = 1.0

    def __post_init__(self) -> None:
        if self.hw <= 0 or self.hl <= 0:
            raise ValueError("hangar dimensions must be positive")
        if self.buffer < 0:
            raise ValueError("buffer must be non-negative")
        if self.eps_t <= 0:
            raise ValueError("eps_t must be positive")
        if self.eps_p < 0:
            raise ValueError("eps_p must be non-negative")
        if self.grid_step <= 0:
            raise ValueError("grid_step must be positive")


@dataclass(frozen=True)
class Instance:
    """A hangar plus the current (C) and future (F) aircraft sets."""

    hangar: HangarConfig
    current: tuple[AircraftSpec, ...] = ()
    future: tuple[AircraftSpec, ...] = ()
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "current", tuple(self.current))
        object.__setattr__(self, "future", tuple(self.future))
        ids = [a.id for a in self.all_aircraft()]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate aircraft ids")
        for a in self.current:
            if a.kind is not Kind.CURRENT:
                raise ValueError(f"{a.id}: listed under current but kind={a.kind}")
        for a in self.future:
            if a.kind is not Kind.FUTURE:
                raise ValueError(f"{a.id}: listed under future but kind={a.kind}")
        self._check_initial_layout()

    def _check_initial_layout(self) -> None:
        h = self.hangar
        for a in self.current:
            if (a.x_init < h.buffer - TOL or a.x_init + a.width > h.hw - h.buffer + TOL
                    or a.y_init < h.buffer - TOL or a.y_init + a.length > h.hl - h.buffer + TOL):
                raise ValueError(f"{a.id}: initial position violates buffered hangar bounds")
        for i, a in enumerate(self.current):
            for b in self.current[i + 1:]:
                if not (x_separated(a.x_init, a.width, b.x_init, b.width, h.buffer)
                        or x_separated(b.x_init, b.width, a.x_init, a.width, h.buffer)
                        or x_separated(a.y_init, a.length, b.y_init, b.length, h.buffer)
                        or x_separated(b.y_init, b.length, a.y_init, a.length, h.buffer)):
                    raise ValueError(f"{a.id}/{b.id}: initial positions violate buffered separation")

    def all_aircraft(self) -> tuple[AircraftSpec, ...]:
        return self.current + self.future

    def aircraft(self, aircraft_id: str) -> AircraftSpec:
        for a in self.all_aircraft():
            if a.id == aircraft_id:
                return a
        raise KeyError(aircraft_id)


@dataclass(frozen=True)
class Assignment:
    """Per-aircraft decisions: acceptance, placement, and movement times."""

    aircraft_id: str
    accept: bool
    x: float = 0.0
    y: float = 0.0
    roll_in: float = 0.0
    roll_out: float = 0.0
    d_arr: float = 0.0
    d_dep: float = 0.0


@dataclass(frozen=True)
class Solution:
    """A complete plan: one assignment per aircraft of the instance."""

    instance_label: str
    assignments: tuple[Assignment, ...]
    provenance: Provenance = Provenance.MANUAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignments", tuple(self.assignments))
        ids = [a.aircraft_id for a in self.assignments]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate assignments")

    def assignment(self, aircraft_id: str) -> Assignment:
        for a in self.assignments:
            if a.aircraft_id == aircraft_id:
                return a
        raise MissingAssignment(aircraft_id)

    def by_id(self) -> dict[str, Assignment]:
        return {a.aircraft_id: a for a in self.assignments}


@dataclass(frozen=True)
class CostBreakdown:
    """The four objective components and their total."""

    rejection: float
    arrival_delay: float
    departure_delay: float
    positioning: float
    total: float


# ---------------------------------------------------------------------------
# Geometry / interval helpers
# ---------------------------------------------------------------------------

def x_separated(xa: float, wa: float, xb: float, wb: float, buffer: float) -> bool:
    """True iff interval b lies fully below interval a with the buffer, i.e.
    ``xb + wb + buffer <= xa`` within tolerance.  Works for either axis."""
    return xb + wb + buffer <= xa + TOL


def axis_separated(xa: float, wa: float, xb: float, wb: float, buffer: float) -> bool:
    """Buffered separation on one axis, in either direction."""
    return x_separated(xa, wa, xb, wb, buffer) or x_separated(xb, wb, xa, wa, buffer)


def rects_separated(ax: float, ay: float, aw: float, al: float,
                    bx: float, by: float, bw: float, bl: float, buffer: float) -> bool:
    """Buffered separation of two footprints on at least one axis."""
    return (axis_separated(ax, aw, bx, bw, buffer)
            or axis_separated(ay, al, by, bl, buffer))


def lanes_overlap(ax: float, aw: float, bx: float, bw: float, buffer: float) -> bool:
    """True iff the buffered x-extents of two aircraft are not separated in
    either direction, i.e. they share a movement lane to the open front."""
    return not axis_separated(ax, aw, bx, bw, buffer)


def is_above(yb: float, lb: float, ya: float, la: float, buffer: float) -> bool:
    """True iff aircraft b (at yb, length lb) sits fully above aircraft a with
    the buffer: ``yb >= ya + la + buffer``."""
    return yb >= ya + la + buffer - TOL


def intervals_overlap(a: tuple[float, float], b: tuple[float, float]) -> bool:
    """Open-interval overlap on a set of positive measure."""
    return a[0] < b[1] - TOL and b[0] < a[1] - TOL


def presence_interval(assignment: Assignment) -> Optional[tuple[float, float]]:
    """The (roll_in, roll_out) occupancy interval, or None for rejected aircraft."""
    if not assignment.accept:
        return None
    return (assignment.roll_in, assignment.roll_out)


# ---------------------------------------------------------------------------
# Big-M derivation and cost evaluation
# ---------------------------------------------------------------------------

def derive_big_m(instance: Instance) -> tuple[float, float, float]:
    """(M_T, M_X, M_Y): the time constant is the latest future arrival plus the
    sum of all service times; the distance constants are the hangar sides."""
    max_eta = max((f.eta for f in instance.future), default=0.0)
    m_t = max_eta + sum(a.service for a in instance.all_aircraft())
    return m_t, instance.hangar.hw, instance.hangar.hl


def evaluate_cost(instance: Instance, solution: Solution) -> CostBreakdown:
    """Total operational cost of a solution.

    Delays are recomputed from roll-in/out versus ETA/ETD, never read from the
    assignment, so the cost is well defined for imported or hand-built plans.
    Rejected aircraft contribute only their rejection penalty.
    """
    by_id = solution.by_id()
    for a in instance.all_aircraft():
        if a.id not in by_id:
            raise MissingAssignment(a.id)

    rejection = 0.0
    arrival = 0.0
    departure = 0.0
    positioning = 0.0
    eps_p = instance.hangar.eps_p

    for f in instance.future:
        asg = by_id[f.id]
        if not asg.accept:
            rejection += f.p_rej
            continue
        arrival += f.p_arr * max(0.0, asg.roll_in - f.eta)
        positioning += eps_p * (asg.x + asg.y)
    for a in instance.all_aircraft():
        asg = by_id[a.id]
        if asg.accept:
            departure += a.p_dep * max(0.0, asg.roll_out - a.etd)

    total = rejection + arrival + departure + positioning
    return CostBreakdown(rejection, arrival, departure, positioning, total)

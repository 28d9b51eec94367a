"""Constructive heuristic: prioritization, placement scan, time stepping,
and feasibility of its output."""

import math

import pytest

from hangarplan import ach, instgen, validator
from hangarplan.core import Assignment, HangarConfig, Kind, Provenance, evaluate_cost

from conftest import accept, make_current, make_future, make_instance


class TestPrioritize:
    def test_rejection_penalty_dominates(self):
        inst = make_instance(future=[
            make_future("a", p_rej=700.0, eta=0.0),
            make_future("b", p_rej=900.0, eta=50.0)])
        assert ach.prioritize(inst) == ["b", "a"]

    def test_eta_breaks_penalty_ties(self):
        inst = make_instance(future=[
            make_future("a", p_rej=800.0, eta=50.0),
            make_future("b", p_rej=800.0, eta=10.0)])
        assert ach.prioritize(inst) == ["b", "a"]

    def test_service_then_id_break_remaining_ties(self):
        inst = make_instance(future=[
            make_future("b", p_rej=800.0, eta=0.0, service=100.0),
            make_future("a", p_rej=800.0, eta=0.0, service=100.0),
            make_future("c", p_rej=800.0, eta=0.0, service=90.0)])
        assert ach.prioritize(inst) == ["c", "a", "b"]


class TestMaxAdmissibleTime:
    def test_break_even_formula(self):
        f = make_future("a", eta=20.0, p_rej=800.0, p_arr=10.0)
        assert ach.max_admissible_time(f) == pytest.approx(100.0)

    def test_zero_arrival_penalty_means_unbounded(self):
        f = make_future("a", p_arr=0.0)
        assert math.isinf(ach.max_admissible_time(f))


class TestResolveRollOut:
    def test_unconstrained(self):
        f = make_future("a", service=100.0)
        assert ach.resolve_roll_out(f, 10.0, []) == pytest.approx(110.0)

    def test_shifts_off_existing_event(self):
        f = make_future("a", service=100.0)
        blocker = make_future("b", service=110.0)
        fixed = [(blocker, accept("b", 40.0, 5.0, 0.0, 110.0))]
        # plain roll-out would land exactly on b's event; one slot later
        assert ach.resolve_roll_out(f, 10.0, fixed) == pytest.approx(110.1)

    def test_multiple_shifts(self):
        f = make_future("a", service=100.0)
        fixed = [(make_future("b", service=110.0), accept("b", 40.0, 5.0, 0.0, 110.0)),
                 (make_future("c", service=110.1), accept("c", 40.0, 33.0, 0.0, 110.1))]
        assert ach.resolve_roll_out(f, 10.0, fixed) == pytest.approx(110.2)


class TestValidSpot:
    def setup_method(self):
        self.inst = make_instance(
            future=[make_future("a"), make_future("b")])
        self.f = self.inst.aircraft("a")

    def test_in_bounds_empty_hangar(self):
        assert ach.is_valid_spot(self.f, 5.0, 5.0, 0.0, [], self.inst)

    def test_wall_buffer_enforced(self):
        assert not ach.is_valid_spot(self.f, 4.0, 5.0, 0.0, [], self.inst)
        assert not ach.is_valid_spot(self.f, 5.0, 40.0, 0.0, [], self.inst)

    def test_copresent_overlap_rejected(self):
        fixed = [(self.inst.aircraft("b"),
                  accept("b", 5.0, 5.0, 0.0, 100.0))]
        assert not ach.is_valid_spot(self.f, 10.0, 5.0, 0.2, fixed, self.inst)
        assert ach.is_valid_spot(self.f, 34.0, 5.0, 0.2, fixed, self.inst)

    def test_exit_blocking_checked_for_candidate(self):
        # b below leaves at 100 while the candidate (above) would stay past it
        fixed = [(self.inst.aircraft("b"), accept("b", 5.0, 5.0, 0.2, 100.0))]
        assert not ach.is_valid_spot(self.f, 5.0, 32.0, 0.0, fixed, self.inst)

    def test_blocking_checked_against_candidate(self):
        # candidate below a longer-staying aircraft would trap itself
        fixed = [(self.inst.aircraft("b"), accept("b", 5.0, 32.0, 0.0, 200.0))]
        assert not ach.is_valid_spot(self.f, 5.0, 5.0, 0.2, fixed, self.inst)

    def test_separation_of_roll_in_times(self):
        fixed = [(self.inst.aircraft("b"), accept("b", 36.0, 5.0, 0.0, 100.0))]
        assert not ach.is_valid_spot(self.f, 5.0, 5.0, 0.05, fixed, self.inst)
        assert ach.is_valid_spot(self.f, 5.0, 5.0, 0.1, fixed, self.inst)


class TestFindBestPlacement:
    def test_origin_corner_when_empty(self):
        inst = make_instance(future=[make_future("a")])
        cand = ach.find_best_placement(inst.aircraft("a"), 0.0, [], inst)
        assert (cand.x, cand.y) == (5.0, 5.0)
        assert cand.t_out == pytest.approx(100.0)

    def test_matches_scalar_reference(self):
        # vectorized scan must agree with the scalar spot check on every cell
        inst = make_instance(
            future=[make_future("a"), make_future("b"), make_future("x", width=26.0, length=24.0)])
        fixed = [
            (inst.aircraft("b"), accept("b", 5.0, 5.0, 0.0, 150.0)),
            (inst.aircraft("x"), accept("x", 36.0, 33.0, 0.3, 90.0)),
        ]
        f = inst.aircraft("a")
        t_in = 0.6
        cand = ach.find_best_placement(f, t_in, fixed, inst)
        h = inst.hangar
        best = None
        y = h.buffer
        while y + f.length <= h.hl - h.buffer + 1e-9:
            x = h.buffer
            while x + f.width <= h.hw - h.buffer + 1e-9:
                if ach.is_valid_spot(f, x, y, t_in, fixed, inst):
                    key = (x + y, y, x)
                    if best is None or key < best[0]:
                        best = (key, x, y)
                x += h.grid_step
            y += h.grid_step
        assert best is not None and cand is not None
        assert (cand.x, cand.y) == (best[1], best[2])

    def test_tie_breaks_prefer_smaller_y(self):
        inst = make_instance(future=[make_future("a")])
        cand = ach.find_best_placement(inst.aircraft("a"), 0.0, [], inst)
        # (5, 5) beats any other x+y=10 cell by the y-then-x rule
        assert (cand.x, cand.y) == (5.0, 5.0)

    def test_none_when_hangar_occupied(self):
        inst = make_instance(future=[make_future("a"),
                                     make_future("big", width=45.0, length=48.0)])
        fixed = [(inst.aircraft("big"), accept("big", 5.0, 5.0, 0.0, 300.0))]
        assert ach.find_best_placement(inst.aircraft("a"), 0.2, fixed, inst) is None


class TestCommitCurrent:
    def test_departure_order_top_first(self):
        # two stacked current aircraft: the upper must leave before the lower
        lower = make_current("lo", x=5.0, y=5.0, service=200.0)
        upper = make_current("up", x=5.0, y=32.0, service=100.0)
        inst = make_instance(current=[lower, upper])
        fixed = dict((s.id, a) for s, a in ach._commit_current(inst))
        assert fixed["up"].roll_out == pytest.approx(100.0)
        assert fixed["lo"].roll_out == pytest.approx(200.0)

    def test_lower_waits_for_upper(self):
        lower = make_current("lo", x=5.0, y=5.0, service=100.0)
        upper = make_current("up", x=5.0, y=32.0, service=200.0)
        inst = make_instance(current=[lower, upper])
        fixed = dict((s.id, a) for s, a in ach._commit_current(inst))
        assert fixed["up"].roll_out == pytest.approx(200.0)
        assert fixed["lo"].roll_out == pytest.approx(200.1)


class TestSolve:
    def test_empty_instance(self):
        inst = make_instance()
        sol = ach.solve(inst)
        assert sol.assignments == ()
        assert sol.provenance is Provenance.HEURISTIC

    def test_single_aircraft_at_eta_and_origin(self):
        f = make_future("a", eta=12.0, service=100.0)
        inst = make_instance(future=[f])
        sol = ach.solve(inst)
        asg = sol.assignment("a")
        assert asg.accept
        assert (asg.x, asg.y) == (5.0, 5.0)
        assert asg.roll_in == pytest.approx(12.0)
        assert asg.roll_out == pytest.approx(112.0)

    def test_rejects_when_delay_exceeds_break_even(self):
        # a giant current aircraft occupies the hangar past t_max
        c = make_current("c", width=45.0, length=48.0, x=5.0, y=5.0,
                         service=300.0)
        f = make_future("a", eta=0.0, service=100.0, p_rej=800.0, p_arr=10.0)
        inst = make_instance(future=[f], current=[c])
        sol = ach.solve(inst)
        assert not sol.assignment("a").accept

    def test_accepts_with_delay_when_worthwhile(self):
        c = make_current("c", width=45.0, length=48.0, x=5.0, y=5.0,
                         service=50.0)
        f = make_future("a", eta=0.0, service=100.0, p_rej=800.0, p_arr=10.0)
        inst = make_instance(future=[f], current=[c])
        sol = ach.solve(inst)
        asg = sol.assignment("a")
        assert asg.accept
        assert asg.roll_in == pytest.approx(50.1)  # right after c departs

    def test_break_even_bound_holds(self):
        for seed in range(10):
            inst = instgen.generate(instgen.GeneratorConfig(n_future=6, seed=seed))
            sol = ach.solve(inst)
            for f in inst.future:
                asg = sol.assignment(f.id)
                if asg.accept:
                    d_arr = max(0.0, asg.roll_in - f.eta)
                    assert f.p_arr * d_arr <= f.p_rej + 1e-6

    def test_output_always_validates(self):
        for seed in range(8):
            inst = instgen.generate(instgen.GeneratorConfig(
                n_future=5, n_current=1, seed=seed))
            sol = ach.solve(inst)
            report = validator.validate(inst, sol)
            assert report.feasible, f"seed {seed}:\n{validator.explain(report)}"

    def test_deterministic(self):
        inst = instgen.generate(instgen.GeneratorConfig(n_future=6, seed=77))
        assert ach.solve(inst) == ach.solve(inst)

    def test_runtime_medium_instance(self):
        import time
        inst = instgen.generate(instgen.GeneratorConfig(n_future=40, seed=1))
        t0 = time.perf_counter()
        sol = ach.solve(inst)
        elapsed = time.perf_counter() - t0
        assert elapsed < 60.0
        assert validator.validate(inst, sol).feasible

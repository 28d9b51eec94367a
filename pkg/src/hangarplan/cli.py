"""Command-line entry point exposing every workflow: generate, solve
(heuristic and exact), export/import the optimization model, validate,
render, and compare.

Exit codes: 0 ok, 2 infeasible, 3 parse error, 4 budget exhausted.
"""

from __future__ import annotations

import csv
import io as _io
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import click

from . import ach, exact, instgen, milp, report, validator
from .core import HangarConfig, evaluate_cost
from .io import ParseError, load_instance, load_solution, save_instance, save_solution

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_PARSE = 3
EXIT_BUDGET = 4


@dataclass(frozen=True)
class CompareRow:
    label: str
    ach_cost: Optional[float]
    oracle_cost: Optional[float]
    gap_pct: Optional[float]
    ach_time: Optional[float]
    oracle_time: Optional[float]
    error: str = ""


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_instance(path: str):
    try:
        return load_instance(path)
    except (ParseError, ValueError, OSError, json.JSONDecodeError) as exc:
        _fail(EXIT_PARSE, f"cannot read instance {path}: {exc}")


def _load_solution(path: str):
    try:
        return load_solution(path)
    except (ParseError, ValueError, OSError, json.JSONDecodeError) as exc:
        _fail(EXIT_PARSE, f"cannot read solution {path}: {exc}")


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="JSON file with per-subcommand option defaults "
                                 "(flags take precedence).")
@click.pass_context
def main(ctx: click.Context, config_path: Optional[str]) -> None:
    """Hangar scheduling and layout toolkit."""
    if config_path:
        try:
            ctx.default_map = json.loads(Path(config_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            _fail(EXIT_PARSE, f"cannot read config {config_path}: {exc}")


@main.command()
@click.option("--n", "n_future", type=int, required=True, help="Number of future requests.")
@click.option("--seed", type=int, required=True)
@click.option("--congestion", type=float, default=1.0, show_default=True,
              help="Arrival-horizon compression factor (<1 compresses).")
@click.option("--high-rejection", is_flag=True,
              help="Multiply every rejection penalty by 10.")
@click.option("--n-current", type=int, default=0, show_default=True)
@click.option("-o", "out", type=click.Path(dir_okay=False), required=True)
def gen(n_future: int, seed: int, congestion: float, high_rejection: bool,
        n_current: int, out: str) -> None:
    """Generate a reproducible instance file."""
    config = instgen.GeneratorConfig(
        n_future=n_future, n_current=n_current, seed=seed,
        congestion=congestion,
        rejection_multiplier=10.0 if high_rejection else 1.0)
    instance = instgen.generate(config)
    save_instance(instance, out)
    click.echo(f"wrote {out} ({instance.label}: {len(instance.future)} future, "
               f"{len(instance.current)} current)")


@main.command(name="solve-ach")
@click.option("-i", "instance_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-o", "out", type=click.Path(dir_okay=False), required=True)
@click.option("--grid-step", type=float, default=None, help="Override spatial grid step (m).")
def solve_ach(instance_path: str, out: str, grid_step: Optional[float]) -> None:
    """Solve with the constructive heuristic."""
    instance = _load_instance(instance_path)
    if grid_step is not None:
        from dataclasses import replace
        instance = replace(instance, hangar=replace(instance.hangar, grid_step=grid_step))
    solution = ach.solve(instance)
    save_solution(solution, out)
    cost = evaluate_cost(instance, solution)
    click.echo(f"wrote {out} (total cost {cost.total:.6g})")


@main.command(name="solve-exact")
@click.option("-i", "instance_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-o", "out", type=click.Path(dir_okay=False), required=True)
@click.option("--node-budget", type=int, default=2_000_000, show_default=True)
@click.option("--time-budget", type=float, default=300.0, show_default=True)
@click.option("--allow-large", is_flag=True, help="Lift the instance-size guard.")
def solve_exact(instance_path: str, out: str, node_budget: int,
                time_budget: float, allow_large: bool) -> None:
    """Solve to grid-certified optimality (tiny instances only)."""
    instance = _load_instance(instance_path)
    config = exact.OracleConfig(node_budget=node_budget, time_budget=time_budget,
                                allow_large=allow_large)
    try:
        result = exact.solve_exact(instance, config)
    except exact.InstanceTooLarge as exc:
        _fail(EXIT_PARSE, str(exc))
    save_solution(result.solution, out)
    click.echo(f"wrote {out} (status {result.status.value}, "
               f"cost {result.cost.total:.6g}, nodes {result.nodes_explored})")
    if result.status is exact.OracleStatus.BUDGET_EXHAUSTED:
        sys.exit(EXIT_BUDGET)


@main.command(name="export-milp")
@click.option("-i", "instance_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-o", "out", type=click.Path(dir_okay=False), required=True)
def export_milp(instance_path: str, out: str) -> None:
    """Export the optimization model in LP text format."""
    instance = _load_instance(instance_path)
    model = milp.build_model(instance)
    Path(out).write_text(milp.export_lp(model))
    click.echo(f"wrote {out} ({len(model.variables)} variables, {len(model.rows)} rows)")


@main.command(name="import")
@click.option("-i", "instance_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-m", "model_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-p", "point_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-o", "out", type=click.Path(dir_okay=False), required=True)
def import_point(instance_path: str, model_path: str, point_path: str, out: str) -> None:
    """Turn a solver variable dump back into a validated plan."""
    instance = _load_instance(instance_path)
    try:
        model = milp.parse_lp(Path(model_path).read_text())
    except (ParseError, OSError) as exc:
        _fail(EXIT_PARSE, f"cannot read model {model_path}: {exc}")
    try:
        point_text = Path(point_path).read_text()
    except OSError as exc:
        _fail(EXIT_PARSE, f"cannot read point {point_path}: {exc}")
    try:
        solution = milp.import_solution(model, instance, point_text)
    except ParseError as exc:
        _fail(EXIT_PARSE, f"cannot parse point {point_path}: {exc}")
    except milp.InfeasibleImport as exc:
        click.echo(validator.explain(exc.report), err=True)
        _fail(EXIT_INFEASIBLE, "imported point is infeasible")
    save_solution(solution, out)
    click.echo(f"wrote {out}")


@main.command()
@click.option("-i", "instance_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-s", "solution_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def validate(instance_path: str, solution_path: str, as_json: bool) -> None:
    """Check a plan; exit 0 iff feasible."""
    instance = _load_instance(instance_path)
    solution = _load_solution(solution_path)
    rep = validator.validate(instance, solution)
    if as_json:
        click.echo(json.dumps({
            "feasible": rep.feasible,
            "violations": [{"kind": v.kind.value, "aircraft": list(v.aircraft),
                            "detail": v.detail, "magnitude": v.magnitude}
                           for v in rep.violations],
            "cost": {"rejection": rep.cost.rejection,
                     "arrival_delay": rep.cost.arrival_delay,
                     "departure_delay": rep.cost.departure_delay,
                     "positioning": rep.cost.positioning,
                     "total": rep.cost.total},
        }, indent=2))
    else:
        click.echo(validator.explain(rep))
    if not rep.feasible:
        sys.exit(EXIT_INFEASIBLE)


@main.command()
@click.option("-i", "instance_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-s", "solution_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-o", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--html", "with_html", is_flag=True, help="Also write report.html.")
def render(instance_path: str, solution_path: str, out_dir: str, with_html: bool) -> None:
    """Render per-event layout frames (and optionally the HTML report)."""
    instance = _load_instance(instance_path)
    solution = _load_solution(solution_path)
    try:
        paths = report.render_frames(instance, solution, out_dir)
    except report.InfeasibleSolution as exc:
        click.echo(str(exc), err=True)
        _fail(EXIT_INFEASIBLE, "solution is infeasible; nothing rendered")
    click.echo(f"wrote {len(paths)} frame(s) to {out_dir}")
    if with_html:
        cost = evaluate_cost(instance, solution)
        out = report.render_report(instance, solution, cost,
                                   Path(out_dir) / "report.html")
        click.echo(f"wrote {out}")


@main.command()
@click.argument("instances", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "out_csv", type=click.Path(dir_okay=False), required=True)
@click.option("--node-budget", type=int, default=2_000_000, show_default=True)
@click.option("--time-budget", type=float, default=60.0, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Also print rows as JSON.")
def compare(instances: tuple[str, ...], out_csv: str, node_budget: int,
            time_budget: float, as_json: bool) -> None:
    """Solve each instance with heuristic and oracle; write a gap table."""
    rows: list[CompareRow] = []
    for path in instances:
        try:
            instance = load_instance(path)
        except (ParseError, ValueError, OSError, json.JSONDecodeError) as exc:
            rows.append(CompareRow(path, None, None, None, None, None,
                                   error=f"parse: {exc}"))
            continue
        try:
            t0 = time.perf_counter()
            ach_sol = ach.solve(instance)
            ach_time = time.perf_counter() - t0
            ach_cost = evaluate_cost(instance, ach_sol).total
        except Exception as exc:  # noqa: BLE001 - per-row error capture
            rows.append(CompareRow(instance.label, None, None, None, None, None,
                                   error=f"ach: {exc}"))
            continue
        oracle_cost = oracle_time = gap = None
        error = ""
        try:
            t0 = time.perf_counter()
            result = exact.solve_exact(instance, exact.OracleConfig(
                node_budget=node_budget, time_budget=time_budget))
            oracle_time = time.perf_counter() - t0
            if result.status is exact.OracleStatus.PROVEN_OPTIMAL_ON_GRID:
                oracle_cost = result.cost.total
                if oracle_cost > 1e-9:
                    gap = (ach_cost - oracle_cost) / oracle_cost * 100.0
                elif ach_cost <= 1e-9:
                    gap = 0.0
        except exact.InstanceTooLarge as exc:
            error = f"oracle: {exc}"
        except Exception as exc:  # noqa: BLE001 - per-row error capture
            error = f"oracle: {exc}"
        rows.append(CompareRow(instance.label, ach_cost, oracle_cost, gap,
                               ach_time, oracle_time, error=error))

    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["label", "ach_cost", "oracle_cost", "gap_pct",
                     "ach_time", "oracle_time", "error"])
    for r in rows:
        writer.writerow([
            r.label,
            "" if r.ach_cost is None else f"{r.ach_cost:.6f}",
            "" if r.oracle_cost is None else f"{r.oracle_cost:.6f}",
            "" if r.gap_pct is None else f"{r.gap_pct:.2f}",
            "" if r.ach_time is None else f"{r.ach_time:.3f}",
            "" if r.oracle_time is None else f"{r.oracle_time:.3f}",
            r.error,
        ])
    Path(out_csv).write_text(buf.getvalue())
    click.echo(f"wrote {out_csv} ({len(rows)} row(s))")
    if as_json:
        click.echo(json.dumps([r.__dict__ for r in rows], indent=2))


if __name__ == "__main__":
    main()

"""Command-line entry points.

    tracelearn learn --domain D --stage N --out M T1 [T2 ...]
    tracelearn simulate --domain D --problem P --plan F --out T
    tracelearn eval --truth D --model M [--format text|json]
    tracelearn serve --domain D --levels DIR --bind HOST:PORT
    tracelearn export-fama IN OUT

Input errors (missing or malformed files, validation failures) exit with
status 2 and a diagnostic on stderr.
"""

from __future__ import annotations

import json
import resource
import sys
import time
from pathlib import Path

import click

from .errors import TracelearnError
from .evaluation import report as build_report
from .learner import step1_successful, step2_failed, step3_invariants
from .pddl import parse_domain, parse_problem, print_domain, print_problem
from .simulator import parse_plan, run_plan
from .sokoban import compile_level, parse_level
from .trace import parse_trace, parse_trace_structure, write_fama_trace, write_trace


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise click.exceptions.UsageError(f"cannot read {path}: {exc}")


def _peak_rss_mb() -> float:
    # ru_maxrss is KiB on Linux
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0


@click.group()
def main() -> None:
    """Learn and score game mechanic models from play traces."""


@main.command()
@click.option("--domain", "domain_file", required=True, help="ground-truth signature PDDL")
@click.option("--stage", type=click.IntRange(1, 3), default=3, show_default=True)
@click.option("--out", "out_file", required=True, help="output model PDDL path")
@click.argument("traces", nargs=-1, required=True)
def learn(domain_file: str, stage: int, out_file: str, traces: tuple[str, ...]) -> None:
    """Learn an action model from trace files."""
    try:
        domain = parse_domain(_read(domain_file))
        trajectories = [parse_trace(_read(t), domain) for t in traces]
        timings: list[tuple[str, float]] = []

        start = time.perf_counter()
        model = step1_successful(trajectories, domain)
        timings.append(("stage 1 (successful-action analysis)", time.perf_counter() - start))
        if stage >= 2:
            start = time.perf_counter()
            model, records = step2_failed(trajectories, domain, model)
            timings.append(("stage 2 (failed-action analysis)", time.perf_counter() - start))
        if stage >= 3:
            start = time.perf_counter()
            model = step3_invariants(trajectories, domain, model, records)
            timings.append(("stage 3 (invariant extraction)", time.perf_counter() - start))

        Path(out_file).write_text(print_domain(model.to_domain(domain)), encoding="utf-8")
    except TracelearnError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    for name, secs in timings:
        click.echo(f"{name}: {secs:.3f} s")
    click.echo(f"total: {sum(t for _, t in timings):.3f} s")
    click.echo(f"peak memory (max rss): {_peak_rss_mb():.1f} MB")
    click.echo(f"wrote {out_file}")


@main.command()
@click.option("--domain", "domain_file", required=True)
@click.option("--problem", "problem_file", required=True, help="problem PDDL or .sok level")
@click.option("--plan", "plan_file", required=True)
@click.option("--out", "out_file", required=True)
@click.option("--stop-on-failure", is_flag=True, default=False)
def simulate(domain_file: str, problem_file: str, plan_file: str, out_file: str, stop_on_failure: bool) -> None:
    """Execute a plan and record the trajectory."""
    try:
        domain = parse_domain(_read(domain_file))
        text = _read(problem_file)
        if problem_file.endswith(".sok"):
            problem = compile_level(parse_level(text))
        else:
            problem = parse_problem(text, domain)
        plan = parse_plan(_read(plan_file))
        trajectory = run_plan(problem, plan, domain, stop_on_failure=stop_on_failure)
        Path(out_file).write_text(write_trace(trajectory), encoding="utf-8")
    except TracelearnError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    failed = sum(1 for t in trajectory.transitions if not t.ok)
    click.echo(f"wrote {out_file} ({len(trajectory)} transitions, {failed} failed)")


@main.command("eval")
@click.option("--truth", "truth_file", required=True)
@click.option("--model", "model_file", required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def eval_cmd(truth_file: str, model_file: str, fmt: str) -> None:
    """Score a learned model against the ground truth."""
    try:
        truth = parse_domain(_read(truth_file))
        learned = parse_domain(_read(model_file))
        result = build_report(learned, truth)
    except TracelearnError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    if fmt == "json":
        click.echo(json.dumps(result.to_records(), indent=2))
    else:
        click.echo(result.to_text(), nl=False)


@main.command()
@click.option("--domain", "domain_file", required=True)
@click.option("--levels", "levels_dir", required=True)
@click.option("--bind", default="127.0.0.1:8000", show_default=True)
def serve(domain_file: str, levels_dir: str, bind: str) -> None:
    """Serve the interactive play API."""
    import uvicorn

    from .server import create_app

    try:
        domain = parse_domain(_read(domain_file))
        level_files = sorted(Path(levels_dir).glob("*.sok"))
        if not level_files:
            raise click.exceptions.UsageError(f"no .sok levels in {levels_dir}")
        levels = {p.stem: parse_level(p.read_text(encoding="utf-8")) for p in level_files}
        app = create_app(domain, levels)
    except TracelearnError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    host, _, port = bind.partition(":")
    uvicorn.run(app, host=host, port=int(port or "8000"), log_level="warning")


@main.command("export-fama")
@click.argument("trace_in")
@click.argument("trace_out")
@click.option("--domain", "domain_file", default=None, help="also validate against this domain")
def export_fama(trace_in: str, trace_out: str, domain_file: str | None) -> None:
    """Strip failures and write the alternating state/action export."""
    try:
        text = _read(trace_in)
        if domain_file is not None:
            trajectory = parse_trace(text, parse_domain(_read(domain_file)))
        else:
            trajectory = parse_trace_structure(text)
        Path(trace_out).write_text(write_fama_trace(trajectory), encoding="utf-8")
    except TracelearnError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    click.echo(f"wrote {trace_out}")


@main.command("convert-level")
@click.argument("level_file")
@click.argument("problem_out")
def convert_level(level_file: str, problem_out: str) -> None:
    """Compile a .sok level into a problem PDDL file."""
    try:
        problem = compile_level(parse_level(_read(level_file)))
        Path(problem_out).write_text(print_problem(problem), encoding="utf-8")
    except TracelearnError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    click.echo(f"wrote {problem_out}")


if __name__ == "__main__":
    main()

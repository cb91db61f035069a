"""Command-line interface.

One synchronous command per invocation; every command that takes a seed
is bit-reproducible, including across --workers settings. Exit codes:
0 success, 1 input error, 2 verification failure, 3 resource refusal
(oracle space too large or search budget exhausted).
"""

from __future__ import annotations

import csv
import functools
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import domination, game, greedy, instance, oracle, randnet, verify
from .coverage import restrict_x, to_adjacency_text
from .errors import InputError, SearchSpaceError
from .seeds import derive_seed
from .schedule import (
    ProblemInstance,
    format_label_table,
    format_labeling,
    format_score,
    score,
)

SCORE_LETTER = {"detection": "D", "isolation": "I"}


def _fmt(value: float) -> str:
    return format(value, ".6g")


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SearchSpaceError as exc:
            click.echo(f"refused: {exc}", err=True)
            sys.exit(3)
        except InputError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


@click.group()
@click.version_option(package_name="sensched")
def main() -> None:
    """Activation scheduling for battery-limited monitoring devices."""


@main.command("build-coverage")
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), help="Write adjacency text here.")
@handle_errors
def build_coverage_cmd(instance_file: str, out: str | None) -> None:
    """Build the device/target coverage graph and emit its adjacency."""
    spec = instance.load_instance(instance_file)
    g = instance.build_graph(spec)
    cov = instance.build_coverage(spec, g)
    click.echo(
        f"devices: {cov.n_x}  y-elements: {cov.n_y}  "
        f"coverage-edges: {sum(len(a) for a in cov.adj)}"
    )
    _emit(to_adjacency_text(cov), out)


@main.command("schedule")
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--solver", type=click.Choice(["greedy", "blll", "oracle"]), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--iters", type=int, default=20_000, show_default=True)
@click.option("--epsilon", type=float, default=0.015, show_default=True)
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False),
              help="Write the solver trace as CSV.")
@click.option("--out", type=click.Path(dir_okay=False), help="Write the labeling here.")
@handle_errors
def schedule_cmd(
    instance_file: str,
    solver: str,
    seed: int,
    iters: int,
    epsilon: float,
    trace_path: str | None,
    out: str | None,
) -> None:
    """Solve one instance and emit the labeling plus its report."""
    spec = instance.load_instance(instance_file)
    _, inst = instance.build_problem(spec)
    letter = SCORE_LETTER[inst.objective]

    if solver == "oracle":
        result = oracle.exact_optimal_schedule(inst)
        labeling = result.optimal[0]
        click.echo(
            f"{letter} = {format_score(result.best_score)}  "
            f"optima: {len(result.optimal)}{'+' if result.truncated else ''}  "
            f"space: {result.space}"
        )
    elif solver == "greedy":
        g_result = greedy.greedy_schedule(inst, seed=seed if seed else None)
        labeling = g_result.labeling
        report = score(inst, labeling)
        click.echo(f"{letter} = {format_score(report.score)}")
        if trace_path:
            _write_csv(
                trace_path,
                ["iteration", "node", "label", "objective"],
                [
                    [p.iteration, inst.coverage.x_names[p.x], p.label + 1, p.objective]
                    for p in g_result.trace
                ],
            )
    else:
        params = game.BlllParams(epsilon=epsilon, iterations=iters, seed=seed)
        b_result = game.blll_schedule(inst, params)
        labeling = b_result.best_labeling
        denom = inst.k * inst.coverage.n_y
        click.echo(
            f"{letter} = {format_score(Fraction(b_result.best_potential, denom))}  "
            f"(final {format_score(Fraction(b_result.final_potential, denom))}, "
            f"accepted {b_result.accepted}/{iters})"
        )
        if trace_path:
            _write_csv(
                trace_path,
                ["iteration", "phi", "score"],
                [[i, phi, _fmt(phi / denom)] for i, phi in b_result.trace],
            )
    _emit(format_labeling(inst, labeling), out)


@main.command("place-and-schedule")
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--devices", type=int, required=True)
@click.option("--sites", default="all", show_default=True,
              help="`all` or a comma-separated list of candidate node names.")
@click.option("--solver", type=click.Choice(["blll-joint", "two-stage", "both"]),
              required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--iters", type=int, default=20_000, show_default=True)
@click.option("--epsilon", type=float, default=0.015, show_default=True)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False),
              help="Write a (k, D_joint, D_twostage) comparison row.")
@click.option("--out", type=click.Path(dir_okay=False))
@handle_errors
def place_and_schedule_cmd(
    instance_file: str,
    devices: int,
    sites: str,
    solver: str,
    seed: int,
    iters: int,
    epsilon: float,
    csv_path: str | None,
    out: str | None,
) -> None:
    """Choose device sites and schedules, jointly or in two stages."""
    spec = instance.load_instance(instance_file)
    g = instance.build_graph(spec)
    if sites.strip().lower() == "all":
        site_spec = instance.InstanceSpec(
            nodes=spec.nodes, edges=spec.edges, sensors=("all",),
            targets=spec.targets, range_limit=spec.range_limit,
            k=spec.k, sigma=spec.sigma, objective=spec.objective,
        )
    else:
        names = tuple(tok.strip() for tok in sites.split(",") if tok.strip())
        site_spec = instance.InstanceSpec(
            nodes=spec.nodes, edges=spec.edges, sensors=names,
            targets=spec.targets, range_limit=spec.range_limit,
            k=spec.k, sigma=spec.sigma, objective=spec.objective,
        )
    cov = instance.build_coverage(site_spec, g)
    if spec.k is None or spec.sigma is None:
        raise InputError("instance file needs both `k` and `sigma`")
    inst = ProblemInstance(cov, k=spec.k, sigma=spec.sigma)
    if devices > cov.n_x:
        raise InputError(
            f"cannot place {devices} devices on {cov.n_x} candidate sites"
        )
    letter = SCORE_LETTER[inst.objective]
    params = game.BlllParams(epsilon=epsilon, iterations=iters, seed=seed)

    joint_score = twostage_score = None
    blocks: list[str] = []
    if solver in ("blll-joint", "both"):
        joint = game.blll_place_and_schedule(inst, devices, params)
        joint_cov = restrict_x(cov, joint.best_sites)
        joint_inst = ProblemInstance(joint_cov, k=inst.k, sigma=inst.sigma)
        joint_report = score(joint_inst, joint.best_labeling)
        joint_score = joint_report.score
        click.echo(
            f"joint: sites = {', '.join(joint_cov.x_names)}  "
            f"{letter} = {format_score(joint_score)}"
        )
        blocks.append(
            format_label_table(
                joint_cov.x_names,
                joint.best_labeling.by_x,
                [
                    "mode: joint",
                    f"sites: {','.join(joint_cov.x_names)}",
                    f"score: {format_score(joint_score)}",
                ],
            )
        )
    if solver in ("two-stage", "both"):
        picked = game.greedy_max_coverage_placement(cov, devices)
        stage_cov = restrict_x(cov, picked)
        stage_inst = ProblemInstance(stage_cov, k=inst.k, sigma=inst.sigma)
        stage_run = game.blll_schedule(stage_inst, params)
        stage_report = score(stage_inst, stage_run.best_labeling)
        twostage_score = stage_report.score
        click.echo(
            f"two-stage: sites = {', '.join(stage_cov.x_names)}  "
            f"{letter} = {format_score(twostage_score)}"
        )
        blocks.append(
            format_label_table(
                stage_cov.x_names,
                stage_run.best_labeling.by_x,
                [
                    "mode: two-stage",
                    f"sites: {','.join(stage_cov.x_names)}",
                    f"score: {format_score(twostage_score)}",
                ],
            )
        )
    if csv_path and joint_score is not None and twostage_score is not None:
        _write_csv(
            csv_path,
            ["k", "D_joint", "D_twostage"],
            [[inst.k, _fmt(float(joint_score)), _fmt(float(twostage_score))]],
        )
    if out:
        Path(out).write_text("\n".join(blocks))
    elif blocks:
        click.echo("\n".join(blocks), nl=False)


@main.command("lifetime")
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--sigma", type=int, required=True)
@click.option("--mode", type=click.Choice(["disjoint", "config"]), required=True)
@click.option("--k", "k_value", type=int, help="Lifetime to search for (config mode).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--budget", type=int, default=200_000, show_default=True,
              help="Total stochastic-search iterations (config mode).")
@click.option("--out", type=click.Path(dir_okay=False))
@handle_errors
def lifetime_cmd(
    instance_file: str,
    sigma: int,
    mode: str,
    k_value: int | None,
    seed: int,
    budget: int,
    out: str | None,
) -> None:
    """Maximize lifetime under complete coverage of all nodes."""
    spec = instance.load_instance(instance_file)
    g = instance.build_graph(spec)
    if mode == "disjoint":
        dp = domination.greedy_domatic_partition(g, seed=seed if seed else None)
        cfg = domination.config_from_domatic(g, dp, sigma)
        click.echo(
            f"disjoint dominating sets found: {len(dp.sets)}  "
            f"lifetime k = {cfg.k} (sigma = {sigma})"
        )
        text = format_label_table(
            g.names, cfg.labels,
            ["mode: disjoint", f"k: {cfg.k}", f"sigma: {sigma}",
             f"sets: {len(dp.sets)}"],
        )
        _emit(text, out)
        return
    if k_value is None:
        raise InputError("config mode needs --k")
    result = domination.search_config(g, k_value, sigma, budget=budget, seed=seed)
    if result.status == "found":
        click.echo(f"found ({result.method}): {result.detail}")
        text = format_label_table(
            g.names, result.config.labels,
            ["mode: config", f"k: {k_value}", f"sigma: {sigma}",
             f"method: {result.method}"],
        )
        _emit(text, out)
    elif result.status == "nonexistent":
        click.echo(f"nonexistent: {result.detail}")
    else:
        click.echo(f"not found within budget: {result.detail}", err=True)
        sys.exit(3)


@main.command("rand-experiment")
@click.option("--family", type=click.Choice(["geometric", "er"]), required=True)
@click.option("--n", type=int, default=100, show_default=True)
@click.option("--p", type=float, default=0.05, show_default=True, help="ER edge probability.")
@click.option("--area", type=float, default=10.0, show_default=True)
@click.option("--radius", type=float, default=2.0, show_default=True)
@click.option("--torus", is_flag=True, default=False)
@click.option("--k-range", required=True, help="Inclusive range, e.g. 4..12.")
@click.option("--sigma", type=int, required=True)
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="CSV output path.")
@handle_errors
def rand_experiment_cmd(
    family: str,
    n: int,
    p: float,
    area: float,
    radius: float,
    torus: bool,
    k_range: str,
    sigma: int,
    trials: int,
    seed: int,
    workers: int,
    out: str | None,
) -> None:
    """Random-scheduling experiment: closed form vs Monte-Carlo, one row per k."""
    try:
        lo_text, _, hi_text = k_range.partition("..")
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise InputError(f"bad --k-range {k_range!r}, expected a..b") from None
    if lo > hi:
        raise InputError(f"empty k range {k_range!r}")
    if sigma > lo:
        raise InputError(f"sigma ({sigma}) exceeds the smallest k ({lo})")

    if family == "geometric":
        gspec = randnet.GeometricGraphSpec(
            n=n, area_side=area, radius=radius, seed=seed, torus=torus
        )
        g, _ = randnet.gen_geometric(gspec)
        closed = lambda k: randnet.closed_form_geometric(k, sigma, gspec.density, radius)
    else:
        g = randnet.gen_erdos_renyi(randnet.ErdosRenyiSpec(n=n, p=p, seed=seed))
        closed = lambda k: randnet.closed_form_er(k, sigma, n, p)

    header = ["k", "sigma", "closed_form", "empirical_mean", "stderr", "trials"]
    rows = []
    for k in range(lo, hi + 1):
        stats = randnet.simulate_random_schedule(
            g, k, sigma, trials=trials,
            seed=derive_seed(seed, "row", k), workers=workers,
        )
        rows.append(
            [k, sigma, _fmt(closed(k)), _fmt(stats.mean), _fmt(stats.stderr), trials]
        )
    if out:
        _write_csv(out, header, rows)
    else:
        click.echo(",".join(header))
        for row in rows:
            click.echo(",".join(str(cell) for cell in row))


@main.command("convert-edgelist")
@click.argument("edgelist", type=click.Path(exists=True, dir_okay=False))
@click.option("--lambda", "range_limit", type=int, default=1, show_default=True)
@click.option("--k", type=int, default=2, show_default=True)
@click.option("--sigma", type=int, default=1, show_default=True)
@click.option("--objective", type=click.Choice(["detection", "isolation"]),
              default="detection", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
@handle_errors
def convert_edgelist_cmd(
    edgelist: str,
    range_limit: int,
    k: int,
    sigma: int,
    objective: str,
    out: str | None,
) -> None:
    """Convert a plain `u v` edge-list file into an instance file.

    Comment lines starting with `#` are skipped. The result puts a
    sensor on every node and targets every edge; edit to taste.
    """
    nodes: list[str] = []
    seen: set[str] = set()
    edges: list[str] = []
    for line_no, raw in enumerate(Path(edgelist).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {line_no}: expected two node names, got {raw!r}")
        for name in parts:
            if not instance.NAME_RE.match(name):
                raise InputError(f"line {line_no}: bad node name {name!r}")
            if name not in seen:
                seen.add(name)
                nodes.append(name)
        edges.append(f"{parts[0]}-{parts[1]}")
    if not nodes:
        raise InputError("edge list is empty")
    text = "\n".join(
        [
            f"nodes: {', '.join(nodes)}",
            f"edges: {', '.join(edges)}",
            "sensors: all",
            "targets: all-edges",
            f"lambda: {range_limit}",
            f"k: {k}",
            f"sigma: {sigma}",
            f"objective: {objective}",
        ]
    ) + "\n"
    _emit(text, out)


@main.command("verify")
@click.option("--all", "run_everything", is_flag=True, default=False)
@click.option("--potential-game", "run_potential", is_flag=True, default=False)
@click.option("--reduction", "run_reduction", is_flag=True, default=False)
@click.option("--proposition1", "--dual-form", "run_dual", is_flag=True, default=False)
@click.option("--seed", type=int, default=0, show_default=True)
@handle_errors
def verify_cmd(
    run_everything: bool,
    run_potential: bool,
    run_reduction: bool,
    run_dual: bool,
    seed: int,
) -> None:
    """Run the randomized property suites; nonzero exit on any failure."""
    if not (run_potential or run_reduction or run_dual):
        run_everything = True
    reports = []
    if run_everything or run_potential:
        reports.append(verify.check_potential_game(seed))
    if run_everything or run_dual:
        reports.append(verify.check_dual_form(seed))
    if run_everything or run_reduction:
        reports.append(verify.check_reduction(seed))
    failed = False
    for report in reports:
        click.echo(report.summary())
        for failure in report.failures[:10]:
            click.echo(f"  {failure}", err=True)
        failed = failed or not report.ok
    if failed:
        sys.exit(2)


if __name__ == "__main__":
    main()

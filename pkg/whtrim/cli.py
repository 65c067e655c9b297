"""
Command-line interface for whtrim.

Provides commands to build weakly-hard automata, analyze their languages and
verify closed-loop stability under deadline misses.
"""

import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

import click

from whtrim import __version__
from whtrim.automata import (
    Automaton,
    StateBudgetExceeded,
    build_compressed,
    build_for,
    build_isomorphic,
    build_minimal,
    check_isomorphism,
    parse_automaton_spec,
    state_count,
    to_csv,
    to_dot,
)
from whtrim.config import Config, ConfigError, get_default_config, load_config
from whtrim.constraints import ConstraintError, WeaklyHardConstraint
from whtrim.jsr import JsrOptions, JsrResult, Representation, Verdict, verify_stability
from whtrim.language import (
    check_simulation,
    count_series,
    find_inclusion_counterexample,
    growth as growth_estimate,
)
from whtrim.linalg import NoConvergence, SizeBudgetExceeded
from whtrim.utils import (
    GROWTH_HEADER,
    HISTORY_HEADER,
    SWEEP_HEADER,
    VERIFY_HEADER,
    MissStrategy,
    PairFormatError,
    dump_pair,
    generate_pair,
    growth_row,
    history_rows,
    load_pair,
    sweep_row,
    verify_row,
)
from whtrim.utils import to_csv as table_csv
from whtrim.utils.json_output import JSONOutput, build_success, verify_success

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INCONCLUSIVE = 10
EXIT_LOWER_BOUND = 11

VERDICT_EXIT = {
    Verdict.CERTIFIED_STABLE: EXIT_OK,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    Verdict.LOWER_BOUND_AT_LEAST_ONE: EXIT_LOWER_BOUND,
}

BUDGET_ERRORS = (StateBudgetExceeded, SizeBudgetExceeded, NoConvergence)


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _config(ctx: click.Context) -> Config:
    cfg = ctx.find_object(Config)
    return cfg if cfg is not None else get_default_config()


def _emit(text: str, out: Optional[str]) -> None:
    """Write text to a file, or to stdout when no path is given."""
    if out is None:
        click.echo(text, nl=False)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _fail(message: str, code: int, json_output: bool = False, error_type: str = "error") -> None:
    if json_output:
        click.echo(JSONOutput.error(message, error_type=error_type))
    else:
        click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def _c_range(m: int, k: int, c_min: Optional[int], c_max: Optional[int]) -> List[int]:
    low = 1 if c_min is None else c_min
    high = k - m if c_max is None else c_max
    if low < 1 or high < low:
        raise ConstraintError(f"Invalid compression range [{low}, {high}]")
    return list(range(low, high + 1))


def _jsr_options(
    cfg: Config,
    delta: Optional[float] = None,
    max_iterations: Optional[int] = None,
    entry_budget: Optional[int] = None,
    representation: Optional[str] = None,
    workers: Optional[int] = None,
) -> JsrOptions:
    return JsrOptions(
        delta=cfg.jsr.delta if delta is None else delta,
        max_iterations=cfg.jsr.max_iterations if max_iterations is None else max_iterations,
        entry_budget=cfg.jsr.entry_budget if entry_budget is None else entry_budget,
        representation=Representation(representation or cfg.jsr.representation),
        workers=cfg.jsr.workers if workers is None else workers,
        state_budget=cfg.automata.state_budget,
        kron_budget=cfg.linalg.kron_budget,
        norm_tolerance=cfg.linalg.norm_tolerance,
        norm_max_iterations=cfg.linalg.norm_max_iterations,
    )


@click.group()
@click.version_option(version=__version__)
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr")
@click.pass_context
def main(ctx: click.Context, verbose: bool) -> None:
    """
    whtrim - weakly-hard automata and stability verification

    Builds minimal and compressed weakly-hard constraint automata, counts their
    languages and certifies closed-loop stability under deadline misses.
    """
    try:
        cfg = load_config()
    except ConfigError as e:
        click.echo(f"Warning: Failed to load config: {e}", err=True)
        click.echo("Using default settings.", err=True)
        cfg = get_default_config()
    ctx.obj = cfg
    _setup_logging(verbose or cfg.cli.verbose)


@main.command()
@click.option("--m", "m", type=int, required=True, help="Misses allowed per window")
@click.option("--k", "k", type=int, required=True, help="Window length")
@click.option("--c", "c", type=int, default=None, help="Compression factor (builds T)")
@click.option(
    "--format", "fmt", type=click.Choice(["dot", "csv"]), default="csv", help="Output format"
)
@click.option("--out", "-o", type=click.Path(dir_okay=False), help="Output file")
@click.option("--json", "json_output", is_flag=True, help="Output summary in JSON format")
@click.pass_context
def build(
    ctx: click.Context,
    m: int,
    k: int,
    c: Optional[int],
    fmt: str,
    out: Optional[str],
    json_output: bool,
) -> None:
    """
    Build A(m, k), or T(m, k, c) when --c is given.

    CSV output writes ``src,symbol,dst`` rows; with --out a sidecar
    ``<out>.labels.csv`` maps node indices to labels.

    \b
    Example:
        whtrim build --m 2 --k 5 --format dot -o a25.dot
        whtrim build --m 2 --k 300 --c 260 -o t.csv
    """
    cfg = _config(ctx)
    try:
        if c is None:
            automaton = build_minimal(m, k, cfg.automata.state_budget)
        else:
            automaton = build_compressed(m, k, c, cfg.automata.state_budget)
    except ConstraintError as e:
        _fail(str(e), EXIT_INPUT, json_output, "validation")
        return
    except StateBudgetExceeded as e:
        _fail(str(e), EXIT_BUDGET, json_output, "budget")
        return

    if fmt == "dot":
        _emit(to_dot(automaton), out)
    else:
        edges, labels = to_csv(automaton)
        _emit(edges, out)
        if out is not None:
            _emit(labels, str(Path(out).with_suffix("")) + ".labels.csv")

    if json_output:
        click.echo(build_success(automaton, out or "-", fmt))
    else:
        click.echo(
            f"states={automaton.num_states} transitions={automaton.num_transitions}",
            err=out is None,
        )


@main.command()
@click.option("--m", "m", type=int, required=True, help="Misses allowed per window")
@click.option("--k", "k", type=int, required=True, help="Window length")
@click.option("--c-min", type=int, default=None, help="Smallest compression factor (default 1)")
@click.option("--c-max", type=int, default=None, help="Largest compression factor (default k-m)")
@click.option("--out", "-o", type=click.Path(dir_okay=False), help="Output CSV file")
def stats(m: int, k: int, c_min: Optional[int], c_max: Optional[int], out: Optional[str]) -> None:
    """
    Closed-form state counts of T(m, k, c) over a range of c.

    \b
    Example:
        whtrim stats --m 2 --k 300 --c-min 100 --c-max 300
    """
    try:
        WeaklyHardConstraint.any_miss(m, k)
        rows = [[c, state_count(m, k, c)] for c in _c_range(m, k, c_min, c_max)]
    except ConstraintError as e:
        _fail(str(e), EXIT_INPUT)
        return
    _emit(table_csv(("c", "states"), rows), out)


@main.command()
@click.argument("specs", nargs=-1, required=True)
@click.option("--out", "-o", type=click.Path(dir_okay=False), help="Output CSV file")
@click.pass_context
def growth(ctx: click.Context, specs: Tuple[str, ...], out: Optional[str]) -> None:
    """
    Growth constants a, lambda with |L^{=l}| ~ a * lambda^l.

    SPECS are constraints such as anymiss:2:36 or trim:2:300:260.

    \b
    Example:
        whtrim growth anymiss:2:36 anymiss:2:37 trim:2:300:260
    """
    cfg = _config(ctx)
    rows = []
    try:
        for text in specs:
            automaton = build_for(parse_automaton_spec(text), cfg.automata.state_budget)
            estimate = growth_estimate(
                automaton, cfg.linalg.power_tolerance, cfg.linalg.power_max_iterations
            )
            row = growth_row(estimate)
            row[0] = text
            rows.append(row)
    except ConstraintError as e:
        _fail(str(e), EXIT_INPUT)
        return
    except BUDGET_ERRORS as e:
        _fail(str(e), EXIT_BUDGET)
        return
    _emit(table_csv(GROWTH_HEADER, rows), out)


@main.command()
@click.argument("spec")
@click.option("--max-len", type=int, default=20, help="Largest word length (default 20)")
@click.option("--out", "-o", type=click.Path(dir_okay=False), help="Output CSV file")
@click.pass_context
def count(ctx: click.Context, spec: str, max_len: int, out: Optional[str]) -> None:
    """
    Exact number of accepted words of each length 0..max-len.

    \b
    Example:
        whtrim count anymiss:2:5 --max-len 12
    """
    cfg = _config(ctx)
    try:
        if max_len < 0:
            raise ConstraintError("--max-len must be non-negative")
        automaton = build_for(parse_automaton_spec(spec), cfg.automata.state_budget)
    except ConstraintError as e:
        _fail(str(e), EXIT_INPUT)
        return
    except StateBudgetExceeded as e:
        _fail(str(e), EXIT_BUDGET)
        return
    rows = list(enumerate(count_series(automaton, max_len)))
    _emit(table_csv(("length", "count"), rows), out)


@main.command()
@click.option("--m", "m", type=int, required=True, help="Misses allowed per window")
@click.option("--k", "k", type=int, required=True, help="Window length")
@click.option("--c", "c", type=int, default=None, help="Compression factor to check against")
@click.option("--max-len", type=int, default=14, help="Depth of the bounded inclusion check")
@click.pass_context
def check(ctx: click.Context, m: int, k: int, c: Optional[int], max_len: int) -> None:
    """
    Check isomorphism of A and H, and simulation and inclusion of T.

    Exits with 1 if any property fails.

    \b
    Example:
        whtrim check --m 2 --k 5 --c 3
    """
    cfg = _config(ctx)
    try:
        a = build_minimal(m, k, cfg.automata.state_budget)
        h = build_isomorphic(m, k, cfg.automata.state_budget)
        t = build_compressed(m, k, c, cfg.automata.state_budget) if c is not None else None
        counterexample = find_inclusion_counterexample(a, t, max_len) if t is not None else None
    except ConstraintError as e:
        _fail(str(e), EXIT_INPUT)
        return
    except StateBudgetExceeded as e:
        _fail(str(e), EXIT_BUDGET)
        return

    ok = check_isomorphism(a, h)
    click.echo(f"isomorphism={str(ok).lower()}")
    if t is not None:
        report = check_simulation(h, t)
        click.echo(f"simulation={str(report.holds).lower()} pairs={report.relation_size}")
        if report.witness is not None:
            click.echo(f"  witness: {report.witness.reason} at {report.witness.simulated}")
        click.echo(f"inclusion={str(counterexample is None).lower()} max_len={max_len}")
        if counterexample is not None:
            click.echo(f"  counterexample: {counterexample}")
        ok = ok and report.holds and counterexample is None
    sys.exit(EXIT_OK if ok else 1)


def _verify_one(
    pair_path: str, spec_text: str, options: JsrOptions
) -> Tuple[str, Automaton, JsrResult]:
    pair = load_pair(pair_path)
    automaton = build_for(parse_automaton_spec(spec_text), options.state_budget)
    return pair.name, automaton, verify_stability(pair, automaton, options)


@main.command()
@click.option("--pair", "pair_path", required=True, help="Closed-loop pair JSON file")
@click.option(
    "--constraint", "spec", required=True, help="anymiss:m:k, anyhit:h:k or trim:m:k:c"
)
@click.option("--delta", type=float, default=None, help="Pruning slack (default 1e-3)")
@click.option("--max-iterations", type=int, default=None, help="Frontier depth cap")
@click.option("--entry-budget", type=int, default=None, help="Stored entry cap")
@click.option(
    "--representation",
    type=click.Choice([r.value for r in Representation]),
    default=None,
    help="Word product storage",
)
@click.option("--workers", type=int, default=None, help="Threads for candidate scoring")
@click.option("--out", "-o", type=click.Path(dir_okay=False), help="Output CSV file")
@click.option("--history", type=click.Path(dir_okay=False), help="Write iter,space,time CSV")
@click.option("--json", "json_output", is_flag=True, help="Output in JSON format")
@click.pass_context
def verify(
    ctx: click.Context,
    pair_path: str,
    spec: str,
    delta: Optional[float],
    max_iterations: Optional[int],
    entry_budget: Optional[int],
    representation: Optional[str],
    workers: Optional[int],
    out: Optional[str],
    history: Optional[str],
    json_output: bool,
) -> None:
    """
    Bound the jsr of a closed-loop pair lifted onto a weakly-hard automaton.

    Exit codes: 0 certified stable, 10 inconclusive, 11 lower bound >= 1,
    2 invalid input, 3 budget exceeded.

    \b
    Example:
        whtrim verify --pair plant.json --constraint trim:2:300:260
    """
    cfg = _config(ctx)
    try:
        options = _jsr_options(cfg, delta, max_iterations, entry_budget, representation, workers)
        name, automaton, result = _verify_one(pair_path, spec, options)
    except PairFormatError as e:
        _fail(str(e), EXIT_INPUT, json_output, "format")
        return
    except (ConstraintError, ValueError) as e:
        _fail(str(e), EXIT_INPUT, json_output, "validation")
        return
    except BUDGET_ERRORS as e:
        _fail(str(e), EXIT_BUDGET, json_output, "budget")
        return

    row = verify_row(name, spec, automaton.num_states, result)
    if json_output:
        click.echo(verify_success(name, spec, automaton.num_states, result))
    # the CSV row goes to --out in both modes, and to stdout only without --json
    if out is not None or not json_output:
        _emit(table_csv(VERIFY_HEADER, [row]), out)
    if history is not None:
        _emit(table_csv(HISTORY_HEADER, history_rows(result)), history)
    sys.exit(VERDICT_EXIT[result.verdict])


@main.command()
@click.option("--pair", "pair_path", required=True, help="Closed-loop pair JSON file")
@click.option("--m", "m", type=int, required=True, help="Misses allowed per window")
@click.option("--k", "k", type=int, required=True, help="Window length")
@click.option("--c-min", type=int, default=None, help="Smallest compression factor (default 1)")
@click.option("--c-max", type=int, default=None, help="Largest compression factor (default k-m)")
@click.option("--delta", type=float, default=None, help="Pruning slack (default 1e-3)")
@click.option("--max-iterations", type=int, default=None, help="Frontier depth cap")
@click.option("--jobs", type=int, default=1, help="Compression factors verified in parallel")
@click.option("--out", "-o", type=click.Path(dir_okay=False), help="Output CSV file")
@click.pass_context
def sweep(
    ctx: click.Context,
    pair_path: str,
    m: int,
    k: int,
    c_min: Optional[int],
    c_max: Optional[int],
    delta: Optional[float],
    max_iterations: Optional[int],
    jobs: int,
    out: Optional[str],
) -> None:
    """
    Verify one pair under T(m, k, c) for every c in a range.

    Failures are reported in the error column of their row.

    \b
    Example:
        whtrim sweep --pair plant.json --m 2 --k 12
    """
    cfg = _config(ctx)
    try:
        pair = load_pair(pair_path)
        WeaklyHardConstraint.any_miss(m, k)
        factors = _c_range(m, k, c_min, c_max)
        options = _jsr_options(cfg, delta, max_iterations)
    except PairFormatError as e:
        _fail(str(e), EXIT_INPUT)
        return
    except (ConstraintError, ValueError) as e:
        _fail(str(e), EXIT_INPUT)
        return

    def run(c: int) -> list:
        try:
            states = state_count(m, k, c)
            automaton = build_compressed(m, k, c, options.state_budget)
            return sweep_row(c, states, verify_stability(pair, automaton, options))
        except (ConstraintError, *BUDGET_ERRORS) as e:
            logger.warning("sweep c=%d failed: %s", c, e)
            return [c, state_count(m, k, c), "", "", "", "", "", str(e)]

    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as executor:
        rows = list(executor.map(run, factors))
    rows.sort(key=lambda row: row[0])
    _emit(table_csv(SWEEP_HEADER, rows), out)


@main.command()
@click.option("--seed", type=int, required=True, help="Random seed")
@click.option("--dim", type=int, default=2, help="Plant dimension (1..10)")
@click.option("--sr", "target_sr", type=float, default=0.8, help="Spectral radius of phi_hit")
@click.option(
    "--strategy",
    type=click.Choice([s.value for s in MissStrategy]),
    default=MissStrategy.HOLD.value,
    help="Miss handling encoded in phi_miss",
)
@click.option("--name", default=None, help="Pair name (default derived from the seed)")
@click.option("--out", "-o", type=click.Path(dir_okay=False), help="Output JSON file")
def gen(
    seed: int,
    dim: int,
    target_sr: float,
    strategy: str,
    name: Optional[str],
    out: Optional[str],
) -> None:
    """
    Generate a synthetic closed-loop pair file.

    \b
    Example:
        whtrim gen --seed 1 --dim 2 --sr 0.83 -o plant.json
    """
    try:
        pair = generate_pair(seed, dim, target_sr, MissStrategy(strategy), name)
    except ValueError as e:
        _fail(str(e), EXIT_INPUT)
        return
    _emit(dump_pair(pair), out)


@main.group()
def config() -> None:
    """
    Manage whtrim configuration.

    Subcommands: show, init, path
    """
    pass


@config.command()
def show() -> None:
    """Display current configuration."""
    from whtrim.config import get_config_path

    config_path = get_config_path()
    if not config_path.exists():
        click.echo("No configuration file found.")
        click.echo(f"Expected location: {config_path}")
        click.echo("\nUsing default settings:")
    else:
        click.echo(f"Configuration file: {config_path}\n")

    try:
        cfg = load_config()
    except ConfigError as e:
        click.echo(f"Error loading config: {e}", err=True)
        sys.exit(1)

    for section, values in cfg.to_dict().items():
        click.echo(f"[{section}]")
        for key, value in values.items():
            click.echo(f"  {key:<20} = {value}")
        click.echo()


@config.command()
def init() -> None:
    """Create default configuration file."""
    from whtrim.config import get_config_path, save_config

    config_path = get_config_path()
    if config_path.exists():
        click.echo(f"Configuration file already exists: {config_path}")
        if not click.confirm("Overwrite with default settings?"):
            click.echo("Cancelled.")
            sys.exit(0)

    try:
        save_config(get_default_config())
    except ConfigError as e:
        click.echo(f"Error creating config: {e}", err=True)
        sys.exit(1)
    click.echo(f"Created configuration file: {config_path}")


@config.command()
def path() -> None:
    """Show configuration file path."""
    from whtrim.config import get_config_path

    config_path = get_config_path()
    click.echo(f"Config directory: {config_path.parent}")
    click.echo(f"Config file:      {config_path}")
    click.echo()

    if config_path.exists():
        click.echo("Status: File exists")
    else:
        click.echo("Status: File not found (using defaults)")
        click.echo("\nRun 'whtrim config init' to create it.")


if __name__ == "__main__":
    main()

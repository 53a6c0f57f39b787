"""Command line entry point: sweep, verify and figure."""

import io
import logging
import sys
from dataclasses import asdict

import click

from .analog_search import rk4_step
from .config import RunConfig
from .figures import FIGURES, figure_rows, get_figure
from .sweep import FIELDS, sweep_records, time_grid, write_csv, write_json
from .verification import FAIL, faulty_rk4_step, format_results, run_suite

logger = logging.getLogger(__name__)

DEFAULT_VERIFY_QUBITS = tuple(range(1, 7))


class ConfigError(click.ClickException):
    exit_code = 1


class OutputError(click.ClickException):
    exit_code = 2


class VerificationFailed(click.ClickException):
    exit_code = 3


class _Group(click.Group):
    """Reports command line usage errors with the configuration exit code."""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = ConfigError.exit_code
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = ConfigError.exit_code
            raise


def run_options(command):
    """Options shared by every command; None means "use the default"."""
    options = [
        click.option("--n-qubits", type=int, default=None, help="Register size n, N = 2**n."),
        click.option("--dim", type=int, default=None, help="Dimension N, a power of two."),
        click.option("--energy", type=float, default=None, help="Energy scale E.  [default: 1]"),
        click.option(
            "--overlap", type=float, default=None, help="Overlap x = <s|w>.  [default: 1/sqrt(N)]"
        ),
        click.option("--marked", type=int, default=None, help="Marked index w.  [default: 0]"),
        click.option(
            "--t-max", type=float, default=None, help="End of the time grid.  [default: 2 t_m]"
        ),
        click.option("--steps", type=int, default=None, help="Grid points.  [default: 1000]"),
        click.option(
            "--format",
            "fmt",
            type=click.Choice(["csv", "json"]),
            default=None,
            help="Output format.  [default: csv]",
        ),
        click.option("--out", type=str, default=None, help="Output file, - for stdout."),
        click.option(
            "--log-base",
            type=click.Choice(["2", "e"]),
            default=None,
            help="Base of the entropy logarithms.  [default: 2]",
        ),
        click.option("--seed", type=int, default=None, help="Random check seed.  [default: 0]"),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _settings(**options):
    options["format"] = options.pop("fmt")
    return {key: value for key, value in options.items() if value is not None}


def _config(figure_id=None, **options) -> RunConfig:
    try:
        if figure_id is None:
            return RunConfig(**_settings(**options))
        return RunConfig.from_figure(figure_id, **_settings(**options))
    except (ValueError, TypeError) as e:
        raise ConfigError(str(e)) from e


def _emit(cfg: RunConfig, rows, columns):
    buffer = io.StringIO()
    if cfg.format == "json":
        write_json(rows, columns, buffer, config=cfg.to_dict())
    else:
        write_csv(rows, columns, buffer)
    text = buffer.getvalue()

    if cfg.out == "-":
        click.echo(text, nl=False)
        return
    try:
        with open(cfg.out, "w", newline="", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise OutputError(f"Cannot write {cfg.out}: {e}") from e
    logger.info("wrote %d rows to %s", len(rows), cfg.out)


@click.group(cls=_Group)
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default="WARNING",
    show_default=True,
    help="Logging level, messages go to stderr.",
)
def main(log_level: str):
    """Closed forms and simulation of the analog Grover search: coherence,
    entanglement and monogamy along the evolution.
    """
    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


@main.command()
@run_options
def sweep(**options):
    """Write every observable on a time grid."""
    cfg = _config(**options)
    p = cfg.search_params()
    try:
        times = time_grid(cfg.resolved_t_max(), cfg.steps)
        records = sweep_records(p, times, cfg.log_base)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    _emit(cfg, [asdict(record) for record in records], FIELDS)


@main.command()
@click.argument("figure_id", metavar="ID", type=click.Choice(list(FIGURES)))
@run_options
@click.option("--k-max", type=int, default=None, help="Grover iterations of figure 3b.")
def figure(figure_id: str, k_max, **options):
    """Write the data of one figure: 1, 2, 3a, 3b, 4 or 5."""
    cfg = _config(figure_id, **options)
    spec = get_figure(figure_id)
    try:
        times = None if spec.discrete else time_grid(cfg.resolved_t_max(), cfg.steps)
        rows = figure_rows(spec, cfg.search_params(), times, cfg.log_base, k_max)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    _emit(cfg, rows, spec.columns)


@main.command()
@run_options
@click.option("--inject-integrator-fault", is_flag=True, hidden=True)
def verify(inject_integrator_fault: bool, **options):
    """Check every closed form against the simulation; exit 3 on failure."""
    if options["n_qubits"] is None and options["dim"] is None:
        # the suite starts at the smallest register holding the marked index
        smallest = max(1, (options["marked"] or 0).bit_length())
        n_values = tuple(n for n in DEFAULT_VERIFY_QUBITS if n >= smallest) or (smallest,)
        cfg = _config(**{**options, "n_qubits": n_values[0]})
    else:
        cfg = _config(**options)
        n_values = (cfg.n_qubits,)
    step = faulty_rk4_step if inject_integrator_fault else rk4_step

    try:
        results = run_suite(
            n_values,
            energy=cfg.energy,
            overlap=cfg.overlap,
            marked=cfg.marked,
            steps=cfg.steps,
            log_base=cfg.log_base,
            seed=cfg.seed,
            step=step,
        )
    except ValueError as e:
        raise ConfigError(str(e)) from e

    click.echo(format_results(results))
    failed = sorted({r.name for r in results if r.status == FAIL})
    if failed:
        raise VerificationFailed(f"{len(failed)} check(s) failed: {', '.join(failed)}")

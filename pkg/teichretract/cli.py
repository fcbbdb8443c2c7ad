import logging
import os
from typing import Optional
import click
from tqdm import tqdm
import teichretract
from .app import (
    dispatch, read_config, EXIT_SCHEMA, EXIT_NUMERICAL
)
from .config import (
    SURFACE_TYPES, METRIC_MODELS, FIELD_MODES, COMMANDS, TEICHRETRACT_DIR
)
from .errors import SchemaError, NumericalError

logger = logging.getLogger(__name__)


@click.group(invoke_without_command=True)
@click.version_option(
    version=teichretract.__version__, prog_name='teichretract'
)
@click.pass_context
def cli(ctx):
    """
    teichretract - retraction of Teichmuller space onto its thick part.

    See teichretract COMMAND --help for command-specific help.
    """
    if not ctx.invoked_subcommand:
        click.echo(ctx.get_help())


@click.command()
@click.pass_context
@click.option(
    '-c', '--config', 'config_file', required=True,
    type=click.Path(exists=True, dir_okay=False),
    help='Run configuration JSON file'
)
@click.option(
    '-o', '--out', 'output_dir', default=None, type=click.STRING,
    help=f'Output directory [default: config value or {TEICHRETRACT_DIR}]'
)
@click.option('-s', '--seed', default=None, type=click.INT,
              help='Override the seed of the config')
@click.option(
    '--command', 'command', default=None,
    type=click.Choice(sorted(COMMANDS)),
    help='Override the command of the config'
)
@click.option('-n', '--n_jobs', default=None, type=click.INT,
              help='Worker processes for batch commands')
@click.option('-v', '--verbose', is_flag=True, default=False)
def run(
    ctx,
    config_file: str,
    output_dir: Optional[str],
    seed: Optional[int],
    command: Optional[str],
    n_jobs: Optional[int],
    verbose: bool
):
    """Run the command of a configuration file."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format='%(asctime)s %(name)s %(levelname)s: %(message)s'
    )
    try:
        cfg = read_config(
            os.path.abspath(config_file), command=command, seed=seed,
            output_dir=output_dir, n_jobs=n_jobs
        )
        status = dispatch(cfg.command, cfg, progress=tqdm)
    except SchemaError as error:
        click.echo(f'Configuration error: {error}', err=True)
        ctx.exit(EXIT_SCHEMA)
    except NumericalError as error:
        click.echo(f'Numerical failure: {error}', err=True)
        ctx.exit(EXIT_NUMERICAL)
    click.echo(f'{cfg.command} finished with status {status}')
    click.echo(f'Results in {cfg.output_dir}')
    ctx.exit(status)


@click.command()
@click.pass_context
@click.option(
    '-c', '--config', 'config_file', required=True,
    type=click.Path(exists=True, dir_okay=False)
)
def validate(ctx, config_file: str):
    """Check a configuration file against the schema."""
    try:
        cfg = read_config(os.path.abspath(config_file))
    except SchemaError as error:
        click.echo(f'Configuration error: {error}', err=True)
        ctx.exit(EXIT_SCHEMA)
    click.echo(
        f'{config_file} is valid: {cfg.command} on '
        f'{cfg.chart.surface.label}, config hash {cfg.config_hash}'
    )


@click.command()
@click.argument('model_type', required=False, type=click.Choice(
    ['surfaces', 'metrics', 'modes', 'commands'],
    case_sensitive=False
))
def ls(model_type=None):
    """List surface types, metric models, field modes and commands."""
    if model_type is None or model_type == 'surfaces':
        click.echo('Surface types:')
        click.echo('\n'.join([
            f'    {name} gluing {list(map(list, gluing))}'
            for name, gluing in SURFACE_TYPES.items()
        ]))
    if model_type is None or model_type == 'metrics':
        click.echo('Metric models:')
        click.echo('\n'.join([
            f'    {name}: {description}'
            for name, description in sorted(METRIC_MODELS.items())
        ]))
    if model_type is None or model_type == 'modes':
        click.echo('Field modes:')
        click.echo('\n'.join(['    ' + name for name in FIELD_MODES]))
    if model_type is None or model_type == 'commands':
        click.echo('Commands:')
        click.echo('\n'.join([
            f'    {name}: {description}'
            for name, description in COMMANDS.items()
        ]))


cli.add_command(run)
cli.add_command(validate)
cli.add_command(ls)

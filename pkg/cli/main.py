"""
Main CLI entry point for the vanishing-point reconstructor

Usage:
    vp-recon simulate --scene S --tracks-out T [--truth-out G]
    vp-recon reconstruct --tracks T --focal F --out R [--ply-dir D]
    vp-recon vp --tracks T --object K --interval I [--focal F] [--cross-check]
    vp-recon verify --recon R --truth G --report P
    vp-recon pipeline --scene S --out-dir D
    vp-recon show-config

Exit codes: 0 success, 1 usage, 2 parse/validation, 3 geometric failure.
"""

import logging
import sys
from typing import List, Optional

import click
from rich.console import Console

# Import commands
from cli.commands.pipeline_commands import pipeline, show_config
from cli.commands.reconstruct_commands import reconstruct, vp
from cli.commands.simulate_commands import simulate
from cli.commands.verify_commands import verify
from common.enums import ExitCode
from common.exceptions import ReconstructionError, ValidationError
from config.settings import DEFAULT_CONFIG_PATH, Settings

console = Console(stderr=True)


def setup_logging(verbose: bool = False):
    """Log to the error stream; data goes to files or standard output"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
        force=True,
    )


@click.group()
@click.option('--config', 'config_path', default=DEFAULT_CONFIG_PATH, help='Path to configuration file')
@click.option('--verbose', '-v', is_flag=True, help='Debug logging')
@click.pass_context
def cli(ctx, config_path, verbose):
    """
    Vanishing-point reconstruction of moving rigid objects

    Simulate synthetic scenes, reconstruct 3D trajectories from image tracks
    of a single static camera, and verify them against ground truth.
    """
    setup_logging(verbose)

    settings = Settings.from_file(config_path)
    issues = settings.validate_settings()
    if issues:
        raise ValidationError(issues)

    # Store settings in context for subcommands
    ctx.ensure_object(dict)
    ctx.obj['SETTINGS'] = settings


# Register commands
cli.add_command(simulate)
cli.add_command(reconstruct)
cli.add_command(vp)
cli.add_command(verify)
cli.add_command(pipeline)
cli.add_command(show_config)


def main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting"""
    try:
        result = cli.main(args=argv, prog_name='vp-recon', standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return ExitCode.USAGE
    except click.ClickException as e:
        e.show()
        return ExitCode.USAGE
    except click.Abort:
        console.print("\n🛑 Aborted")
        return ExitCode.USAGE
    except ReconstructionError as e:
        console.print(f"[red]❌ {type(e).__name__}: {e}[/red]")
        return e.exit_code
    return result if isinstance(result, int) else ExitCode.SUCCESS


if __name__ == '__main__':
    sys.exit(main())

"""
CLI commands for the full pipeline and configuration

Usage:
    vp-recon pipeline --scene S --out-dir D [--ply/--no-ply] [--seed N] [--noise-sigma X]
    vp-recon show-config
"""

import json
from pathlib import Path

import click
from rich.console import Console

from common.enums import ExitCode
from common.exceptions import IoError
from persistence.track_storage import parse_tracks
from verification.metrics_calculator import MetricsCalculator, write_report
from .reconstruct_commands import print_reconstruction_summary, reconstruction_exit_code, run_reconstruct
from .simulate_commands import load_scene, print_simulation_summary, run_simulate
from .verify_commands import print_report

console = Console(stderr=True)

TRACKS_FILE = 'tracks.csv'
TRUTH_FILE = 'truth.csv'
RECONSTRUCTION_FILE = 'reconstruction.json'
REPORT_FILE = 'report.json'
PLY_DIR = 'ply'


@click.command('pipeline')
@click.option('--scene', 'scene_path', required=True, type=click.Path(dir_okay=False), help='Scene document')
@click.option('--out-dir', required=True, type=click.Path(file_okay=False), help='Directory for all artifacts')
@click.option('--ply/--no-ply', default=True, help='Export PLY point clouds')
@click.option('--seed', default=None, type=click.IntRange(min=0), help='Override the scene seed')
@click.option('--noise-sigma', default=None, type=float, help='Override the scene noise sigma')
@click.pass_context
def pipeline(ctx, scene_path, out_dir, ply, seed, noise_sigma):
    """Simulate, reconstruct, verify and export in one run"""
    settings = ctx.obj['SETTINGS']
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise IoError(f"cannot create {out}: {e}") from e

    spec = load_scene(settings, scene_path, seed, noise_sigma)
    result = run_simulate(settings, spec, out / TRACKS_FILE, out / TRUTH_FILE)
    print_simulation_summary(result)

    # Reconstruct from the written table, not the in-memory tracks
    tracks = parse_tracks(out / TRACKS_FILE)
    recon = run_reconstruct(settings, tracks, spec.camera, out / RECONSTRUCTION_FILE, out / PLY_DIR if ply else None)
    print_reconstruction_summary(recon)

    report = MetricsCalculator(settings).verify(recon, result.truth)
    write_report(out / REPORT_FILE, report)
    print_report(report)

    console.print(f"[green]✅ Artifacts written to {out}[/green]")
    return reconstruction_exit_code(recon)


@click.command('show-config')
@click.pass_context
def show_config(ctx):
    """Print the effective configuration as JSON"""
    click.echo(json.dumps(ctx.obj['SETTINGS'].get_config_summary(), indent=2))
    return ExitCode.SUCCESS

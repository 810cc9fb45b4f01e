"""
CLI commands for reconstruction and vanishing point estimation

Usage:
    vp-recon reconstruct --tracks T [--focal F] --out R [--ply-dir D]
    vp-recon vp --tracks T --object K --interval I [--focal F] [--cross-check]
"""

from typing import Optional

import click
from rich import box
from rich.console import Console
from rich.table import Table

from common.enums import ExitCode
from common.serialization import dumps
from geometry.camera import Camera
from geometry.homogeneous import canonical_distance
from persistence.ply_writer import write_ply
from persistence.reconstruction_storage import write_reconstruction
from persistence.track_storage import parse_tracks
from reconstruction.models import Reconstruction
from reconstruction.reconstructor import Reconstructor

console = Console(stderr=True)


def camera_for(settings, focal: Optional[float]) -> Camera:
    return Camera(f=focal if focal is not None else settings.simulation.default_focal_length)


def run_reconstruct(settings, tracks, camera: Camera, out: str, ply_dir: Optional[str] = None) -> Reconstruction:
    """Reconstruct tracks and write the document (and PLY clouds when asked)"""
    recon = Reconstructor(settings).reconstruct(camera, tracks)
    write_reconstruction(out, recon)
    if ply_dir:
        write_ply(ply_dir, recon, settings.export.ply_color, settings.export.anchor_color,
                  settings.export.float_format)
    return recon


def print_reconstruction_summary(recon: Reconstruction):
    summary = recon.get_summary()
    table = Table(title="Reconstruction", box=box.ROUNDED, show_header=False)
    table.add_column("Metric", style="cyan")
    table.add_column("Value", justify="right", style="bold")
    table.add_row("Tracks", str(summary['tracks']))
    table.add_row("Points", str(summary['points']))
    table.add_row("Frames", str(summary['frames']))
    table.add_row("Truncated tracks", str(summary['truncated_tracks']))
    table.add_row("Intervals estimated", str(summary['intervals_estimated']))
    table.add_row("Intervals failed", str(summary['intervals_failed']))
    console.print(table)

    for (object_id, interval), status in sorted(recon.interval_failures.items()):
        console.print(f"[yellow]⚠️  Object {object_id} interval {interval}: {status}[/yellow]")


def reconstruction_exit_code(recon: Reconstruction) -> int:
    if recon.is_geometric_failure:
        console.print("[red]❌ No interval produced a vanishing point[/red]")
        return ExitCode.GEOMETRY
    return ExitCode.SUCCESS


@click.command('reconstruct')
@click.option('--tracks', 'tracks_path', required=True, type=click.Path(dir_okay=False), help='Track table')
@click.option('--focal', default=None, type=float, help='Focal length (default from config)')
@click.option('--out', required=True, type=click.Path(dir_okay=False), help='Reconstruction document to write')
@click.option('--ply-dir', default=None, type=click.Path(file_okay=False), help='Directory for PLY exports')
@click.pass_context
def reconstruct(ctx, tracks_path, focal, out, ply_dir):
    """Reconstruct 3D trajectories from image tracks"""
    settings = ctx.obj['SETTINGS']
    recon = run_reconstruct(settings, parse_tracks(tracks_path), camera_for(settings, focal), out, ply_dir)
    print_reconstruction_summary(recon)
    return reconstruction_exit_code(recon)


@click.command('vp')
@click.option('--tracks', 'tracks_path', required=True, type=click.Path(dir_okay=False), help='Track table')
@click.option('--object', 'object_id', required=True, type=int, help='Object id')
@click.option('--interval', required=True, type=click.IntRange(min=0), help='First frame of the interval')
@click.option('--focal', default=None, type=float, help='Also report the 3D direction for this focal length')
@click.option('--cross-check', is_flag=True, help='Also report the pairwise-median vanishing point')
@click.pass_context
def vp(ctx, tracks_path, object_id, interval, focal, cross_check):
    """Print the vanishing point of one object's motion between two frames"""
    settings = ctx.obj['SETTINGS']
    reconstructor = Reconstructor(settings)
    tracks = parse_tracks(tracks_path)
    estimate = reconstructor.estimate_interval(tracks, object_id, interval)

    document = {'object_id': object_id, 'interval': interval, **estimate.to_dict()}
    if focal is not None:
        document['direction'] = estimate.direction(Camera(f=focal))
    if cross_check:
        pairwise = reconstructor.cross_check_interval(tracks, object_id, interval)
        document['pairwise_vp'] = pairwise.canonical().vector
        document['pairwise_distance'] = canonical_distance(estimate.vp, pairwise)
    click.echo(dumps(document), nl=False)
    return ExitCode.SUCCESS

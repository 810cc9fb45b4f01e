"""
CLI command for verification against ground truth

Usage:
    vp-recon verify --recon R --truth G --report P
"""

import click
from rich import box
from rich.console import Console
from rich.table import Table

from common.enums import ExitCode
from persistence.reconstruction_storage import parse_reconstruction
from persistence.truth_storage import parse_truth
from verification.metrics_calculator import MetricsCalculator, VerifyReport, write_report

console = Console(stderr=True)


def _fmt(value) -> str:
    return "n/a" if value is None else f"{value:.3e}"


def print_report(report: VerifyReport):
    table = Table(title="Verification", box=box.ROUNDED, show_header=False)
    table.add_column("Metric", style="cyan")
    table.add_column("Value", justify="right", style="bold")
    table.add_row("Tracks", str(len(report.tracks)))
    table.add_row("Worst RMSE", _fmt(report.worst_rmse))
    table.add_row("Global RMSE", _fmt(report.global_rmse))
    table.add_row("Worst scale error", _fmt(report.worst_scale_error))
    table.add_row("Truncated tracks", str(report.truncated_tracks))
    table.add_row("Mean VP residual", _fmt(report.mean_vp_residual))
    table.add_row("Depth audit", f"{report.depth.checked - len(report.depth.violations)}/{report.depth.checked} ok")
    console.print(table)

    if report.passed:
        console.print("[green]✅ All thresholds met[/green]")
    else:
        console.print("[yellow]⚠️  Thresholds not met[/yellow]")


@click.command('verify')
@click.option('--recon', 'recon_path', required=True, type=click.Path(dir_okay=False), help='Reconstruction document')
@click.option('--truth', 'truth_path', required=True, type=click.Path(dir_okay=False), help='Ground truth table')
@click.option('--report', 'report_path', required=True, type=click.Path(dir_okay=False), help='Report to write')
@click.pass_context
def verify(ctx, recon_path, truth_path, report_path):
    """Compare a reconstruction with ground truth"""
    report = MetricsCalculator(ctx.obj['SETTINGS']).verify(parse_reconstruction(recon_path), parse_truth(truth_path))
    write_report(report_path, report)
    print_report(report)
    return ExitCode.SUCCESS

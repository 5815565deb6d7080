"""
CLI script used to anonymize microdata, generate synthetic surrogates, verify releases and run sweeps.
"""

import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional

import click
import typer

from src.microagg.algorithms.microaggregation import Partition
from src.microagg.algorithms.pipeline import anonymize
from src.microagg.analysis.metrics import normalized_sse, verify_k_anonymity, verify_t_closeness
from src.microagg.analysis.summary import write_summaries
from src.microagg.bench import BenchDataset, preset_datasets, run_grid
from src.microagg.config.microagg_config import (
    ALGORITHMS,
    DEFAULT_GRID_K,
    DEFAULT_GRID_T,
    DEFAULT_SEED,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION,
)
from src.microagg.config.run_config import RunConfig, check_run_parameters
from src.microagg.etl.fetch import load_anonymized_csv, load_csv, load_roles_config
from src.microagg.etl.persist import write_csv, write_report, write_reports_csv
from src.microagg.etl.synth import SynthConfig, achieved_correlation, roles_config_text, synth_generate
from src.microagg.exceptions import MicroaggError, VerificationError
from src.microagg.table import minmax_params

app = typer.Typer(help="k-anonymous, t-close microaggregation of numerical microdata.")


@app.callback()
def configure(verbose: int = typer.Option(0, "--verbose", "-v", count=True, help="-v for info, -vv for debug.")):
    """Set up logging for every command."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


@contextmanager
def exit_on_error():
    """Turn package errors into a diagnostic line and the documented exit code."""
    try:
        yield
    except VerificationError as err:
        typer.echo(f"Verification failed: {err}", err=True)
        raise typer.Exit(EXIT_VERIFICATION) from err
    except MicroaggError as err:
        typer.echo(f"Error: {err}", err=True)
        raise typer.Exit(EXIT_USAGE) from err
    except OSError as err:
        typer.echo(f"I/O error: {err}", err=True)
        raise typer.Exit(EXIT_IO) from err


@app.command("anonymize")
def cmd_anonymize(
    input_path: Path = typer.Option(..., "--input", help="CSV file to anonymize."),
    roles_path: Path = typer.Option(..., "--roles", help="Roles file with column=qi|confidential|ignore lines."),
    algorithm: str = typer.Option("tfirst", "--algorithm", help="merge, kfirst or tfirst."),
    k: int = typer.Option(..., "--k", help="Minimum cluster size."),
    t: float = typer.Option(..., "--t", help="t-closeness level."),
    seed: int = typer.Option(DEFAULT_SEED, "--seed", help="Seed recorded in the report."),
    output_path: Path = typer.Option(..., "--output", help="Anonymized CSV to write."),
    report_path: Optional[Path] = typer.Option(None, "--report", help="JSON report to write."),
    drop_missing: bool = typer.Option(False, "--drop-missing", help="Drop rows with missing cells."),
):
    """
    Anonymize a CSV file; the release is verified before anything is written.
    """
    with exit_on_error():
        cfg = RunConfig(
            input_path=input_path,
            roles_path=roles_path,
            algorithm=algorithm,
            k=k,
            t=t,
            output_path=output_path,
            report_path=report_path,
            seed=seed,
            drop_missing=drop_missing,
        )
        table = load_csv(cfg.input_path, load_roles_config(cfg.roles_path), drop_missing=cfg.drop_missing)
        anonymized, partition, report = anonymize(
            table, cfg.k, cfg.t, cfg.algorithm, seed=cfg.seed, dataset=cfg.input_path.stem
        )

        k_result = verify_k_anonymity(anonymized, cfg.k)
        t_result = verify_t_closeness(table, partition, cfg.t)
        if not k_result.passed:
            raise VerificationError(f"release is not {cfg.k}-anonymous, witness {k_result.witness}")
        if not t_result.passed:
            raise VerificationError(
                f"cluster {t_result.worst_cluster} has EMD {t_result.worst_emd:.6f} above t={cfg.t}"
            )

        report_dict = report.to_dict()
        report_dict["k_anonymity_pass"] = k_result.passed
        report_dict["t_closeness_pass"] = t_result.passed

        write_csv(anonymized, cfg.output_path)
        if cfg.report_path is not None:
            write_report(report_dict, cfg.report_path)

    typer.echo(
        f"{cfg.algorithm}: {report.cluster_count} clusters, min/avg size {report.k_min_actual}/"
        f"{report.k_avg_actual:.2f}, max EMD {report.max_cluster_emd:.4f}, SSE {report.sse:.6f}"
    )


@app.command("synth")
def cmd_synth(
    output_path: Path = typer.Option(..., "--output", help="CSV file to write."),
    preset: Optional[str] = typer.Option(None, "--preset", help="mcd, hcd or pd."),
    n: Optional[int] = typer.Option(None, "--n", help="Number of records."),
    qi_count: Optional[int] = typer.Option(None, "--qi", help="Number of quasi-identifiers."),
    rho: Optional[float] = typer.Option(None, "--rho", help="Target correlation."),
    seed: int = typer.Option(DEFAULT_SEED, "--seed"),
    roles_out: Optional[Path] = typer.Option(None, "--roles-out", help="Roles file to write for the table."),
):
    """
    Generate a synthetic table with a target quasi-identifier/confidential correlation.
    """
    with exit_on_error():
        if preset is not None:
            cfg = SynthConfig.from_preset(preset, seed=seed, n=n)
        else:
            missing = [name for name, value in (("--n", n), ("--qi", qi_count), ("--rho", rho)) if value is None]
            if missing:
                typer.echo(f"Error: {', '.join(missing)} required without --preset", err=True)
                raise typer.Exit(EXIT_USAGE)
            cfg = SynthConfig(n=n, qi_count=qi_count, rho=rho, seed=seed)

        table = synth_generate(cfg)
        write_csv(table, output_path)
        if roles_out is not None:
            roles_out.parent.mkdir(parents=True, exist_ok=True)
            roles_out.write_text(roles_config_text(table), encoding="utf-8")

    typer.echo(f"Wrote {table.n} records to {output_path}, achieved correlation {achieved_correlation(table):.4f}")


@app.command("verify")
def cmd_verify(
    original_path: Path = typer.Option(..., "--original", help="Original CSV file."),
    anonymized_path: Path = typer.Option(..., "--anonymized", help="Anonymized CSV file with cluster ids."),
    roles_path: Path = typer.Option(..., "--roles", help="Roles file."),
    k: int = typer.Option(..., "--k"),
    t: float = typer.Option(..., "--t"),
    drop_missing: bool = typer.Option(False, "--drop-missing", help="Drop rows with missing cells in the original."),
):
    """
    Re-check a release for k-anonymity and t-closeness using its cluster id column.
    """
    with exit_on_error():
        roles = load_roles_config(roles_path)
        original = load_csv(original_path, roles, drop_missing=drop_missing)
        anonymized = load_anonymized_csv(anonymized_path, roles)
        if anonymized.n != original.n:
            typer.echo(f"Error: original has {original.n} records, release has {anonymized.n}", err=True)
            raise typer.Exit(EXIT_USAGE)

        partition = Partition.from_labels(anonymized.cluster_ids)
        k_result = verify_k_anonymity(anonymized, k)
        t_result = verify_t_closeness(anonymized.table, partition, t)
        sse = normalized_sse(original, anonymized, minmax_params(original))

    if k_result.passed:
        typer.echo(f"k-anonymity (k={k}): pass, smallest class {k_result.smallest_class_size}")
    else:
        typer.echo(
            f"k-anonymity (k={k}): FAIL, class of {k_result.smallest_class_size} records at {k_result.witness}"
        )
    if t_result.passed:
        typer.echo(f"t-closeness (t={t}): pass, max EMD {t_result.worst_emd:.6f}")
    else:
        typer.echo(f"t-closeness (t={t}): FAIL, cluster {t_result.worst_cluster} has EMD {t_result.worst_emd:.6f}")
    typer.echo(f"normalized SSE: {sse:.6f}")

    if not (k_result.passed and t_result.passed):
        raise typer.Exit(EXIT_VERIFICATION)


@app.command("bench")
def cmd_bench(
    report_path: Path = typer.Option(..., "--report", help="Aggregate CSV of run reports."),
    datasets: Optional[List[str]] = typer.Option(None, "--dataset", help="Synthetic preset(s): mcd, hcd, pd."),
    input_path: Optional[Path] = typer.Option(None, "--input", help="CSV file to sweep instead of presets."),
    roles_path: Optional[Path] = typer.Option(None, "--roles", help="Roles file for --input."),
    algorithms: Optional[List[str]] = typer.Option(None, "--algorithm"),
    grid_k: Optional[List[int]] = typer.Option(None, "--grid-k"),
    grid_t: Optional[List[float]] = typer.Option(None, "--grid-t"),
    grid_n: Optional[List[int]] = typer.Option(None, "--grid-n", help="Regenerate presets at these sizes."),
    seed: int = typer.Option(DEFAULT_SEED, "--seed"),
    drop_missing: bool = typer.Option(False, "--drop-missing"),
    summary_dir: Optional[Path] = typer.Option(None, "--summary", help="Directory for pivoted summaries."),
):
    """
    Run every algorithm x k x t cell and write one report row per cell.
    """
    algorithm_list = algorithms or ALGORITHMS
    k_list = grid_k or DEFAULT_GRID_K
    t_list = grid_t or DEFAULT_GRID_T

    with exit_on_error():
        for algorithm in algorithm_list:
            for k in k_list:
                for t in t_list:
                    check_run_parameters(algorithm, k, t)

        if input_path is not None:
            if roles_path is None:
                typer.echo("Error: --roles is required with --input", err=True)
                raise typer.Exit(EXIT_USAGE)
            table = load_csv(input_path, load_roles_config(roles_path), drop_missing=drop_missing)
            bench_datasets = [BenchDataset(input_path.stem, table, seed)]
        else:
            bench_datasets = preset_datasets(datasets or ["mcd"], seed, grid_n)

        report_df = run_grid(bench_datasets, algorithm_list, k_list, t_list)
        write_reports_csv(report_df, report_path)
        if summary_dir is not None:
            write_summaries(report_df, summary_dir)

    failed = int((report_df.status != "ok").sum())
    typer.echo(f"Wrote {len(report_df)} rows to {report_path} ({failed} failed)")


def main():
    """Entry point that maps command line usage errors onto the usage exit code."""
    try:
        exit_code = app(standalone_mode=False)
    except click.exceptions.ClickException as err:
        err.show()
        sys.exit(EXIT_USAGE)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    sys.exit(exit_code if isinstance(exit_code, int) else EXIT_OK)


if __name__ == "__main__":
    main()

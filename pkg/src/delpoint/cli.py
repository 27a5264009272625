"""Command-line front door: gen / select / bounds / simulate / report.

Every command takes an explicit ``--seed`` and, whenever it writes
artifacts (``--out``), drops a manifest.json with the fully resolved
configuration, so any artifact can be reproduced from its manifest alone.
Exit codes: 0 success, 2 usage or malformed input, 3 no point within
tolerance (select only), 4 internal numeric failure.
"""

from __future__ import annotations

import dataclasses
import json
import sys
import time
from pathlib import Path

import click
import numpy as np

from . import __version__
from .core import HyperParams, load_csv, save_csv
from .datagen import GenConfig, generate
from .errors import DelpointError, DimensionMismatch
from .bounds import privacy_floor, risk_change_bounds, risk_change_bounds_floor
from .selector import find_perfect_deleted_point, selection_to_json
from .sim import StepConfig, experiment_to_doc, run_protocol
from .snr import scan_arrays, write_scores_csv

MANIFEST_FORMAT_VERSION = 1
BOUNDS_FORMAT_VERSION = 1
SUMMARY_FORMAT_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_PERFECT_POINT = 3
EXIT_NUMERIC = 4


@dataclasses.dataclass(frozen=True)
class RunManifest:
    """Everything needed to reproduce one CLI run."""

    command: str
    config: dict
    seed: int
    artifacts: list[str]
    tool_version: str
    wall_time_s: float

    def to_doc(self) -> dict:
        return {
            "format_version": MANIFEST_FORMAT_VERSION,
            "command": self.command,
            "config": self.config,
            "seed": self.seed,
            "artifacts": self.artifacts,
            "tool_version": self.tool_version,
            "wall_time_s": self.wall_time_s,
        }


def _write_manifest(out_dir: Path, manifest: RunManifest) -> Path:
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest.to_doc(), indent=2) + "\n",
                    encoding="utf-8")
    return path


def _parse_w0(value: str | None, dim: int) -> np.ndarray:
    if value is None:
        return np.zeros(dim)
    try:
        w0 = np.array([float(v) for v in value.split(",")])
    except ValueError:
        raise DimensionMismatch(f"--w0 must be a comma-separated float list, "
                                f"got {value!r}") from None
    if w0.shape[0] != dim:
        raise DimensionMismatch(
            f"--w0 has {w0.shape[0]} entries, dataset dimension is {dim}")
    return w0


def _hyper_options(fn):
    fn = click.option("--gamma", type=float, default=0.01, show_default=True,
                      help="Learning rate.")(fn)
    fn = click.option("--sigma", type=float, default=2.0, show_default=True,
                      help="Gradient noise standard deviation.")(fn)
    fn = click.option("--alpha", type=float, default=0.01, show_default=True,
                      help="Type I error of the membership test.")(fn)
    fn = click.option("--delta", type=float, default=100.0, show_default=True,
                      help="Largest acceptable |d_v - target|.")(fn)
    fn = click.option("--w0", "w0_text", type=str, default=None,
                      help="Initial weights as a comma-separated list "
                           "(default: zeros).")(fn)
    fn = click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0,
                      show_default=True, help="Master RNG seed.")(fn)
    fn = click.option("--snr-convention",
                      type=click.Choice(["paper", "consistent"]),
                      default="paper", show_default=True,
                      help="Denominator convention for d_v.")(fn)
    fn = click.option("--tie-break", type=click.Choice(["norm-first", "paper"]),
                      default="norm-first", show_default=True,
                      help="Tie handling among near-minimal candidates.")(fn)
    return fn


def _guard(fn):
    """Translate library errors into the documented exit codes."""
    try:
        return fn()
    except (DelpointError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        click.echo(f"numeric error: {exc}", err=True)
        sys.exit(EXIT_NUMERIC)


@click.group()
@click.version_option(version=__version__, prog_name="delpoint")
def main():
    """Deleted-point analysis for one-step noisy SGD on linear regression."""


@main.command()
@click.option("--n", type=int, default=200, show_default=True)
@click.option("--x-low", type=float, default=0.0, show_default=True)
@click.option("--x-high", type=float, default=10.0, show_default=True)
@click.option("--slope", type=float, default=3.1415926535, show_default=True)
@click.option("--noise-std", type=float, default=2.0, show_default=True)
@click.option("--noise-scale", type=float, default=10.0, show_default=True)
@click.option("--extra-features", type=int, default=0, show_default=True)
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=40,
              show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False,
              path_type=Path), required=True)
def gen(n, x_low, x_high, slope, noise_std, noise_scale, extra_features,
        seed, out_dir):
    """Generate a synthetic dataset CSV plus a manifest."""
    def body():
        start = time.perf_counter()
        cfg = GenConfig(n=n, x_low=x_low, x_high=x_high, slope=slope,
                        noise_std=noise_std, noise_scale=noise_scale,
                        seed=seed, extra_features=extra_features)
        ds = generate(cfg)
        out_dir.mkdir(parents=True, exist_ok=True)
        csv_path = out_dir / "dataset.csv"
        save_csv(ds, csv_path)
        manifest = RunManifest(
            command="gen", config=dataclasses.asdict(cfg), seed=seed,
            artifacts=[csv_path.name], tool_version=__version__,
            wall_time_s=time.perf_counter() - start)
        _write_manifest(out_dir, manifest)
        click.echo(str(csv_path))
    _guard(body)


@main.command()
@click.option("--dataset", type=click.Path(exists=True, dir_okay=False,
              path_type=Path), required=True)
@_hyper_options
@click.option("--scores-csv", type=click.Path(dir_okay=False, path_type=Path),
              default=None, help="Also write the per-point scan CSV here.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False,
              path_type=Path), default=None,
              help="Directory for selection.json and the manifest.")
def select(dataset, gamma, sigma, alpha, delta, w0_text, seed,
           snr_convention, tie_break, scores_csv, out_dir):
    """Find the best single point to delete; exit 3 if none clears delta."""
    def body():
        start = time.perf_counter()
        ds = load_csv(dataset)
        hp = HyperParams(gamma=gamma, sigma=sigma, alpha=alpha, delta=delta,
                         snr_convention=snr_convention, seed=seed)
        w0 = _parse_w0(w0_text, ds.dim)
        result = find_perfect_deleted_point(ds, w0, hp, tie_break=tie_break)
        payload = selection_to_json(result)
        artifacts = []
        if scores_csv is not None:
            write_scores_csv(result.all_scores, scores_csv)
            artifacts.append(str(scores_csv))
        if out_dir is not None:
            out_dir.mkdir(parents=True, exist_ok=True)
            (out_dir / "selection.json").write_text(payload, encoding="utf-8")
            artifacts.append("selection.json")
            manifest = RunManifest(
                command="select",
                config={"dataset": str(dataset), "gamma": gamma,
                        "sigma": sigma, "alpha": alpha, "delta": delta,
                        "w0": [float(v) for v in w0],
                        "snr_convention": snr_convention,
                        "tie_break": tie_break},
                seed=seed, artifacts=artifacts, tool_version=__version__,
                wall_time_s=time.perf_counter() - start)
            _write_manifest(out_dir, manifest)
        click.echo(payload, nl=False)
        return result
    result = _guard(body)
    if result.best is None:
        sys.exit(EXIT_NO_PERFECT_POINT)


@main.command()
@click.option("--dataset", type=click.Path(exists=True, dir_okay=False,
              path_type=Path), required=True)
@_hyper_options
@click.option("--b-floor", type=float, default=None,
              help="Use the norm-floor bound variant with this B.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False,
              path_type=Path), default=None)
def bounds(dataset, gamma, sigma, alpha, delta, w0_text, seed,
           snr_convention, tie_break, b_floor, out_dir):
    """Per-point risk-change interval and privacy floor, as JSON."""
    def body():
        start = time.perf_counter()
        ds = load_csv(dataset)
        hp = HyperParams(gamma=gamma, sigma=sigma, alpha=alpha, delta=delta,
                         snr_convention=snr_convention, seed=seed)
        w0 = _parse_w0(w0_text, ds.dim)
        arrays = scan_arrays(ds, w0, hp)
        rows = []
        for pos in range(ds.n):
            eps = float(arrays["eps_v"][pos])
            if b_floor is None:
                rb = risk_change_bounds(ds, pos, w0, hp, eps)
            else:
                rb = risk_change_bounds_floor(ds, pos, w0, hp, eps, b_floor)
            pf = privacy_floor(eps, hp.alpha)
            rows.append({
                "index": int(arrays["ids"][pos]),
                "lower": rb.lower,
                "upper": rb.upper,
                "actual_delta": rb.actual_delta,
                "contained_A": rb.contained_a,
                "contained_B": rb.contained_b,
                "privacy_floor": pf.eps_lower,
            })
        doc = {"format_version": BOUNDS_FORMAT_VERSION,
               "target": arrays["target"], "rows": rows}
        payload = json.dumps(doc, indent=2) + "\n"
        if out_dir is not None:
            out_dir.mkdir(parents=True, exist_ok=True)
            (out_dir / "bounds.json").write_text(payload, encoding="utf-8")
            manifest = RunManifest(
                command="bounds",
                config={"dataset": str(dataset), "gamma": gamma,
                        "sigma": sigma, "alpha": alpha, "delta": delta,
                        "w0": [float(v) for v in w0],
                        "snr_convention": snr_convention,
                        "b_floor": b_floor},
                seed=seed, artifacts=["bounds.json"],
                tool_version=__version__,
                wall_time_s=time.perf_counter() - start)
            _write_manifest(out_dir, manifest)
        click.echo(payload, nl=False)
    _guard(body)


@main.command()
@click.option("--dataset", type=click.Path(exists=True, dir_okay=False,
              path_type=Path), required=True)
@click.option("--protocol", type=click.Choice(
              ["perfect-delete", "random-delete", "no-delete"]),
              required=True)
@click.option("--steps", type=int, default=1, show_default=True)
@click.option("--iterations", type=int, default=100, show_default=True)
@click.option("--bins", type=int, default=30, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Parallel worker processes for iterations.")
@_hyper_options
@click.option("--out", "out_dir", type=click.Path(file_okay=False,
              path_type=Path), required=True)
def simulate(dataset, protocol, steps, iterations, bins, jobs, gamma, sigma,
             alpha, delta, w0_text, seed, snr_convention, tie_break, out_dir):
    """Run a multi-step deletion protocol; write weights.csv + summary.json."""
    def body():
        start = time.perf_counter()
        ds = load_csv(dataset)
        hp = HyperParams(gamma=gamma, sigma=sigma, alpha=alpha, delta=delta,
                         snr_convention=snr_convention, seed=seed)
        w0 = _parse_w0(w0_text, ds.dim)
        cfg = StepConfig(protocol=protocol.replace("-", "_"), steps=steps,
                         iterations=iterations, hp=hp, w0=w0, bins=bins,
                         tie_break=tie_break)
        result = run_protocol(cfg, ds, jobs=jobs)
        out_dir.mkdir(parents=True, exist_ok=True)

        weights_path = out_dir / "weights.csv"
        with open(weights_path, "w", newline="", encoding="utf-8") as fh:
            fh.write(",".join(["iteration"]
                              + [f"w{j}" for j in range(ds.dim)]) + "\n")
            for it in range(iterations):
                row = [str(it)] + [repr(float(v))
                                   for v in result.final_weights[it]]
                fh.write(",".join(row) + "\n")

        config_doc = {
            "dataset": str(dataset), "protocol": cfg.protocol,
            "steps": steps, "iterations": iterations, "bins": bins,
            "gamma": gamma, "sigma": sigma, "alpha": alpha, "delta": delta,
            "w0": [float(v) for v in w0], "seed": seed,
            "snr_convention": snr_convention, "tie_break": tie_break,
        }
        summary_doc = {"format_version": SUMMARY_FORMAT_VERSION,
                       "config": config_doc} | experiment_to_doc(result)
        summary_path = out_dir / "summary.json"
        summary_path.write_text(json.dumps(summary_doc, indent=2) + "\n",
                                encoding="utf-8")

        manifest = RunManifest(
            command="simulate", config=config_doc, seed=seed,
            artifacts=[weights_path.name, summary_path.name],
            tool_version=__version__,
            wall_time_s=time.perf_counter() - start)
        _write_manifest(out_dir, manifest)
        click.echo(str(summary_path))
    _guard(body)


@main.command()
@click.argument("summaries", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0,
              show_default=True, help="Recorded in the manifest (no RNG use).")
@click.option("--out", "out_dir", type=click.Path(file_okay=False,
              path_type=Path), default=None)
def report(summaries, seed, out_dir):
    """Render a protocol-by-steps table from simulate summary files."""
    def body():
        start = time.perf_counter()
        rows = []
        for path in summaries:
            doc = json.loads(path.read_text(encoding="utf-8"))
            cfg = doc["config"]
            rows.append((int(cfg["steps"]), str(cfg["protocol"]),
                         doc["mean"], doc["variance"]))
        rows.sort(key=lambda r: (r[0], r[1]))
        lines = ["| steps | protocol | mean | variance |",
                 "|------:|----------|------|----------|"]
        for steps, protocol, mean, variance in rows:
            mean_s = ", ".join(repr(v) for v in mean)
            var_s = ", ".join(repr(v) for v in variance)
            lines.append(f"| {steps} | {protocol} | {mean_s} | {var_s} |")
        text = "\n".join(lines) + "\n"
        if out_dir is not None:
            out_dir.mkdir(parents=True, exist_ok=True)
            (out_dir / "report.md").write_text(text, encoding="utf-8")
            manifest = RunManifest(
                command="report",
                config={"summaries": [str(p) for p in summaries]},
                seed=seed, artifacts=["report.md"], tool_version=__version__,
                wall_time_s=time.perf_counter() - start)
            _write_manifest(out_dir, manifest)
        click.echo(text, nl=False)
    _guard(body)


if __name__ == "__main__":
    main()

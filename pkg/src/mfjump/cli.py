"""Command-line front end.

    mfjump {simulate,spectrum,diagnose,tangent} [--config PATH] [--seed N] [--out DIR]

Exit status is 0 on success, 2 on invalid input and 3 on I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from ._io import atomic_write_text, fmt17
from .config import ConfigError, ExperimentConfig, load_config
from .points import covering_fraction, generate_points, make_rng, overlap_counts
from .regularity import regularity_field
from .sde import simulate_M, truncation_error_bound
from .spectrum import (NoJumpsError, coarse_grained_spectrum, interval_spectrum_curve,
                       local_spectrum, SpectrumCurve)
from .svg import spectrum_svg
from .tangent import tangent_report

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 2, 3


def _simulate(cfg: ExperimentConfig):
    gamma = cfg.gamma()
    points = generate_points(cfg.horizon, cfg.truncation(), cfg.seed)
    return gamma, points, simulate_M(gamma, points)


def cmd_simulate(cfg: ExperimentConfig, out: Path, echo=print) -> dict:
    gamma, points, path = _simulate(cfg)
    points.to_csv(out / "points.csv")
    path.to_csv(out / "path.csv")
    path.sampled_csv(out / "path_sampled.csv", cfg.sample_points)
    z_max = cfg.truncation()
    bound = truncation_error_bound(cfg.epsilon, z_max, cfg.horizon) if z_max > 0 else float("inf")
    echo(f"events: {points.count}")
    echo(f"M(horizon): {fmt17(path.end_value)}")
    echo(f"truncation error bound: {fmt17(bound)}")
    return {"points": points, "path": path, "bound": bound}


def cmd_spectrum(cfg: ExperimentConfig, out: Path, echo=print) -> dict:
    gamma, points, path = _simulate(cfg)
    hs = cfg.h_values()
    theory = interval_spectrum_curve(path, gamma, cfg.a, cfg.b, hs)
    theory.to_csv(out / "spectrum_theory.csv")
    curves = [("D_M(I, h)", theory.h, theory.d)]
    for i, t in enumerate(cfg.local_times):
        d = np.array([np.nan if (v := local_spectrum(path, gamma, t, h)) is None else v
                      for h in hs.tolist()])
        local = SpectrumCurve(hs, d, (t, t), "local_theory")
        local.to_csv(out / f"spectrum_local_{i}.csv")
        curves.append((f"D_M({t:g}, h)", hs, d))
    coarse = coarse_grained_spectrum(path, cfg.coarse_j, cfg.bin_width)
    coarse.to_csv(out / "spectrum_coarse.csv")
    spectrum_svg(out / "spectrum.svg", curves, [("coarse-grained", coarse.h, coarse.d)],
                 title=f"spectra on ({cfg.a:g}, {cfg.b:g}), seed {cfg.seed}")
    echo(f"jumps in interval: {int(np.sum((path.jump_times > cfg.a) & (path.jump_times < cfg.b)))}")
    echo(f"max theory value: {fmt17(np.nanmax(theory.d))}")
    return {"path": path, "theory": theory, "coarse": coarse}


def cmd_diagnose(cfg: ExperimentConfig, out: Path, echo=print) -> dict:
    gamma, points, path = _simulate(cfg)
    grid = np.sort(make_rng(cfg.seed + 1).uniform(0.0, cfg.horizon, cfg.n_times))
    field = regularity_field(path, points, gamma, grid, cfg.j_lo, cfg.j_hi,
                             cfg.j_window, cfg.delta_cap)
    field.to_csv(out / "regularity.csv")
    j_top = max(int(np.floor(np.log2(max(cfg.truncation(), 1.0)))), 0)
    counts = overlap_counts(points, 0, j_top)
    atomic_write_text(out / "redundancy.csv",
                      "j,N_j\n" + "".join(f"{j},{n}\n" for j, n in enumerate(counts.tolist())))
    cover = [(d, covering_fraction(points, d, cfg.grid_resolution)) for d in cfg.deltas]
    atomic_write_text(out / "covering.csv",
                      "delta,fraction\n" + "".join(f"{fmt17(d)},{fmt17(f)}\n" for d, f in cover))
    med = float(np.median(field.delta_hat))
    echo(f"median delta_hat: {fmt17(med)}")
    for d, f in cover:
        echo(f"covering fraction at delta={d:g}: {f:.6f}")
    return {"field": field, "counts": counts, "covering": cover, "median_delta": med}


def cmd_tangent(cfg: ExperimentConfig, out: Path, echo=print) -> dict:
    gamma, points, path = _simulate(cfg)
    report = tangent_report(gamma, cfg.t0, path, cfg.tangent_alphas, cfg.tangent_n,
                            seed=cfg.seed)
    report.to_csv(out / "tangent.csv")
    for a, d in zip(report.alpha_levels.tolist(), report.ks_distances.tolist()):
        echo(f"alpha={a:g}  ks={d:.5f}")
    return {"report": report}


COMMANDS = {
    "simulate": cmd_simulate,
    "spectrum": cmd_spectrum,
    "diagnose": cmd_diagnose,
    "tangent": cmd_tangent,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mfjump", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", type=Path, help="configuration file (default: built-in)")
    parser.add_argument("--seed", type=int, help="override the configured seed")
    parser.add_argument("--out", type=Path, help="output directory")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else ExperimentConfig()
        cfg = cfg.with_seed(args.seed)
        if args.out is not None:
            cfg = replace(cfg, out_dir=str(args.out))
        out = Path(cfg.out_dir)
        COMMANDS[args.command](cfg, out)
    except (ConfigError, NoJumpsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        name = getattr(exc, "filename", None)
        where = f" ({name})" if name else ""
        print(f"I/O error{where}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``dressedlambda <command> --config run.toml --out dir``.

Every command writes ``<command>.csv`` into the output directory. CSV files
start with comment lines (tool version, config hash, units note), then one
header row, then data. Nothing time-dependent goes into the files, so two runs
with the same config and version produce identical bytes.
"""
import argparse
import datetime
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .config import load_config
from .dressed import classify_regime, diagonalize_system, rate_curves
from .dynamics.response import reflection_map
from .dynamics.spectrum import down_conversion_efficiency, output_spectrum
from .errors import ConfigError, InvalidParameters, NumericalError
from .matching import DEFAULT_BRACKET, Level, find_both, find_matching_power
from .model import to_ghz, to_mhz

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3
UNITS_NOTE = "# units: config and CSV frequencies are ordinary (GHz/MHz); internally omega = 2*pi*f rad/s"
COMMANDS = ("levels", "rates", "match", "reflect", "spectrum", "efficiency", "validate")


@dataclass(frozen=True)
class Axis:
    name: str
    unit: str
    values: np.ndarray


@dataclass(frozen=True)
class SweepResult:
    """Values on the cartesian product of ``axes`` plus run metadata."""

    axes: tuple
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        shape = tuple(len(ax.values) for ax in self.axes)
        if np.shape(self.values) != shape:
            raise ValueError(f"values shape {np.shape(self.values)} does not match axes {shape}")


def fmt(x):
    if isinstance(x, str):
        return x
    return f"{float(x):.10g}"


def write_csv(path, header, rows, comments=()):
    lines = list(comments) + [header]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _metadata(cfg):
    return {
        "config_sha256": cfg.sha256,
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def _comments(cfg, *extra):
    return [f"# dressedlambda {__version__} config_sha256={cfg.sha256}", UNITS_NOTE, *extra]


def _drive_params(cfg):
    """Params with the configured Rabi frequency, or at the level-4 matching point."""
    if "rabi" in cfg.raw:
        return cfg.params, "config"
    match = find_matching_power(cfg.params, Level.FOUR, _bracket(cfg))
    return match.params, "matching point"


def _bracket(cfg):
    return (cfg.optional("bracket_lo", DEFAULT_BRACKET[0]),
            cfg.optional("bracket_hi", DEFAULT_BRACKET[1]))


def cmd_levels(cfg, out, workers):
    p = cfg.params
    basis = diagonalize_system(p)
    regime = classify_regime(p)
    e0 = basis.energies[0]
    rows = []
    for j in range(basis.dim):
        lab = basis.labels[j]
        label = "mixed" if lab is None else f"{lab[0]}{lab[1]}"
        rows.append([j + 1, to_mhz(basis.energies[j] - e0), label, basis.weights[j],
                     to_ghz(p.omega_d + basis.energies[j] - e0)])
    comments = _comments(cfg, f"# regime={regime.kind.value} chi_MHz={fmt(to_mhz(regime.chi))} "
                              f"rabi_MHz={fmt(to_mhz(p.rabi))}")
    write_csv(os.path.join(out, "levels.csv"), "level,energy_MHz,label,weight,lab_transition_GHz",
              rows, comments)
    return SweepResult((Axis("level", "", np.arange(1, basis.dim + 1)),),
                       basis.energies - e0, _metadata(cfg))


def cmd_rates(cfg, out, workers):
    grid = cfg.grid("rabi")
    curves = rate_curves(cfg.params, grid) / (2 * np.pi * 1e6)
    rows = [[to_mhz(r), *c] for r, c in zip(grid, curves)]
    write_csv(os.path.join(out, "rates.csv"), "rabi_MHz,k31_MHz,k32_MHz,k41_MHz,k42_MHz",
              rows, _comments(cfg))
    return SweepResult((Axis("rabi", "MHz", to_mhz(grid)),
                        Axis("rate", "MHz", np.array(["k31", "k32", "k41", "k42"]))),
                       curves, _metadata(cfg))


def cmd_match(cfg, out, workers):
    points = find_both(cfg.params, _bracket(cfg))
    rows = [[int(lv), to_mhz(points[lv].rabi), points[lv].residual] for lv in Level]
    write_csv(os.path.join(out, "match.csv"), "level,rabi_MHz,residual", rows, _comments(cfg))
    return SweepResult((Axis("level", "", np.array([int(lv) for lv in Level])),),
                       np.array([to_mhz(points[lv].rabi) for lv in Level]), _metadata(cfg))


def cmd_reflect(cfg, out, workers):
    rabis, probes = cfg.grid("rabi"), cfg.grid("probe")
    r = np.abs(reflection_map(cfg.params, rabis, probes, workers))
    rows = [[to_mhz(a), to_ghz(w), r[i, k]]
            for i, a in enumerate(rabis) for k, w in enumerate(probes)]
    write_csv(os.path.join(out, "reflect.csv"), "rabi_MHz,probe_GHz,abs_r", rows, _comments(cfg))
    return SweepResult((Axis("rabi", "MHz", to_mhz(rabis)), Axis("probe", "GHz", to_ghz(probes))),
                       r, _metadata(cfg))


def _probe_freq(cfg, p):
    if "probe" in cfg.raw:
        return cfg.extras["probe"]
    return p.omega_d + diagonalize_system(p).transition(4, 1)


def cmd_spectrum(cfg, out, workers):
    flux = cfg.require("probe_flux")
    freqs = cfg.grid("freq")
    p, source = _drive_params(cfg)
    wp = _probe_freq(cfg, p)
    spec = output_spectrum(p, wp, np.sqrt(flux), freqs)
    s_inc = spec.s_inc * 2 * np.pi * 1e9  # per rad/s -> per GHz
    comments = _comments(
        cfg,
        f"# drive: rabi_MHz={fmt(to_mhz(p.rabi))} ({source}); s_inc in photons_per_s per GHz",
        f"# coherent_flux={fmt(spec.coherent_flux)} photons_per_s at probe_GHz={fmt(to_ghz(wp))}",
    )
    rows = [[to_ghz(f), s] for f, s in zip(freqs, s_inc)]
    write_csv(os.path.join(out, "spectrum.csv"), "freq_GHz,s_inc", rows, comments)
    return SweepResult((Axis("freq", "GHz", to_ghz(freqs)),), s_inc, _metadata(cfg))


def cmd_efficiency(cfg, out, workers):
    fluxes = cfg.require("probe_fluxes")
    p, source = _drive_params(cfg)
    wp = _probe_freq(cfg, p)
    points = down_conversion_efficiency(p, fluxes, wp)
    rows = [[pt.input_flux, pt.eta] for pt in points]
    comments = _comments(cfg, f"# drive: rabi_MHz={fmt(to_mhz(p.rabi))} ({source}); "
                              f"probe_GHz={fmt(to_ghz(wp))}")
    write_csv(os.path.join(out, "efficiency.csv"), "input_flux_photons_per_s,eta", rows, comments)
    return SweepResult((Axis("input_flux", "photons/s", np.array(fluxes)),),
                       np.array([pt.eta for pt in points]), _metadata(cfg))


def cmd_validate(cfg, out, workers):
    from .validation import run_suite

    results = run_suite()
    for c in results:
        print(c.line())
    rows = [[c.name, "pass" if c.passed else "fail", c.value, c.bound] for c in results]
    write_csv(os.path.join(out, "validate.csv"), "check,status,value,bound", rows, _comments(cfg))
    if not all(c.passed for c in results):
        failed = [c.name for c in results if not c.passed]
        raise NumericalError("invariant checks failed: " + "; ".join(failed))
    return None


HANDLERS = {
    "levels": cmd_levels,
    "rates": cmd_rates,
    "match": cmd_match,
    "reflect": cmd_reflect,
    "spectrum": cmd_spectrum,
    "efficiency": cmd_efficiency,
    "validate": cmd_validate,
}


def plot_result(result, path):
    """Line plot for 1-axis results, heatmap for 2-axis numeric grids (SVG)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "dressedlambda"
    fig, ax = plt.subplots(figsize=(6, 4))
    axes = result.axes
    if len(axes) == 2 and axes[1].values.dtype.kind in "fi":
        x, y = axes[1].values, axes[0].values
        im = ax.pcolormesh(x, y, result.values, shading="auto")
        fig.colorbar(im, ax=ax)
        ax.set_xlabel(f"{axes[1].name} ({axes[1].unit})")
        ax.set_ylabel(f"{axes[0].name} ({axes[0].unit})")
    else:
        x = axes[0].values
        vals = np.asarray(result.values, dtype=float)
        if vals.ndim == 1:
            ax.plot(x, vals)
        else:
            for k, name in enumerate(axes[1].values):
                ax.plot(x, vals[:, k], label=str(name))
            ax.legend()
        ax.set_xlabel(f"{axes[0].name} ({axes[0].unit})")
        if axes[0].name == "input_flux":
            ax.set_xscale("log")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def build_parser():
    parser = argparse.ArgumentParser(prog="dressedlambda",
                                     description="Driven qubit-resonator Lambda-system sweeps.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, help=(HANDLERS[name].__doc__ or name).strip())
        sp.add_argument("--config", required=True, help="flat TOML run configuration")
        sp.add_argument("--out", default=None, help="output directory (default: config out_dir or .)")
        sp.add_argument("--workers", type=int, default=None,
                        help="worker processes for grid sweeps (default: config or CPU count)")
        sp.add_argument("--plot", action="store_true", help="also write an SVG plot")
    return parser


def run_command(argv=None):
    """Parse ``argv``, run one command, return the exit code."""
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        key = f" [key: {exc.key}]" if getattr(exc, "key", None) else ""
        print(f"config error: {type(exc).__name__}: {exc}{key}", file=sys.stderr)
        return EXIT_CONFIG
    out = args.out or cfg.out_dir or "."
    workers = args.workers if args.workers is not None else cfg.workers
    workers = workers or os.cpu_count() or 1
    try:
        os.makedirs(out, exist_ok=True)
        result = HANDLERS[args.command](cfg, out, workers)
        if args.plot and result is not None:
            plot_result(result, os.path.join(out, f"{args.command}.svg"))
    except ConfigError as exc:
        key = f" [key: {exc.key}]" if getattr(exc, "key", None) else ""
        print(f"config error: {type(exc).__name__}: {exc}{key}", file=sys.stderr)
        return EXIT_CONFIG
    except InvalidParameters as exc:
        print(f"config error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()

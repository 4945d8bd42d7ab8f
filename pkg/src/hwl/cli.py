"""Command-line surface: generate signals, transform them, analyze, render.

Subcommands
-----------
gen      write a generator sampled on a grid to CSV
hilbert  transform a signal CSV by either engine (sidecar JSON records the
         method and configuration)
analyze  decay | moments | sobolev | bedrosian | certificate | tail-limit |
         partition; always writes a JSON report, with a ``pass`` flag when
         an expectation was given (CI consumes reports, not exit codes)
figure   render one of the three standard figures as SVG

Grids are given as ``min:max:step`` with count = floor((max-min)/step) + 1;
exit codes: 0 success, 2 usage error, 3 data error.  The HWL_THREADS
environment variable advises the PV engine's parallelism (output is
identical regardless).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import TOOL_VERSION
from .errors import (
    FitWindowError,
    GridTooNarrowError,
    InvalidParameterError,
    ParseError,
    SchemaError,
)
from .numerics import Grid, SampledSignal
from . import wavelets
from .hilbert import PvConfig, SpectralConfig, hilbert_pv, hilbert_spectral
from . import analysis
from .report_io import (
    FigureSpec,
    PanelSpec,
    read_signal_csv,
    render_figure,
    write_report_json,
    write_signal_csv,
)

MAX_GRID_COUNT = 2 ** 24

WAVELET_NAMES = (
    "haar-scaling",
    "haar-wavelet",
    "bspline-scaling",
    "spline-wavelet",
    "sinc2-cos",
    "gauss-cos",
    "box",
)


class UsageError(ValueError):
    pass


def parse_grid(text: str) -> Grid:
    """Parse ``min:max:step``; count = floor((max-min)/step) + 1."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be min:max:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"grid fields must be numbers: {text!r}") from None
    if not (lo < hi and step > 0):
        raise UsageError(f"grid needs min < max and step > 0, got {text!r}")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    if count > MAX_GRID_COUNT:
        raise UsageError(f"grid would have {count} samples (cap {MAX_GRID_COUNT})")
    if count < 2:
        raise UsageError(f"grid has fewer than 2 samples: {text!r}")
    return Grid(lo, step, count)


def parse_wavelet(text: str):
    """Parse ``NAME[,param,...]`` into a generator object.

    Parameter grammar: bspline-scaling,DEG  spline-wavelet,DEG
    sinc2-cos,OMEGA0[,PHASE]  gauss-cos,SIGMA,OMEGA0[,PHASE]  box,A,B.
    """
    name, *raw = text.split(",")
    if name not in WAVELET_NAMES:
        raise UsageError(f"unknown wavelet {name!r}; choose from {', '.join(WAVELET_NAMES)}")
    try:
        params = [float(p) for p in raw]
    except ValueError:
        raise UsageError(f"non-numeric wavelet parameter in {text!r}") from None

    def need(k):
        if len(params) != k:
            raise UsageError(f"{name} takes {k} parameter(s), got {len(params)}")

    try:
        if name == "haar-scaling":
            need(0)
            return wavelets.make_haar_scaling()
        if name == "haar-wavelet":
            need(0)
            return wavelets.make_haar_wavelet()
        if name == "bspline-scaling":
            need(1)
            return wavelets.make_bspline_scaling(int(params[0]))
        if name == "spline-wavelet":
            need(1)
            return wavelets.make_spline_wavelet(int(params[0]))
        if name == "sinc2-cos":
            if len(params) not in (1, 2):
                raise UsageError("sinc2-cos takes OMEGA0[,PHASE]")
            return wavelets.make_modulated_window(
                "sinc2", params[0], phase=params[1] if len(params) == 2 else 0.0
            )
        if name == "gauss-cos":
            if len(params) not in (2, 3):
                raise UsageError("gauss-cos takes SIGMA,OMEGA0[,PHASE]")
            return wavelets.make_modulated_window(
                "gauss", params[1], phase=params[2] if len(params) == 3 else 0.0,
                sigma=params[0],
            )
        if name == "box":
            need(2)
            return wavelets.make_box(params[0], params[1])
    except InvalidParameterError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"unknown wavelet {name!r}")


def _digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _write_run_json(path, kind: str, input_digest: str, payload: dict) -> None:
    obj = {"kind": kind, "tool_version": TOOL_VERSION, "input_digest": input_digest}
    obj.update(payload)
    Path(path).write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")


# --------------------------------------------------------------------------
# subcommand handlers
# --------------------------------------------------------------------------

def cmd_gen(args) -> int:
    spec = parse_wavelet(args.wavelet)
    grid = parse_grid(args.grid)
    write_signal_csv(wavelets.sample(spec, grid), args.out)
    return 0


def cmd_hilbert(args) -> int:
    f = read_signal_csv(getattr(args, "in"))
    digest = _digest(getattr(args, "in"))
    if args.method == "pv":
        cfg = PvConfig(singularity_correction=not args.no_correction)
        out = hilbert_pv(f, cfg)
        meta = {
            "method": "pv",
            "singularity_correction": cfg.singularity_correction,
        }
    else:
        cfg = SpectralConfig(pad_factor=args.pad)
        out = hilbert_spectral(f, cfg)
        meta = {"method": "spectral", "pad_factor": cfg.pad_factor}
    write_signal_csv(out, args.out)
    _write_run_json(str(args.out) + ".meta.json", "hilbert_run", digest, meta)
    return 0


def _pass_and_params(checks: dict[str, bool | None], params: dict) -> dict:
    applied = {k: v for k, v in checks.items() if v is not None}
    out = {"parameters": params, "checks": applied}
    out["pass"] = all(applied.values()) if applied else True
    return out


def cmd_analyze_decay(args) -> int:
    f = read_signal_csv(getattr(args, "in"))
    lo, hi = (float(p) for p in args.window.split(":"))
    fit = analysis.fit_decay(f, (lo, hi), side=args.side)
    checks = {}
    if args.expect_exponent is not None:
        checks["exponent"] = abs(fit.exponent - args.expect_exponent) <= args.exponent_tol
    if args.min_exponent is not None:
        checks["min_exponent"] = fit.exponent >= args.min_exponent
    if args.min_r2 is not None:
        checks["r_squared"] = fit.r_squared > args.min_r2
    write_report_json(
        fit, args.json, input_digest=_digest(getattr(args, "in")),
        extra=_pass_and_params(checks, {"window": [lo, hi], "side": args.side}),
    )
    return 0


def cmd_analyze_moments(args) -> int:
    f = read_signal_csv(getattr(args, "in"))
    report = analysis.moments(f, args.max_order, tolerance=args.tolerance)
    checks = {}
    if args.expect_count is not None:
        checks["vanishing_count"] = report.vanishing_count >= args.expect_count
    write_report_json(
        report, args.json, input_digest=_digest(getattr(args, "in")),
        extra=_pass_and_params(checks, {"max_order": args.max_order,
                                        "tolerance": args.tolerance}),
    )
    return 0


def cmd_analyze_sobolev(args) -> int:
    f = read_signal_csv(getattr(args, "in"))
    gammas = [float(g) for g in args.gammas.split(",")]
    est = analysis.smoothness_profile(f, gammas)
    checks = {}
    if args.expect_order is not None:
        checks["smoothness_order"] = est.smoothness_order == args.expect_order
    write_report_json(
        est, args.json, input_digest=_digest(getattr(args, "in")),
        extra=_pass_and_params(checks, {"gammas": gammas}),
    )
    return 0


def cmd_analyze_bedrosian(args) -> int:
    grid = parse_grid(args.grid)
    residual = analysis.bedrosian_residual(args.window, args.omega0, grid, sigma=args.sigma)
    checks = {}
    if args.max_residual is not None:
        checks["max_residual"] = residual < args.max_residual
    if args.min_residual is not None:
        checks["min_residual"] = residual > args.min_residual
    _write_run_json(
        args.json, "bedrosian_residual", "",
        {
            "residual": residual,
            **_pass_and_params(checks, {
                "window": args.window, "omega0": args.omega0,
                "sigma": args.sigma, "grid": args.grid,
            }),
        },
    )
    return 0


def cmd_analyze_certificate(args) -> int:
    psi = read_signal_csv(args.psi)
    hpsi = read_signal_csv(args.hpsi)
    cert = analysis.theorem_certificate(psi, hpsi, args.order)
    checks = {}
    if args.expect_stable is not None:
        checks["stable"] = cert.stable == (args.expect_stable == "true")
    digest = f"{_digest(args.psi)},{_digest(args.hpsi)}"
    write_report_json(
        cert, args.json, input_digest=digest,
        extra=_pass_and_params(checks, {"order": args.order}),
    )
    return 0


def cmd_analyze_tail_limit(args) -> int:
    f = read_signal_csv(getattr(args, "in"))
    hf = read_signal_csv(args.hilbert)
    probe, predicted = analysis.tail_limit(f, hf, args.probe)
    checks = {}
    if args.rel_tol is not None:
        checks["relative_agreement"] = abs(probe - predicted) <= args.rel_tol * abs(predicted)
    digest = f"{_digest(getattr(args, 'in'))},{_digest(args.hilbert)}"
    _write_run_json(
        args.json, "tail_limit", digest,
        {
            "probe_value": probe,
            "predicted": predicted,
            **_pass_and_params(checks, {"probe": args.probe}),
        },
    )
    return 0


def cmd_analyze_partition(args) -> int:
    spec = parse_wavelet(args.wavelet)
    grid = parse_grid(args.grid)
    dev = analysis.partition_deviation(spec, args.k, args.transformed, grid)
    x = dev.x()
    center = 0.5 * (x[0] + x[-1])
    central = np.abs(x - center) <= args.central_halfwidth
    max_abs = float(np.max(np.abs(dev.values[central])))
    min_abs = float(np.min(np.abs(dev.values[central])))
    checks = {}
    if args.max_central is not None:
        checks["max_central_deviation"] = max_abs < args.max_central
    if args.min_central is not None:
        checks["min_central_deviation"] = min_abs > args.min_central
    if args.out_csv:
        write_signal_csv(dev, args.out_csv)
    _write_run_json(
        args.json, "partition_deviation", "",
        {
            "max_abs_central": max_abs,
            "min_abs_central": min_abs,
            **_pass_and_params(checks, {
                "wavelet": args.wavelet, "k": args.k,
                "transformed": args.transformed, "grid": args.grid,
                "central_halfwidth": args.central_halfwidth,
            }),
        },
    )
    return 0


# --------------------------------------------------------------------------
# figures
# --------------------------------------------------------------------------

def build_figure(figure_id: int) -> FigureSpec:
    """Run the generator -> transform -> panel chain for a standard figure."""
    step = 2.0 ** -8
    if figure_id == 1:
        grid = Grid(-8.0, step, int(16 / step) + 1)
        panels = []
        for title, spec in (
            ("(a) Haar scaling function", wavelets.make_haar_scaling()),
            ("(b) cubic B-spline", wavelets.make_bspline_scaling(3)),
        ):
            sig = wavelets.sample(spec, grid)
            panels.append(PanelSpec(
                curves=((sig, "original"), (hilbert_spectral(sig), "transformed")),
                title=title,
            ))
        return FigureSpec(figure_id=1, panels=tuple(panels))
    if figure_id == 2:
        # grid offset by half a step so the singular point x = 0 is never
        # sampled; the column through it is clipped by the y-range
        grid = Grid(-4.0 + step / 2.0, step, int(8 / step))
        x = grid.abscissas()
        kernel = SampledSignal(grid, 1.0 / (np.pi * x))
        panel = PanelSpec(curves=((kernel, "kernel"),),
                          title="convolution kernel 1/(pi x)", y_range=(-5.0, 5.0))
        return FigureSpec(figure_id=2, panels=(panel,))
    if figure_id == 3:
        grid = Grid(-6.0, step, int(12 / step) + 1)
        panels = []
        for d in range(4):
            sig = wavelets.sample(wavelets.make_spline_wavelet(d), grid)
            panels.append(PanelSpec(
                curves=((sig, "original"), (hilbert_spectral(sig), "transformed")),
                title=f"degree {d}",
            ))
        return FigureSpec(figure_id=3, panels=tuple(panels))
    raise UsageError(f"no figure with id {figure_id}")


def cmd_figure(args) -> int:
    render_figure(build_figure(args.id), args.out)
    return 0


# --------------------------------------------------------------------------
# parser wiring
# --------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hwl",
        description="Hilbert transforms of wavelets: generators, dual engines, certification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample a generator to CSV")
    p.add_argument("--wavelet", required=True, help="NAME[,param,...]; see docs")
    p.add_argument("--grid", required=True, help="min:max:step")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("hilbert", help="transform a signal CSV")
    p.add_argument("--method", required=True, choices=("pv", "spectral"))
    p.add_argument("--pad", type=int, default=16, help="spectral zero-padding factor")
    p.add_argument("--no-correction", action="store_true",
                   help="disable the PV singularity correction term")
    p.add_argument("--in", required=True, dest="in")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_hilbert)

    pa = sub.add_parser("analyze", help="run an analysis and write a JSON report")
    asub = pa.add_subparsers(dest="analysis", required=True)

    p = asub.add_parser("decay")
    p.add_argument("--in", required=True, dest="in")
    p.add_argument("--window", required=True, help="lo:hi in |x|")
    p.add_argument("--side", default="two_sided", choices=("left", "right", "two_sided"))
    p.add_argument("--expect-exponent", type=float, default=None)
    p.add_argument("--exponent-tol", type=float, default=0.1)
    p.add_argument("--min-exponent", type=float, default=None)
    p.add_argument("--min-r2", type=float, default=None)
    p.add_argument("--json", required=True)
    p.set_defaults(func=cmd_analyze_decay)

    p = asub.add_parser("moments")
    p.add_argument("--in", required=True, dest="in")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--tolerance", type=float, default=None,
                   help="absolute moment tolerance (default: truncation-aware)")
    p.add_argument("--expect-count", type=int, default=None)
    p.add_argument("--json", required=True)
    p.set_defaults(func=cmd_analyze_moments)

    p = asub.add_parser("sobolev")
    p.add_argument("--in", required=True, dest="in")
    p.add_argument("--gammas", default="0,0.75,1.5,2,2.75,3,3.25,4")
    p.add_argument("--expect-order", type=int, default=None)
    p.add_argument("--json", required=True)
    p.set_defaults(func=cmd_analyze_sobolev)

    p = asub.add_parser("bedrosian")
    p.add_argument("--window", required=True, choices=("sinc2", "gauss"))
    p.add_argument("--omega0", type=float, required=True)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--grid", required=True)
    p.add_argument("--max-residual", type=float, default=None)
    p.add_argument("--min-residual", type=float, default=None)
    p.add_argument("--json", required=True)
    p.set_defaults(func=cmd_analyze_bedrosian)

    p = asub.add_parser("certificate")
    p.add_argument("--psi", required=True)
    p.add_argument("--hpsi", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--expect-stable", choices=("true", "false"), default=None)
    p.add_argument("--json", required=True)
    p.set_defaults(func=cmd_analyze_certificate)

    p = asub.add_parser("tail-limit")
    p.add_argument("--in", required=True, dest="in")
    p.add_argument("--hilbert", required=True)
    p.add_argument("--probe", type=float, required=True)
    p.add_argument("--rel-tol", type=float, default=None)
    p.add_argument("--json", required=True)
    p.set_defaults(func=cmd_analyze_tail_limit)

    p = asub.add_parser("partition")
    p.add_argument("--wavelet", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--transformed", action="store_true")
    p.add_argument("--grid", required=True)
    p.add_argument("--central-halfwidth", type=float, default=2.0)
    p.add_argument("--max-central", type=float, default=None)
    p.add_argument("--min-central", type=float, default=None)
    p.add_argument("--out-csv", default=None)
    p.add_argument("--json", required=True)
    p.set_defaults(func=cmd_analyze_partition)

    p = sub.add_parser("figure", help="render a standard figure as SVG")
    p.add_argument("--id", type=int, required=True, choices=(1, 2, 3))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_figure)

    return parser


# options whose values can legitimately begin with "-" (grids reaching into
# negative x, negative probes); they are joined with "=" before parsing so
# argparse does not mistake the value for a flag
_DASH_VALUE_FLAGS = {
    "--grid", "--window", "--probe", "--omega0", "--sigma",
    "--expect-exponent", "--exponent-tol", "--min-exponent", "--min-r2",
    "--tolerance", "--max-residual", "--min-residual", "--rel-tol",
    "--central-halfwidth", "--max-central", "--min-central",
}


def _absorb_dash_values(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _DASH_VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_absorb_dash_values(list(argv)))
    try:
        return args.func(args)
    except (UsageError, InvalidParameterError, GridTooNarrowError) as exc:
        print(f"hwl: {exc}", file=sys.stderr)
        return 2
    except (ParseError, SchemaError, FitWindowError, OSError) as exc:
        print(f"hwl: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front-end wiring the library into user workflows.

Subcommands are pure functions of their inputs (config, files, flags,
seed): identical invocations produce byte-identical CSV and SVG outputs.
All files land inside the configured output directory.  On failure the
tool prints a single-line ``error: <Type>: <message>`` to stderr and
exits nonzero.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .calibration import fit_angle_model, load_model, predict_angle, save_model, usable_range
from .config import OBJECTIVE_NAMES, RunConfig, load_config
from .curve_io import read_curve_csv, write_curve_csv, write_points_csv, write_sweep_csv
from .design import grid_sweep
from .errors import FibreSenseError
from .geometry import outline_points
from .kinematics import reconstruct_shape
from .response import NoiseModel
from .response import simulate_response as _simulate
from .svgplot import curves_svg, points_svg, shape_svg


def _out_dir(args, cfg: RunConfig | None = None) -> Path:
    raw = args.output_dir
    if raw is None:
        raw = cfg.output_dir if cfg is not None else "out"
    path = Path(raw)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _parse_floats(raw: str) -> list[float]:
    try:
        return [float(tok) for tok in raw.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"expected comma-separated numbers, got {raw!r}") from exc


def _parse_window(raw: str | None) -> tuple[float, float] | None:
    if raw is None:
        return None
    vals = _parse_floats(raw)
    if len(vals) != 2:
        raise ValueError(f"expected LO,HI window, got {raw!r}")
    return (vals[0], vals[1])


def _noise_for_run(cfg: RunConfig, seed: int | None) -> NoiseModel | None:
    if seed is None:
        return cfg.noise
    base = cfg.noise if cfg.noise is not None else NoiseModel()
    return replace(base, seed=seed)


def cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    out = _out_dir(args, cfg)
    names = [args.profile] if args.profile else list(cfg.profiles)
    noise = _noise_for_run(cfg, args.seed)
    plot = cfg.plot if args.plot is None else args.plot
    png = cfg.png or args.png
    for name in names:
        _, profile = cfg.profile(name)
        mount = cfg.mount_for(profile)
        fiber = cfg.fiber_for(profile, mount)
        grid = cfg.grid_for(profile, mount)
        curve = _simulate(fiber, profile, mount, grid, noise)
        csv_path = out / f"{name}.csv"
        write_curve_csv(curve, csv_path)
        print(f"wrote {csv_path}")
        if plot:
            svg_path = out / f"{name}.svg"
            svg_path.write_text(curves_svg([curve]), encoding="utf-8")
            print(f"wrote {svg_path}")
        if png:
            from .figures import save_curves_png

            png_path = out / f"{name}.png"
            save_curves_png([curve], png_path)
            print(f"wrote {png_path}")
    return 0


def cmd_calibrate(args) -> int:
    curve = read_curve_csv(args.curve)
    if args.window is not None:
        lo, hi = _parse_window(args.window)
        curve = curve.window(lo, hi)
    model = fit_angle_model(curve, args.order)
    out = _out_dir(args)
    model_path = out / f"{Path(args.curve).stem}_model.json"
    save_model(model, model_path)
    print(f"wrote {model_path}")
    print(f"order={model.order}")
    print(f"v_domain_v={model.v_domain[0]!r},{model.v_domain[1]!r}")
    print(f"rmse_deg={model.rmse_deg!r}")
    return 0


def cmd_estimate(args) -> int:
    model = load_model(args.model)
    voltages = _parse_floats(args.voltages)
    print("voltage_v,angle_deg")
    for v in voltages:
        print(f"{v!r},{predict_angle(model, v)!r}")
    return 0


def cmd_usable_range(args) -> int:
    curve = read_curve_csv(args.curve)
    r = usable_range(curve, args.min_slope)
    print("q_lo_deg,q_hi_deg,delta_v_v")
    print(f"{r.q_lo!r},{r.q_hi!r},{r.delta_v!r}")
    return 0


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    out = _out_dir(args, cfg)
    space = cfg.design_space()
    objective = cfg.objective(args.objective)
    spec = cfg.sweep
    budget = spec.budget if spec is not None else 10 ** 6
    results = grid_sweep(space, objective, budget)
    csv_path = out / "sweep.csv"
    write_sweep_csv(results, csv_path)
    print(f"wrote {csv_path}")
    print("rank,t_min,t_max,alpha_deg,reflectance,score")
    for rank, (design, score) in enumerate(results[: args.top], start=1):
        print(f"{rank},{design.t_min:.9g},{design.t_max:.9g},"
              f"{design.alpha:.9g},{design.reflectance:.9g},{score:.9g}")
    if cfg.png or args.png:
        from .figures import save_sweep_png

        png_path = out / "sweep.png"
        save_sweep_png(results, png_path, top=args.top)
        print(f"wrote {png_path}")
    return 0


def cmd_reconstruct(args) -> int:
    cfg = load_config(args.config)
    out = _out_dir(args, cfg)
    chain = cfg.joint_chain()
    voltages = _parse_floats(args.voltages)
    shape = reconstruct_shape(chain, voltages)
    csv_path = out / "shape.csv"
    write_points_csv(shape.joint_positions, csv_path)
    print(f"wrote {csv_path}")
    plot = cfg.plot if args.plot is None else args.plot
    if plot:
        svg_path = out / "shape.svg"
        svg_path.write_text(shape_svg(shape), encoding="utf-8")
        print(f"wrote {svg_path}")
    if cfg.png or args.png:
        from .figures import save_shape_png

        png_path = out / "shape.png"
        save_shape_png(shape, png_path)
        print(f"wrote {png_path}")
    print("tip_x_mm,tip_y_mm,tip_heading_deg")
    print(f"{shape.tip_pose[0]!r},{shape.tip_pose[1]!r},{shape.tip_pose[2]!r}")
    return 0


def cmd_export_profile(args) -> int:
    cfg = load_config(args.config)
    out = _out_dir(args, cfg)
    name, profile = cfg.profile(args.profile)
    mount = cfg.mount_for(profile)
    points = outline_points(profile, mount, args.samples)
    csv_path = out / f"{name}_outline.csv"
    write_points_csv(points, csv_path)
    print(f"wrote {csv_path}")
    plot = cfg.plot if args.plot is None else args.plot
    if plot:
        svg_path = out / f"{name}_outline.svg"
        svg_path.write_text(points_svg(points), encoding="utf-8")
        print(f"wrote {svg_path}")
    if cfg.png or args.png:
        from .figures import save_points_png

        png_path = out / f"{name}_outline.png"
        save_points_png(points, png_path)
        print(f"wrote {png_path}")
    return 0


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output-dir", default=None, help="directory for all written files")
    p.add_argument("--png", action="store_true",
                   help="also render matplotlib PNG figures")
    plot = p.add_mutually_exclusive_group()
    plot.add_argument("--plot", dest="plot", action="store_true", default=None,
                      help="write deterministic SVG plots (config default: on)")
    plot.add_argument("--no-plot", dest="plot", action="store_false")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibresense",
        description="Simulate, calibrate, and explore fibre-optic joint-angle sensors",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate response curves from a config")
    p.add_argument("config")
    p.add_argument("--profile", default=None, help="simulate only this profile")
    p.add_argument("--seed", type=int, default=None,
                   help="noise seed; enables the default noise model if none configured")
    _add_output_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("calibrate", help="fit an angle-from-voltage model to a curve CSV")
    p.add_argument("curve")
    p.add_argument("--order", type=int, default=5, help="polynomial order (default 5)")
    p.add_argument("--window", default=None, metavar="LO,HI",
                   help="restrict the fit to this angle window (deg)")
    p.add_argument("--output-dir", default=None)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("estimate", help="estimate angles from voltages with a saved model")
    p.add_argument("model")
    p.add_argument("--voltages", required=True, help="comma-separated voltages (V)")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("usable-range", help="extract the usable monotone range of a curve")
    p.add_argument("curve")
    p.add_argument("--min-slope", type=float, default=0.01,
                   help="minimum finite-difference slope in V/deg (default 0.01)")
    p.set_defaults(func=cmd_usable_range)

    p = sub.add_parser("sweep", help="rank reflector designs over a grid")
    p.add_argument("config")
    p.add_argument("--objective", choices=OBJECTIVE_NAMES, default=None,
                   help="override the configured objective")
    p.add_argument("--top", type=int, default=5, help="summary rows to print (default 5)")
    _add_output_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("reconstruct", help="reconstruct chain shape from a voltage frame")
    p.add_argument("config")
    p.add_argument("--voltages", required=True, help="comma-separated voltages (V), one per link")
    _add_output_flags(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("export-profile", help="export a reflector outline for fabrication preview")
    p.add_argument("config")
    p.add_argument("--profile", default=None)
    p.add_argument("--samples", type=int, default=256, help="outline sample count (default 256)")
    _add_output_flags(p)
    p.set_defaults(func=cmd_export_profile)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FibreSenseError, OSError, ValueError) as exc:
        message = " ".join(str(exc).split())
        print(f"error: {type(exc).__name__}: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``synth``, ``simulate``, ``evaluate`` and ``run-all``.

Output layout under ``--out``::

    paths/<name>.csv       x,y,z,t
    commanded/<name>.csv   q1..q6,t
    executed/<name>.csv    q1..q6,qd1..qd6,t
    plots/<name>.csv       t,v_pc,v_ur3
    report.csv             name,snr_db,signal_power,noise_power
"""
import argparse
import json
from dataclasses import replace
import logging
from pathlib import Path
import sys

from . import io
from .control import simulate_execution
from .errors import InvalidParameterError, MotionError
from .evaluation import render_table
from .kinematics import UR3, path_to_joint_trajectory
from .manifest import default_manifest, load_manifest, to_dict, with_control
from .pipeline import build_path, score

log = logging.getLogger(__name__)

EXIT_OK, EXIT_INVALID, EXIT_FAULT = 0, 1, 2


class PipelineFault(Exception):
    pass


def _pair(text, names):
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected {names[0]},{names[1]}, got {text!r}")
    return a, b


def _manifest(args):
    manifest = load_manifest(args.manifest) if args.manifest else default_manifest()
    if args.gains:
        kp, ki = args.gains
        manifest = with_control(manifest, kp=kp, ki=ki)
    if args.plant:
        tau, noise = args.plant
        manifest = with_control(manifest, lag_tau=tau, velocity_noise_std=noise)
    if args.smoothing is not None:
        manifest = replace(manifest, smoothing=args.smoothing)
    return manifest


def cmd_synth(manifest, out, seed=0):
    written = []
    for m in manifest.movements:
        path = build_path(m, manifest.workspace, seed_offset=seed)
        target = Path(out) / "paths" / f"{m.name}.csv"
        io.write_timed_path(path, target)
        written.append(target)
        log.info("synthesised %s (%d samples)", m.name, len(path))
    return written


def _names(manifest, folder):
    if manifest is not None:
        return [m.name for m in manifest.movements]
    return sorted(p.stem for p in Path(folder).glob("*.csv"))


def cmd_simulate(out, manifest, seed=0, path_files=None, model=UR3):
    gains = manifest.control.gains()
    plant = manifest.control.plant()
    files = [Path(f) for f in path_files] if path_files else \
        [Path(out) / "paths" / f"{m.name}.csv" for m in manifest.movements]
    failures = []
    for i, f in enumerate(files):
        if not f.exists():
            raise InvalidParameterError(f"{f.stem}: path file {f} not found")
        path = io.read_timed_path(f)
        try:
            commanded = path_to_joint_trajectory(model, path)
            executed = simulate_execution(commanded, gains, plant, seed + i, model.joint_limits)
        except MotionError as exc:
            failures.append(f"{path.label}: {exc}")
            continue
        io.write_joint_trajectory(commanded, Path(out) / "commanded" / f"{path.label}.csv")
        io.write_executed(executed, Path(out) / "executed" / f"{path.label}.csv")
        log.info("simulated %s (%d steps)", path.label, len(executed))
    if failures:
        raise PipelineFault("; ".join(failures))


def cmd_evaluate(out, manifest=None, smoothing=5, model=UR3):
    out = Path(out)
    names = _names(manifest, out / "commanded")
    executed_names = set(_names(None, out / "executed"))
    reports = []
    for name in names:
        cfile = out / "commanded" / f"{name}.csv"
        efile = out / "executed" / f"{name}.csv"
        if not cfile.exists():
            raise InvalidParameterError(f"{name}: commanded file {cfile} missing")
        if not efile.exists():
            raise InvalidParameterError(f"{name}: executed file {efile} missing")
        executed_names.discard(name)
        report, v_pc, v_ur3 = score(model, io.read_joint_trajectory(cfile),
                                    io.read_executed(efile), smoothing, name)
        io.write_plot_data(v_pc.t, v_pc.speed, v_ur3.speed, out / "plots" / f"{name}.csv")
        reports.append(report)
    if manifest is None and executed_names:
        raise InvalidParameterError(
            f"executed files without commanded counterpart: {', '.join(sorted(executed_names))}")
    io.write_reports(reports, out / "report.csv")
    return reports


def build_parser():
    parser = argparse.ArgumentParser(prog="humanlike-motion", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--manifest", help="experiment manifest (JSON); defaults to the built-in ten movements")
    common.add_argument("--out", default="out", help="output directory")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--gains", type=lambda s: _pair(s, ("kp", "ki")), help="kp,ki")
    common.add_argument("--plant", type=lambda s: _pair(s, ("tau", "noise")), help="tau,noise")
    common.add_argument("--smoothing", type=int, help="odd moving-average window")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("synth", parents=[common], help="write workspace-fitted TimedPath CSVs")
    sim = sub.add_parser("simulate", parents=[common], help="IK + control-loop simulation")
    sim.add_argument("paths", nargs="*", help="TimedPath CSVs (default: <out>/paths/*)")
    sub.add_parser("evaluate", parents=[common], help="SNR report and plot data")
    sub.add_parser("run-all", parents=[common], help="synth, simulate and evaluate")
    sub.add_parser("manifest", parents=[common], help="print the default manifest")
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "manifest":
            print(json.dumps(to_dict(_manifest(args)), indent=2))
            return EXIT_OK
        manifest = _manifest(args)
        if args.command in ("synth", "run-all"):
            cmd_synth(manifest, args.out, args.seed)
        if args.command in ("simulate", "run-all"):
            paths = getattr(args, "paths", None)
            cmd_simulate(args.out, manifest, args.seed, paths)
        if args.command in ("evaluate", "run-all"):
            use = manifest if (args.manifest or args.command == "run-all") else None
            reports = cmd_evaluate(args.out, use, manifest.smoothing)
            print(render_table(reports))
    except InvalidParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (PipelineFault, MotionError) as exc:
        print(f"pipeline fault: {exc}", file=sys.stderr)
        return EXIT_FAULT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

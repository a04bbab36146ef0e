"""Command-line front end: ``nyqshape {design,analyze,sweep,compare}``.

Exit status is 0 on success, 2 for invalid flags or parameters and 1 for
numerical failures. Output files are written atomically.
"""

import argparse
import datetime
import json
import os
import sys
import tempfile

from . import __version__
from .errors import InvalidSpec, NyqshapeError
from .fir_design import DesignSpec, Normalization, design
from .pulse_spectra import PulseFamily, PulseParams
from .response_analysis import frequency_response, isi_report, spectral_metrics
from .sweep_experiments import AXES, family_comparison, run_sweep

TAP_HEADER = ("index", "tap")
RESPONSE_HEADER = ("f_hz", "norm_freq", "mag_db", "phase_deg", "group_delay_samples")
SWEEP_HEADER = (
    "swept_value", "n_taps", "occupied_bw_hz", "main_lobe_edge_hz", "stopband_start_hz",
    "peak_sidelobe_db", "peak_distortion", "rms_distortion", "phase_at_nu1_deg",
)
COMPARE_HEADER = (
    "family", "n_taps", "main_lobe_edge_hz", "stopband_start_hz", "peak_sidelobe_db",
    "peak_distortion", "rms_distortion", "oracle_peak_distortion",
)
TRADEOFF_HEADER = ("delay_d", "oversample_m", "n_taps", "peak_distortion", "peak_sidelobe_db")

DEFAULTS = {
    "family": "fexp",
    "alpha": 0.22,
    "symbol_rate": 3.84e6,
    "oversample": 2,
    "delay": 2,
    "norm": "peak-response",
    "method": "frequency",
    "points": 4096,
    "threshold": -40.0,
}


class UsageError(Exception):
    pass


def _design_flags(p):
    p.add_argument("--config", help="key=value file; flags override its values")
    p.add_argument("--family", help="rc, rrc, fexp, fsech or farcsech (default fexp)")
    p.add_argument("--alpha", type=float, help="roll-off factor in [0, 1] (default 0.22)")
    p.add_argument("--symbol-rate", type=float, help="symbols per second (default 3.84e6)")
    p.add_argument("--oversample", type=int, help="samples per symbol M >= 2 (default 2)")
    p.add_argument("--delay", type=int, help="group delay D in symbols >= 1 (default 2)")
    p.add_argument("--norm", help="dc, energy, peak-tap or peak-response (default)")
    p.add_argument("--method", help="frequency (default) or time")
    p.add_argument("--out", help="output file, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"), help="default: from --out suffix, else csv")
    p.add_argument("--meta", action="store_true", default=None,
                   help="also write <out>.meta.json with run metadata")


def build_parser():
    parser = argparse.ArgumentParser(prog="nyqshape", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"nyqshape {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    _design_flags(sub.add_parser("design", help="design a filter and write its taps"))

    p = sub.add_parser("analyze", help="frequency response grid of a designed filter")
    _design_flags(p)
    p.add_argument("--points", type=int, help="grid points over [0, fs/2] (default 4096)")
    p.add_argument("--threshold", type=float, help="stopband threshold in dB (default -40)")

    p = sub.add_parser("sweep", help="sweep alpha, delay or oversampling")
    _design_flags(p)
    p.add_argument("--axis", choices=AXES + ("oversample",))
    p.add_argument("--values", help="comma separated sweep values")
    p.add_argument("--points", type=int)
    p.add_argument("--threshold", type=float)

    p = sub.add_parser("compare", help="compare all families and tabulate a D x M grid")
    _design_flags(p)
    return parser


def read_config(path):
    """Parse a flat ``key=value`` file; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _resolve(args, parser_for):
    """Fill unset flags from the config file, then from DEFAULTS."""
    conf = read_config(args.config) if args.config else {}
    types = {a.dest: a.type for a in parser_for._actions}
    for key, raw in conf.items():
        if key not in types or key in ("config", "help"):
            raise UsageError(f"unknown config key {key!r}")
        if getattr(args, key) is None:
            conv = types[key]
            if key == "meta":
                value = raw.lower() in ("1", "true", "yes", "on")
            else:
                try:
                    value = conv(raw) if conv else raw
                except ValueError:
                    raise UsageError(f"config key {key}: invalid value {raw!r}") from None
            setattr(args, key, value)
    for key, value in DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)
    if args.format is None:
        args.format = "json" if (args.out or "").endswith(".json") else "csv"
    if args.out is None:
        raise UsageError("--out is required")
    return args


def _spec_from(args):
    try:
        params = PulseParams(args.symbol_rate, args.alpha)
    except ValueError:
        if not 0.0 <= args.alpha <= 1.0:
            raise UsageError(f"--alpha must lie in [0, 1], got {args.alpha}") from None
        raise UsageError(f"--symbol-rate must be > 0, got {args.symbol_rate}") from None
    if args.oversample < 2:
        raise UsageError(f"--oversample must be an integer >= 2, got {args.oversample}")
    if args.delay < 1:
        raise UsageError(f"--delay must be an integer >= 1, got {args.delay}")
    if args.method not in ("frequency", "freq", "time"):
        raise UsageError(f"--method must be 'frequency' or 'time', got {args.method!r}")
    try:
        return DesignSpec(params, PulseFamily.from_name(args.family), args.oversample,
                          args.delay, Normalization.from_name(args.norm))
    except NyqshapeError as exc:
        raise UsageError(str(exc)) from None


def fmt(x):
    """17 significant digits, scientific; integers verbatim; None as empty."""
    if x is None:
        return ""
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    if isinstance(x, str):
        return x
    return f"{float(x):.16e}"


def render_csv(header, rows):
    lines = [",".join(header)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def render_json(obj):
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def read_taps_csv(path):
    """Read a tap file written by ``design``; returns a list of floats."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != ",".join(TAP_HEADER):
            raise ValueError(f"{path}: unexpected header {header!r}")
        return [float(line.split(",")[1]) for line in fh if line.strip()]


def write_atomic(path, text):
    if path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".nyqshape-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _spec_dict(spec):
    return {
        "family": spec.family.value,
        "alpha": spec.params.rolloff,
        "symbol_rate_hz": spec.params.symbol_rate_hz,
        "oversample_m": spec.oversample_m,
        "delay_symbols_d": spec.delay_symbols_d,
        "normalization": spec.normalization.value,
    }


def _records(header, rows):
    return [dict(zip(header, row)) for row in rows]


def _cmd_design(args, spec):
    filt = design(spec, args.method)
    rows = [(i, float(t)) for i, t in enumerate(filt.taps)]
    if args.format == "csv":
        return render_csv(TAP_HEADER, rows)
    return render_json({"spec": _spec_dict(spec), "sample_rate_hz": filt.sample_rate_hz,
                        "delay_samples": filt.delay_samples,
                        "records": _records(TAP_HEADER, rows)})


def _metrics_dict(m, isi):
    return {
        "main_lobe_edge_hz": m.main_lobe_edge_hz,
        "stopband_start_hz": m.stopband_start_hz,
        "peak_sidelobe_db": m.peak_sidelobe_db,
        "passband_ripple_db": m.passband_ripple_db,
        "peak_distortion": isi.peak_distortion,
        "rms_distortion": isi.rms_distortion,
    }


def _cmd_analyze(args, spec):
    if args.points < 512:
        raise UsageError(f"--points must be >= 512, got {args.points}")
    if args.threshold >= 0:
        raise UsageError(f"--threshold must be negative, got {args.threshold}")
    filt = design(spec, args.method)
    grid = frequency_response(filt, args.points)
    rows = list(zip(*(getattr(grid, name).tolist() for name in RESPONSE_HEADER)))
    if args.format == "csv":
        return render_csv(RESPONSE_HEADER, rows)
    metrics = spectral_metrics(grid, args.threshold)
    return render_json({"spec": _spec_dict(spec),
                        "metrics": _metrics_dict(metrics, isi_report(filt)),
                        "records": _records(RESPONSE_HEADER, rows)})


def _parse_values(raw, axis):
    if not raw:
        return None
    try:
        if axis == "alpha":
            return [float(v) for v in raw.split(",")]
        return [int(v) for v in raw.split(",")]
    except ValueError:
        raise UsageError(f"--values: cannot parse {raw!r} for axis {axis}") from None


def _cmd_sweep(args, spec):
    axis = args.axis
    if axis is None:
        raise UsageError("--axis is required for sweep")
    values = _parse_values(args.values, axis)
    if axis == "oversample":
        if not values:
            raise UsageError("--axis oversample needs --values")
        parities = {v % 2 for v in values}
        if len(parities) != 1:
            raise UsageError("--values for oversample must all be even or all odd")
        axis = "oversample_odd" if parities == {1} else "oversample_even"
    if args.points < 512:
        raise UsageError(f"--points must be >= 512, got {args.points}")
    if args.threshold >= 0:
        raise UsageError(f"--threshold must be negative, got {args.threshold}")
    try:
        report = run_sweep(axis, spec, values, method=args.method, n_points=args.points,
                           stop_threshold_db=args.threshold)
    except InvalidSpec as exc:
        raise UsageError(str(exc)) from None
    except NyqshapeError as exc:
        if isinstance(exc, ValueError):
            raise UsageError(str(exc)) from None
        raise
    rows = [
        (r.swept_value, r.n_taps, r.occupied_bw_hz, r.metrics.main_lobe_edge_hz,
         r.metrics.stopband_start_hz, r.metrics.peak_sidelobe_db, r.isi.peak_distortion,
         r.isi.rms_distortion, r.phase_at_nu1_deg)
        for r in report.records
    ]
    if args.format == "csv":
        return render_csv(SWEEP_HEADER, rows)
    return render_json({"axis_name": report.axis_name, "base_spec": _spec_dict(spec),
                        "records": _records(SWEEP_HEADER, rows)})


def _cmd_compare(args, spec):
    cmp = family_comparison(spec.params, spec.oversample_m, spec.delay_symbols_d,
                            tradeoff_family=spec.family, normalization=spec.normalization)
    rows = [
        (r.family.value, r.n_taps, r.metrics.main_lobe_edge_hz, r.metrics.stopband_start_hz,
         r.metrics.peak_sidelobe_db, r.isi.peak_distortion, r.isi.rms_distortion,
         r.oracle_peak_distortion)
        for r in cmp.rows
    ]
    if args.format == "csv":
        return render_csv(COMPARE_HEADER, rows)
    cells = [(c.delay_d, c.oversample_m, c.n_taps, c.peak_distortion, c.peak_sidelobe_db)
             for c in cmp.tradeoff]
    return render_json({"base_spec": _spec_dict(spec),
                        "records": _records(COMPARE_HEADER, rows),
                        "tradeoff_family": cmp.tradeoff_family.value,
                        "tradeoff": _records(TRADEOFF_HEADER, cells)})


COMMANDS = {
    "design": _cmd_design,
    "analyze": _cmd_analyze,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
}


def run(argv=None):
    """Run one command; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    sub = parser._subparsers._group_actions[0].choices[args.subcommand]
    try:
        args = _resolve(args, sub)
        spec = _spec_from(args)
        text = COMMANDS[args.subcommand](args, spec)
    except (UsageError, OSError) as exc:
        print(f"nyqshape {args.subcommand}: error: {exc}", file=sys.stderr)
        return 2
    except NyqshapeError as exc:
        print(f"nyqshape {args.subcommand}: numerical error: {exc}", file=sys.stderr)
        return 1

    try:
        write_atomic(args.out, text)
        if args.meta and args.out != "-":
            meta = {
                "argv": list(argv if argv is not None else sys.argv[1:]),
                "version": __version__,
                "created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
                "output": os.path.basename(args.out),
            }
            write_atomic(args.out + ".meta.json", render_json(meta))
    except OSError as exc:
        print(f"nyqshape {args.subcommand}: error: cannot write output: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

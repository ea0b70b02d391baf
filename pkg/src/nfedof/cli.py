"""Command-line interface.

Subcommands: ``edof`` (single point), ``sweep`` (config-driven), ``figure``
(canned experiment bundles), ``coupling`` (impedance tools), ``capacity``.
Exit codes: 0 success, 2 configuration error, 3 numerical error, 4 I/O error.
The NFEDOF_THREADS environment variable overrides --threads.
"""

from __future__ import annotations

import argparse
import os
import sys

from .capacity import CapacityInputs, capacity
from .coupling import (CouplingParams, mutual_impedance_matrix,
                       save_impedance_matrix, self_impedance)
from .errors import ArgumentError, ConfigError, NfedofError, NumericalError
from .geometry import UlaGeometry, UpaGeometry, WaveParams
from .workbench import (CSV_COLUMNS, PRESET_NAMES, SweepSpec, emit_csv,
                        figure_preset, format_row, load_sweep_spec,
                        run_bundle, run_sweep)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="base RNG seed")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads (NFEDOF_THREADS overrides)")
    parser.add_argument("--out", default=None, help="output CSV path (default: stdout)")
    parser.add_argument("--zero-runtime", action="store_true",
                        help="blank the runtime column for byte-stable output")


def _threads(args) -> int:
    env = os.environ.get("NFEDOF_THREADS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ConfigError(f"NFEDOF_THREADS must be an integer, got {env!r}") from exc
    return max(1, args.threads)


def _write_rows(rows, args) -> None:
    if args.out:
        emit_csv(rows, args.out, zero_runtime=args.zero_runtime)
    else:
        print(",".join(CSV_COLUMNS))
        for row in rows:
            print(format_row(row, zero_runtime=args.zero_runtime))


def _parse_set(pairs: list[str]) -> dict:
    fixed = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"--set expects KEY=VALUE, got {pair!r}")
        key, value = pair.split("=", 1)
        key = key.strip()
        if key == "sweep_l_keys":
            fixed[key] = value.strip()
            continue
        try:
            fixed[key] = float(value)
        except ValueError as exc:
            raise ConfigError(f"value for {key!r} is not numeric: {value!r}") from exc
    return fixed


def _cmd_edof(args) -> int:
    fixed = _parse_set(args.set or [])
    if "D" not in fixed:
        raise ConfigError("an evaluation point needs --set D=<meters>")
    d = fixed.pop("D")
    spec = SweepSpec(args.scenario, args.channel, args.method, "D", d, d, 1,
                     fixed, seed=args.seed)
    rows = run_sweep(spec, 1)
    _write_rows(rows, args)
    if rows[0].error:
        raise NumericalError(rows[0].error)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    spec = load_sweep_spec(args.config)
    if args.seed is not None:
        spec = SweepSpec(spec.scenario, spec.channel, spec.method, spec.variable,
                         spec.start, spec.stop, spec.steps, spec.fixed,
                         spec.coupling, args.seed, spec.budget_s)
    rows = run_sweep(spec, _threads(args))
    _write_rows(rows, args)
    return EXIT_OK


def _cmd_figure(args) -> int:
    specs = figure_preset(args.name, seed=args.seed)
    rows = run_bundle(specs, _threads(args))
    _write_rows(rows, args)
    return EXIT_OK


def _cmd_coupling(args) -> int:
    wave = WaveParams.from_wavelength(args.wavelength)
    params = CouplingParams.for_wavelength(
        args.wavelength, args.dipole_frac, args.radius_frac,
        z_load=complex(args.z_load, 0.0))
    z_a = self_impedance(params, wave.wavenumber)
    print(f"self_impedance_ohms,{z_a.real:.8e},{z_a.imag:.8e}")
    geometry = None
    if args.upa:
        mh, mv, lh, lv = args.upa.split(",")
        geometry = UpaGeometry(int(mh), int(mv), float(lh), float(lv))
    elif args.ula:
        m, l = args.ula.split(",")
        geometry = UlaGeometry(int(m), float(l))
    if geometry is not None:
        z = mutual_impedance_matrix(geometry, params, wave.wavenumber)
        if args.out:
            save_impedance_matrix(z, args.out)
            print(f"impedance_matrix,{args.out},{z.n}")
        else:
            print(f"impedance_matrix_side,{z.n}")
    return EXIT_OK


def _cmd_capacity(args) -> int:
    c = capacity(CapacityInputs(args.edof, args.alpha, args.power, args.noise))
    print(f"capacity_bits_per_s_per_hz,{c:.8e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nfedof",
                                     description="near-field EDoF workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p_edof = sub.add_parser("edof", help="evaluate a single configuration")
    p_edof.add_argument("--scenario", required=True)
    p_edof.add_argument("--channel", default="scalar")
    p_edof.add_argument("--method", default="direct")
    p_edof.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="parameter assignment (repeatable); D is required")
    _add_common(p_edof)
    p_edof.set_defaults(func=_cmd_edof)

    p_sweep = sub.add_parser("sweep", help="run a sweep from a JSON config")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--seed", type=int, default=None,
                         help="override the config seed")
    p_sweep.add_argument("--threads", type=int, default=1)
    p_sweep.add_argument("--out", default=None)
    p_sweep.add_argument("--zero-runtime", action="store_true")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_fig = sub.add_parser("figure", help="run a canned experiment bundle")
    p_fig.add_argument("name", choices=PRESET_NAMES)
    _add_common(p_fig)
    p_fig.set_defaults(func=_cmd_figure)

    p_coup = sub.add_parser("coupling", help="impedance tools")
    p_coup.add_argument("--wavelength", type=float, required=True)
    p_coup.add_argument("--dipole-frac", type=float, default=0.1)
    p_coup.add_argument("--radius-frac", type=float, default=1e-5)
    p_coup.add_argument("--z-load", type=float, default=50.0)
    p_coup.add_argument("--upa", default=None, metavar="MH,MV,LH,LV")
    p_coup.add_argument("--ula", default=None, metavar="M,L")
    p_coup.add_argument("--out", default=None, help="impedance matrix file path")
    p_coup.set_defaults(func=_cmd_coupling)

    p_cap = sub.add_parser("capacity", help="EDoF-to-capacity mapping")
    p_cap.add_argument("--edof", type=float, required=True)
    p_cap.add_argument("--alpha", type=float, required=True)
    p_cap.add_argument("--power", type=float, required=True)
    p_cap.add_argument("--noise", type=float, required=True)
    p_cap.set_defaults(func=_cmd_capacity)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ArgumentError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except NfedofError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

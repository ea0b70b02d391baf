"""Sweep execution, figure presets and CSV emission.

A SweepSpec names a scenario (array design), a channel (scalar or 1-3
polarizations), an estimation method and exactly one swept variable; every
other parameter sits in ``fixed``.  Points are evaluated independently (and
optionally concurrently); per-point randomness is derived from
(seed, point index) with a counter-based generator, so results do not depend
on the execution order or thread count.

CSV columns (exact order):
scenario, channel, method, D_m, LtH_m, LtV_m, LrH_m, LrV_m, MH, MV, NH, NV,
AH_m, AV_m, Ms, Ns, seed, edof, alpha, runtime_s, error.
For the 1-D scenarios (ula, cap1d) the segment lengths are reported in the
vertical columns LtV_m / LrV_m.  Coupled sweeps report method "coupled".
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import closedform
from .channel import LinkConfig, PolarizationSet, assemble_dyadic, assemble_scalar
from .closedform import Cap2dClosedParams
from .coupling import CouplingParams, coupled_edof
from .edof import (cap_edof_dense_grid, cap_edof_polarized,
                   cap_edof_scalar_quadrature, edof_threshold,
                   edof_trace_ratio, patch_edof)
from .errors import ArgumentError, ConfigError, NfedofError
from .geometry import (SPEED_OF_LIGHT, CapLine, CapPlane, PatchUpaGeometry,
                       UlaGeometry, UpaGeometry, WaveParams)

SCENARIOS = ("upa-dipole", "upa-patch", "ula", "cap2d", "cap1d")
CHANNELS = ("scalar", "dyadic1", "dyadic2", "dyadic3")
METHODS = ("direct", "closed", "quadrature", "grid", "threshold")
VARIABLES = ("D", "L", "M", "Ms")

_METHODS_BY_SCENARIO = {
    "upa-dipole": ("direct", "closed", "threshold"),
    "ula": ("direct", "closed", "threshold"),
    "upa-patch": ("quadrature",),
    "cap2d": ("quadrature", "grid", "closed"),
    "cap1d": ("quadrature", "grid", "closed"),
}

_FIXED_KEYS = {
    "wavelength", "frequency", "D",
    "LtH", "LtV", "LrH", "LrV", "Lt", "Lr", "L",
    "MH", "MV", "NH", "NV", "M", "N",
    "AH", "AV", "Ms", "Ns",
    "density", "order_tx", "order_rx", "order_element", "eps",
    "replicates", "l_scale", "sweep_l_keys",
}

_COUPLING_KEYS = {"dipole_frac", "radius_frac", "z_load_re", "z_load_im",
                  "intrinsic_impedance", "euler_gamma"}

CSV_COLUMNS = ("scenario", "channel", "method", "D_m", "LtH_m", "LtV_m",
               "LrH_m", "LrV_m", "MH", "MV", "NH", "NV", "AH_m", "AV_m",
               "Ms", "Ns", "seed", "edof", "alpha", "runtime_s", "error")


@dataclass(frozen=True)
class SweepSpec:
    scenario: str
    channel: str
    method: str
    variable: str
    start: float
    stop: float
    steps: int
    fixed: dict = field(default_factory=dict)
    coupling: CouplingParams | None = None
    seed: int = 0
    budget_s: float | None = None

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}; expected one of {SCENARIOS}")
        if self.channel not in CHANNELS:
            raise ConfigError(f"unknown channel {self.channel!r}; expected one of {CHANNELS}")
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.method not in _METHODS_BY_SCENARIO[self.scenario]:
            raise ConfigError(
                f"method {self.method!r} is not valid for scenario {self.scenario!r} "
                f"(valid: {_METHODS_BY_SCENARIO[self.scenario]})")
        if self.method == "closed" and self.channel != "scalar":
            raise ConfigError("closed-form methods exist for the scalar channel only")
        if self.variable not in VARIABLES:
            raise ConfigError(f"unknown swept variable {self.variable!r}; expected one of {VARIABLES}")
        if self.steps < 1:
            raise ConfigError("steps must be >= 1")
        unknown = set(self.fixed) - _FIXED_KEYS
        if unknown:
            raise ConfigError(f"unknown fixed parameter keys: {sorted(unknown)}")
        if self.coupling is not None and not (
                self.method == "direct" and self.scenario in ("upa-dipole", "ula")):
            raise ConfigError("coupling applies only to direct upa-dipole/ula sweeps")

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([float(self.start)])
        return np.linspace(float(self.start), float(self.stop), self.steps)


@dataclass
class SweepRow:
    scenario: str
    channel: str
    method: str
    d_m: float | None = None
    lt_h: float | None = None
    lt_v: float | None = None
    lr_h: float | None = None
    lr_v: float | None = None
    m_h: int | None = None
    m_v: int | None = None
    n_h: int | None = None
    n_v: int | None = None
    a_h: float | None = None
    a_v: float | None = None
    m_s: int | None = None
    n_s: int | None = None
    seed: int = 0
    edof: float | None = None
    alpha: float | None = None
    runtime_s: float = 0.0
    error: str = ""
    diagnostics: dict = field(default_factory=dict)


def load_sweep_spec(source) -> SweepSpec:
    """Build a SweepSpec from a JSON config file path or parsed dict.

    Top-level keys: scenario, channel, method, variable, start, stop, steps,
    seed, budget_s, fixed (dict), coupling (dict).  Unknown keys anywhere
    are hard errors.
    """
    if isinstance(source, dict):
        cfg = dict(source)
    else:
        try:
            with open(source, "r", encoding="utf-8") as fh:
                cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
    known = {"scenario", "channel", "method", "variable", "start", "stop",
             "steps", "seed", "budget_s", "fixed", "coupling"}
    unknown = set(cfg) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key in ("scenario", "channel", "method", "variable", "start", "stop", "steps"):
        if key not in cfg:
            raise ConfigError(f"config is missing required key {key!r}")
    coupling = None
    if cfg.get("coupling") is not None:
        coupling = _coupling_from_dict(cfg["coupling"], cfg.get("fixed", {}))
    return SweepSpec(scenario=cfg["scenario"], channel=cfg["channel"],
                     method=cfg["method"], variable=cfg["variable"],
                     start=float(cfg["start"]), stop=float(cfg["stop"]),
                     steps=int(cfg["steps"]), fixed=dict(cfg.get("fixed", {})),
                     coupling=coupling, seed=int(cfg.get("seed", 0)),
                     budget_s=cfg.get("budget_s"))


def _coupling_from_dict(raw: dict, fixed: dict) -> CouplingParams:
    unknown = set(raw) - _COUPLING_KEYS
    if unknown:
        raise ConfigError(f"unknown coupling keys: {sorted(unknown)}")
    lam = _wavelength_from_fixed(fixed)
    kwargs = {}
    if "z_load_re" in raw or "z_load_im" in raw:
        kwargs["z_load"] = complex(raw.get("z_load_re", 50.0), raw.get("z_load_im", 0.0))
    if "intrinsic_impedance" in raw:
        kwargs["intrinsic_impedance"] = float(raw["intrinsic_impedance"])
    if "euler_gamma" in raw:
        kwargs["euler_gamma"] = float(raw["euler_gamma"])
    return CouplingParams.for_wavelength(
        lam, float(raw.get("dipole_frac", 0.1)), float(raw.get("radius_frac", 1e-5)),
        **kwargs)


def _wavelength_from_fixed(fixed: dict) -> float:
    has_l = "wavelength" in fixed
    has_f = "frequency" in fixed
    if has_l == has_f:
        raise ConfigError("exactly one of 'wavelength' or 'frequency' must be fixed")
    if has_l:
        return float(fixed["wavelength"])
    return SPEED_OF_LIGHT / float(fixed["frequency"])


def _point_seed(seed: int, index: int) -> int:
    ss = np.random.SeedSequence([int(seed) & ((1 << 63) - 1), int(index)])
    return int(ss.generate_state(1, np.uint64)[0])


def _pols(channel: str) -> PolarizationSet | None:
    if channel == "scalar":
        return None
    return PolarizationSet.from_count(int(channel[-1]))


def _resolve_point_params(spec: SweepSpec, value: float) -> dict:
    p = dict(spec.fixed)
    var = spec.variable
    if var == "D":
        p["D"] = float(value)
    elif var == "L":
        scaled = float(value) * float(p.get("l_scale", 1.0))
        keys = p.get("sweep_l_keys")
        if keys is None:
            keys = "Lt,Lr" if spec.scenario in ("ula", "cap1d") else "LtH,LtV,LrH,LrV"
        for key in str(keys).split(","):
            p[key.strip()] = scaled
    elif var == "M":
        m = int(round(value))
        if spec.scenario in ("ula",):
            p["M"] = m
            p.setdefault("N", m)
        else:
            for key in ("MH", "MV", "NH", "NV"):
                p.setdefault(key, m)
                p[key] = m
    elif var == "Ms":
        p["Ms"] = int(round(value))
        p["Ns"] = int(round(value))
    return p


def _need(p: dict, key: str, scenario: str) -> float:
    if key not in p:
        raise ConfigError(f"scenario {scenario!r} needs parameter {key!r}")
    return p[key]


def _square_default(p: dict, key_h: str, key_v: str, shorthand: str, scenario: str):
    if shorthand in p:
        p.setdefault(key_h, p[shorthand])
        p.setdefault(key_v, p[shorthand])
    _need(p, key_h, scenario)
    _need(p, key_v, scenario)


def _evaluate_point(spec: SweepSpec, index: int, value: float) -> SweepRow:
    row = SweepRow(spec.scenario, spec.channel,
                   "coupled" if spec.coupling is not None else spec.method,
                   seed=spec.seed)
    start = time.perf_counter()
    try:
        p = _resolve_point_params(spec, value)
        lam = _wavelength_from_fixed(p)
        wave = WaveParams.from_wavelength(lam)
        d = float(_need(p, "D", spec.scenario))
        row.d_m = d
        pols = _pols(spec.channel)
        point_seed = _point_seed(spec.seed, index)
        if spec.scenario in ("upa-dipole", "upa-patch"):
            _square_default(p, "LtH", "LtV", "L", spec.scenario)
            _square_default(p, "LrH", "LrV", "L", spec.scenario)
            if "M" in p:
                for key in ("MH", "MV", "NH", "NV"):
                    p.setdefault(key, p["M"])
            for key in ("MH", "MV", "NH", "NV"):
                _need(p, key, spec.scenario)
            row.lt_h, row.lt_v = float(p["LtH"]), float(p["LtV"])
            row.lr_h, row.lr_v = float(p["LrH"]), float(p["LrV"])
            row.m_h, row.m_v = int(p["MH"]), int(p["MV"])
            row.n_h, row.n_v = int(p["NH"]), int(p["NV"])
            tx = UpaGeometry(row.m_h, row.m_v, row.lt_h, row.lt_v)
            rx = UpaGeometry(row.n_h, row.n_v, row.lr_h, row.lr_v)
            if spec.scenario == "upa-patch":
                row.a_h = float(_need(p, "AH", spec.scenario))
                row.a_v = float(_need(p, "AV", spec.scenario))
                tx = PatchUpaGeometry(tx, row.a_h, row.a_v)
                rx = PatchUpaGeometry(rx, row.a_h, row.a_v)
            link = LinkConfig(tx, rx, d, wave)
            _evaluate_discrete(spec, row, link, pols, p)
        elif spec.scenario == "ula":
            if "L" in p:
                p.setdefault("Lt", p["L"])
                p.setdefault("Lr", p["L"])
            row.lt_v = float(_need(p, "Lt", spec.scenario))
            row.lr_v = float(_need(p, "Lr", spec.scenario))
            row.m_v = int(_need(p, "M", spec.scenario))
            row.n_v = int(p.get("N", p["M"]))
            link = LinkConfig(UlaGeometry(row.m_v, row.lt_v),
                              UlaGeometry(row.n_v, row.lr_v), d, wave)
            _evaluate_discrete(spec, row, link, pols, p)
        elif spec.scenario == "cap2d":
            _square_default(p, "LtH", "LtV", "L", spec.scenario)
            _square_default(p, "LrH", "LrV", "L", spec.scenario)
            row.lt_h, row.lt_v = float(p["LtH"]), float(p["LtV"])
            row.lr_h, row.lr_v = float(p["LrH"]), float(p["LrV"])
            tx = CapPlane(row.lt_h, row.lt_v)
            rx = CapPlane(row.lr_h, row.lr_v)
            _evaluate_cap2d(spec, row, tx, rx, d, wave, pols, p, point_seed)
        else:  # cap1d
            if "L" in p:
                p.setdefault("Lt", p["L"])
                p.setdefault("Lr", p["L"])
            row.lt_v = float(_need(p, "Lt", spec.scenario))
            row.lr_v = float(_need(p, "Lr", spec.scenario))
            _evaluate_cap1d(spec, row, d, wave, pols, p, point_seed)
    except NfedofError as exc:
        row.error = _sanitize(str(exc))
    except (ValueError, KeyError, TypeError) as exc:
        row.error = _sanitize(f"{type(exc).__name__}: {exc}")
    row.runtime_s = time.perf_counter() - start
    if not row.error and spec.budget_s is not None and row.runtime_s > spec.budget_s:
        row.error = "runtime_budget_exceeded"
    return row


def _evaluate_discrete(spec: SweepSpec, row: SweepRow, link: LinkConfig,
                       pols, p: dict) -> None:
    if spec.scenario == "upa-patch":
        order = int(p.get("order_element", 2))
        res = patch_edof(link, pols or PolarizationSet.from_count(1), order)
        row.edof = res.value
        row.alpha = res.diagnostic("gain")
        row.diagnostics = res.diagnostics
        return
    if spec.coupling is not None:
        res = coupled_edof(link, pols, spec.coupling)
        row.edof = res.value
        row.alpha = res.diagnostic("gain")
        row.diagnostics = res.diagnostics
        return
    if spec.method == "direct":
        h = assemble_scalar(link) if pols is None else assemble_dyadic(link, pols)
        res = edof_trace_ratio(h)
        row.edof = res.value
        row.alpha = res.diagnostic("gain")
        row.diagnostics = res.diagnostics
    elif spec.method == "threshold":
        h = assemble_scalar(link) if pols is None else assemble_dyadic(link, pols)
        row.edof = float(edof_threshold(h, float(p.get("eps", 0.01))))
    else:  # closed
        if spec.scenario == "upa-dipole":
            value, gain = closedform.upa_edof_closed_detail(link)
        else:
            value, gain = closedform.ula_edof_closed_detail(link)
        row.edof = value
        row.alpha = gain


def _evaluate_cap2d(spec: SweepSpec, row: SweepRow, tx: CapPlane, rx: CapPlane,
                    d: float, wave: WaveParams, pols, p: dict, point_seed: int) -> None:
    if spec.method == "closed":
        row.m_s = int(p.get("Ms", 64))
        row.n_s = int(p.get("Ns", 64))
        params = Cap2dClosedParams.from_planes(
            tx, rx, d, wave, m_s=row.m_s, n_s=row.n_s, seed=point_seed,
            replicates=int(p.get("replicates", 8)))
        detail = closedform.cap2d_edof_closed_detail(params)
        row.edof = detail.value
        row.alpha = detail.gain
        row.diagnostics = {"phi": detail.phi.value, "phi_spread": detail.phi.spread}
    elif spec.method == "quadrature":
        orders = (int(p.get("order_tx", 24)), int(p.get("order_rx", 24)))
        if pols is None:
            res = cap_edof_scalar_quadrature(tx, rx, d, wave, orders, check_convergence=False)
        else:
            res = cap_edof_polarized(tx, rx, d, wave, pols, orders, check_convergence=False)
        row.edof = res.value
        row.alpha = res.diagnostic("gain")
        row.diagnostics = res.diagnostics
    else:  # grid
        res = cap_edof_dense_grid(tx, rx, d, wave, float(p.get("density", 2.0)), pols)
        row.edof = res.value
        row.alpha = res.diagnostic("gain")
        row.diagnostics = res.diagnostics


def _evaluate_cap1d(spec: SweepSpec, row: SweepRow, d: float, wave: WaveParams,
                    pols, p: dict, point_seed: int) -> None:
    tx = CapLine(row.lt_v)
    rx = CapLine(row.lr_v)
    if spec.method == "closed":
        row.m_s = int(p.get("Ms", 64))
        row.n_s = int(p.get("Ns", 64))
        row.edof = closedform.cap1d_edof_closed(
            row.lt_v, row.lr_v, d, wave.wavenumber, row.m_s, row.n_s,
            seed=point_seed, replicates=int(p.get("replicates", 8)))
        row.alpha = closedform.cap1d_gain(row.lt_v, row.lr_v, d)
    elif spec.method == "quadrature":
        orders = (int(p.get("order_tx", 24)), int(p.get("order_rx", 24)))
        if pols is None:
            res = cap_edof_scalar_quadrature(tx, rx, d, wave, orders, check_convergence=False)
        else:
            res = cap_edof_polarized(tx, rx, d, wave, pols, orders, check_convergence=False)
        row.edof = res.value
        row.alpha = res.diagnostic("gain")
        row.diagnostics = res.diagnostics
    else:  # grid
        res = cap_edof_dense_grid(tx, rx, d, wave, float(p.get("density", 2.0)), pols)
        row.edof = res.value
        row.alpha = res.diagnostic("gain")
        row.diagnostics = res.diagnostics


def run_sweep(spec: SweepSpec, threads: int = 1) -> list[SweepRow]:
    """Evaluate every sweep point; failures land in the row error column."""
    values = spec.values()
    if threads <= 1 or len(values) == 1:
        return [_evaluate_point(spec, i, v) for i, v in enumerate(values)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_evaluate_point, spec, i, v) for i, v in enumerate(values)]
        return [f.result() for f in futures]


def run_bundle(specs: list[SweepSpec], threads: int = 1) -> list[SweepRow]:
    rows: list[SweepRow] = []
    for spec in specs:
        rows.extend(run_sweep(spec, threads))
    return rows


# ---------------------------------------------------------------------------
# CSV emission.
# ---------------------------------------------------------------------------


def _sanitize(text: str) -> str:
    return text.replace(",", ";").replace("\n", " ").replace("\r", " ")


def _fmt(value, is_int: bool = False) -> str:
    if value is None:
        return ""
    if is_int:
        return str(int(value))
    return f"{float(value):.8e}"


def format_row(row: SweepRow, zero_runtime: bool = False) -> str:
    runtime = 0.0 if zero_runtime else row.runtime_s
    cells = (row.scenario, row.channel, row.method,
             _fmt(row.d_m), _fmt(row.lt_h), _fmt(row.lt_v), _fmt(row.lr_h),
             _fmt(row.lr_v), _fmt(row.m_h, True), _fmt(row.m_v, True),
             _fmt(row.n_h, True), _fmt(row.n_v, True), _fmt(row.a_h),
             _fmt(row.a_v), _fmt(row.m_s, True), _fmt(row.n_s, True),
             str(row.seed), _fmt(row.edof), _fmt(row.alpha), _fmt(runtime),
             row.error)
    return ",".join(cells)


def emit_csv(rows: list[SweepRow], path, zero_runtime: bool = False) -> None:
    """Write rows as UTF-8, LF-terminated CSV with the documented columns.

    ``zero_runtime`` blanks the wall-clock column so that reruns of a seeded
    sweep are byte-identical (runtimes are the only non-deterministic field).
    """
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(CSV_COLUMNS) + "\n")
            for row in rows:
                fh.write(format_row(row, zero_runtime) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def parse_csv(path) -> list[dict]:
    """Read back an emitted CSV into dicts keyed by column name."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split(",")
        if tuple(header) != CSV_COLUMNS:
            raise ArgumentError(f"unexpected CSV header in {path}")
        out = []
        for line in fh:
            cells = line.rstrip("\n").split(",")
            out.append(dict(zip(CSV_COLUMNS, cells)))
    return out


def compare_methods(rows: list[SweepRow], method_a: str = "direct",
                    method_b: str = "closed") -> list[dict]:
    """Cross-method agreement |a-b|/a for rows sharing all input parameters."""
    def key(row: SweepRow):
        return (row.scenario, row.channel, row.d_m, row.lt_h, row.lt_v,
                row.lr_h, row.lr_v, row.m_h, row.m_v, row.n_h, row.n_v)

    table = {}
    for row in rows:
        if row.edof is None:
            continue
        table.setdefault(key(row), {})[row.method] = row.edof
    out = []
    for k, methods in table.items():
        if method_a in methods and method_b in methods:
            a, b = methods[method_a], methods[method_b]
            out.append({"key": k, method_a: a, method_b: b,
                        "rel_delta": abs(a - b) / abs(a)})
    return out


# ---------------------------------------------------------------------------
# Figure presets: parameterized sweep bundles for the standard experiments.
# ---------------------------------------------------------------------------

PRESET_NAMES = ("fig1", "fig3", "fig4", "fig5", "fig8", "fig10", "fig11")

_F30GHZ = 30e9
_LAM30 = SPEED_OF_LIGHT / _F30GHZ


def figure_preset(name: str, seed: int = 0) -> list[SweepSpec]:
    """Sweep bundle behind each canned experiment.

    fig1   dipole UPA vs continuous plane over distance (scalar + triple)
    fig3   continuous square plane: closed form vs quadrature over distance
    fig4   continuous rectangle: closed form over the transmit height
    fig5   patch vs dipole UPA over antennas per side
    fig8   equal-aperture 2D plane vs 1D segment closed forms
    fig10  polarization ladder on a continuous square over side length
    fig11  coupled vs uncoupled dipole UPA over antennas per side
    """
    lam = _LAM30
    if name == "fig1":
        base = {"wavelength": lam, "L": 10 * lam}
        specs = []
        for channel in ("scalar", "dyadic3"):
            for m in (10, 20):
                specs.append(SweepSpec("upa-dipole", channel, "direct", "D",
                                       2 * lam, 30 * lam, 8,
                                       {**base, "M": m}, seed=seed))
            specs.append(SweepSpec("cap2d", channel, "grid", "D",
                                   2 * lam, 30 * lam, 8,
                                   {**base, "density": 2.5}, seed=seed))
        return specs
    if name == "fig3":
        specs = []
        for side in (5 * lam, 10 * lam):
            base = {"wavelength": lam, "L": side}
            specs.append(SweepSpec("cap2d", "scalar", "closed", "D",
                                   6 * lam, 30 * lam, 7, dict(base), seed=seed))
            specs.append(SweepSpec("cap2d", "scalar", "quadrature", "D",
                                   6 * lam, 30 * lam, 7,
                                   {**base, "order_tx": 32, "order_rx": 32}, seed=seed))
        return specs
    if name == "fig4":
        fixed = {"wavelength": lam, "LtH": 1.0, "LrH": 1.0, "LrV": 1.5,
                 "D": 8.0, "sweep_l_keys": "LtV"}
        return [SweepSpec("cap2d", "scalar", "closed", "L", 0.5, 3.0, 6,
                          fixed, seed=seed)]
    if name == "fig5":
        base = {"wavelength": lam, "L": 10 * lam, "D": 10 * lam}
        patch = {**base, "AH": 0.5 * lam, "AV": 0.5 * lam, "order_element": 2}
        specs = []
        for channel in ("scalar", "dyadic3"):
            specs.append(SweepSpec("upa-dipole", channel, "direct", "M",
                                   2, 20, 10, dict(base), seed=seed))
            specs.append(SweepSpec("upa-patch", channel, "quadrature", "M",
                                   2, 20, 10, dict(patch), seed=seed))
        return specs
    if name == "fig8":
        plane = {"wavelength": lam, "D": 20.0, "l_scale": 1.0 / np.sqrt(2.0)}
        line = {"wavelength": lam, "D": 20.0}
        return [SweepSpec("cap2d", "scalar", "closed", "L", 1.0, 6.0, 6,
                          plane, seed=seed),
                SweepSpec("cap1d", "scalar", "closed", "L", 1.0, 6.0, 6,
                          line, seed=seed)]
    if name == "fig10":
        base = {"wavelength": lam, "D": 6 * lam, "density": 2.0}
        return [SweepSpec("cap2d", channel, "grid", "L", 2 * lam, 12 * lam, 6,
                          dict(base), seed=seed)
                for channel in ("scalar", "dyadic2", "dyadic3")]
    if name == "fig11":
        base = {"wavelength": lam, "L": 2 * lam, "D": 1 * lam}
        coupling = CouplingParams.for_wavelength(lam)
        specs = []
        for channel in ("scalar", "dyadic3"):
            specs.append(SweepSpec("upa-dipole", channel, "direct", "M",
                                   2, 16, 8, dict(base), seed=seed))
            specs.append(SweepSpec("upa-dipole", channel, "direct", "M",
                                   2, 16, 8, dict(base), coupling=coupling,
                                   seed=seed))
        return specs
    raise ArgumentError(f"unknown figure preset {name!r}; expected one of {PRESET_NAMES}")

"""Parameter sweeps and plot-ready file emission.

Each runner realizes a grid of model parameters, evaluates one capability
(mode branches, energy surface, geometric phases, exact spectra, or the
finite-size convergence report), and writes flat CSV; the report runner adds
a JSON verdict.  Output is deterministic: floats are printed with 17
significant digits, line endings are '\\n', and identical configurations
produce byte-identical files.  Files appear atomically via a temp-file
rename, so an interrupted run leaves nothing at the target path.

Configurations come from an INI-style file (see ``load_config``) or from a
figure preset that pins the caption parameters of the standard panels.  The
``ADICKE_OUT_DIR`` environment variable, when set, redirects the directory
part of every output path; nothing else is read from the environment.
"""

from __future__ import annotations

import configparser
import json
import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace

import numpy as np

from adicke.berry import geometric_phases
from adicke.exact import converged_spectrum, hp_convergence_report
from adicke.model import ModelParams
from adicke.modes import ground_state_energy_closed, mode_branches
from adicke.surface import SearchConfig, find_extrema, surface_energy

MODES_HEADER = ("gamma,xi,eta_x,eta_y,eta_z,omega,omega0,phase,"
                "eps_minus,eps_plus,valid_minus,valid_plus,e0")
SURFACE_HEADER = "u,v,energy"
EXTREMA_HEADER = "u,v,energy,class,lambda1,lambda2"
BERRY_HEADER = ("gamma,d_eta_zx,e0,gamma_n_per_j,gamma_m_per_j,"
                "gamma_n_definitional,gamma_m_definitional")
SPECTRUM_HEADER = "N,n_max,sector,level,energy"
OBSERVABLES_HEADER = "N,gamma,xi,eta_x,eta_y,eta_z,omega,omega0,n_exp,jz_exp"
REPORT_HEADER = ("N,cutoff,converged,cutoff_ok,phase,gap_kind,e0_exact,e0_hp,"
                 "e0_err,gap_exact,eps_minus_hp,gap_err,eps_plus_hp,"
                 "gap_plus_nearest,doublet_split,n_ratio,alpha2,n_err,"
                 "m_ratio,beta2,m_err,zp_resid")

RUN_MODES = ("modes", "surface", "berry", "exact", "report")
PRESET_NAMES = ("fig1a", "fig1b", "fig1c", "fig2", "fig3", "fig4", "none")

_PARAM_FIELDS = tuple(f.name for f in fields(ModelParams))


class ConfigError(ValueError):
    """Malformed sweep configuration; the message names the offending field."""


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


def _fmt_bool(flag: bool) -> str:
    return "true" if flag else "false"


@dataclass(frozen=True)
class SweepAxis:
    """One swept parameter: endpoints inclusive, linear or log spacing."""

    name: str = "gamma"
    start: float = 0.0
    stop: float = 1.5
    count: int = 400
    spacing: str = "linear"

    def __post_init__(self) -> None:
        if self.name not in _PARAM_FIELDS:
            raise ConfigError(f"sweep.axis: unknown parameter {self.name!r}")
        if self.count < 2:
            raise ConfigError(f"sweep.count: need >= 2 points, got {self.count}")
        if self.spacing not in ("linear", "log"):
            raise ConfigError(f"sweep.spacing: {self.spacing!r} is not linear|log")
        if self.spacing == "log" and (self.start <= 0.0 or self.stop <= 0.0):
            raise ConfigError("sweep.spacing: log spacing needs positive endpoints")

    def values(self) -> list[float]:
        # Endpoints are pinned exactly so reruns and presets agree bytewise.
        # A degenerate axis (start == stop) collapses to a single grid point.
        n = self.count
        if self.start == self.stop:
            return [self.start]
        if self.spacing == "log":
            la, lb = math.log(self.start), math.log(self.stop)
            inner = [math.exp(la + (lb - la) * i / (n - 1)) for i in range(1, n - 1)]
        else:
            inner = [self.start + (self.stop - self.start) * i / (n - 1)
                     for i in range(1, n - 1)]
        return [self.start, *inner, self.stop]


@dataclass(frozen=True)
class SweepConfig:
    """Everything one runner invocation needs.

    ``base`` holds the fixed parameters; the axis value (and, for the modes
    and berry runners, the family value) is substituted per grid point.
    Runner-specific knobs live in the trailing fields and are ignored by the
    other runners.
    """

    base: ModelParams = ModelParams(omega=1.0, omega0=1.0, gamma=0.5, xi=0.0)
    axis: SweepAxis = SweepAxis()
    out: str = "sweep.csv"
    mode: str = "modes"
    preset: str = "none"
    threads: int = 1
    tol: float = 1e-8
    xi_slices: tuple[float, ...] = ()
    d_eta_zx_family: tuple[float, ...] = (-0.5, 0.0, 0.5, 1.0)
    u_range: tuple[float, float] = (-math.pi, math.pi)
    v_range: tuple[float, float] = (-math.pi, math.pi)
    grid_points: int = 201
    n_list: tuple[int, ...] = (10, 20, 40)
    k_levels: int = 6

    def __post_init__(self) -> None:
        if self.mode not in RUN_MODES:
            raise ConfigError(f"run.mode: {self.mode!r} is not one of "
                              + "|".join(RUN_MODES))
        if self.preset not in PRESET_NAMES:
            raise ConfigError(f"run.preset: unknown preset {self.preset!r}")
        if self.threads < 1:
            raise ConfigError(f"run.threads: need >= 1, got {self.threads}")
        if not self.tol > 0.0:
            raise ConfigError(f"run.tol: need > 0, got {self.tol}")
        if self.grid_points < 2:
            raise ConfigError(f"surface.grid: need >= 2, got {self.grid_points}")
        if self.u_range[0] >= self.u_range[1] or self.v_range[0] >= self.v_range[1]:
            raise ConfigError("surface.u/v range: min must be below max")
        if not self.n_list:
            raise ConfigError("exact.n_list: need at least one system size")
        if any(n < 2 or n % 2 for n in self.n_list):
            raise ConfigError("exact.n_list: sizes must be even and >= 2")


def _out_path(path: str) -> str:
    """Apply the output-directory override, if any."""
    override = os.environ.get("ADICKE_OUT_DIR")
    if override:
        return os.path.join(override, os.path.basename(path))
    return path


def _sidecar_path(path: str, tag: str) -> str:
    stem, ext = os.path.splitext(path)
    return f"{stem}_{tag}{ext or '.csv'}"


def _atomic_write(path: str, text: str) -> None:
    path = _out_path(path)
    dirname = os.path.dirname(os.path.abspath(path))
    os.makedirs(dirname, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=dirname, prefix=".sweep-", suffix=".part")
    try:
        with os.fdopen(fd, "w", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _pool_map(func, items, threads: int) -> list:
    # Results come back in submission order whatever the completion order.
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def _realize(base: ModelParams, axis_name: str, value: float) -> ModelParams:
    if axis_name == "n_qubits":
        return replace(base, n_qubits=int(round(value)))
    return replace(base, **{axis_name: value})


def preset_config(name: str, out_dir: str = ".") -> SweepConfig:
    """Fixed-parameter presets for the standard figure panels.

    fig1a/fig1b/fig1c: bare model (eta = 0) at xi = 0, 1, 0.5 with the
    coupling swept over [0, 1.5]*sqrt(omega*omega0); fig2 and fig3 repeat
    the sweep for eta_y resp. eta_x at 0.9*omega0 over three xi slices;
    fig4 is the geometric-phase sweep.  Resonance throughout.
    """
    if name not in PRESET_NAMES or name == "none":
        raise ConfigError(f"run.preset: unknown preset {name!r}")
    res = ModelParams(omega=1.0, omega0=1.0, gamma=0.0, xi=0.0)
    out = os.path.join(out_dir, f"{name}.csv")
    gamma_axis = SweepAxis(name="gamma", start=0.0, stop=1.5, count=400)
    if name == "fig1a":
        return SweepConfig(base=res, axis=gamma_axis, out=out, preset=name)
    if name == "fig1b":
        return SweepConfig(base=replace(res, xi=1.0), axis=gamma_axis,
                           out=out, preset=name)
    if name == "fig1c":
        return SweepConfig(base=replace(res, xi=0.5), axis=gamma_axis,
                           out=out, preset=name)
    if name == "fig2":
        return SweepConfig(base=replace(res, eta_y=0.9), axis=gamma_axis,
                           out=out, preset=name, xi_slices=(0.0, 0.5, 1.0))
    if name == "fig3":
        return SweepConfig(base=replace(res, eta_x=0.9), axis=gamma_axis,
                           out=out, preset=name, xi_slices=(0.0, 0.5, 1.0))
    return SweepConfig(base=res, out=out, mode="berry", preset=name,
                       axis=SweepAxis(name="gamma", start=0.0, stop=2.0,
                                      count=400))


def _modes_row(params: ModelParams) -> str:
    spec = mode_branches(params)
    e0 = ground_state_energy_closed(params)
    return ",".join([
        _fmt(params.gamma), _fmt(params.xi), _fmt(params.eta_x),
        _fmt(params.eta_y), _fmt(params.eta_z), _fmt(params.omega),
        _fmt(params.omega0), spec.phase.value, _fmt(spec.eps_minus),
        _fmt(spec.eps_plus), _fmt_bool(spec.valid_minus),
        _fmt_bool(spec.valid_plus), _fmt(e0),
    ])


def run_modes_sweep(config: SweepConfig) -> str:
    """Mode branches along the swept axis, one CSV row per grid point.

    With ``xi_slices`` set the sweep repeats per slice (slices outer, axis
    inner); otherwise the base anisotropy is used as the single slice.
    """
    slices = config.xi_slices or (config.base.xi,)
    points = [_realize(replace(config.base, xi=xi), config.axis.name, v)
              for xi in slices for v in config.axis.values()]
    rows = _pool_map(_modes_row, points, config.threads)
    _atomic_write(config.out, "\n".join([MODES_HEADER, *rows]) + "\n")
    return _out_path(config.out)


def run_surface_grid(config: SweepConfig) -> str:
    """Energy surface on a regular (u, v) grid plus an extremum sidecar.

    The grid is row-major with v fastest.  The sidecar (same path with an
    ``_extrema`` suffix) lists the classified stationary points as
    ``u,v,energy,class,lambda1,lambda2``.
    """
    params = config.base
    us = np.linspace(config.u_range[0], config.u_range[1], config.grid_points)
    vs = np.linspace(config.v_range[0], config.v_range[1], config.grid_points)
    uu, vv = np.meshgrid(us, vs, indexing="ij")
    energy = surface_energy(params, uu, vv)
    lines = [SURFACE_HEADER]
    for i in range(config.grid_points):
        for k in range(config.grid_points):
            lines.append(f"{_fmt(us[i])},{_fmt(vs[k])},{_fmt(energy[i, k])}")
    _atomic_write(config.out, "\n".join(lines) + "\n")

    found = find_extrema(params, SearchConfig())
    side = [EXTREMA_HEADER]
    for pt in found.points:
        side.append(",".join([
            _fmt(pt.location[0]), _fmt(pt.location[1]), _fmt(pt.energy),
            pt.kind, _fmt(pt.hessian_eigenvalues[0]),
            _fmt(pt.hessian_eigenvalues[1]),
        ]))
    _atomic_write(_sidecar_path(config.out, "extrema"), "\n".join(side) + "\n")
    return _out_path(config.out)


def _berry_row(item: tuple[ModelParams, float]) -> str:
    params, d_eta_zx = item
    ph = geometric_phases(params)
    e0 = ground_state_energy_closed(params)
    return ",".join([
        _fmt(params.gamma), _fmt(d_eta_zx), _fmt(e0),
        _fmt(ph.gamma_n_per_j), _fmt(ph.gamma_m_per_j),
        _fmt(ph.gamma_n_definitional), _fmt(ph.gamma_m_definitional),
    ])


def run_berry_sweep(config: SweepConfig) -> str:
    """Geometric phases along the coupling axis for each interaction family.

    Each ``d_eta_zx_family`` value is realized as eta_x = -d_eta_zx with
    eta_z = 0 (only the difference matters); families outer, axis inner.
    """
    if config.axis.name != "gamma":
        raise ConfigError("sweep.axis: the berry runner sweeps gamma only")
    items = []
    for dzx in config.d_eta_zx_family:
        fam = replace(config.base, eta_x=-dzx, eta_z=0.0)
        items.extend((_realize(fam, "gamma", g), dzx)
                     for g in config.axis.values())
    rows = _pool_map(_berry_row, items, config.threads)
    _atomic_write(config.out, "\n".join([BERRY_HEADER, *rows]) + "\n")
    return _out_path(config.out)


def run_exact_spectrum(config: SweepConfig) -> tuple[str, bool]:
    """Converged low spectra per system size, plus a ground-observables file.

    Writes the eigenvalue table to ``out`` and the per-size ground-state
    expectations to the ``_observables`` sidecar.  Returns the main path and
    whether every solve converged within its cutoff budget.
    """
    def solve(n: int):
        pr = replace(config.base, n_qubits=int(n))
        return pr, converged_spectrum(pr, k_levels=config.k_levels,
                                      tol=config.tol)

    solved = _pool_map(solve, config.n_list, config.threads)
    lines = [SPECTRUM_HEADER]
    obs_lines = [OBSERVABLES_HEADER]
    all_converged = True
    for pr, spec in solved:
        all_converged &= spec.converged
        for sector in ("even", "odd"):
            for level, energy in enumerate(spec.eigenvalues[sector]):
                lines.append(f"{pr.n_qubits},{spec.cutoff_used},{sector},"
                             f"{level},{_fmt(energy)}")
        obs = spec.ground_observables
        obs_lines.append(",".join([
            str(pr.n_qubits), _fmt(pr.gamma), _fmt(pr.xi), _fmt(pr.eta_x),
            _fmt(pr.eta_y), _fmt(pr.eta_z), _fmt(pr.omega), _fmt(pr.omega0),
            _fmt(obs["n"]), _fmt(obs["jz"]),
        ]))
    _atomic_write(config.out, "\n".join(lines) + "\n")
    _atomic_write(_sidecar_path(config.out, "observables"),
                  "\n".join(obs_lines) + "\n")
    return _out_path(config.out), all_converged


def run_oracle_report(config: SweepConfig) -> tuple[str, bool]:
    """Finite-size convergence table as CSV plus a JSON verdict sidecar.

    The JSON summary grades the tolerance-bearing columns: the relative
    energy and gap errors must shrink monotonically over ``n_list`` and end
    below 5 percent, the doublet splitting (graded in the discrete-broken
    phase only) must end below 1e-3, and every solve must have converged.
    Returns the CSV path and the overall verdict.
    """
    rows = hp_convergence_report(config.base, list(config.n_list),
                                 k_levels=config.k_levels, tol=config.tol)
    keys = REPORT_HEADER.split(",")
    lines = [REPORT_HEADER]
    for row in rows:
        cells = []
        for key in keys:
            val = row[key]
            if isinstance(val, bool):
                cells.append(_fmt_bool(val))
            elif isinstance(val, (int, np.integer)):
                cells.append(str(int(val)))
            elif isinstance(val, str):
                cells.append(val)
            else:
                cells.append(_fmt(val))
        lines.append(",".join(cells))
    _atomic_write(config.out, "\n".join(lines) + "\n")

    def column(key: str) -> list[float]:
        return [float(row[key]) for row in rows]

    def monotone(vals: list[float]) -> bool:
        return all(a > b for a, b in zip(vals, vals[1:]))

    def graded(vals: list[float]) -> dict:
        # Exactly solvable points report zero error at every size; that is a
        # pass, not a monotonicity failure.
        ok = (max(vals) < 1e-12
              or (monotone(vals) and vals[-1] < 0.05))
        return {"values": vals, "monotone": monotone(vals),
                "final": vals[-1], "ok": ok}

    doublet = abs(column("doublet_split")[-1])
    discrete_broken = (rows[-1]["phase"] == "superradiant_x"
                       and config.base.xi == 1.0)
    checks = {
        "e0_err": graded(column("e0_err")),
        "gap_err": graded(column("gap_err")),
        "doublet_split": {"final": doublet, "graded": discrete_broken,
                          "ok": (doublet < 1e-3) if discrete_broken else True},
        "converged": {"values": [bool(r["converged"]) for r in rows],
                      "ok": all(r["converged"] for r in rows)},
    }
    verdict = all(entry["ok"] for entry in checks.values())
    summary = {
        "params": {name: getattr(config.base, name) for name in _PARAM_FIELDS
                   if name != "n_qubits"},
        "n_list": [int(n) for n in config.n_list],
        "checks": checks,
        "pass": verdict,
    }
    _atomic_write(_sidecar_path(config.out, "summary").rsplit(".", 1)[0] + ".json",
                  json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return _out_path(config.out), verdict


def _parse_floats(text: str) -> tuple[float, ...]:
    items = [piece.strip() for piece in text.replace(";", ",").split(",")]
    return tuple(float(piece) for piece in items if piece)


def load_config(path: str, overrides: dict | None = None) -> SweepConfig:
    """Read an INI-style sweep configuration.

    Sections and keys (all optional, shown with defaults)::

        [model]    omega=1.0 omega0=1.0 gamma=0.5 xi=0.0
                   eta_x=0.0 eta_y=0.0 eta_z=0.0 n_qubits=20
        [sweep]    axis=gamma start=0.0 stop=1.5 count=400 spacing=linear
        [run]      mode=modes preset=none out=sweep.csv threads=1 tol=1e-8
        [modes]    xi_slices=            (comma list, empty = base xi only)
        [surface]  u_min/u_max/v_min/v_max=+-pi grid=201
        [berry]    d_eta_zx=-0.5, 0.0, 0.5, 1.0
        [exact]    n_list=10, 20, 40 k_levels=6

    A ``preset`` other than ``none`` supplies the base configuration first;
    explicit keys and ``overrides`` (out/threads/tol/mode) then win.  Raises
    ConfigError naming the bad section.key on any unknown or unparsable
    entry.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle, source=path)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc

    known = {
        "model": {"omega", "omega0", "gamma", "xi", "eta_x", "eta_y",
                  "eta_z", "n_qubits"},
        "sweep": {"axis", "start", "stop", "count", "spacing"},
        "run": {"mode", "preset", "out", "threads", "tol"},
        "modes": {"xi_slices"},
        "surface": {"u_min", "u_max", "v_min", "v_max", "grid"},
        "berry": {"d_eta_zx"},
        "exact": {"n_list", "k_levels"},
    }
    for section in parser.sections():
        if section not in known:
            raise ConfigError(f"{path}: unknown section [{section}]")
        for key in parser[section]:
            if key not in known[section]:
                raise ConfigError(f"{path}: unknown key {section}.{key}")

    def get(section: str, key: str, default, cast):
        if not parser.has_option(section, key):
            return default
        raw = parser.get(section, key)
        try:
            return cast(raw)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{path}: bad value for {section}.{key}: "
                              f"{raw!r}") from exc

    preset = get("run", "preset", "none", str).strip()
    if preset != "none":
        seed = preset_config(preset)
    else:
        seed = SweepConfig()

    base = seed.base
    for name in _PARAM_FIELDS:
        cast = int if name == "n_qubits" else float
        if parser.has_option("model", name):
            base = replace(base, **{name: get("model", name, None, cast)})

    axis = SweepAxis(
        name=get("sweep", "axis", seed.axis.name, str).strip(),
        start=get("sweep", "start", seed.axis.start, float),
        stop=get("sweep", "stop", seed.axis.stop, float),
        count=get("sweep", "count", seed.axis.count, int),
        spacing=get("sweep", "spacing", seed.axis.spacing, str).strip(),
    )
    config = replace(
        seed, base=base, axis=axis, preset=preset,
        mode=get("run", "mode", seed.mode, str).strip(),
        out=get("run", "out", seed.out, str).strip(),
        threads=get("run", "threads", seed.threads, int),
        tol=get("run", "tol", seed.tol, float),
        xi_slices=get("modes", "xi_slices", seed.xi_slices, _parse_floats),
        u_range=(get("surface", "u_min", seed.u_range[0], float),
                 get("surface", "u_max", seed.u_range[1], float)),
        v_range=(get("surface", "v_min", seed.v_range[0], float),
                 get("surface", "v_max", seed.v_range[1], float)),
        grid_points=get("surface", "grid", seed.grid_points, int),
        d_eta_zx_family=get("berry", "d_eta_zx", seed.d_eta_zx_family,
                            _parse_floats),
        n_list=get("exact", "n_list", seed.n_list,
                   lambda s: tuple(int(float(x)) for x in _parse_floats(s))),
        k_levels=get("exact", "k_levels", seed.k_levels, int),
    )
    if overrides:
        config = replace(config, **{k: v for k, v in overrides.items()
                                    if v is not None})
    return config

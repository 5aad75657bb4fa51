"""Sweep runner and CLI tests: grids, file formats, presets, determinism."""

import json
import math
import os
from dataclasses import replace

import pytest

from adicke import (
    BERRY_HEADER,
    ConfigError,
    EXTREMA_HEADER,
    MODES_HEADER,
    ModelParams,
    OBSERVABLES_HEADER,
    REPORT_HEADER,
    SPECTRUM_HEADER,
    SURFACE_HEADER,
    SweepAxis,
    SweepConfig,
    ground_state_energy,
    ground_state_energy_closed,
    load_config,
    mode_branches,
    preset_config,
    run_berry_sweep,
    run_exact_spectrum,
    run_modes_sweep,
    run_oracle_report,
    run_surface_grid,
)
from adicke import cli
from adicke.sweep import _atomic_write


def _read_rows(path):
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    return lines[0], lines[1:]


def test_axis_values_pin_endpoints():
    axis = SweepAxis(name="gamma", start=0.0, stop=1.5, count=4)
    vals = axis.values()
    assert vals[0] == 0.0 and vals[-1] == 1.5
    assert len(vals) == 4
    assert vals[1] == pytest.approx(0.5) and vals[2] == pytest.approx(1.0)

    two = SweepAxis(name="gamma", start=0.2, stop=0.9, count=2).values()
    assert two == [0.2, 0.9]

    logv = SweepAxis(name="gamma", start=0.1, stop=10.0, count=3,
                     spacing="log").values()
    assert logv[0] == 0.1 and logv[2] == 10.0
    assert logv[1] == pytest.approx(1.0)


def test_axis_degenerate_single_point():
    # equal endpoints collapse to one grid point regardless of count
    axis = SweepAxis(name="gamma", start=0.7, stop=0.7, count=50)
    assert axis.values() == [0.7]


def test_axis_validation():
    with pytest.raises(ConfigError):
        SweepAxis(name="coupling", start=0.0, stop=1.0, count=10)
    with pytest.raises(ConfigError):
        SweepAxis(name="gamma", start=0.0, stop=1.0, count=1)
    with pytest.raises(ConfigError):
        SweepAxis(name="gamma", start=0.0, stop=1.0, count=5, spacing="cubic")
    with pytest.raises(ConfigError):
        SweepAxis(name="gamma", start=0.0, stop=1.0, count=5, spacing="log")


def test_config_validation():
    with pytest.raises(ConfigError):
        SweepConfig(mode="render")
    with pytest.raises(ConfigError):
        SweepConfig(preset="fig9")
    with pytest.raises(ConfigError):
        SweepConfig(threads=0)
    with pytest.raises(ConfigError):
        SweepConfig(tol=0.0)
    with pytest.raises(ConfigError):
        SweepConfig(grid_points=1)
    with pytest.raises(ConfigError):
        SweepConfig(u_range=(1.0, -1.0))
    with pytest.raises(ConfigError):
        SweepConfig(n_list=(10, 15))
    with pytest.raises(ConfigError):
        SweepConfig(n_list=())


def test_modes_csv_matches_library(tmp_path):
    base = ModelParams(omega=1.0, omega0=1.0, gamma=0.0, xi=1.0)
    config = SweepConfig(base=base, out=str(tmp_path / "modes.csv"),
                         axis=SweepAxis(start=0.0, stop=1.2, count=5))
    path = run_modes_sweep(config)
    header, rows = _read_rows(path)
    assert header == MODES_HEADER
    assert len(rows) == 5

    gammas = [float(r.split(",")[0]) for r in rows]
    assert gammas == pytest.approx([0.0, 0.3, 0.6, 0.9, 1.2])
    assert gammas[0] == 0.0 and gammas[-1] == 1.2
    for row in rows:
        cells = row.split(",")
        p = ModelParams(omega=float(cells[5]), omega0=float(cells[6]),
                        gamma=float(cells[0]), xi=float(cells[1]),
                        eta_x=float(cells[2]), eta_y=float(cells[3]),
                        eta_z=float(cells[4]))
        spec = mode_branches(p)
        assert cells[7] == spec.phase.value
        assert float(cells[8]) == spec.eps_minus
        assert float(cells[9]) == spec.eps_plus
        assert cells[10] == ("true" if spec.valid_minus else "false")
        assert cells[11] == ("true" if spec.valid_plus else "false")
        assert float(cells[12]) == ground_state_energy_closed(p)

    with open(path, "rb") as handle:
        raw = handle.read()
    assert b"\r" not in raw and raw.endswith(b"\n")


def test_modes_slices_outer_axis_inner(tmp_path):
    config = SweepConfig(
        base=ModelParams(omega=1.0, omega0=1.0, gamma=0.0, xi=0.0, eta_x=0.9),
        axis=SweepAxis(start=0.0, stop=1.0, count=3),
        out=str(tmp_path / "slices.csv"), xi_slices=(0.0, 1.0))
    _, rows = _read_rows(run_modes_sweep(config))
    assert len(rows) == 6
    xis = [float(r.split(",")[1]) for r in rows]
    gammas = [float(r.split(",")[0]) for r in rows]
    assert xis == [0.0, 0.0, 0.0, 1.0, 1.0, 1.0]
    assert gammas == [0.0, 0.5, 1.0, 0.0, 0.5, 1.0]


def test_no_partial_files_left_behind(tmp_path, monkeypatch):
    target = tmp_path / "out.csv"
    _atomic_write(str(target), "hello\n")
    assert target.read_text() == "hello\n"
    assert not list(tmp_path.glob(".sweep-*"))

    # a failing rename must clean up the temp file and leave no target
    victim = tmp_path / "never.csv"

    def boom(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr(os, "replace", boom)
    with pytest.raises(OSError):
        _atomic_write(str(victim), "data\n")
    monkeypatch.undo()
    assert not victim.exists()
    assert not list(tmp_path.glob(".sweep-*"))


def test_run_error_before_write_leaves_no_file(tmp_path):
    # negative coupling fails parameter validation before any output opens
    config = SweepConfig(axis=SweepAxis(start=-1.0, stop=1.0, count=3),
                         out=str(tmp_path / "bad.csv"))
    with pytest.raises(ValueError):
        run_modes_sweep(config)
    assert not (tmp_path / "bad.csv").exists()


def test_preset_fidelity():
    for name, xi in (("fig1a", 0.0), ("fig1b", 1.0), ("fig1c", 0.5)):
        cfg = preset_config(name)
        assert cfg.mode == "modes" and cfg.preset == name
        assert cfg.base.xi == xi
        assert cfg.base.omega == cfg.base.omega0 == 1.0
        assert (cfg.base.eta_x, cfg.base.eta_y, cfg.base.eta_z) == (0, 0, 0)
        assert (cfg.axis.start, cfg.axis.stop, cfg.axis.count) == (0.0, 1.5, 400)
        assert cfg.xi_slices == ()

    fig2 = preset_config("fig2")
    assert fig2.base.eta_y == 0.9 and fig2.base.eta_x == 0.0
    assert fig2.xi_slices == (0.0, 0.5, 1.0)
    fig3 = preset_config("fig3")
    assert fig3.base.eta_x == 0.9 and fig3.base.eta_y == 0.0
    assert fig3.xi_slices == (0.0, 0.5, 1.0)

    fig4 = preset_config("fig4")
    assert fig4.mode == "berry"
    assert (fig4.axis.start, fig4.axis.stop, fig4.axis.count) == (0.0, 2.0, 400)

    with pytest.raises(ConfigError):
        preset_config("none")
    with pytest.raises(ConfigError):
        preset_config("fig5")


def test_repeat_runs_are_byte_identical(tmp_path):
    config = SweepConfig(
        base=ModelParams(omega=1.0, omega0=1.0, gamma=0.0, xi=0.5),
        axis=SweepAxis(start=0.0, stop=1.5, count=50))
    first = run_modes_sweep(replace(config, out=str(tmp_path / "a.csv")))
    second = run_modes_sweep(replace(config, out=str(tmp_path / "b.csv")))
    threaded = run_modes_sweep(replace(config, out=str(tmp_path / "c.csv"),
                                       threads=4))
    with open(first, "rb") as fa, open(second, "rb") as fb, \
            open(threaded, "rb") as fc:
        data = fa.read()
        assert data == fb.read()
        # worker count must not reorder rows
        assert data == fc.read()


def test_surface_grid_layout_and_extrema(tmp_path):
    p = ModelParams(omega=1.0, omega0=1.0, gamma=0.6, xi=1.0)
    config = SweepConfig(base=p, out=str(tmp_path / "surf.csv"),
                         mode="surface", grid_points=21)
    path = run_surface_grid(config)
    header, rows = _read_rows(path)
    assert header == SURFACE_HEADER
    assert len(rows) == 21 * 21

    # row-major with v fastest: first two rows share u, differ in v
    r0, r1 = rows[0].split(","), rows[1].split(",")
    assert r0[0] == r1[0] and r0[1] != r1[1]
    assert float(r0[0]) == -math.pi and float(r0[1]) == -math.pi

    side_header, side_rows = _read_rows(str(tmp_path / "surf_extrema.csv"))
    assert side_header == EXTREMA_HEADER
    kinds = [r.split(",")[3] for r in side_rows]
    assert set(kinds) <= {"min", "max", "saddle"}
    assert "min" in kinds and "saddle" in kinds

    minima = [r.split(",") for r in side_rows if r.split(",")[3] == "min"]
    target = 2.0 * ground_state_energy(p)
    for cells in minima:
        assert float(cells[2]) == pytest.approx(target, abs=1e-8)
        assert float(cells[4]) > 0.0 and float(cells[5]) > 0.0


def test_berry_families_and_flat_family(tmp_path):
    config = SweepConfig(
        base=ModelParams(omega=1.0, omega0=1.0, gamma=0.0, xi=1.0),
        axis=SweepAxis(start=0.0, stop=2.0, count=5), mode="berry",
        out=str(tmp_path / "berry.csv"), d_eta_zx_family=(0.0, 1.0))
    path = run_berry_sweep(config)
    header, rows = _read_rows(path)
    assert header == BERRY_HEADER
    assert len(rows) == 10
    fams = [float(r.split(",")[1]) for r in rows]
    assert fams == [0.0] * 5 + [1.0] * 5

    # the family whose interaction shift equals the level splitting keeps the
    # field phase pinned at zero through the transition
    for row in rows[5:]:
        assert float(row.split(",")[3]) == 0.0

    single = SweepConfig(
        base=config.base, mode="berry", out=str(tmp_path / "one.csv"),
        axis=SweepAxis(start=1.3, stop=1.3, count=2), d_eta_zx_family=(0.0,))
    _, one_rows = _read_rows(run_berry_sweep(single))
    assert len(one_rows) == 1
    assert float(one_rows[0].split(",")[0]) == 1.3

    with pytest.raises(ConfigError):
        run_berry_sweep(replace(config, axis=SweepAxis(name="omega",
                                                       start=0.5, stop=2.0,
                                                       count=3)))


def test_exact_runner_files(tmp_path):
    config = SweepConfig(
        base=ModelParams(omega=1.0, omega0=1.0, gamma=0.4, xi=1.0),
        mode="exact", out=str(tmp_path / "spec.csv"), n_list=(4, 8),
        k_levels=3)
    path, converged = run_exact_spectrum(config)
    assert converged
    header, rows = _read_rows(path)
    assert header == SPECTRUM_HEADER
    assert len(rows) == 2 * 2 * 3

    sizes = sorted({int(r.split(",")[0]) for r in rows})
    assert sizes == [4, 8]
    # levels within one sector are nondecreasing
    by_key = {}
    for row in rows:
        n, _, sector, level, energy = row.split(",")
        by_key.setdefault((n, sector), []).append(float(energy))
    for energies in by_key.values():
        assert energies == sorted(energies)

    obs_header, obs_rows = _read_rows(str(tmp_path / "spec_observables.csv"))
    assert obs_header == OBSERVABLES_HEADER
    assert len(obs_rows) == 2
    for row in obs_rows:
        cells = row.split(",")
        assert float(cells[8]) >= 0.0
        assert abs(float(cells[9])) <= int(cells[0]) / 2.0


def test_report_runner_pass_and_fail(tmp_path):
    # a decoupled point is exactly solvable, so every error is zero: pass
    good = SweepConfig(
        base=ModelParams(omega=1.0, omega0=1.0, gamma=0.0, xi=0.0),
        mode="report", out=str(tmp_path / "rep.csv"), n_list=(4, 6, 8),
        k_levels=3)
    path, verdict = run_oracle_report(good)
    assert verdict
    header, rows = _read_rows(path)
    assert header == REPORT_HEADER
    assert len(rows) == 3

    summary_path = tmp_path / "rep_summary.json"
    with open(summary_path, encoding="utf-8") as handle:
        summary = json.load(handle)
    assert summary["pass"] is True
    assert summary["n_list"] == [4, 6, 8]
    assert set(summary["checks"]) == {"e0_err", "gap_err", "doublet_split",
                                      "converged"}
    assert summary["checks"]["e0_err"]["ok"] is True

    first = summary_path.read_bytes()
    run_oracle_report(good)
    assert summary_path.read_bytes() == first


def test_out_dir_override(tmp_path, monkeypatch):
    override = tmp_path / "elsewhere"
    monkeypatch.setenv("ADICKE_OUT_DIR", str(override))
    config = SweepConfig(
        base=ModelParams(omega=1.0, omega0=1.0, gamma=0.0, xi=0.0),
        axis=SweepAxis(start=0.0, stop=1.0, count=2),
        out="subdir/modes.csv")
    path = run_modes_sweep(config)
    # only the basename survives; the directory comes from the environment
    assert path == str(override / "modes.csv")
    assert os.path.exists(path)
    assert not os.path.exists("subdir/modes.csv")


def test_load_config_round_trip(tmp_path):
    ini = tmp_path / "run.ini"
    ini.write_text(
        "[model]\n"
        "omega = 2.0\n"
        "gamma = 0.3   # inline comment\n"
        "xi = 0.5\n"
        "eta_x = -0.2\n"
        "[sweep]\n"
        "axis = gamma\n"
        "start = 0.1\n"
        "stop = 1.1\n"
        "count = 7\n"
        "[run]\n"
        "mode = modes\n"
        "out = custom.csv\n"
        "threads = 2\n"
        "[modes]\n"
        "xi_slices = 0.0, 0.5, 1.0\n",
        encoding="utf-8")
    config = load_config(str(ini))
    assert config.base.omega == 2.0
    assert config.base.gamma == 0.3
    assert config.base.xi == 0.5
    assert config.base.eta_x == -0.2
    assert config.base.omega0 == 1.0
    assert (config.axis.start, config.axis.stop, config.axis.count) == (0.1, 1.1, 7)
    assert config.out == "custom.csv"
    assert config.threads == 2
    assert config.xi_slices == (0.0, 0.5, 1.0)

    # explicit overrides beat file values
    forced = load_config(str(ini), overrides={"out": "other.csv",
                                              "threads": None})
    assert forced.out == "other.csv" and forced.threads == 2


def test_load_config_preset_seeding(tmp_path):
    ini = tmp_path / "preset.ini"
    ini.write_text("[run]\npreset = fig3\n[model]\ngamma = 0.0\n"
                   "[sweep]\ncount = 9\n", encoding="utf-8")
    config = load_config(str(ini))
    assert config.preset == "fig3"
    assert config.base.eta_x == 0.9
    assert config.xi_slices == (0.0, 0.5, 1.0)
    # file keys refine the preset
    assert config.axis.count == 9
    assert config.axis.stop == 1.5


def test_load_config_errors(tmp_path):
    bad_key = tmp_path / "k.ini"
    bad_key.write_text("[model]\nomga = 1.0\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="model.omga"):
        load_config(str(bad_key))

    bad_section = tmp_path / "s.ini"
    bad_section.write_text("[models]\nomega = 1.0\n", encoding="utf-8")
    with pytest.raises(ConfigError, match=r"\[models\]"):
        load_config(str(bad_section))

    bad_value = tmp_path / "v.ini"
    bad_value.write_text("[sweep]\ncount = many\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="sweep.count"):
        load_config(str(bad_value))

    with pytest.raises(ConfigError, match="cannot read"):
        load_config(str(tmp_path / "missing.ini"))


def test_cli_modes_roundtrip(tmp_path, capsys):
    ini = tmp_path / "cli.ini"
    out = tmp_path / "cli.csv"
    ini.write_text(
        "[model]\nxi = 1.0\n[sweep]\nstart = 0.0\nstop = 1.0\ncount = 4\n"
        f"[run]\nout = {out}\n", encoding="utf-8")
    rc = cli.main(["modes", "--config", str(ini)])
    captured = capsys.readouterr()
    assert rc == 0
    assert captured.out.strip() == str(out)
    header, rows = _read_rows(str(out))
    assert header == MODES_HEADER and len(rows) == 4


def test_cli_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.ini"
    bad.write_text("[run]\nthreads = zero\n", encoding="utf-8")
    assert cli.main(["modes", "--config", str(bad)]) == 2
    assert "config error" in capsys.readouterr().err

    assert cli.main(["modes", "--config", str(tmp_path / "nope.ini")]) == 2
    capsys.readouterr()

    # presets are tied to their runner
    assert cli.main(["berry", "--preset", "fig1a"]) == 2
    assert "belongs to the modes subcommand" in capsys.readouterr().err

    ini = tmp_path / "pre.ini"
    ini.write_text("[run]\npreset = fig1a\n", encoding="utf-8")
    assert cli.main(["modes", "--config", str(ini), "--preset",
                     "fig1b"]) == 2
    assert "conflicts" in capsys.readouterr().err


def test_cli_preset_run(tmp_path, capsys):
    out = tmp_path / "fig1a.csv"
    rc = cli.main(["modes", "--preset", "fig1a", "--out", str(out)])
    capsys.readouterr()
    assert rc == 0
    header, rows = _read_rows(str(out))
    assert header == MODES_HEADER
    assert len(rows) == 400


def test_cli_report_verdict_exit_code(tmp_path, capsys):
    # product-form amplitude branch carries a finite-size-independent bias at
    # this transverse-interaction point, so the error column stalls: rc 3
    ini = tmp_path / "rep.ini"
    ini.write_text(
        "[model]\ngamma = 0.5\neta_x = 0.3\n"
        "[run]\nmode = report\n"
        f"out = {tmp_path / 'rep.csv'}\n"
        "[exact]\nn_list = 10, 20, 40\nk_levels = 4\n", encoding="utf-8")
    rc = cli.main(["report", "--config", str(ini)])
    err = capsys.readouterr().err
    assert rc == 3
    assert "checks failed" in err
    with open(tmp_path / "rep_summary.json", encoding="utf-8") as handle:
        summary = json.load(handle)
    assert summary["pass"] is False

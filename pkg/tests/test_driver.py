import json
import os

import numpy as np
import pytest

from ymtorus import driver, lattice


def test_presets_parse_and_validate():
    for name in driver.preset_names():
        cfg = driver.preset_config(name)
        assert cfg["gauge", "model"] in ("u1_toy", "su2_toy", "su3_pure")


def test_unknown_keys_listed():
    with pytest.raises(driver.ConfigError) as err:
        driver.parse_config_text("[grid]\nn = 8\nbogus = 1\n[nosuch]\nx = 2\n")
    msg = str(err.value)
    assert "grid.bogus" in msg and "[nosuch]" in msg


def test_physical_violations_collected():
    with pytest.raises(driver.ConfigError) as err:
        driver.parse_config_text(
            "[grid]\nn = 2\n[background]\ntau_end_fraction = 1.2\n"
            "[gauge]\nmodel = nope\n[numerics]\ncfl = 7\n")
    msg = str(err.value)
    assert "n must be >= 4" in msg
    assert "tau_end_fraction" in msg
    assert "shipped models" in msg
    assert "cfl" in msg


def test_unknown_group_lists_known():
    with pytest.raises(driver.ConfigError) as err:
        driver.parse_config_text("[gauge]\nmodel = e8_toy\n")
    assert "su2_toy" in str(err.value)


def _tiny_config(tmp_path, amplitude="0.0", model="u1_toy", seed="1"):
    return driver.parse_config_text(f"""
[grid]
n = 8
[background]
profile = desitter
tau_end_fraction = 0.2
[gauge]
model = {model}
[initial]
seed = {seed}
amplitude = {amplitude}
[numerics]
cfl = 0.4
dtau = 0.01
report_every = 1
[outputs]
directory = {tmp_path}/out
plot = true
snapshots = 2
""")


def test_zero_amplitude_run_all_zero(tmp_path):
    cfg = _tiny_config(tmp_path)
    summary = driver.run_experiment(cfg, quiet=True)
    assert summary["energy_monitor"]["max_energy"] == 0.0
    e = driver.read_csv(os.path.join(str(tmp_path), "out", "energy.csv"))
    assert np.all(e["E_total"] == 0.0)
    c = driver.read_csv(os.path.join(str(tmp_path), "out", "constraints.csv"))
    for name in ("curvature", "bianchi", "gauss", "dirac"):
        assert np.all(c[name] == 0.0)
    assert summary["decay"]["phi"]["undefined"]


def test_run_determinism_bit_identical(tmp_path):
    cfg1 = _tiny_config(tmp_path / "a", amplitude="0.01")
    cfg2 = _tiny_config(tmp_path / "b", amplitude="0.01")
    driver.run_experiment(cfg1, quiet=True)
    driver.run_experiment(cfg2, quiet=True)
    for fname in ("energy.csv", "constraints.csv"):
        a = (tmp_path / "a" / "out" / fname).read_text()
        b = (tmp_path / "b" / "out" / fname).read_text()
        assert a == b


def test_artifacts_and_replot(tmp_path):
    cfg = _tiny_config(tmp_path, amplitude="0.01")
    summary = driver.run_experiment(cfg, quiet=True)
    out = tmp_path / "out"
    for fname in ("energy.csv", "constraints.csv", "decay.json", "metadata.json",
                  "energy.svg", "constraints.svg"):
        assert (out / fname).exists(), fname
    # snapshots loadable
    snaps = sorted(out.glob("snapshot_*.ymt"))
    assert snaps
    model = driver.build_model(cfg)
    st = lattice.load_state(snaps[0], model)
    assert st.grid.n == 8
    # metadata reproduces the config
    meta = json.loads((out / "metadata.json").read_text())
    assert meta["config"]["grid"]["n"] == "8"
    assert "version" in meta
    # replot regenerates SVGs from the CSVs alone
    (out / "energy.svg").unlink()
    driver.replot(str(out))
    assert (out / "energy.svg").exists()


def test_energy_normalization_contract(tmp_path):
    cfg = _tiny_config(tmp_path, amplitude="0.01", model="su2_toy", seed="3")
    summary = driver.run_experiment(cfg, quiet=True)
    e0 = summary["initial_data"]["energy"]
    assert abs(e0 - 1e-4) <= 1e-10 + 1e-9 * 1e-4


def test_cli_verbs(tmp_path, capsys):
    from ymtorus.__main__ import main

    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    assert "desitter_u1_small" in out
    cfg_path = tmp_path / "c.ini"
    cfg_path.write_text("[grid]\nn = 8\n[background]\ntau_end_fraction = 0.1\n"
                        "[initial]\namplitude = 0.0\n[numerics]\ncfl = 0.4\n"
                        f"[outputs]\ndirectory = {tmp_path}/cli_out\nplot = false\n")
    assert main(["validate", str(cfg_path)]) == 0
    assert main(["run", str(cfg_path)]) == 0
    assert main(["replot", str(tmp_path / "cli_out")]) == 0
    assert main(["validate", "nonexistent.ini"]) == 1


def test_gauge_experiment_hooks(tmp_path):
    cfg = driver.parse_config_text(f"""
[grid]
n = 8
[background]
tau_end_fraction = 0.2
[gauge]
model = su2_toy
[initial]
seed = 2
amplitude = 0.01
[numerics]
cfl = 0.4
[outputs]
directory = {tmp_path}/gexp
plot = false
[gauge_experiment]
kind = automorphism
alpha_amplitude = 0.2
alpha_steps = 40
""")
    summary = driver.run_experiment(cfg, quiet=True)
    assert summary["gauge_experiment"]["kind"] == "automorphism"
    assert summary["gauge_experiment"]["alpha_defect"] < 1e-6


def test_bianchi_preset_short_run(tmp_path):
    raw = driver.preset_config("bianchi1_su2").as_dict()
    raw["background"]["tau_end_fraction"] = "0.35"
    raw["outputs"] = {"directory": str(tmp_path / "bianchi"), "plot": "false",
                      "snapshots": "0"}
    summary = driver.run_experiment(driver.validate_config(raw), quiet=True)
    # anisotropic background: extrinsic terms active, run stays healthy
    assert summary["energy_monitor"]["max_energy"] < 1.0
    cg_tol = float(summary["config"]["numerics"]["cg_tol"])
    floor = max(max(summary["constraint_initial"].values()), cg_tol)
    assert max(summary["constraint_max"].values()) <= 10 * floor
    assert max(summary["extrinsic_bound_samples"]) > 0.0


def test_tabulated_background_config(tmp_path):
    taus = np.linspace(0, 1.6, 80)
    barr = np.column_stack([taus, 1 + 0.1 * taus, np.ones_like(taus),
                            1 + 0.02 * taus ** 2])
    bpath = tmp_path / "b.csv"
    np.savetxt(bpath, barr, delimiter=",")
    cfg = driver.parse_config_text(f"""
[grid]
n = 8
[background]
profile = desitter
tau_end_fraction = 0.2
b_kind = table
b_table = {bpath}
[initial]
seed = 3
amplitude = 0.005
[numerics]
cfl = 0.3
[outputs]
directory = {tmp_path}/tab
plot = false
""")
    summary = driver.run_experiment(cfg, quiet=True)
    assert summary["energy_monitor"]["max_energy"] > 0
    with pytest.raises(driver.ConfigError):
        driver.parse_config_text("[background]\nb_kind = table\n")


def test_custom_structure_constants_config(tmp_path):
    from ymtorus import algebra
    lie = algebra.su2()
    fpath = tmp_path / "f.txt"
    with open(fpath, "w") as fh:
        fh.write("3\n")
        for a in range(3):
            for b in range(3):
                fh.write(" ".join("%.17g" % lie.f[a, b, c] for c in range(3)) + "\n")
    cfg = driver.parse_config_text(f"""
[grid]
n = 8
[background]
tau_end_fraction = 0.15
[gauge]
structure_file = {fpath}
[initial]
seed = 2
amplitude = 0.01
sectors = gauge
[numerics]
cfl = 0.3
[outputs]
directory = {tmp_path}/custom
plot = false
""")
    model = driver.build_model(cfg)
    assert model.lie.dim == 3 and model.name.startswith("custom:")
    summary = driver.run_experiment(cfg, quiet=True)
    assert summary["energy_monitor"]["max_energy"] > 0

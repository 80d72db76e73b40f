"""Acceptance criterion for the renderer.

Generates real simulator CSVs for the two sweep layouts (perfect CSI and
uniform 0.3 CSI error) at desk scale, renders them, and verifies that the
plotted y-values are the CSV means verbatim and that a CSV with a missing
column fails with an error naming the field.
"""

import shutil
import subprocess

import pandas as pd
import pytest

from rsmaris_figures import FigureSpec, SchemaError, load_table, render

RESULTS = []


def check(name, ok, detail=""):
    RESULTS.append((name, bool(ok), detail))
    print(f"{'PASS' if ok else 'FAIL'} {name}" + (f" -- {detail}" if detail else ""))
    return bool(ok)


needs_simulator = pytest.mark.skipif(
    shutil.which("rsmaris") is None, reason="simulator CLI not installed"
)


def desk_scale_csv(tmp_path, name, tau):
    ini = tmp_path / f"{name}.ini"
    subprocess.run(["rsmaris", "demo-config", "--output", str(ini)], check=True)
    text = ini.read_text()
    text = text.replace("ris_elements = 200", "ris_elements = 16")
    text = text.replace("trials = 500", "trials = 3")
    text = text.replace("iterations = 3000", "iterations = 50")
    for key in ("bs_tau_bs_u", "bs_tau_bs_ris", "bs_tau_ris_u", "attacker_tau"):
        text = text.replace(f"{key} = 0", f"{key} = {tau}")
    ini.write_text(text)
    out = tmp_path / f"{name}.csv"
    subprocess.run(
        ["rsmaris", "run", "--config", str(ini), "--output", str(out)], check=True
    )
    return out


@needs_simulator
def test_render_matches_csv_means(tmp_path):
    results = []
    for name, tau, figure in (("fig2", 0.0, "fig2"), ("fig3", 0.3, "fig3")):
        csv_path = desk_scale_csv(tmp_path, name, tau)
        table = pd.read_csv(csv_path)
        out = tmp_path / f"{name}.png"
        series = render(FigureSpec(str(csv_path), figure, str(out)))
        checked = 0
        exact = True
        for s in series:
            scheme, attack = s.label.lower().split(" - ")
            for power, mean in zip(s.powers, s.means):
                if checked >= 10:
                    break
                row = table[
                    (table["power_dbm"] == power)
                    & (table["scheme"] == scheme)
                    & (table["attack"] == attack)
                ]
                exact = exact and len(row) == 1 and float(row["mean_sum_rate"].iloc[0]) == mean
                checked += 1
        results.append(
            check(
                f"renderer: {figure} plotted values equal CSV means",
                exact and checked == 10 and out.exists(),
                f"{checked} points spot-checked",
            )
        )
    assert all(results)


def test_missing_column_fails_cleanly(tmp_path):
    path = tmp_path / "broken.csv"
    path.write_text("power_dbm,scheme,attack,tau_bs,tau_attacker\n0,rsma,none,0,0\n")
    try:
        load_table(path)
        ok, detail = False, "no error raised"
    except SchemaError as exc:
        ok = "mean_sum_rate" in str(exc)
        detail = f"error names the field: {exc}"
    assert check("renderer: missing column raises a named schema error", ok, detail)

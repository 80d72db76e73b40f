"""Turn sum-rate sweep CSVs into publication-style line plots.

The input is the results CSV written by the simulator: one row per
(power_dbm, scheme, attack, tau_bs, tau_attacker) cell with the mean sum
rate and, optionally, its standard deviation and the trial count.  Every
plotted point is a CSV mean value verbatim; no smoothing or interpolation.

Figure layouts:
    fig2 / fig3   one curve per (scheme, attack) at a single CSI error level
    fig4 / fig5   RSMA only, one curve per (attack, attacker error level)
"""

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

__all__ = [
    "FIGURE_IDS",
    "FigureSpec",
    "SchemaError",
    "NoDataError",
    "load_table",
    "build_series",
    "render",
]

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5")

REQUIRED_COLUMNS = (
    "power_dbm",
    "scheme",
    "attack",
    "tau_bs",
    "tau_attacker",
    "mean_sum_rate",
)

# optional columns enabling +-1 standard-error bands
BAND_COLUMNS = ("std_sum_rate", "trials")

ATTACK_ORDER = ("none", "random", "aligned", "mitigation")
ATTACK_LABELS = {
    "none": "None",
    "random": "Random",
    "aligned": "Aligned",
    "mitigation": "Mitigation",
}
SCHEME_LABELS = {"rsma": "RSMA", "sdma": "SDMA"}


class SchemaError(ValueError):
    """The CSV is missing a required column."""


class NoDataError(ValueError):
    """No rows survive the figure's filters."""


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    figure_id: str
    output_path: str
    schemes: tuple = ()
    attacks: tuple = ()
    tau_bs: float | None = None
    tau_attacker: float | None = None

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise ValueError(f"unknown figure id {self.figure_id!r}")


@dataclass(frozen=True)
class Series:
    label: str
    powers: np.ndarray
    means: np.ndarray
    stderr: np.ndarray | None = None


def load_table(path):
    table = pd.read_csv(path)
    for column in REQUIRED_COLUMNS:
        if column not in table.columns:
            raise SchemaError(f"missing column {column!r} in {path}")
    return table


def _apply_filters(table, spec):
    if spec.figure_id in ("fig4", "fig5"):
        table = table[table["scheme"] == "rsma"]
    if spec.schemes:
        table = table[table["scheme"].isin([s.lower() for s in spec.schemes])]
    if spec.attacks:
        table = table[table["attack"].isin([a.lower() for a in spec.attacks])]
    if spec.tau_bs is not None:
        table = table[np.isclose(table["tau_bs"], spec.tau_bs)]
    if spec.tau_attacker is not None:
        table = table[np.isclose(table["tau_attacker"], spec.tau_attacker)]
    return table


def _attack_rank(attack):
    return ATTACK_ORDER.index(attack) if attack in ATTACK_ORDER else len(ATTACK_ORDER)


def _one_series(label, group, with_bands):
    group = group.sort_values("power_dbm")
    stderr = None
    if with_bands:
        trials = group["trials"].to_numpy(dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            stderr = group["std_sum_rate"].to_numpy() / np.sqrt(np.maximum(trials, 1))
    return Series(
        label=label,
        powers=group["power_dbm"].to_numpy(dtype=float),
        means=group["mean_sum_rate"].to_numpy(dtype=float),
        stderr=stderr,
    )


def build_series(table, spec):
    """The exact curves a figure will draw, as a list of Series."""
    table = _apply_filters(table, spec)
    if len(table) == 0:
        raise NoDataError(
            f"no data for {spec.figure_id} after filtering {spec.input_csv}"
        )
    with_bands = all(c in table.columns for c in BAND_COLUMNS)
    series = []

    if spec.figure_id in ("fig2", "fig3"):
        levels = table[["tau_bs", "tau_attacker"]].drop_duplicates()
        if len(levels) > 1:
            raise NoDataError(
                f"{spec.figure_id} needs a single CSI error level; found "
                f"{len(levels)} (tau_bs, tau_attacker) combinations -- "
                "narrow the selection with --tau-bs / --tau-attacker"
            )
        keys = sorted(
            {(s, a) for s, a in zip(table["scheme"], table["attack"])},
            key=lambda k: (k[0], _attack_rank(k[1])),
        )
        for scheme, attack in keys:
            group = table[(table["scheme"] == scheme) & (table["attack"] == attack)]
            label = f"{SCHEME_LABELS.get(scheme, scheme)} - {ATTACK_LABELS.get(attack, attack)}"
            series.append(_one_series(label, group, with_bands))
    else:
        bs_levels = table["tau_bs"].drop_duplicates()
        if len(bs_levels) > 1:
            raise NoDataError(
                f"{spec.figure_id} needs a single BS error level; found "
                f"{len(bs_levels)} tau_bs values -- narrow with --tau-bs"
            )
        keys = sorted(
            {(a, t) for a, t in zip(table["attack"], table["tau_attacker"])},
            key=lambda k: (_attack_rank(k[0]), k[1]),
        )
        for attack, tau in keys:
            group = table[
                (table["attack"] == attack) & (table["tau_attacker"] == tau)
            ]
            label = ATTACK_LABELS.get(attack, attack)
            if attack != "none":
                label += f" (tau~={tau:g})"
            series.append(_one_series(label, group, with_bands))

    return series


_STYLE = {
    "none": dict(color="tab:green", marker="o"),
    "random": dict(color="tab:blue", marker="s"),
    "aligned": dict(color="tab:orange", marker="^"),
    "mitigation": dict(color="tab:red", marker="v"),
}


def _style_for(label):
    for attack, style in _STYLE.items():
        if label.lower().startswith(ATTACK_LABELS[attack].lower()) or label.lower().endswith(
            ATTACK_LABELS[attack].lower()
        ):
            return dict(style)
    return {}


def render(spec):
    """Draw the figure and write it to ``spec.output_path``.

    Returns the list of plotted Series so callers can verify the exact
    data-to-curve mapping.
    """
    table = load_table(spec.input_csv)
    series = build_series(table, spec)

    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=150)
    dashed = False
    for s in series:
        style = _style_for(s.label)
        if s.label.startswith("SDMA"):
            style["linestyle"] = "--"
            dashed = True
        line, = ax.plot(s.powers, s.means, label=s.label, **style)
        if s.stderr is not None:
            ax.fill_between(
                s.powers,
                s.means - s.stderr,
                s.means + s.stderr,
                color=line.get_color(),
                alpha=0.15,
                linewidth=0,
            )
    ax.set_xlabel("Transmit power (dBm)")
    ax.set_ylabel("Average sum rate (bits/s/Hz)")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8, ncol=2 if dashed else 1)
    fig.tight_layout()
    fig.savefig(spec.output_path, metadata={"Software": "rsmaris-figures"})
    plt.close(fig)
    return series

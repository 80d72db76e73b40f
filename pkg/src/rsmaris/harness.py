"""Monte-Carlo experiment orchestration.

Seeding layout: every random draw comes from a numpy SeedSequence spawned
from (master seed, domain, trial index, redraw counter), where domain 0 is
the fading draw, 1 the BS estimation error and 2 the attacker's estimation
error (additionally keyed by attack id).  Scheme, attack and power ids are
deliberately absent from the fading/BS streams: all schemes, attacks and
sweep points inside one trial see the same channels, so comparisons across
curves are paired and the sweep uses common random numbers.  It also means
the per-trial precoders and attack optimizations are shared across the
whole power sweep, which is where almost all the runtime goes.
"""

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .attacker import (
    AttackSpec,
    ReflectionState,
    aligned_attack,
    mitigation_attack,
    random_attack,
)
from .channel import (
    CsiErrorSpec,
    ScenarioGeometry,
    cascade,
    corrupt_csi,
    draw_channels,
)
from .metrics import RateReport, rate_report
from .transmitter import (
    DegenerateSumError,
    PowerAllocation,
    SingularChannelError,
    allocate_power,
    build_precoders,
)

__all__ = [
    "ExperimentConfig",
    "ResultRecord",
    "TrialOutcome",
    "TooManyRedrawsError",
    "default_config",
    "dbm_to_mw",
    "run_trial",
    "run_experiment",
    "records_to_csv",
    "write_csv",
]

SCHEMES = ("rsma", "sdma")
ATTACKS = ("none", "random", "aligned", "mitigation")
_ATTACK_ID = {name: i for i, name in enumerate(ATTACKS)}

# hard ceiling on redraw attempts for a single trial
_MAX_REDRAWS_PER_TRIAL = 8

CSV_COLUMNS = [
    "power_dbm",
    "scheme",
    "attack",
    "tau_bs",
    "tau_attacker",
    "mean_sum_rate",
    "std_sum_rate",
    "mean_common_rate",
    "mean_private_rate_sum",
    "mean_alpha_common",
    "trials",
]

DUMP_COLUMNS = [
    "power_dbm",
    "scheme",
    "attack",
    "trial",
    "sum_rate",
    "common_rate",
    "private_rate_sum",
    "alpha_common",
]


class TooManyRedrawsError(RuntimeError):
    """More than 1% of trials hit singular channel draws."""


def dbm_to_mw(dbm):
    return 10.0 ** (dbm / 10.0)


@dataclass(frozen=True)
class ExperimentConfig:
    geometry: ScenarioGeometry
    M: int
    L: int
    power_sweep_dbm: tuple
    noise_dbm: float
    bs_csi: CsiErrorSpec
    attacker_csi: CsiErrorSpec
    schemes: tuple
    attacks: tuple
    attack_weights: tuple
    attack_iterations: int
    attack_step_scale: float
    trials: int
    seed: int

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if len(self.power_sweep_dbm) == 0:
            raise ValueError("power sweep must be nonempty")
        if self.M < self.K:
            raise ValueError(f"need M >= K, got M={self.M}, K={self.K}")
        if self.L < 1:
            raise ValueError("L must be >= 1")
        for s in self.schemes:
            if s not in SCHEMES:
                raise ValueError(f"unknown scheme {s!r}")
        for a in self.attacks:
            if a not in ATTACKS:
                raise ValueError(f"unknown attack {a!r}")

    @property
    def K(self):
        return self.geometry.num_users

    @property
    def noise_mw(self):
        return dbm_to_mw(self.noise_dbm)

    def attack_spec(self, kind):
        return AttackSpec(
            kind=kind,
            weights=np.asarray(self.attack_weights),
            iterations=self.attack_iterations,
            step_scale=self.attack_step_scale,
        )


def default_config(**overrides):
    """The reference scenario: K=3 users, M=10 antennas, L=200 elements."""
    geometry = ScenarioGeometry(
        bs_position=(0.0, 0.0),
        ris_position=(40.0, 5.0),
        user_positions=((30.0, 15.0), (50.0, 15.0), (55.0, 10.0)),
        path_loss_exponent=2.5,
    )
    cfg = ExperimentConfig(
        geometry=geometry,
        M=10,
        L=200,
        power_sweep_dbm=tuple(float(p) for p in range(0, 45, 5)),
        noise_dbm=-50.0,
        bs_csi=CsiErrorSpec(),
        attacker_csi=CsiErrorSpec(),
        schemes=SCHEMES,
        attacks=ATTACKS,
        attack_weights=(1 / 3, 1 / 3, 1 / 3),
        attack_iterations=3000,
        attack_step_scale=0.99,
        trials=500,
        seed=1,
    )
    return replace(cfg, **overrides) if overrides else cfg


@dataclass(frozen=True)
class TrialOutcome:
    report: RateReport
    power: PowerAllocation
    redraws: int


@dataclass(frozen=True)
class ResultRecord:
    power_dbm: float
    scheme: str
    attack: str
    tau_bs: float
    tau_attacker: float
    mean_sum_rate: float
    std_sum_rate: float
    mean_common_rate: float
    mean_private_rate_sum: float
    mean_alpha_common: float
    trials: int


def _rng(config, domain, trial_index, redraw=0, attack_id=0):
    ss = np.random.SeedSequence(
        entropy=config.seed,
        spawn_key=(domain, trial_index, redraw, attack_id),
    )
    return np.random.default_rng(ss)


def _draw_and_precode(config, trial_index):
    """Channels, BS estimates and precoders, redrawing on singular draws."""
    for redraw in range(_MAX_REDRAWS_PER_TRIAL):
        truth = draw_channels(
            config.geometry, config.M, config.L, _rng(config, 0, trial_index, redraw)
        )
        bs_est = corrupt_csi(truth, config.bs_csi, _rng(config, 1, trial_index, redraw))
        try:
            precoders = build_precoders(bs_est.h_hat)
        except (SingularChannelError, DegenerateSumError):
            continue
        return truth, precoders, redraw
    raise TooManyRedrawsError(
        f"trial {trial_index} failed {_MAX_REDRAWS_PER_TRIAL} redraws"
    )


def _attack_state(config, truth, trial_index, attack, redraw):
    if attack == "none":
        return ReflectionState.absorb()
    rng = _rng(config, 2, trial_index, redraw, _ATTACK_ID[attack])
    if attack == "random":
        return random_attack(config.L, rng)
    att_est = corrupt_csi(truth, config.attacker_csi, rng)
    casc = cascade(att_est)
    spec = config.attack_spec(attack)
    if attack == "aligned":
        return aligned_attack(casc, spec)
    return mitigation_attack(casc, att_est.h_hat, spec)


def run_trial(config, power_index, scheme, attack, trial_index):
    """One fully deterministic trial for a single (power, scheme, attack) cell."""
    truth, precoders, redraw = _draw_and_precode(config, trial_index)
    power = allocate_power(
        truth.h,
        precoders.p_private,
        dbm_to_mw(config.power_sweep_dbm[power_index]),
        config.noise_mw,
        scheme,
    )
    state = _attack_state(config, truth, trial_index, attack, redraw)
    report = rate_report(truth, state, precoders, power)
    return TrialOutcome(report=report, power=power, redraws=redraw)


def _trial_bundle(config, trial_index):
    """All (power, scheme, attack) cells of one trial.

    Channels, precoders and attack optimizations are power independent, so
    one draw and at most two optimizer runs cover the entire sweep.
    """
    truth, precoders, redraw = _draw_and_precode(config, trial_index)
    states = {
        attack: _attack_state(config, truth, trial_index, attack, redraw)
        for attack in config.attacks
    }
    out = {}
    for pi, power_dbm in enumerate(config.power_sweep_dbm):
        p_mw = dbm_to_mw(power_dbm)
        for scheme in config.schemes:
            power = allocate_power(
                truth.h, precoders.p_private, p_mw, config.noise_mw, scheme
            )
            for attack in config.attacks:
                report = rate_report(truth, states[attack], precoders, power)
                out[(pi, scheme, attack)] = (
                    report.sum_rate,
                    report.allocated_common_rate,
                    float(np.sum(report.private_rates)),
                    power.alpha_common,
                )
    return out, redraw


def run_experiment(config, threads=None, dump_rows=None):
    """Average ``config.trials`` trials for every (power, scheme, attack) cell.

    Results are independent of ``threads``.  If ``dump_rows`` is a list, one
    per-trial row (DUMP_COLUMNS order) is appended for each cell and trial.
    """
    n_power = len(config.power_sweep_dbm)
    cells = [(s, a) for s in config.schemes for a in config.attacks]
    # values[(scheme, attack)] -> (n_power, trials, 4)
    values = {cell: np.empty((n_power, config.trials, 4)) for cell in cells}
    total_redraws = 0

    tasks = list(range(config.trials))

    def work(ti):
        return _trial_bundle(config, ti)

    if threads is None or threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, tasks))
    else:
        results = [work(t) for t in tasks]

    for ti, (bundle, redraw) in zip(tasks, results):
        total_redraws += redraw
        for (pi, scheme, attack), row in bundle.items():
            values[(scheme, attack)][pi, ti, :] = row

    if total_redraws > 0.01 * config.trials:
        raise TooManyRedrawsError(
            f"{total_redraws} redraws over {config.trials} trials"
        )

    records = []
    for pi in range(n_power):
        for scheme, attack in cells:
            block = values[(scheme, attack)][pi]  # (trials, 4)
            sum_rates = block[:, 0]
            std = float(np.std(sum_rates, ddof=1)) if config.trials > 1 else 0.0
            records.append(
                ResultRecord(
                    power_dbm=float(config.power_sweep_dbm[pi]),
                    scheme=scheme,
                    attack=attack,
                    tau_bs=config.bs_csi.tau_bs_u,
                    tau_attacker=config.attacker_csi.tau_bs_ris,
                    mean_sum_rate=float(np.mean(sum_rates)),
                    std_sum_rate=std,
                    mean_common_rate=float(np.mean(block[:, 1])),
                    mean_private_rate_sum=float(np.mean(block[:, 2])),
                    mean_alpha_common=float(np.mean(block[:, 3])),
                    trials=config.trials,
                )
            )
            if dump_rows is not None:
                for ti in range(config.trials):
                    dump_rows.append(
                        [
                            float(config.power_sweep_dbm[pi]),
                            scheme,
                            attack,
                            ti,
                            float(block[ti, 0]),
                            float(block[ti, 1]),
                            float(block[ti, 2]),
                            float(block[ti, 3]),
                        ]
                    )

    records.sort(key=lambda r: (r.power_dbm, r.scheme, r.attack))
    return records


def records_to_csv(records):
    """Render records as a CSV string with the fixed column order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(
            [
                r.power_dbm,
                r.scheme,
                r.attack,
                r.tau_bs,
                r.tau_attacker,
                r.mean_sum_rate,
                r.std_sum_rate,
                r.mean_common_rate,
                r.mean_private_rate_sum,
                r.mean_alpha_common,
                r.trials,
            ]
        )
    return buf.getvalue()


def write_csv(records, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(records_to_csv(records))


def write_dump_csv(rows, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(DUMP_COLUMNS)
        writer.writerows(rows)

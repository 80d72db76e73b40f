"""INI-style experiment configuration files.

Schema (all keys required unless noted; powers in dBm, positions in meters):

    [geometry]
    bs = 0, 0
    ris = 40, 5
    users = 30, 15; 50, 15; 55, 10
    path_loss_exponent = 2.5

    [system]
    antennas = 10
    ris_elements = 200
    power_sweep_dbm = 0, 5, 10, 15, 20, 25, 30, 35, 40
    noise_dbm = -50

    [csi]
    bs_tau_bs_u = 0.0
    bs_tau_bs_ris = 0.0
    bs_tau_ris_u = 0.0
    attacker_tau = 0.0            ; uniform error on all attacker links

    [attack]
    weights = uniform             ; or a comma list summing to 1
    iterations = 3000
    step_scale = 0.99

    [run]
    schemes = rsma, sdma
    attacks = none, random, aligned, mitigation
    trials = 500
    seed = 1
"""

import configparser

from .channel import CsiErrorSpec, ScenarioGeometry
from .harness import ExperimentConfig

__all__ = ["ConfigError", "load_config", "parse_config", "render_config"]


class ConfigError(ValueError):
    """Malformed configuration file; message names the section and field."""


def _get(parser, section, key, convert, where):
    if not parser.has_section(section):
        raise ConfigError(f"{where}: missing section [{section}]")
    if not parser.has_option(section, key):
        raise ConfigError(f"{where}: missing key {key!r} in [{section}]")
    raw = parser.get(section, key)
    try:
        return convert(raw)
    except ConfigError:
        raise
    except Exception as exc:
        raise ConfigError(f"{where}: bad value for [{section}] {key} = {raw!r}: {exc}") from exc


def _point(raw):
    parts = [float(v) for v in raw.split(",")]
    if len(parts) != 2:
        raise ValueError("expected two coordinates")
    return tuple(parts)


def _points(raw):
    return tuple(_point(chunk) for chunk in raw.split(";") if chunk.strip())


def _float_list(raw):
    return tuple(float(v) for v in raw.split(","))


def _str_list(raw):
    return tuple(v.strip().lower() for v in raw.split(",") if v.strip())


def parse_config(text, where="<config>"):
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        parser.read_string(text, source=where)
    except configparser.Error as exc:
        raise ConfigError(f"{where}: {exc}") from exc

    geometry = ScenarioGeometry(
        bs_position=_get(parser, "geometry", "bs", _point, where),
        ris_position=_get(parser, "geometry", "ris", _point, where),
        user_positions=_get(parser, "geometry", "users", _points, where),
        path_loss_exponent=_get(parser, "geometry", "path_loss_exponent", float, where),
    )
    K = geometry.num_users

    weights_raw = _get(parser, "attack", "weights", str, where).strip().lower()
    if weights_raw == "uniform":
        weights = tuple([1.0 / K] * K)
    else:
        weights = _float_list(weights_raw)
        if len(weights) != K:
            raise ConfigError(f"{where}: [attack] weights needs {K} entries")

    attacker_tau = _get(parser, "csi", "attacker_tau", float, where)
    try:
        config = ExperimentConfig(
            geometry=geometry,
            M=_get(parser, "system", "antennas", int, where),
            L=_get(parser, "system", "ris_elements", int, where),
            power_sweep_dbm=_get(parser, "system", "power_sweep_dbm", _float_list, where),
            noise_dbm=_get(parser, "system", "noise_dbm", float, where),
            bs_csi=CsiErrorSpec(
                tau_bs_u=_get(parser, "csi", "bs_tau_bs_u", float, where),
                tau_bs_ris=_get(parser, "csi", "bs_tau_bs_ris", float, where),
                tau_ris_u=_get(parser, "csi", "bs_tau_ris_u", float, where),
            ),
            attacker_csi=CsiErrorSpec.uniform(attacker_tau),
            schemes=_get(parser, "run", "schemes", _str_list, where),
            attacks=_get(parser, "run", "attacks", _str_list, where),
            attack_weights=weights,
            attack_iterations=_get(parser, "attack", "iterations", int, where),
            attack_step_scale=_get(parser, "attack", "step_scale", float, where),
            trials=_get(parser, "run", "trials", int, where),
            seed=_get(parser, "run", "seed", int, where),
        )
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    return config


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), where=str(path))


def render_config(config):
    """Serialize an ExperimentConfig back to the INI schema."""
    g = config.geometry
    users = "; ".join(f"{x:g}, {y:g}" for x, y in g.user_positions)
    powers = ", ".join(f"{p:g}" for p in config.power_sweep_dbm)
    weights = ", ".join(f"{w:.12g}" for w in config.attack_weights)
    return (
        "[geometry]\n"
        f"bs = {g.bs_position[0]:g}, {g.bs_position[1]:g}\n"
        f"ris = {g.ris_position[0]:g}, {g.ris_position[1]:g}\n"
        f"users = {users}\n"
        f"path_loss_exponent = {g.path_loss_exponent:g}\n"
        "\n[system]\n"
        f"antennas = {config.M}\n"
        f"ris_elements = {config.L}\n"
        f"power_sweep_dbm = {powers}\n"
        f"noise_dbm = {config.noise_dbm:g}\n"
        "\n[csi]\n"
        f"bs_tau_bs_u = {config.bs_csi.tau_bs_u:g}\n"
        f"bs_tau_bs_ris = {config.bs_csi.tau_bs_ris:g}\n"
        f"bs_tau_ris_u = {config.bs_csi.tau_ris_u:g}\n"
        f"attacker_tau = {config.attacker_csi.tau_bs_ris:g}\n"
        "\n[attack]\n"
        f"weights = {weights}\n"
        f"iterations = {config.attack_iterations}\n"
        f"step_scale = {config.attack_step_scale:g}\n"
        "\n[run]\n"
        f"schemes = {', '.join(config.schemes)}\n"
        f"attacks = {', '.join(config.attacks)}\n"
        f"trials = {config.trials}\n"
        f"seed = {config.seed}\n"
    )

"""SINRs and achievable rates for the common and private streams."""

from dataclasses import dataclass

import numpy as np

from .attacker import effective_channel

__all__ = ["RateReport", "common_sinr", "private_sinr", "rate_report"]


@dataclass(frozen=True)
class RateReport:
    """Per-user SINRs/rates plus the allocated common rate and the sum rate."""

    common_sinr: np.ndarray
    private_sinr: np.ndarray
    common_rate_per_user: np.ndarray
    allocated_common_rate: float
    private_rates: np.ndarray
    sum_rate: float


def common_sinr(g_k, precoders, power):
    """SINR of the common stream at one user.

    The denominator contains every private stream, including the user's own:
    the common message is decoded first, before any cancellation.
    """
    P = power.total_power_mw
    signal = np.abs(g_k @ precoders.p_common) ** 2 * P * power.alpha_common
    leak = np.abs(precoders.p_private @ g_k) ** 2  # |g_k p_i|^2 for all i
    interference = float(np.sum(leak * power.alpha_private) * P)
    return float(signal / (interference + power.noise_power_mw))


def private_sinr(g_k, k, precoders, power):
    """SINR of user k's private stream after perfect SIC of the common one."""
    P = power.total_power_mw
    gains = np.abs(precoders.p_private @ g_k) ** 2
    signal = gains[k] * P * power.alpha_private[k]
    others = np.delete(gains * power.alpha_private, k)
    interference = float(np.sum(others) * P)
    return float(signal / (interference + power.noise_power_mw))


def rate_report(realization, state, precoders, power):
    """Assemble all rates for one trial.

    Under SDMA no common message is transmitted, so the allocated common rate
    is forced to zero regardless of the (zero-power) common SINR.
    """
    K = realization.num_users
    gamma_c = np.empty(K)
    gamma_p = np.empty(K)
    for k in range(K):
        g_k = effective_channel(realization, state, k)
        gamma_c[k] = common_sinr(g_k, precoders, power)
        gamma_p[k] = private_sinr(g_k, k, precoders, power)
    common_rates = np.log2(1.0 + gamma_c)
    private_rates = np.log2(1.0 + gamma_p)
    allocated = 0.0 if power.scheme == "sdma" else float(np.min(common_rates))
    return RateReport(
        common_sinr=gamma_c,
        private_sinr=gamma_p,
        common_rate_per_user=common_rates,
        allocated_common_rate=allocated,
        private_rates=private_rates,
        sum_rate=allocated + float(np.sum(private_rates)),
    )

"""Base-station side: ZF private precoders, matched-filter common precoder,
and the adaptive power split between common and private streams."""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "PrecoderSet",
    "PowerAllocation",
    "SingularChannelError",
    "DegenerateSumError",
    "zf_private_precoders",
    "mf_common_precoder",
    "build_precoders",
    "allocate_power",
]

# Gram-matrix condition number above which the estimated channel matrix is
# treated as rank deficient.
CONDITION_LIMIT = 1e12

# Interference floor (mW) below which the adaptive rule would divide by ~zero;
# at that point the private split falls back to the uniform 1/K.
INTERFERENCE_FLOOR = 1e-30


class SingularChannelError(ValueError):
    """Estimated channel matrix is (numerically) rank deficient."""


class DegenerateSumError(ValueError):
    """The summed channel estimate vanishes; no common direction exists."""


@dataclass(frozen=True)
class PrecoderSet:
    """Common precoder (M,) and private precoders (K, M), one row per user."""

    p_common: np.ndarray
    p_private: np.ndarray


@dataclass(frozen=True)
class PowerAllocation:
    """Total power budget and the common/private power split.

    Powers are in milliwatts.  ``alpha_private`` holds one coefficient per
    user; the invariant alpha_common + sum(alpha_private) == 1 always holds.
    """

    total_power_mw: float
    alpha_common: float
    alpha_private: np.ndarray
    noise_power_mw: float
    scheme: str  # "rsma" | "sdma"


def zf_private_precoders(h_hat):
    """Zero-forcing private precoders: columns of H (H^H H)^-1.

    ``h_hat`` is (K, M), one estimated direct channel per row.  Returns a
    (K, M) array whose k-th row is the k-th user's precoder; by construction
    H^H P = I on the estimates.
    """
    h_hat = np.asarray(h_hat)
    K, M = h_hat.shape
    if M < K:
        raise ValueError(f"zero forcing needs M >= K, got M={M}, K={K}")
    H = h_hat.T  # (M, K), columns are the estimated user channels
    gram = H.conj().T @ H
    if not np.all(np.isfinite(gram)) or np.linalg.cond(gram) > CONDITION_LIMIT:
        raise SingularChannelError("estimated channel matrix is rank deficient")
    P = H @ np.linalg.inv(gram)  # (M, K)
    return np.ascontiguousarray(P.T)


def mf_common_precoder(h_hat):
    """Weighted matched-filter common precoder: normalized sum of estimates."""
    s = np.sum(np.asarray(h_hat), axis=0)
    norm = np.linalg.norm(s)
    if norm == 0.0 or not np.isfinite(norm):
        raise DegenerateSumError("summed channel estimate is zero")
    return s / norm


def build_precoders(h_hat):
    """Convenience: both precoders from the same set of estimates."""
    return PrecoderSet(
        p_common=mf_common_precoder(h_hat),
        p_private=zf_private_precoders(h_hat),
    )


def allocate_power(h_true, p_private, total_power_mw, noise_power_mw, scheme):
    """Split the power budget between common and private streams.

    RSMA uses the adaptive rule alpha_p = min{1/K, sigma^2 / min_k I_k} with
    I_k the residual inter-user interference measured on the true direct
    channels (the RIS absorbs during training).  SDMA always uses the uniform
    split with no common power.
    """
    if total_power_mw <= 0 or noise_power_mw <= 0:
        raise ValueError("power and noise levels must be positive")
    if scheme not in ("rsma", "sdma"):
        raise ValueError(f"unknown scheme {scheme!r}")
    h_true = np.asarray(h_true)
    K = h_true.shape[0]

    if scheme == "sdma":
        alpha_p = 1.0 / K
    else:
        # leakage[k, i] = |h_k^H p_i|^2 * P
        cross = np.abs(np.conj(h_true) @ np.asarray(p_private).T) ** 2 * total_power_mw
        np.fill_diagonal(cross, 0.0)
        worst_case = float(np.min(np.sum(cross, axis=1)))
        if worst_case < INTERFERENCE_FLOOR:
            alpha_p = 1.0 / K
        else:
            alpha_p = min(1.0 / K, noise_power_mw / worst_case)

    alpha_private = np.full(K, alpha_p)
    alpha_common = 0.0 if scheme == "sdma" else 1.0 - K * alpha_p
    # guard against round-off pushing the common share slightly negative
    alpha_common = max(alpha_common, 0.0)
    return PowerAllocation(
        total_power_mw=float(total_power_mw),
        alpha_common=float(alpha_common),
        alpha_private=alpha_private,
        noise_power_mw=float(noise_power_mw),
        scheme=scheme,
    )

"""Malicious-RIS reflection strategies.

Three attacks are provided: random phases, interference alignment (projected
gradient ascent on the stacked cascade power), and mitigation (projected
gradient descent driving the reflected paths to cancel the direct channels).
Both optimizers walk the unit-modulus manifold with a fixed step delta /
lambda_max(Kbar^H Kbar) and run a fixed number of iterations.
"""

import logging
from dataclasses import dataclass

import numpy as np

from . import kernels
from .channel import CascadeMatrix, ChannelRealization

__all__ = [
    "ReflectionState",
    "AttackSpec",
    "random_attack",
    "aligned_attack",
    "mitigation_attack",
    "effective_channel",
    "aligned_objective",
    "mitigation_objective",
]

log = logging.getLogger(__name__)

# power iteration settings for the dominant eigenvalue of Kbar^H Kbar
_POWER_ITER_TOL = 1e-6
_POWER_ITER_MAX = 500


class AttackNumericsError(ValueError):
    """Non-finite quantities encountered while optimizing the reflection."""


@dataclass(frozen=True)
class ReflectionState:
    """RIS state: absorbing (no reflected path) or a unit-modulus phase vector."""

    mode: str  # "absorb" | "reflect"
    theta: np.ndarray | None = None

    def __post_init__(self):
        if self.mode not in ("absorb", "reflect"):
            raise ValueError(f"unknown RIS mode {self.mode!r}")
        if self.mode == "reflect":
            if self.theta is None:
                raise ValueError("reflect mode needs a phase vector")
            if np.max(np.abs(np.abs(self.theta) - 1.0)) > 1e-12:
                raise ValueError("reflection coefficients must be unit modulus")

    @classmethod
    def absorb(cls):
        return cls(mode="absorb")

    @classmethod
    def reflect(cls, theta):
        return cls(mode="reflect", theta=np.asarray(theta, dtype=np.complex128))


@dataclass(frozen=True)
class AttackSpec:
    """Attack kind plus the optimizer knobs (weights, iterations, step scale)."""

    kind: str  # "none" | "random" | "aligned" | "mitigation"
    weights: np.ndarray
    iterations: int = 3000
    step_scale: float = 0.99

    def __post_init__(self):
        if self.kind not in ("none", "random", "aligned", "mitigation"):
            raise ValueError(f"unknown attack kind {self.kind!r}")
        w = np.asarray(self.weights, dtype=float)
        if np.any(w < 0) or abs(float(np.sum(w)) - 1.0) > 1e-9:
            raise ValueError("weights must be nonnegative and sum to one")
        if not 0.0 < self.step_scale < 1.0:
            raise ValueError("step_scale must lie in (0, 1)")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")

    @classmethod
    def uniform(cls, kind, num_users, iterations=3000, step_scale=0.99):
        return cls(
            kind=kind,
            weights=np.full(num_users, 1.0 / num_users),
            iterations=iterations,
            step_scale=step_scale,
        )


def random_attack(L, rng):
    """Uniform random phases, exactly unit modulus."""
    if L < 1:
        raise ValueError("L must be >= 1")
    phases = rng.uniform(0.0, 2.0 * np.pi, size=L)
    return ReflectionState.reflect(np.exp(1j * phases))


def _stack_cascades(cascades, weights):
    """Stack sqrt(w_k) * K_hat_k vertically into a (K*M, L) matrix."""
    w = np.sqrt(np.asarray(weights, dtype=float))
    blocks = [w[k] * cascades.K_hat[k] for k in range(cascades.K_hat.shape[0])]
    return np.vstack(blocks)


def _largest_eigenvalue(kbar):
    """Dominant eigenvalue of Kbar^H Kbar by power iteration on the thin factor."""
    if not np.all(np.isfinite(kbar)):
        raise AttackNumericsError("non-finite entries in stacked cascade matrix")
    L = kbar.shape[1]
    v = np.ones(L) / np.sqrt(L)
    lam = 0.0
    for _ in range(_POWER_ITER_MAX):
        w = kbar.conj().T @ (kbar @ v)
        norm = np.linalg.norm(w)
        if norm < 1e-300:
            # matrix is (numerically) zero, or the start vector is in its
            # null space; restart once from a fixed pseudo-random direction
            if np.all(v == v[0]):
                v = np.random.default_rng(0).standard_normal(L) + 0j
                v /= np.linalg.norm(v)
                continue
            return 0.0
        lam_new = float(np.real(np.vdot(v, w)))
        v = w / norm
        if abs(lam_new - lam) <= _POWER_ITER_TOL * max(abs(lam_new), 1e-300):
            return lam_new
        lam = lam_new
    return lam


def aligned_objective(cascades, weights, theta):
    """sum_k w_k ||K_hat_k theta||^2 -- the aligned attack's objective."""
    w = np.asarray(weights, dtype=float)
    return float(
        sum(
            w[k] * np.linalg.norm(cascades.K_hat[k] @ theta) ** 2
            for k in range(len(w))
        )
    )


def mitigation_objective(cascades, h_hat, weights, theta):
    """sum_k w_k ||K_hat_k theta + conj(h_hat_k)||^2 -- the mitigation objective."""
    w = np.asarray(weights, dtype=float)
    return float(
        sum(
            w[k] * np.linalg.norm(cascades.K_hat[k] @ theta + np.conj(h_hat[k])) ** 2
            for k in range(len(w))
        )
    )


def aligned_attack(cascades, spec):
    """Projected-gradient ascent maximizing the stacked reflected power."""
    kbar = _stack_cascades(cascades, spec.weights)
    L = kbar.shape[1]
    lam = _largest_eigenvalue(kbar)
    step = spec.step_scale / lam if lam > 0.0 else 0.0
    theta0 = np.ones(L, dtype=np.complex128)
    theta = kernels.ascend(kbar, theta0, step, spec.iterations - 1)
    if not np.all(np.isfinite(theta)):
        raise AttackNumericsError("aligned attack produced non-finite phases")
    return ReflectionState.reflect(theta)


def mitigation_attack(cascades, h_hat_attacker, spec):
    """Projected-gradient descent steering reflections against the direct paths."""
    kbar = _stack_cascades(cascades, spec.weights)
    w = np.sqrt(np.asarray(spec.weights, dtype=float))
    hbar = np.concatenate(
        [w[k] * np.conj(h_hat_attacker[k]) for k in range(len(w))]
    )
    if not np.all(np.isfinite(hbar)):
        raise AttackNumericsError("non-finite entries in stacked direct channels")
    L = kbar.shape[1]
    lam = _largest_eigenvalue(kbar)
    step = spec.step_scale / lam if lam > 0.0 else 0.0
    try:
        # phase of the least-squares minimizer of ||Kbar theta + hbar||;
        # pinv covers the rank-deficient case (always hit when L > K*M) and
        # coincides with (Kbar^H Kbar)^-1 Kbar^H at full column rank
        ls = -np.linalg.pinv(kbar) @ hbar
        theta0 = np.exp(1j * np.angle(ls))
    except np.linalg.LinAlgError:
        log.warning("mitigation init failed (singular stack); using all-ones")
        theta0 = np.ones(L, dtype=np.complex128)
    theta = kernels.descend(kbar, hbar, theta0, step, spec.iterations - 1)
    if not np.all(np.isfinite(theta)):
        raise AttackNumericsError("mitigation attack produced non-finite phases")
    return ReflectionState.reflect(theta)


def effective_channel(truth: ChannelRealization, state: ReflectionState, k: int):
    """Row channel seen by user k: f_k^H diag(theta) G + h_k^H (length M).

    In absorb mode only the direct term h_k^H remains.
    """
    direct = np.conj(truth.h[k])
    if state.mode == "absorb":
        return direct
    reflected = (np.conj(truth.f[k]) * state.theta) @ truth.G
    return reflected + direct

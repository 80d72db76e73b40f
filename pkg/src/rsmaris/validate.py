"""Fast self-checks behind the ``validate`` CLI subcommand.

These are smoke-level versions of the invariants exercised by the full test
suite: cheap enough to run at every deployment, strict enough to catch a
broken build or kernel backend.
"""

import numpy as np

from . import kernels
from .attacker import (
    AttackSpec,
    aligned_attack,
    aligned_objective,
    mitigation_attack,
    mitigation_objective,
    random_attack,
)
from .channel import CascadeMatrix, ChannelEstimate, cascade
from .harness import default_config, run_trial
from .transmitter import allocate_power, zf_private_precoders

__all__ = ["run_checks", "CHECKS"]


def _random_estimate(rng, K, M, L):
    shape = lambda *s: (rng.standard_normal(s) + 1j * rng.standard_normal(s)) / np.sqrt(2)
    return ChannelEstimate(h_hat=shape(K, M), G_hat=shape(L, M), f_hat=shape(K, L))


def check_khatri_rao():
    rng = np.random.default_rng(7)
    for _ in range(50):
        K, M, L = 2, int(rng.integers(1, 6)), int(rng.integers(1, 9))
        est = _random_estimate(rng, K, M, L)
        casc = cascade(est)
        theta = np.exp(1j * rng.uniform(0, 2 * np.pi, L))
        for k in range(K):
            direct = (np.conj(est.f_hat[k]) * theta) @ est.G_hat
            err = np.linalg.norm(casc.K_hat[k] @ theta - direct)
            if err > 1e-10 * (1 + np.linalg.norm(direct)):
                return False
    return True


def check_zero_forcing():
    rng = np.random.default_rng(11)
    for _ in range(50):
        h = (rng.standard_normal((3, 8)) + 1j * rng.standard_normal((3, 8))) / np.sqrt(2)
        p = zf_private_precoders(h)
        resid = np.conj(h) @ p.T - np.eye(3)
        if np.max(np.abs(resid)) > 1e-9:
            return False
    return True


def check_power_budget():
    rng = np.random.default_rng(13)
    h = (rng.standard_normal((3, 6)) + 1j * rng.standard_normal((3, 6))) / np.sqrt(2)
    p = zf_private_precoders(h)
    for scheme in ("rsma", "sdma"):
        for P in (1.0, 100.0, 1e4):
            alloc = allocate_power(h, p, P, 1e-5, scheme)
            total = alloc.alpha_common + np.sum(alloc.alpha_private)
            if abs(total - 1.0) > 1e-12 or np.any(alloc.alpha_private < 0):
                return False
    return True


def check_unit_modulus():
    rng = np.random.default_rng(17)
    K, M, L = 2, 3, 6
    K_hat = (rng.standard_normal((K, M, L)) + 1j * rng.standard_normal((K, M, L)))
    casc = CascadeMatrix(K_hat=K_hat)
    spec = AttackSpec.uniform("aligned", K, iterations=50)
    theta = aligned_attack(casc, spec).theta
    if np.max(np.abs(np.abs(theta) - 1)) > 1e-12:
        return False
    h_hat = rng.standard_normal((K, M)) + 1j * rng.standard_normal((K, M))
    spec = AttackSpec.uniform("mitigation", K, iterations=50)
    theta = mitigation_attack(casc, h_hat, spec).theta
    return bool(np.max(np.abs(np.abs(theta) - 1)) <= 1e-12)


def check_ascent_improves():
    rng = np.random.default_rng(19)
    K, M, L = 3, 4, 8
    K_hat = rng.standard_normal((K, M, L)) + 1j * rng.standard_normal((K, M, L))
    casc = CascadeMatrix(K_hat=K_hat)
    spec = AttackSpec.uniform("aligned", K, iterations=200)
    theta = aligned_attack(casc, spec).theta
    w = spec.weights
    start = aligned_objective(casc, w, np.ones(L, dtype=complex))
    return aligned_objective(casc, w, theta) >= start - 1e-9


def check_descent_beats_random():
    rng = np.random.default_rng(23)
    K, M, L = 2, 3, 8
    K_hat = rng.standard_normal((K, M, L)) + 1j * rng.standard_normal((K, M, L))
    casc = CascadeMatrix(K_hat=K_hat)
    h_hat = rng.standard_normal((K, M)) + 1j * rng.standard_normal((K, M))
    spec = AttackSpec.uniform("mitigation", K, iterations=300)
    theta = mitigation_attack(casc, h_hat, spec).theta
    final = mitigation_objective(casc, h_hat, spec.weights, theta)
    randoms = [
        mitigation_objective(
            casc, h_hat, spec.weights, random_attack(L, rng).theta
        )
        for _ in range(32)
    ]
    return final <= np.median(randoms)


def check_trial_determinism():
    cfg = default_config(L=16, trials=1, attack_iterations=50, power_sweep_dbm=(20.0,))
    a = run_trial(cfg, 0, "rsma", "mitigation", 0)
    b = run_trial(cfg, 0, "rsma", "mitigation", 0)
    return a.report.sum_rate == b.report.sum_rate


def check_kernel_backends_agree():
    from .kernels import _pg_numpy

    rng = np.random.default_rng(29)
    kbar = rng.standard_normal((6, 10)) + 1j * rng.standard_normal((6, 10))
    hbar = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    theta0 = np.exp(1j * rng.uniform(0, 2 * np.pi, 10))
    step = 0.9 / np.linalg.norm(kbar, 2) ** 2
    a1 = kernels.ascend(kbar, theta0, step, 40)
    a2 = _pg_numpy.ascend(kbar, theta0, step, 40)
    d1 = kernels.descend(kbar, hbar, theta0, step, 40)
    d2 = _pg_numpy.descend(kbar, hbar, theta0, step, 40)
    return np.allclose(a1, a2, atol=1e-9) and np.allclose(d1, d2, atol=1e-9)


CHECKS = [
    ("khatri-rao identity", check_khatri_rao),
    ("zero-forcing residual", check_zero_forcing),
    ("power budget", check_power_budget),
    ("unit modulus", check_unit_modulus),
    ("ascent improves objective", check_ascent_improves),
    ("descent beats random median", check_descent_beats_random),
    ("trial determinism", check_trial_determinism),
    (f"kernel backends agree ({kernels.BACKEND})", check_kernel_backends_agree),
]


def run_checks(out=print):
    """Run all checks; returns the number of failures."""
    failures = 0
    for name, fn in CHECKS:
        try:
            ok = fn()
        except Exception as exc:  # a crash counts as a failure, not an abort
            out(f"FAIL {name}: {exc!r}")
            failures += 1
            continue
        if ok:
            out(f"PASS {name}")
        else:
            out(f"FAIL {name}")
            failures += 1
    return failures

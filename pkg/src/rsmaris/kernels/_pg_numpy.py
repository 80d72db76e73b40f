"""Pure-numpy reference implementation of the projected-gradient kernels.

Both kernels iterate on a unit-modulus vector ``theta`` of length L.  The
stacked matrix ``kbar`` has shape (n, L) with n = K*M; the gradient of the
quadratic objective is evaluated through two thin mat-vecs rather than the
L-by-L Gram matrix, which is cheaper whenever n < L.
"""

import numpy as np


def _project_unit(v, prev):
    # |v_l| = 0 has no phase; keep the previous element there.
    mag = np.abs(v)
    safe = np.where(mag > 0.0, mag, 1.0)
    return np.where(mag > 0.0, v / safe, prev)


def ascend(kbar, theta0, step, n_updates):
    """Run ``n_updates`` steps of theta <- proj(theta + step * K^H K theta)."""
    kbar = np.ascontiguousarray(kbar, dtype=np.complex128)
    kbar_h = np.ascontiguousarray(kbar.conj().T)
    theta = np.array(theta0, dtype=np.complex128, copy=True)
    for _ in range(n_updates):
        grad = kbar_h @ (kbar @ theta)
        theta = _project_unit(theta + step * grad, theta)
    return theta


def descend(kbar, hbar, theta0, step, n_updates):
    """Run ``n_updates`` steps of theta <- proj(theta - step * K^H (K theta + h))."""
    kbar = np.ascontiguousarray(kbar, dtype=np.complex128)
    kbar_h = np.ascontiguousarray(kbar.conj().T)
    hbar = np.asarray(hbar, dtype=np.complex128)
    theta = np.array(theta0, dtype=np.complex128, copy=True)
    for _ in range(n_updates):
        grad = kbar_h @ (kbar @ theta + hbar)
        theta = _project_unit(theta - step * grad, theta)
    return theta

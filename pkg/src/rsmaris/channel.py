"""Scenario geometry, Rayleigh fading draws, imperfect CSI and cascade matrices.

All channels are i.i.d. circularly-symmetric complex Gaussian with per-entry
variance equal to the link's distance-based path loss d^-eta.  CSI corruption
follows the Gauss-Markov model est = sqrt(1 - tau^2) * truth + tau * error,
with the error scaled by the same per-link path-loss factor as the truth so
the corruption level is relative to the link power.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ScenarioGeometry",
    "ChannelRealization",
    "ChannelEstimate",
    "CsiErrorSpec",
    "CascadeMatrix",
    "path_loss",
    "draw_channels",
    "corrupt_csi",
    "cascade",
]


class GeometryError(ValueError):
    """Degenerate scenario geometry (coincident nodes, bad exponent)."""


@dataclass(frozen=True)
class ScenarioGeometry:
    """Node positions in meters (2-D) plus the path-loss exponent."""

    bs_position: tuple
    ris_position: tuple
    user_positions: tuple  # K pairs
    path_loss_exponent: float = 2.5

    def __post_init__(self):
        if len(self.user_positions) < 1:
            raise GeometryError("at least one user is required")
        if self.path_loss_exponent <= 0:
            raise GeometryError("path-loss exponent must be positive")
        for link in ["bs-ris"] + [("ris-u", k) for k in range(self.num_users)] + [
            ("bs-u", k) for k in range(self.num_users)
        ]:
            if isinstance(link, tuple):
                d = link_distance(self, *link)
            else:
                d = link_distance(self, link)
            if d <= 0.0:
                raise GeometryError(f"zero-length link {link}")

    @property
    def num_users(self):
        return len(self.user_positions)


def link_distance(geometry, link, user=None):
    """Euclidean distance of one of the links bs-ris, ris-u(k), bs-u(k)."""
    if link == "bs-ris":
        a, b = geometry.bs_position, geometry.ris_position
    elif link == "ris-u":
        a, b = geometry.ris_position, geometry.user_positions[user]
    elif link == "bs-u":
        a, b = geometry.bs_position, geometry.user_positions[user]
    else:
        raise ValueError(f"unknown link {link!r}")
    return float(np.hypot(a[0] - b[0], a[1] - b[1]))


def path_loss(geometry, link, user=None):
    """Distance-based power attenuation d^-eta of a link."""
    d = link_distance(geometry, link, user)
    if d <= 0.0:
        raise GeometryError(f"zero-length link {link!r}")
    return d ** (-geometry.path_loss_exponent)


@dataclass(frozen=True)
class ChannelRealization:
    """True channels for one Monte-Carlo trial.

    ``h``: (K, M) direct BS-user vectors; ``G``: (L, M) BS-RIS matrix;
    ``f``: (K, L) RIS-user vectors.  The ``*_std`` fields carry the per-entry
    standard deviation (sqrt of the link path loss) used for the draw, so CSI
    corruption can scale its error terms identically.
    """

    h: np.ndarray
    G: np.ndarray
    f: np.ndarray
    h_std: np.ndarray  # (K,)
    g_std: float
    f_std: np.ndarray  # (K,)

    def __post_init__(self):
        K, M = self.h.shape
        L = self.G.shape[0]
        if self.G.shape != (L, M) or self.f.shape != (K, L):
            raise ValueError("inconsistent channel shapes")
        if not (
            np.all(np.isfinite(self.h))
            and np.all(np.isfinite(self.G))
            and np.all(np.isfinite(self.f))
        ):
            raise ValueError("non-finite channel entries")

    @property
    def num_users(self):
        return self.h.shape[0]

    @property
    def num_antennas(self):
        return self.h.shape[1]

    @property
    def num_elements(self):
        return self.G.shape[0]


@dataclass(frozen=True)
class CsiErrorSpec:
    """Gauss-Markov CSI error levels per link type, each in [0, 1]."""

    tau_bs_u: float = 0.0
    tau_bs_ris: float = 0.0
    tau_ris_u: float = 0.0

    def __post_init__(self):
        for name in ("tau_bs_u", "tau_bs_ris", "tau_ris_u"):
            tau = getattr(self, name)
            if not 0.0 <= tau <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {tau}")

    @classmethod
    def uniform(cls, tau):
        return cls(tau, tau, tau)


@dataclass(frozen=True)
class ChannelEstimate:
    """Corrupted copies of a ChannelRealization (same shapes)."""

    h_hat: np.ndarray
    G_hat: np.ndarray
    f_hat: np.ndarray


def _complex_gaussian(rng, shape):
    """Standard circularly-symmetric complex Gaussian, unit variance per entry."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def draw_channels(geometry, M, L, rng):
    """Draw one fading realization for every link of the scenario."""
    if M < 1 or L < 1:
        raise ValueError(f"dimensions must be positive, got M={M}, L={L}")
    K = geometry.num_users
    h_std = np.array([np.sqrt(path_loss(geometry, "bs-u", k)) for k in range(K)])
    g_std = float(np.sqrt(path_loss(geometry, "bs-ris")))
    f_std = np.array([np.sqrt(path_loss(geometry, "ris-u", k)) for k in range(K)])

    h = h_std[:, None] * _complex_gaussian(rng, (K, M))
    G = g_std * _complex_gaussian(rng, (L, M))
    f = f_std[:, None] * _complex_gaussian(rng, (K, L))
    return ChannelRealization(h=h, G=G, f=f, h_std=h_std, g_std=g_std, f_std=f_std)


def _corrupt(truth, std, tau, rng):
    error = std * _complex_gaussian(rng, truth.shape)
    return np.sqrt(1.0 - tau**2) * truth + tau * error


def corrupt_csi(truth, spec, rng):
    """Apply the Gauss-Markov corruption to each link of a realization."""
    h_hat = _corrupt(truth.h, truth.h_std[:, None], spec.tau_bs_u, rng)
    G_hat = _corrupt(truth.G, truth.g_std, spec.tau_bs_ris, rng)
    f_hat = _corrupt(truth.f, truth.f_std[:, None], spec.tau_ris_u, rng)
    return ChannelEstimate(h_hat=h_hat, G_hat=G_hat, f_hat=f_hat)


@dataclass(frozen=True)
class CascadeMatrix:
    """Per-user cascade matrices, shape (K, M, L).

    Entry (k, m, l) equals G_hat[l, m] * conj(f_hat[k, l]), so that
    cascade[k] @ theta equals the transposed row f_hat[k]^H diag(theta) G_hat.
    """

    K_hat: np.ndarray


def cascade(estimate):
    """Build the Khatri-Rao cascade matrices from an estimate."""
    # (K, M, L): transpose G to (M, L), then scale column l by conj(f[k, l]).
    K_hat = estimate.G_hat.T[None, :, :] * np.conj(estimate.f_hat)[:, None, :]
    return CascadeMatrix(K_hat=np.ascontiguousarray(K_hat))

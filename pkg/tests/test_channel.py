import numpy as np
import pytest

from rsmaris.channel import (
    ChannelEstimate,
    CsiErrorSpec,
    GeometryError,
    ScenarioGeometry,
    cascade,
    corrupt_csi,
    draw_channels,
    link_distance,
    path_loss,
)


def make_geometry(eta=2.5, users=((30.0, 15.0), (50.0, 15.0), (55.0, 10.0))):
    return ScenarioGeometry(
        bs_position=(0.0, 0.0),
        ris_position=(40.0, 5.0),
        user_positions=users,
        path_loss_exponent=eta,
    )


class TestPathLoss:
    def test_bs_user_reference_point(self):
        geom = make_geometry()
        d = link_distance(geom, "bs-u", 0)
        assert d == pytest.approx(np.sqrt(1125.0), abs=1e-12)
        assert path_loss(geom, "bs-u", 0) == pytest.approx(1125.0 ** -1.25, rel=1e-12)

    def test_unit_distance(self):
        geom = ScenarioGeometry((0.0, 0.0), (1.0, 0.0), ((0.0, 1.0),), 2.5)
        assert path_loss(geom, "bs-ris") == 1.0
        assert path_loss(geom, "bs-u", 0) == 1.0

    def test_bs_ris_distance(self):
        geom = make_geometry()
        assert link_distance(geom, "bs-ris") == pytest.approx(np.sqrt(1625.0), abs=1e-12)

    def test_zero_distance_rejected(self):
        with pytest.raises(GeometryError):
            ScenarioGeometry((0.0, 0.0), (0.0, 0.0), ((1.0, 1.0),), 2.5)

    def test_unknown_link(self):
        with pytest.raises(ValueError):
            path_loss(make_geometry(), "ris-bs")


class TestDrawChannels:
    def test_seed_determinism(self):
        geom = make_geometry()
        a = draw_channels(geom, 4, 8, np.random.default_rng(3))
        b = draw_channels(geom, 4, 8, np.random.default_rng(3))
        assert np.array_equal(a.h, b.h)
        assert np.array_equal(a.G, b.G)
        assert np.array_equal(a.f, b.f)

    def test_entry_power_matches_path_loss(self):
        # Monte-Carlo moment check on ~1e5 entries per link
        geom = make_geometry()
        real = draw_channels(geom, 40000, 1, np.random.default_rng(5))
        for k in range(3):
            target = path_loss(geom, "bs-u", k)
            assert np.mean(np.abs(real.h[k]) ** 2) == pytest.approx(target, rel=0.02)
        real = draw_channels(geom, 1, 100000, np.random.default_rng(6))
        assert np.mean(np.abs(real.G) ** 2) == pytest.approx(
            path_loss(geom, "bs-ris"), rel=0.02
        )

    def test_huge_exponent_kills_channels(self):
        geom = make_geometry(eta=500.0)
        real = draw_channels(geom, 3, 4, np.random.default_rng(0))
        assert np.max(np.abs(real.h)) < 1e-30
        assert np.max(np.abs(real.G)) < 1e-30

    def test_bad_dimensions(self):
        with pytest.raises(ValueError):
            draw_channels(make_geometry(), 0, 4, np.random.default_rng(0))
        with pytest.raises(ValueError):
            draw_channels(make_geometry(), 4, 0, np.random.default_rng(0))


class TestCorruptCsi:
    def test_tau_zero_is_identity(self):
        geom = make_geometry()
        truth = draw_channels(geom, 4, 8, np.random.default_rng(1))
        est = corrupt_csi(truth, CsiErrorSpec(), np.random.default_rng(2))
        assert np.array_equal(est.h_hat, truth.h)
        assert np.array_equal(est.G_hat, truth.G)
        assert np.array_equal(est.f_hat, truth.f)

    def test_tau_one_decorrelates(self):
        geom = make_geometry(users=((30.0, 15.0),))
        truth = draw_channels(geom, 10000, 1, np.random.default_rng(1))
        est = corrupt_csi(truth, CsiErrorSpec.uniform(1.0), np.random.default_rng(2))
        x, y = truth.h.ravel(), est.h_hat.ravel()
        corr = np.vdot(x, y) / np.sqrt(np.vdot(x, x).real * np.vdot(y, y).real)
        assert abs(corr) < 0.02

    def test_partial_tau_correlation(self):
        # complex correlation coefficient should be sqrt(1 - tau^2)
        tau = 0.3
        geom = make_geometry(users=((30.0, 15.0),))
        truth = draw_channels(geom, 100000, 1, np.random.default_rng(1))
        est = corrupt_csi(truth, CsiErrorSpec(tau_bs_u=tau), np.random.default_rng(2))
        x, y = truth.h.ravel(), est.h_hat.ravel()
        corr = np.vdot(x, y) / np.sqrt(np.vdot(x, x).real * np.vdot(y, y).real)
        assert abs(corr) == pytest.approx(np.sqrt(1 - tau**2), rel=0.01)

    def test_power_preserved(self):
        geom = make_geometry(users=((30.0, 15.0),))
        truth = draw_channels(geom, 100000, 1, np.random.default_rng(1))
        est = corrupt_csi(truth, CsiErrorSpec.uniform(0.7), np.random.default_rng(2))
        assert np.mean(np.abs(est.h_hat) ** 2) == pytest.approx(
            np.mean(np.abs(truth.h) ** 2), rel=0.02
        )

    def test_tau_out_of_range(self):
        with pytest.raises(ValueError):
            CsiErrorSpec(tau_bs_u=1.5)
        with pytest.raises(ValueError):
            CsiErrorSpec(tau_ris_u=-0.1)


def random_estimate(rng, K, M, L):
    cg = lambda *s: (rng.standard_normal(s) + 1j * rng.standard_normal(s)) / np.sqrt(2)
    return ChannelEstimate(h_hat=cg(K, M), G_hat=cg(L, M), f_hat=cg(K, L))


class TestCascade:
    def test_scalar_case(self):
        g, phi = 2.0 + 1.0j, 0.5 - 0.25j
        est = ChannelEstimate(
            h_hat=np.zeros((1, 1), complex),
            G_hat=np.array([[g]]),
            f_hat=np.array([[phi]]),
        )
        theta = np.exp(1j * np.array([0.7]))
        out = cascade(est).K_hat[0] @ theta
        assert out[0] == pytest.approx(np.conj(phi) * np.exp(0.7j) * g, rel=1e-14)

    def test_matches_direct_product(self):
        rng = np.random.default_rng(9)
        est = random_estimate(rng, 2, 3, 4)
        casc = cascade(est)
        theta = np.exp(1j * rng.uniform(0, 2 * np.pi, 4))
        for k in range(2):
            direct = (np.conj(est.f_hat[k]) * theta) @ est.G_hat
            lhs = casc.K_hat[k] @ theta
            assert np.linalg.norm(lhs - direct) <= 1e-12 * np.linalg.norm(direct)

    def test_all_ones_reflection(self):
        rng = np.random.default_rng(10)
        est = random_estimate(rng, 2, 3, 5)
        casc = cascade(est)
        for k in range(2):
            expected = np.conj(est.f_hat[k]) @ est.G_hat
            assert np.allclose(casc.K_hat[k] @ np.ones(5), expected)

    def test_entrywise_definition(self):
        rng = np.random.default_rng(11)
        est = random_estimate(rng, 1, 2, 3)
        K_hat = cascade(est).K_hat[0]
        for m in range(2):
            for l in range(3):
                expected = est.G_hat[l, m] * np.conj(est.f_hat[0, l])
                assert abs(K_hat[m, l] - expected) <= 1e-14 * abs(expected)

    @pytest.mark.parametrize("seed", range(5))
    def test_identity_large_random(self, seed):
        rng = np.random.default_rng(seed)
        M, L = int(rng.integers(1, 9)), int(rng.integers(1, 17))
        est = random_estimate(rng, 3, M, L)
        casc = cascade(est)
        theta = np.exp(1j * rng.uniform(0, 2 * np.pi, L))
        for k in range(3):
            direct = (np.conj(est.f_hat[k]) * theta) @ est.G_hat
            err = np.linalg.norm(casc.K_hat[k] @ theta - direct)
            assert err <= 1e-10 * (1 + np.linalg.norm(direct))

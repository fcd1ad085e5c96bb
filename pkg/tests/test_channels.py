"""Channel model: deterministic magnitudes, random phases, seeded reproducibility."""

import math

import numpy as np
import pytest

from noma_secrecy import (
    DomainError,
    ScenarioGeometry,
    dbm_to_linear,
    draw_channel,
    draw_trusted,
    draw_untrusted,
    path_gain_magnitude,
    trial_rng,
)

GAMMA = 3.5


def test_dbm_to_linear():
    assert dbm_to_linear(0.0) == 1.0
    assert dbm_to_linear(10.0) == 10.0
    assert dbm_to_linear(90.0) == pytest.approx(1.0e9, rel=1e-12)


def test_path_gain_unit_distance():
    assert path_gain_magnitude(1.0, GAMMA) == 1.0


def test_path_gain_zero_exponent():
    for l in (0.5, 1.0, 7.0, 123.4):
        assert path_gain_magnitude(l, 0.0) == 1.0


def test_path_gain_30m():
    # high-precision evaluation of 30**-3.5
    assert path_gain_magnitude(30.0, GAMMA) ** 2 == pytest.approx(
        6.7620068827798285612e-6, rel=1e-14
    )


def test_path_gain_rejects_nonpositive_distance():
    with pytest.raises(DomainError):
        path_gain_magnitude(0.0, GAMMA)
    with pytest.raises(DomainError):
        path_gain_magnitude(-3.0, GAMMA)


def test_draw_channel_magnitude_is_deterministic():
    rng = trial_rng(0, 0)
    for _ in range(100):
        h = draw_channel(17.0, GAMMA, rng)
        assert abs(h) ** 2 == pytest.approx(17.0**-GAMMA, rel=1e-12)


def test_draw_channel_same_seed_identical():
    a = draw_channel(12.0, GAMMA, trial_rng(5, 3))
    b = draw_channel(12.0, GAMMA, trial_rng(5, 3))
    assert a == b


def test_uniform_phase_mean_near_zero():
    rng = trial_rng(42, 0)
    draws = np.array([draw_channel(1.0, 0.0, rng) for _ in range(100_000)])
    assert abs(draws.mean()) < 0.02


def paper_trusted_geometry(le=50.0, lr=15.0, K=5):
    return ScenarioGeometry(l1=30.0, l2=40.0, lr=lr, gamma=GAMMA, K=K, le=le)


def test_draw_trusted_distances():
    ch = draw_trusted(paper_trusted_geometry(), trial_rng(1, 0))
    # relay-user distances 15 and 25 from the collinear layout
    np.testing.assert_allclose(np.abs(ch.g1) ** 2, 15.0**-GAMMA, rtol=1e-12)
    np.testing.assert_allclose(np.abs(ch.g2) ** 2, 25.0**-GAMMA, rtol=1e-12)
    assert abs(ch.h1) ** 2 == pytest.approx(30.0**-GAMMA, rel=1e-12)
    assert abs(ch.he) ** 2 == pytest.approx(50.0**-GAMMA, rel=1e-12)


def test_draw_trusted_relay_eav_distance():
    ch = draw_trusted(paper_trusted_geometry(le=20.0), trial_rng(1, 0))
    np.testing.assert_allclose(np.abs(ch.ge) ** 2, 5.0**-GAMMA, rtol=1e-12)


def test_draw_trusted_shapes():
    ch = draw_trusted(paper_trusted_geometry(), trial_rng(2, 0))
    for vec in (ch.hr, ch.g1, ch.g2, ch.ge):
        assert vec.shape == (5,)


def test_draw_trusted_ordering_invariants():
    for trial in range(50):
        ch = draw_trusted(paper_trusted_geometry(), trial_rng(9, trial))
        assert abs(ch.h1) ** 2 >= abs(ch.h2) ** 2
        assert np.all(np.abs(ch.g1) ** 2 >= np.abs(ch.g2) ** 2)


def test_draw_trusted_reproducible():
    a = draw_trusted(paper_trusted_geometry(), trial_rng(7, 1))
    b = draw_trusted(paper_trusted_geometry(), trial_rng(7, 1))
    assert a.h1 == b.h1 and a.he == b.he
    np.testing.assert_array_equal(a.ge, b.ge)


def paper_untrusted_geometry(lr=30.0):
    return ScenarioGeometry(l1=40.0, l2=50.0, lr=lr, gamma=GAMMA, K=1)


def test_draw_untrusted_relay_stronger_than_users():
    ch = draw_untrusted(paper_untrusted_geometry(), trial_rng(3, 0))
    assert abs(ch.hr) ** 2 == pytest.approx(30.0**-GAMMA, rel=1e-12)
    assert abs(ch.hr) ** 2 > abs(ch.h1) ** 2
    assert abs(ch.g1) ** 2 > abs(ch.g2) ** 2  # distances 10 vs 20


def test_draw_untrusted_reproducible():
    a = draw_untrusted(paper_untrusted_geometry(), trial_rng(11, 4))
    b = draw_untrusted(paper_untrusted_geometry(), trial_rng(11, 4))
    assert (a.h1, a.h2, a.hr, a.g1, a.g2) == (b.h1, b.h2, b.hr, b.g1, b.g2)


def test_trial_rng_children_are_independent_of_order():
    first = [draw_channel(5.0, GAMMA, trial_rng(1, t)) for t in (0, 1, 2)]
    second = [draw_channel(5.0, GAMMA, trial_rng(1, t)) for t in (2, 1, 0)]
    assert first == second[::-1]
    # redraw attempts get fresh streams
    assert draw_channel(5.0, GAMMA, trial_rng(1, 0, attempt=1)) != first[0]


def test_geometry_validation():
    with pytest.raises(DomainError):
        ScenarioGeometry(l1=40.0, l2=30.0, lr=15.0, gamma=GAMMA, K=5, le=50.0)
    with pytest.raises(DomainError):
        ScenarioGeometry(l1=-1.0, l2=30.0, lr=15.0, gamma=GAMMA)
    with pytest.raises(DomainError):
        ScenarioGeometry(l1=30.0, l2=40.0, lr=30.0, gamma=GAMMA, K=5, le=50.0)
    with pytest.raises(DomainError):
        ScenarioGeometry(l1=30.0, l2=40.0, lr=15.0, gamma=0.0)
    with pytest.raises(DomainError):
        ScenarioGeometry(l1=30.0, l2=40.0, lr=15.0, gamma=GAMMA, K=0)


def test_draw_trusted_needs_eavesdropper_distance():
    with pytest.raises(DomainError):
        draw_trusted(paper_untrusted_geometry(), trial_rng(0, 0))


def test_draw_rejects_relay_closer_to_weak_user():
    bad = ScenarioGeometry(l1=30.0, l2=40.0, lr=39.0, gamma=GAMMA, K=5, le=50.0)
    with pytest.raises(DomainError):
        draw_trusted(bad, trial_rng(0, 0))


def test_draw_untrusted_requires_single_relay():
    geom = ScenarioGeometry(l1=40.0, l2=50.0, lr=30.0, gamma=GAMMA, K=2, le=None)
    with pytest.raises(DomainError):
        draw_untrusted(geom, trial_rng(0, 0))

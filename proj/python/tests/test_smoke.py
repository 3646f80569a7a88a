# SPDX-License-Identifier: Apache-2.0
"""Smoke tests for the python extension: the bindings round-trip data and
agree with the closed-form numbers. Heavy statistics live in the C++ suites."""

import math

import numpy as np
import pytest

import mcht


def test_version_matches_package():
    assert mcht.__version__ == "0.1.0"


def test_gaussian_hardening_curve():
    t = mcht.gen_iid_gaussian(users=1, snapshots=120, freqs=33, antennas=64, seed=1)
    assert (t.users, t.snapshots, t.freqs, t.antennas) == (1, 120, 33, 64)

    curve = mcht.hardening_curve(t, user=0, order="strongest_first")
    assert len(curve) == 64
    assert curve.order == "strongest_first"

    theory = 10.0 * np.log10(1.0 / np.sqrt(np.arange(1, 65)))
    assert np.max(np.abs(curve.std_db - theory)) < 0.6
    assert curve.hardening_db == pytest.approx(theory[-1], abs=0.6)


def test_tensor_array_round_trip(tmp_path):
    rng = np.random.default_rng(7)
    samples = rng.standard_normal((2, 5, 3, 4)) + 1j * rng.standard_normal((2, 5, 3, 4))
    validity = np.ones((2, 5), dtype=bool)
    validity[1, 2] = False

    t = mcht.ChannelTensor.from_array(
        samples, carrier_freq_hz=2.6e9, scenario_label="unit", validity=validity
    )
    np.testing.assert_array_equal(t.array(), samples)
    np.testing.assert_array_equal(t.validity(), validity)

    path = str(tmp_path / "t.mcht")
    mcht.write_tensor(t, path)
    back = mcht.read_tensor(path)
    np.testing.assert_array_equal(back.array(), samples)
    np.testing.assert_array_equal(back.validity(), validity)
    assert back.carrier_freq_hz == 2.6e9
    assert back.scenario_label == "unit"


def test_read_missing_file_raises_data_error(tmp_path):
    with pytest.raises(mcht.DataError):
        mcht.read_tensor(str(tmp_path / "nope.mcht"))


def test_bad_order_name_raises_usage_error():
    t = mcht.gen_iid_gaussian(1, 4, 3, 2, seed=2)
    with pytest.raises(mcht.UsageError):
        mcht.hardening_curve(t, order="sideways")


def test_closed_form_and_surface():
    assert mcht.cv_squared_closed(1, 1) == pytest.approx(1.0)
    assert mcht.cv_squared_closed(128, math.inf) == pytest.approx(1.0 / 128.0)
    assert mcht.cv_squared_closed(128, 10) == pytest.approx(
        (1.0 / 128.0) * 0.9 + 0.1, rel=1e-12
    )

    surface = mcht.std_surface([1, 2, 128], [1, 10, math.inf])
    assert surface.shape == (3, 3)
    assert surface[0, 0] == pytest.approx(0.0)
    assert surface[2, 2] == pytest.approx(10 * math.log10(math.sqrt(1 / 128)), rel=1e-12)
    assert np.all(np.diff(surface, axis=0) <= 1e-12)
    assert np.all(np.diff(surface, axis=1) <= 1e-12)


def test_arrays_and_ordering():
    geo = mcht.build_cylindrical()
    assert geo.array_id == "cylindrical_128"
    assert len(geo) == 128

    t = mcht.gen_iid_gaussian(1, 10, 5, 128, seed=3)
    vertical = mcht.order_antennas(t, order="vertical_only", geometry=geo)
    horizontal = mcht.order_antennas(t, order="horizontal_only", geometry=geo)
    assert len(vertical) == 64 and len(horizontal) == 64
    assert not set(vertical) & set(horizontal)

    mean_db, std_db, samples = mcht.pol_ratio_stats(t, 0, geo)
    assert samples == 10 * 5 * 64
    assert abs(mean_db) < 2.0


def test_gscm_generator_with_custom_config():
    config = """{
      // tiny scene for a smoke test
      "snapshots": 6,
      "freq_points": 5,
      "users": 1,
      "clusters": 3,
      "mpc_per_cluster": 5,
      "taper_length_elements": 8
    }"""
    geo = mcht.build_cylindrical()
    t = mcht.gen_gscm(geo, config_json=config, user_pattern="omni", seed=4)
    assert (t.users, t.snapshots, t.freqs, t.antennas) == (1, 6, 5, 128)
    assert np.isfinite(t.array()).all()

    again = mcht.gen_gscm(geo, config_json=config, user_pattern="omni", seed=4)
    np.testing.assert_array_equal(t.array(), again.array())

    directive = mcht.gen_gscm(geo, config_json=config, user_pattern="directive", seed=4)
    assert not np.array_equal(t.array(), directive.array())


def test_gain_cdf_matches_exponential_reference():
    t = mcht.gen_iid_gaussian(1, 200, 64, 1, seed=5)
    x_db, prob = mcht.gain_cdf(t, user=0, order="original")
    ref = np.array([mcht.exponential_reference_cdf_db(x) for x in x_db])
    assert np.max(np.abs(prob - ref)) < 0.03
    assert mcht.exponential_reference_cdf_db(0.0) == pytest.approx(1 - math.exp(-1))


def test_gain_map_flags_median_port():
    t = mcht.gen_iid_gaussian(1, 30, 17, 16, seed=6)
    gain_db, median_port = mcht.gain_map(t, 0)
    assert gain_db.shape == (16,)
    assert 0 <= median_port < 16

import numpy as np
import pytest

from oel.errors import InvalidInput
from oel.sampler import (
    RNG_ALGORITHM,
    SamplerConfig,
    commuting_pair,
    commuting_spectra,
    dims_cycle,
    generator,
    random_spd,
    sandwich_pair,
)


def test_rng_identity_is_pinned():
    assert RNG_ALGORITHM == "philox4x64"
    bg = generator(123).bit_generator
    assert type(bg).__name__ == "Philox"


def test_generator_is_deterministic():
    a = generator(99).random(8)
    b = generator(99).random(8)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, generator(100).random(8))


def test_random_spd_deterministic_and_in_range():
    cfg = SamplerConfig(seed=5, n=6, spectrum_range=(0.3, 2.5))
    a1 = random_spd(cfg)
    a2 = random_spd(cfg)
    np.testing.assert_array_equal(a1.mat, a2.mat)
    assert a1.eig_min >= 0.3 - 1e-12
    assert a1.eig_max <= 2.5 + 1e-12


def test_sandwich_pair_bit_identical_replay():
    cfg = SamplerConfig(seed=7, n=4, sandwich=(0.5, 3.0))
    p1 = sandwich_pair(cfg)
    p2 = sandwich_pair(cfg)
    np.testing.assert_array_equal(p1.A.mat, p2.A.mat)
    np.testing.assert_array_equal(p1.B.mat, p2.B.mat)


def test_sandwich_endpoints_attained():
    cfg = SamplerConfig(seed=8, n=5, sandwich=(0.7, 2.2))
    pair = sandwich_pair(cfg)
    assert pair.u == pytest.approx(0.7, abs=1e-12)
    assert pair.v == pytest.approx(2.2, abs=1e-12)


def test_sandwich_degenerate_targets_give_multiple_of_a():
    cfg = SamplerConfig(seed=9, n=3, sandwich=(2.0, 2.0))
    pair = sandwich_pair(cfg)
    np.testing.assert_allclose(pair.B.mat, 2.0 * pair.A.mat, atol=1e-13)


def test_sandwich_single_dimension_interior_draw():
    cfg = SamplerConfig(seed=10, n=1, sandwich=(0.5, 3.0))
    pair = sandwich_pair(cfg)
    assert 0.5 - 1e-12 <= pair.u <= 3.0 + 1e-12
    assert pair.u == pair.v


def test_commuting_pair_commutes_and_respects_ratio_window():
    cfg = SamplerConfig(seed=11, n=4, sandwich=(0.5, 1.5))
    q, lam, mu = commuting_spectra(cfg)
    ratios = mu / lam
    assert np.all(ratios >= 0.5 - 1e-12)
    assert np.all(ratios <= 1.5 + 1e-12)
    pair = commuting_pair(cfg)
    comm = pair.A.mat @ pair.B.mat - pair.B.mat @ pair.A.mat
    assert np.linalg.norm(comm, 2) < 1e-12


def test_config_json_roundtrip():
    cfg = SamplerConfig(seed=12, n=3, spectrum_range=(0.4, 1.9), sandwich=(1.0, 2.0))
    back = SamplerConfig.from_json(cfg.to_json())
    assert back == cfg


def test_config_json_minimal_keys():
    cfg = SamplerConfig.from_json('{"seed": 3, "n": 2}')
    assert cfg.seed == 3
    assert cfg.n == 2
    assert cfg.sandwich is None


@pytest.mark.parametrize(
    "payload",
    ["not json", '{"n": 2}', '{"seed": 1}', "[1, 2]"],
)
def test_config_json_rejects_malformed(payload):
    with pytest.raises(InvalidInput):
        SamplerConfig.from_json(payload)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"seed": 1, "n": 0},
        {"seed": 1, "n": 2, "spectrum_range": (-1.0, 2.0)},
        {"seed": 1, "n": 2, "spectrum_range": (2.0, 1.0)},
        {"seed": 1, "n": 2, "sandwich": (0.0, 1.0)},
        {"seed": 1, "n": 2, "sandwich": (3.0, 1.0)},
    ],
)
def test_config_rejects_bad_ranges(kwargs):
    with pytest.raises(InvalidInput):
        SamplerConfig(**kwargs)


def test_dims_cycle_wraps_in_order():
    assert dims_cycle((1, 2, 3), 7) == [1, 2, 3, 1, 2, 3, 1]
    assert dims_cycle((4,), 3) == [4, 4, 4]


def test_distinct_seeds_give_distinct_pairs():
    cfg1 = SamplerConfig(seed=20, n=3, sandwich=(0.5, 2.0))
    cfg2 = SamplerConfig(seed=21, n=3, sandwich=(0.5, 2.0))
    assert not np.array_equal(sandwich_pair(cfg1).B.mat, sandwich_pair(cfg2).B.mat)

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import naive_dilate
from platepipe.errors import ConfigError
from platepipe.morphology import MorphConfig, dilate
from platepipe.raster import BinaryImage


def random_mask(seed, size=12, density=0.2):
    rng = np.random.default_rng(seed)
    return BinaryImage((rng.random((size, size)) < density).astype(np.uint8) * 255)


def test_dilate_empty_stays_empty():
    img = BinaryImage(np.zeros((4, 4), dtype=np.uint8))
    assert dilate(img, MorphConfig(3, 1)) == img


def test_dilate_center_pixel_becomes_block():
    arr = np.zeros((5, 5), dtype=np.uint8)
    arr[2, 2] = 255
    out = dilate(BinaryImage(arr), MorphConfig(3, 1)).pixels
    expected = np.zeros((5, 5), dtype=np.uint8)
    expected[1:4, 1:4] = 255
    assert np.array_equal(out, expected)


def test_two_iterations_equal_wider_mask():
    arr = np.zeros((7, 7), dtype=np.uint8)
    arr[3, 3] = 255
    twice = dilate(BinaryImage(arr), MorphConfig(3, 2))
    wide = dilate(BinaryImage(arr), MorphConfig(5, 1))
    assert twice == wide
    assert np.count_nonzero(twice.pixels) == 25


@given(st.integers(0, 10**6), st.sampled_from([3, 5]))
def test_dilate_matches_naive_oracle(seed, k):
    img = random_mask(seed)
    out = dilate(img, MorphConfig(k, 1))
    assert out.pixels.tolist() == naive_dilate(img.pixels.tolist(), k)


@given(st.integers(0, 10**6), st.integers(1, 3))
def test_iterated_mask3_equals_single_wider_mask(seed, iters):
    img = random_mask(seed)
    iterated = dilate(img, MorphConfig(3, iters))
    single = dilate(img, MorphConfig(2 * iters + 1, 1))
    assert iterated == single


@given(st.integers(0, 10**6))
def test_dilate_extensive(seed):
    img = random_mask(seed)
    out = dilate(img, MorphConfig(3, 1))
    assert not ((img.pixels == 255) & (out.pixels == 0)).any()


@given(st.integers(0, 10**6))
def test_dilate_monotone(seed):
    a = random_mask(seed).pixels
    b = np.maximum(a, random_mask(seed + 1).pixels)  # a subset of b
    da = dilate(BinaryImage(a), MorphConfig(3, 1)).pixels
    db = dilate(BinaryImage(b), MorphConfig(3, 1)).pixels
    assert not ((da == 255) & (db == 0)).any()


def test_morph_config_validation():
    with pytest.raises(ConfigError):
        MorphConfig(4, 1)
    with pytest.raises(ConfigError):
        MorphConfig(1, 1)
    with pytest.raises(ConfigError):
        MorphConfig(3, 0)

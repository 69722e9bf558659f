import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cgrkit.errors import ContractError
from cgrkit.raster import RasterImage
from cgrkit.similarity import (
    DEFAULT_PARAMS,
    DistanceMatrix,
    SsimParams,
    distance_matrix,
    dssim,
    image_moments,
    ssim_global,
    ssim_simplified,
)

unit_images = arrays(
    np.float64,
    (6, 7),
    elements=st.floats(0, 1, allow_nan=False, allow_subnormal=False),
)


def test_default_constants():
    p = SsimParams()
    assert (p.C1, p.C2, p.C3) == ((0.01) ** 2, (0.03) ** 2, (0.03) ** 2 / 2)
    assert p.simplifies
    assert not SsimParams(alpha=2).simplifies
    assert SsimParams(L=255).C1 == pytest.approx(2.55**2)
    with pytest.raises(ValueError):
        SsimParams(C1=0)


@settings(max_examples=200)
@given(unit_images)
def test_self_similarity_is_exactly_one(x):
    assert ssim_global(x, x) == 1.0
    assert dssim(x, x) == 0.0


def test_self_similarity_binary_and_constant():
    rng = np.random.default_rng(0)
    for img in (np.zeros((8, 8)), np.ones((8, 8)), (rng.random((64, 64)) < 0.02) * 1.0):
        assert ssim_global(img, img) == 1.0


def test_product_equals_simplified_form():
    rng = np.random.default_rng(12345)
    worst = 0.0
    for k in range(1000):
        shape = (int(rng.integers(2, 40)), int(rng.integers(2, 40)))
        if k % 2:
            x, y = (rng.random(shape) < rng.random()) * 1.0, (rng.random(shape) < rng.random()) * 1.0
        else:
            x, y = rng.random(shape) ** 3, rng.random(shape)
        worst = max(worst, abs(ssim_global(x, y) - ssim_simplified(x, y)))
    assert worst <= 1e-12


def test_antithetic_pair_is_negative():
    rng = np.random.default_rng(5)
    x = rng.random((64, 64))
    y = 1.0 - x
    assert ssim_global(x, y) < 0
    assert 1.0 < dssim(x, y) <= 2.0


@settings(max_examples=200)
@given(unit_images, unit_images)
def test_symmetry_and_bounds(x, y):
    a, b = ssim_global(x, y), ssim_global(y, x)
    assert abs(a - b) <= 1e-12
    assert -1.0 <= a <= 1.0
    assert 0.0 <= dssim(x, y) <= 2.0


@settings(max_examples=200)
@given(unit_images, unit_images)
def test_moments_against_direct_two_pass(x, y):
    m = image_moments(x, y)
    xs, ys = x.ravel().tolist(), y.ravel().tolist()
    n = len(xs)
    mx, my = math.fsum(xs) / n, math.fsum(ys) / n
    vx = math.fsum((v - mx) ** 2 for v in xs) / n
    vy = math.fsum((v - my) ** 2 for v in ys) / n
    cxy = math.fsum((u - mx) * (v - my) for u, v in zip(xs, ys)) / n
    for got, want in ((m.mu_x, mx), (m.mu_y, my), (m.var_x, vx), (m.var_y, vy), (m.sigma_xy, cxy)):
        assert abs(got - want) <= 1e-10
    assert m.sigma_x >= 0 and m.sigma_y >= 0
    assert abs(m.sigma_xy) <= m.sigma_x * m.sigma_y + 1e-12


def test_moments_survive_large_offset():
    # a one-pass E[x^2] - E[x]^2 would lose everything here
    rng = np.random.default_rng(1)
    base = rng.random(10_000) * 1e-4
    m = image_moments(base + 1e6, base + 1e6)
    assert m.var_x == pytest.approx(base.var(), rel=1e-5)


def test_accepts_raster_images():
    img = RasterImage(np.random.default_rng(2).random((5, 5)))
    assert ssim_global(img, img) == 1.0


def test_shape_mismatch():
    with pytest.raises(ContractError):
        ssim_global(np.zeros((4, 4)), np.zeros((4, 5)))


# ---- distance matrices


def _images(n, seed=0, shape=(16, 16)):
    rng = np.random.default_rng(seed)
    return [(rng.random(shape) < 0.1 + 0.05 * i) * 1.0 for i in range(n)]


def test_two_identical_images_give_zero_matrix():
    img = _images(1)[0]
    d = distance_matrix([img, img.copy()])
    np.testing.assert_array_equal(d.values, np.zeros((2, 2)))


def test_matrix_invariants():
    imgs = _images(6)
    d = distance_matrix(imgs, labels="abcdef")
    v = d.values
    assert d.labels == tuple("abcdef") and d.size == 6
    np.testing.assert_array_equal(v, v.T)
    assert np.all(np.diag(v) == 0)
    assert np.all((v >= 0) & (v <= 2))
    assert v[1, 4] == dssim(imgs[1], imgs[4])


def test_permutation_consistency():
    imgs = _images(7, seed=3)
    perm = np.random.default_rng(8).permutation(7)
    d = distance_matrix(imgs).values
    dp = distance_matrix([imgs[i] for i in perm]).values
    np.testing.assert_allclose(dp, d[np.ix_(perm, perm)], atol=1e-12, rtol=0)


def test_threads_match_sequential(monkeypatch):
    imgs = _images(9, seed=4, shape=(40, 40))
    seq = distance_matrix(imgs, workers=1).values
    monkeypatch.setenv("CGRKIT_THREADS", "4")
    par = distance_matrix(imgs).values
    np.testing.assert_array_equal(seq, par)


def test_mismatch_names_pair():
    imgs = _images(3)
    imgs[2] = np.zeros((3, 3))
    with pytest.raises(ContractError, match=r"\(0, 2\)"):
        distance_matrix(imgs)
    with pytest.raises(ContractError):
        distance_matrix(imgs[:1])


def test_csv_and_json_round_trip():
    d = distance_matrix(_images(4, seed=6), labels=["human", "chimp", "mouse", "fish"])
    csv_text = d.to_csv()
    assert csv_text.splitlines()[0] == ",human,chimp,mouse,fish"
    back = DistanceMatrix.from_csv(csv_text)
    np.testing.assert_array_equal(back.values, d.values)
    assert back.labels == d.labels
    back = DistanceMatrix.from_json(d.to_json())
    np.testing.assert_array_equal(back.values, d.values)
    assert back.labels == d.labels


def test_default_params_object_is_shared():
    assert DEFAULT_PARAMS == SsimParams()

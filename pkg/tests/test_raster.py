import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cgrkit import ifs_iterate
from cgrkit.errors import ContractError, InputError
from cgrkit.fractal_dim import box_counting_dimension, box_counts
from cgrkit.orbit import Orbit
from cgrkit.raster import (
    RasterImage,
    bin_counts,
    encode_image,
    quantize,
    rasterize,
    read_image,
    read_pgm,
    read_png,
    write_pgm,
    write_png,
)


def test_center_point_hits_center_pixel():
    img = rasterize(np.array([[0.5, 0.5]]), 3, 3, window=(0, 1, 0, 1))
    expect = np.zeros((3, 3))
    expect[1, 1] = 1
    np.testing.assert_array_equal(img.pixels, expect)


def test_y_axis_points_up_and_edges_clamp():
    pts = np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    counts, dropped = bin_counts(pts, 4, 4, (0, 1, 0, 1))
    assert dropped == 0
    assert counts[3, 0] == 1  # bottom-left
    assert counts[0, 3] == 1  # top-right, clamped from x = xmax
    assert counts[0, 0] == 1


def test_outside_points_are_dropped_and_counted():
    pts = np.array([[0.5, 0.5], [1.5, 0.5], [-0.01, 0.2], [0.2, 1.0001]])
    img = rasterize(pts, 8, 8, window=(0, 1, 0, 1))
    assert img.dropped == 3
    assert img.pixels.sum() == 1


@pytest.mark.parametrize("window", [(0, 0, 0, 1), (0, 1, 2, 2), (1, 0, 0, 1)])
def test_zero_area_window_rejected(window):
    with pytest.raises(ContractError):
        rasterize(np.array([[0.5, 0.5]]), 4, 4, window=window)


def test_empty_orbit_after_burn_in_rejected():
    orbit = Orbit(np.zeros((3, 2)), (0.0, 0.0), burn_in=3)
    with pytest.raises(ContractError):
        rasterize(orbit, 4, 4)


def test_unknown_mode():
    with pytest.raises(ValueError):
        rasterize(np.array([[0.5, 0.5]]), 4, 4, mode="gamma")


def test_log_count_law():
    pts = np.array([[0.1, 0.1]] * 7 + [[0.9, 0.9]] * 2 + [[0.1, 0.9]])
    img = rasterize(pts, 2, 2, window=(0, 1, 0, 1), mode="log-count")
    assert img.pixels[1, 0] == 1.0
    assert img.pixels[0, 1] == pytest.approx(np.log(3) / np.log(8), abs=1e-15)
    assert img.pixels[0, 0] == pytest.approx(np.log(2) / np.log(8), abs=1e-15)
    assert img.pixels[1, 1] == 0.0


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_log_count_monotone(seed):
    rng = np.random.default_rng(seed)
    pts = rng.beta(0.5, 2.0, size=(500, 2))
    counts, _ = bin_counts(pts, 16, 16, (0, 1, 0, 1))
    img = rasterize(pts, 16, 16, window=(0, 1, 0, 1), mode="log-count")
    order = np.argsort(counts, axis=None, kind="stable")
    assert np.all(np.diff(img.pixels.ravel()[order]) >= 0)
    assert img.pixels.max() == 1.0
    assert np.all(img.pixels[counts == counts.max()] == 1.0)


@settings(max_examples=50)
@given(st.integers(-64, 64), st.integers(-64, 64), st.integers(0, 2**32 - 1))
def test_translation_consistency(dx, dy, seed):
    # dyadic grid coordinates and shifts keep every operation exact
    rng = np.random.default_rng(seed)
    pts = rng.integers(0, 1024, size=(300, 2)) / 1024.0
    shift = np.array([dx / 8.0, dy / 8.0])
    a = rasterize(pts, 32, 32, window=(0, 1, 0, 1))
    b = rasterize(pts + shift, 32, 32, window=(shift[0], 1 + shift[0], shift[1], 1 + shift[1]))
    np.testing.assert_array_equal(a.pixels, b.pixels)


def test_identical_orbits_identical_rasters(sierpinski):
    a = ifs_iterate(sierpinski, 5000, seed=4)
    b = ifs_iterate(sierpinski, 5000, seed=4)
    assert write_pgm(rasterize(a, 64, 64)) == write_pgm(rasterize(b, 64, 64))


def test_sierpinski_middle_block_empty(sierpinski):
    orbit = ifs_iterate(sierpinski, 50000, seed=1)
    img = rasterize(orbit, 256, 256, window=(0, 1, 0, 1))
    # pixels fully inside the open middle triangle x<1/2, y>1/2, y-x<1/2
    # (top row first, so world y of pixel row r spans [1-(r+1)/256, 1-r/256])
    rows, cols = np.mgrid[0:256, 0:256]
    x_hi = (cols + 1) / 256
    y_lo = 1 - (rows + 1) / 256
    y_hi = 1 - rows / 256
    x_lo = cols / 256
    inside = (x_hi <= 0.5) & (y_lo >= 0.5) & (y_hi - x_lo <= 0.5)
    assert inside.sum() > 6000
    assert img.pixels[inside].sum() == 0
    assert img.pixels.sum() > 3000


# ---- image files


def test_pgm_single_white_pixel():
    assert write_pgm(RasterImage(np.ones((1, 1)))) == b"P5\n1 1\n255\n\xff"


def test_pgm_round_half_up():
    data = write_pgm(RasterImage(np.array([[0.0, 0.5]])))
    assert data == b"P5\n2 1\n255\n\x00\x80"


def test_quantize_halves_round_up():
    levels = np.arange(256) / 255.0
    np.testing.assert_array_equal(quantize(RasterImage(levels.reshape(16, 16))).ravel(), np.arange(256))
    half = (np.arange(255) + 0.5) / 255.0
    np.testing.assert_array_equal(quantize(RasterImage(half.reshape(15, 17))).ravel(), np.arange(1, 256))


def _random_image(seed, h=13, w=29):
    return RasterImage(np.random.default_rng(seed).random((h, w)))


@pytest.mark.parametrize("seed", range(5))
def test_pgm_round_trip(seed):
    img = _random_image(seed)
    data = write_pgm(img)
    header = f"P5\n{img.width} {img.height}\n255\n".encode()
    assert data.startswith(header) and len(data) == len(header) + img.width * img.height
    back = read_pgm(data)
    np.testing.assert_array_equal(quantize(back), quantize(img))


@pytest.mark.parametrize("seed", range(5))
def test_png_round_trip_and_pillow(seed):
    from PIL import Image

    img = _random_image(seed)
    data = write_png(img)
    np.testing.assert_array_equal(quantize(read_png(data)), quantize(img))
    pil = Image.open(io.BytesIO(data))
    assert pil.mode == "L" and pil.size == (img.width, img.height)
    np.testing.assert_array_equal(np.asarray(pil), quantize(img))


def test_png_reader_handles_all_filters():
    from PIL import Image

    rng = np.random.default_rng(9)
    # smooth content makes Pillow pick a mix of adaptive filters
    base = np.add.outer(np.arange(40), np.arange(50)) * 2 + rng.integers(0, 3, (40, 50))
    levels = (base % 256).astype(np.uint8)
    buf = io.BytesIO()
    Image.fromarray(levels, mode="L").save(buf, format="PNG", optimize=True)
    np.testing.assert_array_equal(quantize(read_png(buf.getvalue())), levels)


def test_pillow_reads_pgm():
    from PIL import Image

    img = _random_image(11)
    pil = Image.open(io.BytesIO(write_pgm(img)))
    np.testing.assert_array_equal(np.asarray(pil), quantize(img))


def test_read_image_dispatch_and_errors():
    img = _random_image(2, 3, 4)
    assert read_image(write_png(img)).shape == (3, 4)
    assert read_image(write_pgm(img)).shape == (3, 4)
    with pytest.raises(InputError):
        read_image(b"GIF89a")
    with pytest.raises(InputError):
        read_pgm(b"P5\n2 2\n255\n\x00")


def test_encode_image_picks_format():
    img = _random_image(1, 2, 2)
    assert encode_image(img, "a.PNG").startswith(b"\x89PNG")
    assert encode_image(img, "a.pgm").startswith(b"P5")


def test_raster_image_validation():
    with pytest.raises(ContractError):
        RasterImage(np.array([[1.5]]))
    with pytest.raises(ContractError):
        RasterImage(np.zeros(4))


# ---- box counting


def test_box_counts_full_square():
    mask = np.ones((64, 64))
    assert box_counts(mask, [1, 2, 4, 64]) == [4096, 1024, 256, 1]
    dim, _ = box_counting_dimension(mask, sizes=(1, 2, 4, 8))
    assert dim == pytest.approx(2.0, abs=1e-12)


def test_box_counts_line():
    mask = np.zeros((64, 64))
    mask[10, :] = 1
    dim, counts = box_counting_dimension(mask, sizes=(1, 2, 4, 8, 16))
    assert counts == [64, 32, 16, 8, 4]
    assert dim == pytest.approx(1.0, abs=1e-12)


def test_sierpinski_dimension(sierpinski):
    orbit = ifs_iterate(sierpinski, 200_000, seed=2)
    dim, _ = box_counting_dimension(rasterize(orbit, 512, 512, window=(0, 1, 0, 1)))
    assert dim == pytest.approx(np.log(3) / np.log(2), abs=0.05)


def test_empty_image_has_no_dimension():
    with pytest.raises(ValueError):
        box_counting_dimension(np.zeros((8, 8)), sizes=(1, 2))

import numpy as np
import pytest

from wnnm import InvalidInputError, read_pgm, write_pgm


def test_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    img = rng.integers(0, 256, size=(13, 9)).astype(float)
    path = tmp_path / "img.pgm"
    write_pgm(path, img)
    np.testing.assert_array_equal(read_pgm(path), img)


def test_write_rounds_and_clamps(tmp_path):
    path = tmp_path / "img.pgm"
    write_pgm(path, np.array([[-3.0, 12.6, 300.0]]))
    np.testing.assert_array_equal(read_pgm(path), [[0.0, 13.0, 255.0]])


def test_comments_in_header(tmp_path):
    path = tmp_path / "img.pgm"
    path.write_bytes(b"P5\n# a comment\n2 1\n255\n\x05\x07")
    np.testing.assert_array_equal(read_pgm(path), [[5.0, 7.0]])


@pytest.mark.parametrize(
    "data",
    [
        b"P2\n2 2\n255\n1 2 3 4",  # ascii variant unsupported
        b"P5\n2 2\n255\n\x01\x02",  # truncated raster
        b"P5\n2",  # truncated header
        b"P5\n2 2\n65535\n" + b"\x00" * 8,  # wrong maxval
        b"P5\nx y\n255\n" + b"\x00" * 4,  # non-numeric dimensions
    ],
)
def test_malformed_rejected(tmp_path, data):
    path = tmp_path / "bad.pgm"
    path.write_bytes(data)
    with pytest.raises(InvalidInputError):
        read_pgm(path)

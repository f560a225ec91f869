import io

import numpy as np
import pytest

from robust1d.pgm import PgmError, PgmImage, quantize, read_pgm, write_pgm


def roundtrip(data: bytes) -> tuple[PgmImage, bytes]:
    img = read_pgm(io.BytesIO(data))
    out = io.BytesIO()
    write_pgm(img, out)
    return img, out.getvalue()


class TestRead:
    def test_p5_8bit(self):
        data = b"P5\n3 2\n255\n" + bytes([0, 128, 255, 10, 20, 30])
        img = read_pgm(io.BytesIO(data))
        assert (img.width, img.height, img.maxval, img.raw) == (3, 2, 255, True)
        assert img.pixels[0, 2] == 1.0
        assert img.pixels[0, 0] == 0.0
        assert img.pixels[1, 0] == pytest.approx(10 / 255)

    def test_p5_16bit_big_endian(self):
        data = b"P5\n2 1\n65535\n" + (513).to_bytes(2, "big") + (65535).to_bytes(2, "big")
        img = read_pgm(io.BytesIO(data))
        assert img.maxval == 65535
        assert img.pixels[0, 0] == pytest.approx(513 / 65535)
        assert img.pixels[0, 1] == 1.0

    def test_p2_with_comments_and_whitespace(self):
        data = b"P2 # comment\n# full comment line\n 3\t2 \n255\n0 128 255\n10 20 30\n"
        img = read_pgm(io.BytesIO(data))
        assert not img.raw
        assert img.pixels.shape == (2, 3)
        assert img.pixels[0, 1] == pytest.approx(128 / 255)

    def test_reads_from_path(self, tmp_path):
        p = tmp_path / "img.pgm"
        p.write_bytes(b"P5\n1 1\n255\nA")
        assert read_pgm(p).pixels[0, 0] == pytest.approx(65 / 255)

    @pytest.mark.parametrize(
        "data",
        [
            b"P3\n1 1\n255\n0",  # wrong magic
            b"P5\n0 1\n255\n",  # zero width
            b"P5\n1 1\n100\nx",  # unsupported maxval
            b"P5\n2 2\n255\nab",  # short raster
            b"P5\n1 1\n",  # truncated header
            b"P2\n2 1\n255\n1",  # missing pixel
            b"P2\n1 1\n255\n300",  # above maxval
            b"P2\n1 1\n255\nzz",  # non-numeric pixel
            b"P2\nw 1\n255\n0",  # non-numeric width
        ],
    )
    def test_malformed_rejected(self, data):
        with pytest.raises(PgmError):
            read_pgm(io.BytesIO(data))


class TestRoundTrip:
    def test_p5_8bit_payload_identical(self):
        raster = bytes(range(256)) * 2
        data = b"P5\n32 16\n255\n" + raster
        _, out = roundtrip(data)
        assert out == data

    def test_p5_16bit_payload_identical(self):
        rng = np.random.default_rng(0)
        levels = rng.integers(0, 65536, 64, dtype=np.uint16)
        data = b"P5\n8 8\n65535\n" + levels.astype(">u2").tobytes()
        _, out = roundtrip(data)
        assert out == data

    def test_p2_values_identical_and_rewrite_stable(self):
        data = b"P2\n4 2\n255\n0 1 2 3\n252 253 254 255\n"
        img, out = roundtrip(data)
        img2 = read_pgm(io.BytesIO(out))
        assert np.array_equal(
            quantize(img.pixels, 255), quantize(img2.pixels, 255)
        )
        out2 = io.BytesIO()
        write_pgm(img2, out2)
        assert out2.getvalue() == out

    def test_p2_long_rows_wrap_at_70_columns(self):
        img = PgmImage(pixels=np.full((2, 64), 100 / 255), maxval=255, raw=False)
        out = io.BytesIO()
        write_pgm(img, out)
        body = out.getvalue().decode("ascii")
        assert all(len(line) <= 70 for line in body.splitlines())
        again = read_pgm(io.BytesIO(out.getvalue()))
        assert np.array_equal(quantize(again.pixels, 255), quantize(img.pixels, 255))


class TestQuantize:
    def test_rounds_halves_away_from_zero(self):
        pix = np.array([[0.0, 0.5 / 255, 1.5 / 255, 1.0]])
        assert quantize(pix, 255).tolist() == [[0, 1, 2, 255]]

    def test_16bit_dtype(self):
        assert quantize(np.array([[1.0]]), 65535).dtype == np.uint16

    def test_every_8bit_level_survives(self):
        levels = np.arange(256)
        assert np.array_equal(quantize(levels / 255.0, 255), levels.astype(np.uint8))

    def test_every_16bit_level_survives(self):
        levels = np.arange(65536)
        assert np.array_equal(quantize(levels / 65535.0, 65535), levels.astype(np.uint16))

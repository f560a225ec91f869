"""Minimal Netpbm grayscale (PGM) reader and writer.

Supports binary P5 and plain-text P2 rasters with maxval 255 (one byte per
pixel) or 65535 (two bytes, most significant first).  Intensities map
linearly to floats in [0, 1] on read and are re-quantized with
round-half-away-from-zero on write, so read -> write preserves the stored
values exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SUPPORTED_MAXVALS = (255, 65535)


class PgmError(ValueError):
    """Malformed or unsupported PGM data."""


@dataclass
class PgmImage:
    """Grayscale image plus the file properties needed to round-trip it."""

    pixels: np.ndarray  # 2D float64 in [0, 1]
    maxval: int = 255
    raw: bool = True  # True: binary P5, False: plain P2

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


def _tokens(data: bytes):
    """Yield whitespace-separated header/plain-data tokens, skipping comments."""
    i = 0
    n = len(data)
    while i < n:
        ch = data[i : i + 1]
        if ch.isspace():
            i += 1
        elif ch == b"#":
            while i < n and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
        else:
            j = i
            while j < n and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
                j += 1
            yield i, data[i:j]
            i = j


def quantize(pixels: np.ndarray, maxval: int) -> np.ndarray:
    """Map [0, 1] floats to integer levels, rounding halves away from zero."""
    return np.floor(pixels * maxval + 0.5).astype(np.uint16 if maxval > 255 else np.uint8)


def read_pgm(path) -> PgmImage:
    """Read a P2 or P5 PGM file (path or binary file object)."""
    if hasattr(path, "read"):
        data = path.read()
    else:
        with open(path, "rb") as fh:
            data = fh.read()

    toks = _tokens(data)

    def next_token(what):
        try:
            return next(toks)
        except StopIteration:
            raise PgmError(f"truncated PGM: missing {what}") from None

    _, magic = next_token("magic number")
    if magic not in (b"P2", b"P5"):
        raise PgmError(f"unsupported magic {magic!r}: expected P2 or P5")
    raw = magic == b"P5"

    header = []
    for name in ("width", "height", "maxval"):
        pos, tok = next_token(name)
        try:
            header.append(int(tok))
        except ValueError:
            raise PgmError(f"bad {name} {tok!r}") from None
    width, height, maxval = header
    if width <= 0 or height <= 0:
        raise PgmError(f"bad dimensions {width}x{height}")
    if maxval not in SUPPORTED_MAXVALS:
        raise PgmError(f"unsupported maxval {maxval}: expected 255 or 65535")

    count = width * height
    if raw:
        # exactly one whitespace byte separates the header from the raster
        payload = data[pos + len(tok) + 1 :]
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        need = count * dtype.itemsize
        if len(payload) < need:
            raise PgmError(f"raster too short: {len(payload)} bytes, need {need}")
        levels = np.frombuffer(payload[:need], dtype=dtype).astype(np.int64)
    else:
        levels = np.empty(count, dtype=np.int64)
        for k in range(count):
            _, tok = next_token(f"pixel {k}")
            try:
                levels[k] = int(tok)
            except ValueError:
                raise PgmError(f"bad pixel value {tok!r}") from None
    if levels.min() < 0 or levels.max() > maxval:
        raise PgmError(f"pixel value out of range 0..{maxval}")

    pixels = levels.reshape(height, width).astype(np.float64) / maxval
    return PgmImage(pixels=pixels, maxval=maxval, raw=raw)


def write_pgm(image: PgmImage, path) -> None:
    """Write a PGM file (path or binary file object) in the image's format."""
    if image.maxval not in SUPPORTED_MAXVALS:
        raise PgmError(f"unsupported maxval {image.maxval}")
    levels = quantize(image.pixels, image.maxval)
    header = f"{'P5' if image.raw else 'P2'}\n{image.width} {image.height}\n{image.maxval}\n"

    if image.raw:
        body = levels.astype(">u2" if image.maxval > 255 else "u1").tobytes()
        out = header.encode("ascii") + body
    else:
        lines = []
        line = ""
        for v in levels.ravel():
            tok = str(int(v))
            if line and len(line) + 1 + len(tok) > 70:
                lines.append(line)
                line = tok
            else:
                line = f"{line} {tok}" if line else tok
        lines.append(line)
        out = (header + "\n".join(lines) + "\n").encode("ascii")

    if hasattr(path, "write"):
        path.write(out)
    else:
        with open(path, "wb") as fh:
            fh.write(out)

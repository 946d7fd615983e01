"""8-bit image buffers, channel split/merge, and a binary PNM codec.

Pixel data lives in flat, row-major ``uint8`` buffers (interleaved for
color images). Buffers are copied and frozen on construction, so every
:class:`ImageU8` and :class:`Plane` is a value that can be shared across
threads without synchronization.

PGM (P5) and PPM (P6) with maxval 255 are the native on-disk formats; the
writer is canonical (single-space, newline-terminated header) so equal
images always serialize to equal bytes. PNG is available as an optional
adapter behind the same contract when Pillow is installed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "ImageU8",
    "Plane",
    "split_channels",
    "merge_channels",
    "read_pnm",
    "write_pnm",
    "read_image",
    "write_image",
]

_PNM_SUFFIXES = {".pgm", ".ppm", ".pnm"}
_WHITESPACE = b" \t\n\r\x0b\x0c"


def _frozen_u8(data, expected_len: int, what: str) -> np.ndarray:
    arr = np.array(data, dtype=np.uint8, copy=True).reshape(-1)
    if arr.size != expected_len:
        raise ValueError(f"{what} has {arr.size} samples, expected {expected_len}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ImageU8:
    """Interleaved 8-bit raster with 1 (grayscale) or 3 (RGB) channels."""

    width: int
    height: int
    channels: int
    data: np.ndarray

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(f"image dimensions must be >= 1, got {self.width}x{self.height}")
        if self.channels not in (1, 3):
            raise ValueError(f"channels must be 1 or 3, got {self.channels}")
        size = self.width * self.height * self.channels
        object.__setattr__(self, "data", _frozen_u8(self.data, size, "image data"))

    @classmethod
    def from_array(cls, arr) -> "ImageU8":
        """Build from an ``(h, w)`` or ``(h, w, c)`` array-like."""
        a = np.asarray(arr)
        if a.ndim == 2:
            h, w = a.shape
            return cls(w, h, 1, a)
        if a.ndim == 3 and a.shape[2] in (1, 3):
            h, w, c = a.shape
            return cls(w, h, c, a)
        raise ValueError(f"expected (h, w) or (h, w, c) with c in {{1, 3}}, got shape {a.shape}")

    @property
    def pixels(self) -> np.ndarray:
        """Read-only ``(height, width, channels)`` view of the samples."""
        return self.data.reshape(self.height, self.width, self.channels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ImageU8):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and self.channels == other.channels
            and np.array_equal(self.data, other.data)
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class Plane:
    """Single-channel 8-bit raster; the unit the quantizer operates on."""

    width: int
    height: int
    data: np.ndarray

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(f"plane dimensions must be >= 1, got {self.width}x{self.height}")
        size = self.width * self.height
        object.__setattr__(self, "data", _frozen_u8(self.data, size, "plane data"))

    @classmethod
    def from_array(cls, arr) -> "Plane":
        a = np.asarray(arr)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {a.shape}")
        h, w = a.shape
        return cls(w, h, a)

    @property
    def rows(self) -> np.ndarray:
        """Read-only ``(height, width)`` view of the samples."""
        return self.data.reshape(self.height, self.width)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Plane):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.data, other.data)
        )

    __hash__ = None  # type: ignore[assignment]


def split_channels(img: ImageU8) -> list[Plane]:
    """Return one :class:`Plane` per channel, in sample order."""
    if img.channels == 1:
        return [Plane(img.width, img.height, img.data)]
    interleaved = img.data.reshape(-1, img.channels)
    return [Plane(img.width, img.height, interleaved[:, k]) for k in range(img.channels)]


def merge_channels(planes: list[Plane]) -> ImageU8:
    """Interleave 1 or 3 equally sized planes back into an image.

    Inverse of :func:`split_channels`.
    """
    if len(planes) not in (1, 3):
        raise ValueError(f"need 1 or 3 planes, got {len(planes)}")
    first = planes[0]
    for p in planes[1:]:
        if (p.width, p.height) != (first.width, first.height):
            raise ValueError(
                f"plane dimensions differ: {first.width}x{first.height} vs {p.width}x{p.height}"
            )
    if len(planes) == 1:
        return ImageU8(first.width, first.height, 1, first.data)
    stacked = np.stack([p.data for p in planes], axis=1)
    return ImageU8(first.width, first.height, 3, stacked)


def _next_header_token(data: bytes, pos: int) -> tuple[bytes, int]:
    n = len(data)
    while pos < n:
        c = data[pos]
        if c in _WHITESPACE:
            pos += 1
        elif c == 0x23:  # '#': comment runs to end of line
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
        else:
            break
    if pos >= n:
        raise ValueError("truncated PNM header")
    start = pos
    while pos < n and data[pos] not in _WHITESPACE and data[pos] != 0x23:
        pos += 1
    return data[start:pos], pos


def read_pnm(data: bytes) -> ImageU8:
    """Decode binary PGM (P5) or PPM (P6) bytes with maxval 255.

    Header tokens may be separated by any PNM whitespace, with ``#``
    comments allowed between them. The pixel payload is copied verbatim;
    trailing bytes after the raster are ignored.
    """
    if len(data) < 2:
        raise ValueError("not a PNM file: too short")
    magic = bytes(data[:2])
    if magic == b"P5":
        channels = 1
    elif magic == b"P6":
        channels = 3
    else:
        raise ValueError(f"unsupported PNM magic {magic!r} (want P5 or P6)")

    pos = 2
    tokens = []
    for _ in range(3):
        token, pos = _next_header_token(data, pos)
        tokens.append(token)
    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError:
        raise ValueError(f"malformed PNM header tokens {tokens!r}") from None
    if width < 1 or height < 1:
        raise ValueError(f"invalid PNM dimensions {width}x{height}")
    if maxval != 255:
        raise ValueError(f"unsupported PNM maxval {maxval} (only 255)")

    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise ValueError("missing whitespace between PNM header and raster")
    pos += 1
    needed = width * height * channels
    payload = data[pos : pos + needed]
    if len(payload) < needed:
        raise ValueError(f"truncated PNM payload: {len(payload)} of {needed} bytes")
    return ImageU8(width, height, channels, np.frombuffer(payload, dtype=np.uint8))


def write_pnm(img: ImageU8) -> bytes:
    """Encode to canonical binary PNM: ``P5|P6\\n{w} {h}\\n255\\n`` + raster."""
    magic = "P5" if img.channels == 1 else "P6"
    header = f"{magic}\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.data.tobytes()


def _pillow_image():
    try:
        from PIL import Image
    except ImportError:
        raise RuntimeError(
            "PNG support needs the optional Pillow dependency (install tritone[png])"
        ) from None
    return Image


def _read_png(path: Path) -> ImageU8:
    Image = _pillow_image()
    with Image.open(path) as im:
        if im.mode == "L":
            return ImageU8.from_array(np.asarray(im, dtype=np.uint8))
        return ImageU8.from_array(np.asarray(im.convert("RGB"), dtype=np.uint8))


def _write_png(path: Path, img: ImageU8) -> None:
    Image = _pillow_image()
    mode = "L" if img.channels == 1 else "RGB"
    Image.frombytes(mode, (img.width, img.height), img.data.tobytes()).save(path)


def read_image(path) -> ImageU8:
    """Load an image picked by file extension (.pgm/.ppm/.pnm, or .png)."""
    p = Path(path)
    suffix = p.suffix.lower()
    if suffix in _PNM_SUFFIXES:
        return read_pnm(p.read_bytes())
    if suffix == ".png":
        return _read_png(p)
    raise ValueError(f"unsupported image extension {suffix!r} (use .pgm, .ppm, .pnm or .png)")


def write_image(path, img: ImageU8) -> None:
    """Write an image in the format picked by file extension."""
    p = Path(path)
    suffix = p.suffix.lower()
    if suffix in _PNM_SUFFIXES:
        p.write_bytes(write_pnm(img))
    elif suffix == ".png":
        _write_png(p, img)
    else:
        raise ValueError(f"unsupported image extension {suffix!r} (use .pgm, .ppm, .pnm or .png)")

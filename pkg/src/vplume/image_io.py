"""8-bit image file I/O: PNG, binary PPM (P6) and binary PGM (P5).

Loading maps samples by v/255 into float64 RGB arrays; grayscale inputs
are replicated across the three channels.  Saving rounds v*255 and
clamps to [0, 255].  PNG decoding/encoding is delegated to Pillow;
the netpbm formats are parsed here.

Out of scope by design: 16-bit depth, alpha, palettes beyond what PNG
itself stores, ICC/EXIF metadata.
"""

import re
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .image_core import as_rgb


class ImageFormatError(ValueError):
    """Unsupported, malformed or out-of-scope image data."""


_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def load_image(path) -> np.ndarray:
    """Load a PNG/PPM/PGM file as a float64 (h, w, 3) array in [0, 1].

    The format is sniffed from the file's magic bytes, not its name.
    Raises OSError for unreadable files and ImageFormatError for
    unsupported or malformed content.
    """
    path = Path(path)
    with open(path, "rb") as fh:
        head = fh.read(8)
    if head.startswith(_PNG_MAGIC):
        return _load_png(path)
    if head[:2] in (b"P5", b"P6"):
        return _load_netpbm(path)
    raise ImageFormatError(f"{path}: not a PNG, PPM (P6) or PGM (P5) file")


def save_image(img, path) -> None:
    """Save a float64 RGB array; format chosen by extension.

    ``.png`` and ``.ppm`` write all three channels; ``.pgm`` requires an
    achromatic image (r=g=b) and writes the single gray channel.
    """
    arr = as_rgb(img)
    quantized = np.clip(np.rint(arr * 255.0), 0.0, 255.0).astype(np.uint8)
    path = Path(path)
    ext = path.suffix.lower()
    if ext == ".png":
        Image.fromarray(quantized, mode="RGB").save(path, format="PNG")
    elif ext == ".ppm":
        with open(path, "wb") as fh:
            fh.write(b"P6\n%d %d\n255\n" % (arr.shape[1], arr.shape[0]))
            fh.write(quantized.tobytes())
    elif ext == ".pgm":
        if not (
            np.array_equal(quantized[:, :, 0], quantized[:, :, 1])
            and np.array_equal(quantized[:, :, 0], quantized[:, :, 2])
        ):
            raise ImageFormatError(f"{path}: PGM output requires an achromatic image")
        with open(path, "wb") as fh:
            fh.write(b"P5\n%d %d\n255\n" % (arr.shape[1], arr.shape[0]))
            fh.write(quantized[:, :, 0].tobytes())
    else:
        raise ImageFormatError(f"{path}: unsupported output format {ext!r}")


def _load_png(path: Path) -> np.ndarray:
    try:
        with Image.open(path) as im:
            mode = im.mode
            if mode == "P":
                im = im.convert("RGB")
                mode = "RGB"
            if mode not in ("RGB", "L"):
                raise ImageFormatError(
                    f"{path}: PNG mode {mode!r} is unsupported (8-bit RGB/gray only)"
                )
            data = np.asarray(im, dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise ImageFormatError(f"{path}: corrupt or unsupported PNG") from exc
    if data.ndim == 2:
        data = np.stack([data, data, data], axis=2)
    return data.astype(np.float64) / 255.0


def _load_netpbm(path: Path) -> np.ndarray:
    raw = path.read_bytes()
    magic = raw[:2]
    channels = 3 if magic == b"P6" else 1

    # header: magic, width, height, maxval as whitespace-separated tokens,
    # with '#' comments running to end of line
    pos = 2
    fields = []
    while len(fields) < 3:
        match = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\d+)").match(raw, pos)
        if match is None:
            raise ImageFormatError(f"{path}: malformed netpbm header")
        fields.append(int(match.group(1)))
        pos = match.end()
    width, height, maxval = fields
    if width == 0 or height == 0:
        raise ImageFormatError(f"{path}: zero-dimension netpbm header")
    if maxval != 255:
        raise ImageFormatError(f"{path}: only 8-bit netpbm (maxval 255) is supported")
    pos += 1  # single whitespace byte after maxval

    expected = width * height * channels
    body = raw[pos : pos + expected]
    if len(body) != expected:
        raise ImageFormatError(f"{path}: truncated netpbm pixel data")
    data = np.frombuffer(body, dtype=np.uint8)
    if channels == 3:
        data = data.reshape(height, width, 3)
    else:
        gray = data.reshape(height, width)
        data = np.stack([gray, gray, gray], axis=2)
    return data.astype(np.float64) / 255.0

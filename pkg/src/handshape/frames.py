"""Reading and writing image frames: binary PPM (P6) and 8-bit PNG.

PPM is the bit-exact interchange format; PNG input (8-bit RGB or RGBA,
non-interlaced) is accepted for convenience, with alpha dropped. All decode
failures raise FrameDecodeError naming the file and the byte offset.
"""

from __future__ import annotations

import os
import struct
import zlib

import numpy as np

from .imaging import PixelBuffer

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_PPM_WHITESPACE = b" \t\r\n\x0b\x0c"


class FrameDecodeError(ValueError):
    """A frame file that cannot be decoded."""

    def __init__(self, path, offset: int, reason: str):
        super().__init__(f"{path}: byte {offset}: {reason}")
        self.path = path
        self.offset = offset


def read_frame(path: str | os.PathLike) -> PixelBuffer:
    """Decode a PPM or PNG file into an RGB PixelBuffer (sniffed by magic bytes)."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:2] == b"P6":
        return _decode_ppm(data, path)
    if data[:8] == _PNG_SIGNATURE:
        return _decode_png(data, path)
    raise FrameDecodeError(path, 0, "not a P6 PPM or PNG file")


def write_frame(buffer: PixelBuffer, path: str | os.PathLike) -> None:
    """Encode a frame; the format follows the file extension (.ppm or .png)."""
    suffix = os.path.splitext(os.fspath(path))[1].lower()
    if suffix == ".ppm":
        write_ppm(buffer, path)
    elif suffix == ".png":
        write_png(buffer, path)
    else:
        raise ValueError(f"cannot infer frame format from {path!r}")


def write_ppm(buffer: PixelBuffer, path: str | os.PathLike) -> None:
    """Write a binary P6 PPM with maxval 255."""
    header = f"P6\n{buffer.width} {buffer.height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(buffer.pixels.tobytes())


def write_png(buffer: PixelBuffer, path: str | os.PathLike) -> None:
    """Write an 8-bit truecolor PNG (no interlace, filter 0 on every row)."""
    h, w = buffer.pixels.shape[:2]
    raw = bytearray()
    for row in buffer.pixels:
        raw.append(0)
        raw.extend(row.tobytes())

    def chunk(kind: bytes, payload: bytes) -> bytes:
        crc = zlib.crc32(kind + payload) & 0xFFFFFFFF
        return struct.pack(">I", len(payload)) + kind + payload + struct.pack(">I", crc)

    ihdr = struct.pack(">IIBBBBB", w, h, 8, 2, 0, 0, 0)
    with open(path, "wb") as fh:
        fh.write(_PNG_SIGNATURE)
        fh.write(chunk(b"IHDR", ihdr))
        fh.write(chunk(b"IDAT", zlib.compress(bytes(raw))))
        fh.write(chunk(b"IEND", b""))


def _decode_ppm(data: bytes, path) -> PixelBuffer:
    pos = 2  # past the P6 magic

    def skip_separators() -> None:
        nonlocal pos
        while pos < len(data):
            if data[pos] == 0x23:  # '#' starts a comment running to end of line
                while pos < len(data) and data[pos] not in (0x0A, 0x0D):
                    pos += 1
            elif data[pos] in _PPM_WHITESPACE:
                pos += 1
            else:
                break

    def read_int(what: str) -> int:
        nonlocal pos
        skip_separators()
        start = pos
        while pos < len(data) and 48 <= data[pos] <= 57:
            pos += 1
        if pos == start:
            raise FrameDecodeError(path, pos, f"expected {what} in PPM header")
        return int(data[start:pos])

    width = read_int("width")
    height = read_int("height")
    maxval = read_int("maxval")
    if width <= 0 or height <= 0:
        raise FrameDecodeError(path, pos, f"invalid PPM dimensions {width}x{height}")
    if maxval != 255:
        raise FrameDecodeError(path, pos, f"unsupported PPM maxval {maxval} (need 255)")
    if pos >= len(data) or data[pos] not in _PPM_WHITESPACE:
        raise FrameDecodeError(path, pos, "expected single whitespace before PPM raster")
    pos += 1

    expected = width * height * 3
    raster = data[pos:pos + expected]
    if len(raster) < expected:
        raise FrameDecodeError(
            path, pos + len(raster), f"PPM raster truncated: need {expected} bytes"
        )
    pixels = np.frombuffer(raster, dtype=np.uint8).reshape(height, width, 3)
    return PixelBuffer(pixels)


def _decode_png(data: bytes, path) -> PixelBuffer:
    pos = 8
    ihdr = None
    idat = bytearray()
    while True:
        if pos + 8 > len(data):
            raise FrameDecodeError(path, pos, "truncated PNG chunk header")
        length, kind = struct.unpack(">I4s", data[pos:pos + 8])
        body_at = pos + 8
        if body_at + length + 4 > len(data):
            raise FrameDecodeError(path, pos, f"truncated {kind.decode('latin1')} chunk")
        body = data[body_at:body_at + length]
        (crc,) = struct.unpack(">I", data[body_at + length:body_at + length + 4])
        if crc != (zlib.crc32(kind + body) & 0xFFFFFFFF):
            raise FrameDecodeError(path, body_at + length, "PNG chunk CRC mismatch")

        if kind == b"IHDR":
            if length != 13:
                raise FrameDecodeError(path, pos, "malformed IHDR chunk")
            ihdr = struct.unpack(">IIBBBBB", body)
            w, h, depth, color, compression, filt, interlace = ihdr
            if w == 0 or h == 0:
                raise FrameDecodeError(path, body_at, f"invalid PNG dimensions {w}x{h}")
            if depth != 8 or color not in (2, 6):
                raise FrameDecodeError(
                    path, body_at,
                    f"unsupported PNG format (bit depth {depth}, color type {color})",
                )
            if compression != 0 or filt != 0 or interlace != 0:
                raise FrameDecodeError(
                    path, body_at, "unsupported PNG compression/filter/interlace"
                )
        elif kind == b"IDAT":
            if ihdr is None:
                raise FrameDecodeError(path, pos, "IDAT before IHDR")
            idat.extend(body)
        elif kind == b"IEND":
            break
        pos = body_at + length + 4

    if ihdr is None:
        raise FrameDecodeError(path, 8, "PNG has no IHDR chunk")
    width, height, depth, color, _, _, _ = ihdr

    try:
        raw = zlib.decompress(bytes(idat))
    except zlib.error as exc:
        raise FrameDecodeError(path, 8, f"PNG image data does not inflate: {exc}") from exc

    channels = 3 if color == 2 else 4
    stride = width * channels
    if len(raw) != height * (stride + 1):
        raise FrameDecodeError(path, 8, "PNG pixel data has the wrong length")

    out = np.empty((height, stride), dtype=np.uint8)
    previous = bytes(stride)
    for y in range(height):
        offset = y * (stride + 1)
        ftype = raw[offset]
        line = bytearray(raw[offset + 1:offset + 1 + stride])
        if ftype == 0:
            pass
        elif ftype == 1:  # Sub
            for x in range(channels, stride):
                line[x] = (line[x] + line[x - channels]) & 0xFF
        elif ftype == 2:  # Up
            for x in range(stride):
                line[x] = (line[x] + previous[x]) & 0xFF
        elif ftype == 3:  # Average
            for x in range(stride):
                left = line[x - channels] if x >= channels else 0
                line[x] = (line[x] + (left + previous[x]) // 2) & 0xFF
        elif ftype == 4:  # Paeth
            for x in range(stride):
                left = line[x - channels] if x >= channels else 0
                up = previous[x]
                up_left = previous[x - channels] if x >= channels else 0
                p = left + up - up_left
                pa, pb, pc = abs(p - left), abs(p - up), abs(p - up_left)
                if pa <= pb and pa <= pc:
                    predictor = left
                elif pb <= pc:
                    predictor = up
                else:
                    predictor = up_left
                line[x] = (line[x] + predictor) & 0xFF
        else:
            raise FrameDecodeError(path, 8 + offset, f"unknown PNG row filter {ftype}")
        previous = bytes(line)
        out[y] = np.frombuffer(previous, dtype=np.uint8)

    pixels = out.reshape(height, width, channels)
    if channels == 4:
        pixels = pixels[:, :, :3]
    return PixelBuffer(pixels)

"""Resume state for long single-integer verifications.

Layout, all integers big-endian::

    b"CRTK1"
    u64  n        byte length of the value
    n    bytes    current value
    u64  cnt_I
    u64  cnt_O
    u32  CRC32 of everything above

Files are written to a sibling temp file and renamed into place.
"""

import os
import struct
import tempfile
import zlib

from .errors import CorruptState

MAGIC = b"CRTK1"
_U64 = struct.Struct(">Q")
_U32 = struct.Struct(">I")


def encode_state(value, cnt_i, cnt_o):
    if value < 0:
        raise ValueError("value must be non-negative")
    raw = value.to_bytes((value.bit_length() + 7) // 8, "big")
    body = MAGIC + _U64.pack(len(raw)) + raw + _U64.pack(cnt_i) + _U64.pack(cnt_o)
    return body + _U32.pack(zlib.crc32(body))


def decode_state(data):
    """Return ``(value, cnt_i, cnt_o)`` or raise CorruptState."""
    head = len(MAGIC) + _U64.size
    if len(data) < head or not data.startswith(MAGIC):
        raise CorruptState("missing CRTK1 header")
    (n,) = _U64.unpack_from(data, len(MAGIC))
    expected = head + n + 2 * _U64.size + _U32.size
    if len(data) != expected:
        raise CorruptState(f"expected {expected} bytes, found {len(data)}")
    body, (crc,) = data[:-_U32.size], _U32.unpack_from(data, len(data) - _U32.size)
    if zlib.crc32(body) != crc:
        raise CorruptState("checksum mismatch")
    value = int.from_bytes(data[head:head + n], "big")
    cnt_i, cnt_o = _U64.unpack_from(data, head + n)[0], _U64.unpack_from(data, head + n + 8)[0]
    return value, cnt_i, cnt_o


def write_state(path, value, cnt_i, cnt_o):
    data = encode_state(value, cnt_i, cnt_o)
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".crtk-", dir=d)
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_state(path):
    with open(path, "rb") as f:
        return decode_state(f.read())

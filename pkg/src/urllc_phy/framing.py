"""Bit-exact IQ frame wire format for the two-process eNB/UE mode.

Preamble (little-endian):

====== ======= =====================================
offset size    field
====== ======= =====================================
0      4       magic ``URLP``
4      1       version (1)
5      1       kind: 1 = IQ, 2 = CONTROL, 3 = END
6      2       flags (0)
8      4       seq
12     4       slot
16     4       sample_count
20     8       timestamp_ns
====== ======= =====================================

i.e. a 4-byte magic followed by a 24-byte header.  An IQ payload is
``sample_count`` complex samples, each two little-endian float32 (I then Q).
A CONTROL payload is the 12-byte sideband below; END carries nothing.

Control sideband: ``mcs`` u8, reserved u8 (0), ``tbs_bits`` u16, ``slot``
u32, ``rnti`` u16, ``cell_id`` u16.
"""

import struct
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "MAGIC",
    "VERSION",
    "PREAMBLE_LEN",
    "FRAME_KIND_IQ",
    "FRAME_KIND_CONTROL",
    "FRAME_KIND_END",
    "FrameError",
    "BadMagicError",
    "BadVersionError",
    "BadKindError",
    "TruncatedFrameError",
    "LengthMismatchError",
    "ControlSideband",
    "IqFrame",
    "encode_frame",
    "decode_frame",
]

MAGIC = b"URLP"
VERSION = 1
FRAME_KIND_IQ = 1
FRAME_KIND_CONTROL = 2
FRAME_KIND_END = 3

_PREAMBLE = struct.Struct("<4sBBHIIIQ")
PREAMBLE_LEN = _PREAMBLE.size  # 28: magic + 24-byte header
_CONTROL = struct.Struct("<BBHIHH")
CONTROL_LEN = _CONTROL.size


class FrameError(ValueError):
    """Base class for wire-format violations."""


class BadMagicError(FrameError):
    pass


class BadVersionError(FrameError):
    pass


class BadKindError(FrameError):
    pass


class TruncatedFrameError(FrameError):
    pass


class LengthMismatchError(FrameError):
    pass


@dataclass(frozen=True)
class ControlSideband:
    mcs: int
    tbs_bits: int
    slot: int
    rnti: int
    cell_id: int

    def pack(self) -> bytes:
        return _CONTROL.pack(self.mcs, 0, self.tbs_bits, self.slot, self.rnti, self.cell_id)

    @classmethod
    def unpack(cls, data: bytes) -> "ControlSideband":
        mcs, _, tbs_bits, slot, rnti, cell_id = _CONTROL.unpack(data)
        return cls(mcs=mcs, tbs_bits=tbs_bits, slot=slot, rnti=rnti, cell_id=cell_id)


@dataclass
class IqFrame:
    kind: int
    seq: int
    slot: int
    timestamp_ns: int
    flags: int = 0
    version: int = VERSION
    samples: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.complex64))
    control: ControlSideband | None = None

    @property
    def sample_count(self) -> int:
        return int(self.samples.size)


def encode_frame(frame: IqFrame) -> bytes:
    if frame.kind not in (FRAME_KIND_IQ, FRAME_KIND_CONTROL, FRAME_KIND_END):
        raise BadKindError(f"unknown frame kind {frame.kind}")
    if frame.kind == FRAME_KIND_IQ:
        payload = np.ascontiguousarray(frame.samples, dtype=np.complex64).tobytes()
        count = frame.sample_count
    elif frame.kind == FRAME_KIND_CONTROL:
        if frame.control is None:
            raise FrameError("CONTROL frame needs a sideband")
        payload = frame.control.pack()
        count = 0
    else:
        payload = b""
        count = 0
    head = _PREAMBLE.pack(
        MAGIC, frame.version, frame.kind, frame.flags,
        frame.seq, frame.slot, count, frame.timestamp_ns,
    )
    return head + payload


def decode_frame(data: bytes) -> IqFrame:
    if len(data) < PREAMBLE_LEN:
        raise TruncatedFrameError(f"{len(data)} bytes is shorter than the {PREAMBLE_LEN}-byte preamble")
    magic, version, kind, flags, seq, slot, count, ts = _PREAMBLE.unpack_from(data)
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}")
    if version != VERSION:
        raise BadVersionError(f"unsupported version {version}")
    payload = data[PREAMBLE_LEN:]
    if kind == FRAME_KIND_IQ:
        if len(payload) != 8 * count:
            raise LengthMismatchError(
                f"IQ payload is {len(payload)} bytes for sample_count={count}"
            )
        samples = np.frombuffer(payload, dtype=np.complex64).copy()
        return IqFrame(kind=kind, seq=seq, slot=slot, timestamp_ns=ts, flags=flags,
                       samples=samples)
    if kind == FRAME_KIND_CONTROL:
        if count != 0 or len(payload) != CONTROL_LEN:
            raise LengthMismatchError(
                f"CONTROL payload must be {CONTROL_LEN} bytes with sample_count 0"
            )
        return IqFrame(kind=kind, seq=seq, slot=slot, timestamp_ns=ts, flags=flags,
                       control=ControlSideband.unpack(payload))
    if kind == FRAME_KIND_END:
        if count != 0 or payload:
            raise LengthMismatchError("END frames carry no payload")
        return IqFrame(kind=kind, seq=seq, slot=slot, timestamp_ns=ts, flags=flags)
    raise BadKindError(f"unknown frame kind {kind}")

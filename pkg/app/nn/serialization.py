"""
`.elsm` model files.

Layout (little-endian): magic "ELSM", u32 format version, u32 header
length, UTF-8 JSON header (architecture descriptor and layer list), the
f32 parameters and running statistics in declaration order, then a u32
CRC-32 of every preceding byte.
"""

import json
import struct
import zlib
from pathlib import Path
from typing import Union

import numpy as np

from ..errors import ModelChecksumError, ModelFormatError, UnsupportedModelVersionError
from ..logging.audit import audit_log
from .layers import layer_from_config
from .model import Model

PathLike = Union[str, Path]

MODEL_MAGIC = b"ELSM"
MODEL_VERSION = 1
PARAM_DTYPE = np.dtype("<f4")
_U32 = struct.Struct("<I")


def encode_model(model: Model) -> bytes:
    header = json.dumps(
        {"arch": model.arch, "layers": [layer.config() for layer in model.layers]},
        sort_keys=True,
        separators=(",", ":"),
    ).encode("utf-8")
    params = b"".join(
        np.ascontiguousarray(arr, dtype=PARAM_DTYPE).tobytes() for arr in model.state_arrays()
    )
    body = MODEL_MAGIC + _U32.pack(MODEL_VERSION) + _U32.pack(len(header)) + header + params
    return body + _U32.pack(zlib.crc32(body) & 0xFFFFFFFF)


def decode_model(payload: bytes, source: str = "<bytes>") -> Model:
    if len(payload) < 12 or payload[:4] != MODEL_MAGIC:
        raise ModelFormatError(f"{source}: not an .elsm model (bad magic)")
    (version,) = _U32.unpack_from(payload, 4)
    if version != MODEL_VERSION:
        raise UnsupportedModelVersionError(
            f"{source}: unsupported version {version} (expected {MODEL_VERSION})"
        )
    if len(payload) < 16:
        raise ModelChecksumError(f"{source}: checksum mismatch (file truncated)")
    (stored,) = _U32.unpack_from(payload, len(payload) - 4)
    body = payload[:-4]
    if zlib.crc32(body) & 0xFFFFFFFF != stored:
        raise ModelChecksumError(f"{source}: checksum mismatch")

    (header_len,) = _U32.unpack_from(body, 8)
    try:
        header = json.loads(body[12:12 + header_len].decode("utf-8"))
        model = Model([layer_from_config(cfg) for cfg in header["layers"]], arch=header.get("arch"))
    except (ValueError, KeyError, TypeError) as e:
        raise ModelFormatError(f"{source}: malformed header: {e}") from e

    try:
        params = np.frombuffer(body, dtype=PARAM_DTYPE, offset=12 + header_len)
    except ValueError as e:
        raise ModelFormatError(
            f"{source}: header length {header_len} does not fit the parameter payload: {e}"
        ) from e
    arrays = model.state_arrays()
    expected = sum(arr.size for arr in arrays)
    if params.size != expected:
        raise ModelFormatError(
            f"{source}: header declares {expected} parameters, payload holds {params.size}"
        )
    offset = 0
    for arr in arrays:
        arr[...] = params[offset:offset + arr.size].reshape(arr.shape)
        offset += arr.size
    return model


def save_model(model: Model, path: PathLike) -> None:
    target = Path(path)
    payload = encode_model(model)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(payload)
    audit_log("model_saved", artifact=str(target), details={"bytes": len(payload)})


def load_model(path: PathLike) -> Model:
    source = Path(path)
    if not source.is_file():
        raise ModelFormatError(f"model file not found: {source}")
    return decode_model(source.read_bytes(), source=str(source))

"""
bundle.py

Binary model bundles (`*.dmnb`).

Features:
- Little-endian container with magic, format version and a JSON header.
- Parameters stored as raw float64 in header order; optional Adam moments follow.
- Trailer with the byte length and a CRC-32, both verified before anything is parsed.
- Bit-identical parameters after a save/load round trip.

File layout:
    magic "DMNB" | version u16 | header_len u32 | header (UTF-8 JSON)
    | parameters (float64) | [first moments | second moments] (float64)
    | length u64 (bytes before the trailer) | crc32 u32 (over every preceding byte)

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import json
import struct
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
from hestia_logger import get_logger

from dual_comatch.encoder.precomputed import PrecomputedStore
from dual_comatch.encoder.vocabulary import Vocabulary
from dual_comatch.errors.exceptions import IntegrityError, ShapeError, VersionMismatchError
from dual_comatch.harness.optimizer import OptimizerState
from dual_comatch.models.dmn_model import DualCoMatchModel
from dual_comatch.schemas.config_schema import MatchConfig

logger = get_logger("dmn_logger")

MAGIC = b"DMNB"
FORMAT_VERSION = 1

_PREFIX = struct.Struct("<4sHI")
_TRAILER_LENGTH = struct.Struct("<Q")
_TRAILER_CRC = struct.Struct("<I")
_TRAILER_SIZE = _TRAILER_LENGTH.size + _TRAILER_CRC.size


@dataclass
class ModelBundle:
    """
    Everything needed to rebuild a trained model.

    Attributes:
        match_config (MatchConfig): Variant switches and dimensions.
        encoder_kind (str): `lookup` or `precomputed`.
        vocabulary (Optional[List[str]]): Vocabulary tokens in id order (lookup encoder only).
        parameters (Dict[str, np.ndarray]): Parameter values by name, in model order.
        optimizer_state (Optional[OptimizerState]): Adam state, if saved.
        version (int): Format version.
    """

    match_config: MatchConfig
    encoder_kind: str
    vocabulary: Optional[List[str]]
    parameters: Dict[str, np.ndarray]
    optimizer_state: Optional[OptimizerState] = None
    version: int = FORMAT_VERSION


def bundle_from_model(
    model: DualCoMatchModel, optimizer_state: Optional[OptimizerState] = None
) -> ModelBundle:
    vocab = model.vocab
    return ModelBundle(
        match_config=model.cfg,
        encoder_kind=model.encoder.kind,
        vocabulary=vocab.tokens if vocab is not None else None,
        parameters=model.snapshot(),
        optimizer_state=optimizer_state,
    )


def model_from_bundle(
    bundle: ModelBundle, store: Optional[PrecomputedStore] = None
) -> DualCoMatchModel:
    """
    Rebuild a model and copy the bundled parameters into it.

    Raises:
        ValueError: If a precomputed-encoder bundle is loaded without an embedding store.
        ShapeError: If the bundled parameters do not fit the configuration.
    """
    cfg = bundle.match_config
    if bundle.encoder_kind == "lookup":
        if bundle.vocabulary is None:
            raise ShapeError("Lookup bundle has no vocabulary")
        model = DualCoMatchModel.build_lookup(cfg, Vocabulary.from_tokens(bundle.vocabulary), seed=0)
    elif bundle.encoder_kind == "precomputed":
        if store is None:
            raise ValueError("A precomputed-encoder bundle needs its embedding store")
        model = DualCoMatchModel.build_precomputed(cfg, store, seed=0)
    else:
        raise ShapeError(f"Unknown encoder kind '{bundle.encoder_kind}'")
    if set(bundle.parameters) != set(model.named_parameters()):
        raise ShapeError(
            f"Bundle parameters {sorted(bundle.parameters)} do not match the configured model"
        )
    model.restore(bundle.parameters)
    return model


def _encode(bundle: ModelBundle) -> bytes:
    names = list(bundle.parameters)
    state = bundle.optimizer_state
    header = {
        "match_config": bundle.match_config.model_dump(),
        "hidden_size": bundle.match_config.hidden_size,
        "encoder": bundle.encoder_kind,
        "vocabulary": bundle.vocabulary,
        "parameters": [{"name": n, "shape": list(bundle.parameters[n].shape)} for n in names],
        "optimizer": {"step": state.step} if state is not None else None,
    }
    header_bytes = json.dumps(header, sort_keys=True).encode("utf-8")

    arrays = [bundle.parameters[n] for n in names]
    if state is not None:
        arrays += [state.first_moment[n] for n in names]
        arrays += [state.second_moment[n] for n in names]
    payload = b"".join(np.ascontiguousarray(a, dtype="<f8").tobytes() for a in arrays)

    body = _PREFIX.pack(MAGIC, bundle.version, len(header_bytes)) + header_bytes + payload
    body += _TRAILER_LENGTH.pack(len(body))
    return body + _TRAILER_CRC.pack(zlib.crc32(body))


def save_model(bundle: ModelBundle, path: Union[str, Path]) -> None:
    """
    Write a bundle to `path`.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    data = _encode(bundle)
    target.write_bytes(data)
    logger.info(f"Saved model bundle ({len(bundle.parameters)} parameters, {len(data)} bytes) to {target}")


def _verify(data: bytes, path: Path) -> None:
    if len(data) < _PREFIX.size + _TRAILER_SIZE:
        raise IntegrityError(f"Bundle {path} is truncated ({len(data)} bytes)")
    (length,) = _TRAILER_LENGTH.unpack_from(data, len(data) - _TRAILER_SIZE)
    (crc,) = _TRAILER_CRC.unpack_from(data, len(data) - _TRAILER_CRC.size)
    if length != len(data) - _TRAILER_SIZE:
        raise IntegrityError(
            f"Bundle {path} length mismatch: trailer says {length}, found {len(data) - _TRAILER_SIZE}"
        )
    if zlib.crc32(data[: -_TRAILER_CRC.size]) != crc:
        raise IntegrityError(f"Bundle {path} failed its checksum")


def load_model(path: Union[str, Path]) -> ModelBundle:
    """
    Read and verify a bundle.

    Raises:
        FileNotFoundError: If the file does not exist.
        IntegrityError: For truncated or corrupted files.
        VersionMismatchError: For an unsupported format version.
    """
    source = Path(path)
    if not source.is_file():
        raise FileNotFoundError(f"Model bundle {source} does not exist")
    data = source.read_bytes()
    try:
        _verify(data, source)
    except IntegrityError:
        logger.error(f"Integrity check failed for {source}")
        raise

    magic, version, header_len = _PREFIX.unpack_from(data, 0)
    if magic != MAGIC:
        raise IntegrityError(f"{source} is not a model bundle")
    if version != FORMAT_VERSION:
        raise VersionMismatchError(found=version, expected=FORMAT_VERSION)

    payload_end = len(data) - _TRAILER_SIZE
    header_end = _PREFIX.size + header_len
    if header_end > payload_end:
        raise IntegrityError(f"Bundle {source} header overruns the file")
    header = json.loads(data[_PREFIX.size : header_end].decode("utf-8"))

    specs = [(p["name"], tuple(p["shape"])) for p in header["parameters"]]
    optimizer = header.get("optimizer")
    blocks = 3 if optimizer is not None else 1
    sizes = [int(np.prod(shape)) for _, shape in specs]
    expected = blocks * 8 * sum(sizes)
    if payload_end - header_end != expected:
        raise IntegrityError(
            f"Bundle {source} payload has {payload_end - header_end} bytes, header describes {expected}"
        )

    values = np.frombuffer(data, dtype="<f8", count=blocks * sum(sizes), offset=header_end)
    offset = 0
    arrays: List[Dict[str, np.ndarray]] = []
    for _ in range(blocks):
        block: Dict[str, np.ndarray] = {}
        for (name, shape), size in zip(specs, sizes):
            block[name] = values[offset : offset + size].astype(np.float64).reshape(shape)
            offset += size
        arrays.append(block)

    state = None
    if optimizer is not None:
        state = OptimizerState(
            first_moment=arrays[1], second_moment=arrays[2], step=int(optimizer["step"])
        )
    bundle = ModelBundle(
        match_config=MatchConfig.model_validate(header["match_config"]),
        encoder_kind=header["encoder"],
        vocabulary=header["vocabulary"],
        parameters=arrays[0],
        optimizer_state=state,
        version=version,
    )
    logger.info(f"Loaded model bundle with {len(specs)} parameters from {source}")
    return bundle

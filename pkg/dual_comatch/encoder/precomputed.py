"""
precomputed.py

Frozen encoder backed by externally computed contextual embeddings.

Features:
- Reads and writes the `*.dmne` container (single file or a directory of files).
- Records are keyed by (example_id, role, candidate) and hold one float64 matrix each.
- `load_precomputed` returns the stored matrix unchanged and never traces gradients.
- `PrecomputedEncoder` plugs the store into the model in place of the lookup encoder.

File layout (little-endian):
    magic "DMNE" | version u16 | record_count u32 | records...
    record: id_len u16 | example_id utf-8 | role u8 | candidate u16 | rows u32 | cols u32
            | rows*cols float64, row-major

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import struct
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, Iterator, List, Mapping, Optional, Union

import numpy as np
from hestia_logger import get_logger

from dual_comatch.encoder.base import EncodedTriplet
from dual_comatch.errors.exceptions import (
    EmbeddingLookupError,
    IntegrityError,
    ShapeError,
    VersionMismatchError,
)
from dual_comatch.numerics.tensor import Tensor, constant
from dual_comatch.schemas.example_schema import MultiChoiceExample

logger = get_logger("dmn_logger")

MAGIC = b"DMNE"
FORMAT_VERSION = 1
FILE_SUFFIX = ".dmne"

_FILE_HEADER = struct.Struct("<4sHI")
_ID_LENGTH = struct.Struct("<H")
_RECORD_HEADER = struct.Struct("<BHII")


class Role(str, Enum):
    PASSAGE = "passage"
    QUESTION = "question"
    ANSWER = "answer"

    @property
    def code(self) -> int:
        return _ROLE_CODES[self]


_ROLE_CODES = {Role.PASSAGE: 0, Role.QUESTION: 1, Role.ANSWER: 2}
_ROLES_BY_CODE = {code: role for role, code in _ROLE_CODES.items()}


@dataclass(frozen=True)
class EmbeddingKey:
    example_id: str
    role: Role
    candidate: int = 0


def _encode_record(key: EmbeddingKey, matrix: np.ndarray) -> bytes:
    array = np.asarray(matrix, dtype="<f8")
    if array.ndim != 2 or array.shape[0] < 1:
        raise ShapeError(f"Embedding for {key} must be a non-empty matrix, got {array.shape}")
    encoded_id = key.example_id.encode("utf-8")
    return b"".join(
        (
            _ID_LENGTH.pack(len(encoded_id)),
            encoded_id,
            _RECORD_HEADER.pack(Role(key.role).code, key.candidate, *array.shape),
            np.ascontiguousarray(array).tobytes(),
        )
    )


def write_precomputed(
    path: Union[str, Path], records: Mapping[EmbeddingKey, np.ndarray]
) -> None:
    """
    Write embedding records to a single container file.

    Args:
        path (str | Path): Output file.
        records (Mapping[EmbeddingKey, np.ndarray]): Matrices by key, written in mapping order.
    """
    body = b"".join(_encode_record(key, matrix) for key, matrix in records.items())
    Path(path).write_bytes(_FILE_HEADER.pack(MAGIC, FORMAT_VERSION, len(records)) + body)
    logger.info(f"Wrote {len(records)} precomputed embeddings to {path}")


def _read_exact(buffer: memoryview, offset: int, size: int, path: Path) -> memoryview:
    if offset + size > len(buffer):
        raise IntegrityError(f"Embedding file {path} is truncated at byte {offset}")
    return buffer[offset : offset + size]


def _parse_container(path: Path) -> Iterator[tuple]:
    buffer = memoryview(path.read_bytes())
    magic, version, count = _FILE_HEADER.unpack(_read_exact(buffer, 0, _FILE_HEADER.size, path))
    if magic != MAGIC:
        raise IntegrityError(f"{path} is not an embedding container")
    if version != FORMAT_VERSION:
        raise VersionMismatchError(found=version, expected=FORMAT_VERSION)

    offset = _FILE_HEADER.size
    for _ in range(count):
        (id_len,) = _ID_LENGTH.unpack(_read_exact(buffer, offset, _ID_LENGTH.size, path))
        offset += _ID_LENGTH.size
        example_id = bytes(_read_exact(buffer, offset, id_len, path)).decode("utf-8")
        offset += id_len
        role_code, candidate, rows, cols = _RECORD_HEADER.unpack(
            _read_exact(buffer, offset, _RECORD_HEADER.size, path)
        )
        offset += _RECORD_HEADER.size
        if role_code not in _ROLES_BY_CODE:
            raise IntegrityError(f"{path}: unknown role code {role_code}")
        size = rows * cols * 8
        values = np.frombuffer(_read_exact(buffer, offset, size, path), dtype="<f8")
        offset += size
        key = EmbeddingKey(example_id, _ROLES_BY_CODE[role_code], candidate)
        yield key, values.reshape(rows, cols).astype(np.float64)

    if offset != len(buffer):
        raise IntegrityError(f"{path} has {len(buffer) - offset} trailing bytes")


class PrecomputedStore:
    """
    In-memory view of one or more embedding containers.
    """

    def __init__(self, records: Dict[EmbeddingKey, np.ndarray]):
        self._records = records

    @classmethod
    def open(cls, path: Union[str, Path]) -> "PrecomputedStore":
        """
        Load a container file, or every `*.dmne` file of a directory in filename order.

        Raises:
            FileNotFoundError: If the path does not exist.
            IntegrityError: For truncated files or duplicate keys.
        """
        root = Path(path)
        if not root.exists():
            raise FileNotFoundError(f"Embedding path {root} does not exist")
        files = sorted(root.glob(f"*{FILE_SUFFIX}")) if root.is_dir() else [root]

        records: Dict[EmbeddingKey, np.ndarray] = {}
        for file in files:
            for key, matrix in _parse_container(file):
                if key in records:
                    raise IntegrityError(f"Duplicate embedding record {key} in {file}")
                records[key] = matrix
        logger.info(f"Loaded {len(records)} precomputed embeddings from {root}")
        return cls(records)

    def example_ids(self) -> List[str]:
        """Distinct example ids in storage order."""
        return list(dict.fromkeys(key.example_id for key in self._records))

    def __len__(self) -> int:
        return len(self._records)

    def get(
        self,
        example_id: str,
        role: Union[Role, str],
        candidate: int = 0,
        hidden_size: Optional[int] = None,
    ) -> Tensor:
        """
        Return the stored matrix as a constant tensor.

        Raises:
            EmbeddingLookupError: If no record matches.
            ShapeError: If the stored width differs from `hidden_size`.
        """
        role = Role(role)
        key = EmbeddingKey(example_id, role, candidate if role is Role.ANSWER else 0)
        matrix = self._records.get(key)
        if matrix is None:
            raise EmbeddingLookupError(example_id, role.value, key.candidate)
        if hidden_size is not None and matrix.shape[1] != hidden_size:
            raise ShapeError(
                f"Embedding for '{example_id}' ({role.value}) has hidden size "
                f"{matrix.shape[1]}, configured {hidden_size}"
            )
        return constant(matrix)


def load_precomputed(
    path: Union[str, Path],
    example_id: str,
    role: Union[Role, str],
    candidate: int = 0,
    hidden_size: Optional[int] = None,
) -> Tensor:
    """
    Load one stored matrix.

    Args:
        path (str | Path): Container file or directory.
        example_id (str): Example identifier.
        role (Role | str): `passage`, `question` or `answer`.
        candidate (int): Candidate index for the answer role.
        hidden_size (Optional[int]): Expected width; mismatches are rejected.

    Returns:
        Tensor: The stored matrix, not gradient-traceable.
    """
    return PrecomputedStore.open(path).get(example_id, role, candidate, hidden_size)


class PrecomputedEncoder:
    """
    Frozen encoder: only the matching layers train on top of it.
    """

    kind = "precomputed"

    def __init__(self, store: PrecomputedStore, hidden_size: int):
        self.store = store
        self._hidden_size = hidden_size

    @property
    def hidden_size(self) -> int:
        return self._hidden_size

    def parameters(self) -> Dict[str, Tensor]:
        return {}

    def encode_example(self, example: MultiChoiceExample) -> List[EncodedTriplet]:
        passage = self.store.get(example.id, Role.PASSAGE, hidden_size=self._hidden_size)
        question = self.store.get(example.id, Role.QUESTION, hidden_size=self._hidden_size)
        return [
            EncodedTriplet(
                passage,
                question,
                self.store.get(example.id, Role.ANSWER, index, self._hidden_size),
            )
            for index in range(example.num_candidates)
        ]

"""
test_precomputed.py

Unit tests for the precomputed-embedding container and encoder.

Tests:
- Stored matrices come back unchanged and untracked.
- Directory loading, duplicate keys and missing records.
- Hidden-size mismatches.
- Truncated, trailing-byte and wrong-version containers.
- The encoder exposes no trainable parameters.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import struct

import numpy as np
import pytest

from dual_comatch.encoder.precomputed import (
    EmbeddingKey,
    PrecomputedEncoder,
    PrecomputedStore,
    Role,
    load_precomputed,
    write_precomputed,
)
from dual_comatch.errors.exceptions import (
    EmbeddingLookupError,
    IntegrityError,
    ShapeError,
    VersionMismatchError,
)
from dual_comatch.numerics.tensor import Tape
from dual_comatch.schemas.example_schema import MultiChoiceExample


@pytest.fixture
def records(rng):
    return {
        EmbeddingKey("ex-1", Role.PASSAGE): rng.normal(size=(5, 3)),
        EmbeddingKey("ex-1", Role.QUESTION): rng.normal(size=(2, 3)),
        EmbeddingKey("ex-1", Role.ANSWER, 0): rng.normal(size=(1, 3)),
        EmbeddingKey("ex-1", Role.ANSWER, 1): rng.normal(size=(4, 3)),
    }


@pytest.fixture
def container(tmp_path, records):
    path = tmp_path / "emb.dmne"
    write_precomputed(path, records)
    return path


def test_load_returns_stored_matrix_unchanged(container, records):
    """
    Test the load contract.

    Expected Outcome:
    - Bit-identical float64 matrix that is never tracked by a tape.
    """
    with Tape() as tape:
        loaded = load_precomputed(container, "ex-1", "answer", 1, hidden_size=3)

    np.testing.assert_array_equal(loaded.data, records[EmbeddingKey("ex-1", Role.ANSWER, 1)])
    assert loaded.data.dtype == np.float64
    assert not loaded.requires_grad
    assert len(tape) == 0


def test_missing_record_names_the_key(container):
    """
    Test lookups of absent records.

    Expected Outcome:
    - EmbeddingLookupError naming the example id.
    """
    with pytest.raises(EmbeddingLookupError, match="ex-2"):
        load_precomputed(container, "ex-2", Role.PASSAGE)


def test_hidden_size_mismatch(container):
    """
    Test the configured width check.

    Expected Outcome:
    - ShapeError when the stored width differs from the configured one.
    """
    with pytest.raises(ShapeError):
        load_precomputed(container, "ex-1", Role.PASSAGE, hidden_size=4)


def test_directory_is_read_in_filename_order(tmp_path, records):
    """
    Test loading a directory of containers.

    Expected Outcome:
    - All records of all files are visible; duplicates across files are rejected.
    """
    items = list(records.items())
    write_precomputed(tmp_path / "a.dmne", dict(items[:2]))
    write_precomputed(tmp_path / "b.dmne", dict(items[2:]))

    store = PrecomputedStore.open(tmp_path)
    assert len(store) == 4
    assert store.example_ids() == ["ex-1"]

    write_precomputed(tmp_path / "c.dmne", dict(items[:1]))
    with pytest.raises(IntegrityError, match="Duplicate"):
        PrecomputedStore.open(tmp_path)


def test_truncated_container_is_rejected(container):
    """
    Test truncation detection.

    Expected Outcome:
    - IntegrityError when the last bytes are cut off.
    """
    container.write_bytes(container.read_bytes()[:-5])
    with pytest.raises(IntegrityError, match="truncated"):
        PrecomputedStore.open(container)


def test_trailing_bytes_are_rejected(container):
    """
    Test detection of garbage after the last record.

    Expected Outcome:
    - IntegrityError mentioning trailing bytes.
    """
    container.write_bytes(container.read_bytes() + b"\x00\x00")
    with pytest.raises(IntegrityError, match="trailing"):
        PrecomputedStore.open(container)


def test_version_mismatch(container):
    """
    Test the format version check.

    Expected Outcome:
    - VersionMismatchError carrying the found version.
    """
    raw = bytearray(container.read_bytes())
    raw[4:6] = struct.pack("<H", 9)
    container.write_bytes(bytes(raw))

    with pytest.raises(VersionMismatchError) as info:
        PrecomputedStore.open(container)
    assert info.value.found == 9


def test_missing_path(tmp_path):
    """
    Test a non-existent path.

    Expected Outcome:
    - FileNotFoundError.
    """
    with pytest.raises(FileNotFoundError):
        PrecomputedStore.open(tmp_path / "nope.dmne")


def test_encoder_builds_triplets_without_parameters(container):
    """
    Test the frozen encoder.

    Expected Outcome:
    - One triplet per candidate, no trainable parameters.
    """
    encoder = PrecomputedEncoder(PrecomputedStore.open(container), hidden_size=3)
    example = MultiChoiceExample(
        id="ex-1", passage="unused", question="unused", candidates=["a", "b"], gold=0
    )

    triplets = encoder.encode_example(example)

    assert encoder.parameters() == {}
    assert [t.answer.shape for t in triplets] == [(1, 3), (4, 3)]
    assert triplets[0].passage.shape == (5, 3)

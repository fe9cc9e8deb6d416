"""
jsonl.py

Generic line-delimited JSON format for multi-choice examples.

Each line holds `id`, `passage`, `question` (may be empty for story completion),
`candidates` and `gold`. Lines that fail to parse or validate are skipped with their
line number logged.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import json
from pathlib import Path
from typing import Iterable, List, Union

from hestia_logger import get_logger
from pydantic import ValidationError

from dual_comatch.schemas.example_schema import MultiChoiceExample

logger = get_logger("dmn_logger")

REQUIRED_FIELDS = ("id", "passage", "candidates", "gold")


def read_jsonl(path: Union[str, Path]) -> List[MultiChoiceExample]:
    """
    Read examples from a JSON-lines file.

    Args:
        path (str | Path): Input file.

    Returns:
        List[MultiChoiceExample]: Valid examples in file order.

    Raises:
        FileNotFoundError: If the file does not exist.
    """
    source = Path(path)
    if not source.is_file():
        raise FileNotFoundError(f"JSONL file {source} does not exist")

    examples: List[MultiChoiceExample] = []
    skipped = 0
    with source.open(encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                if not isinstance(record, dict):
                    raise ValueError("line is not a JSON object")
                missing = [name for name in REQUIRED_FIELDS if name not in record]
                if missing:
                    raise ValueError(f"missing fields {missing}")
                examples.append(MultiChoiceExample.model_validate(record))
            except (json.JSONDecodeError, ValidationError, ValueError) as exc:
                skipped += 1
                logger.warning(f"{source}:{line_number}: skipped line ({exc})")

    logger.info(f"Read {len(examples)} examples from {source} ({skipped} lines skipped)")
    return examples


def write_jsonl(path: Union[str, Path], examples: Iterable[MultiChoiceExample]) -> int:
    """
    Write examples one JSON object per line; returns the number written.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with target.open("w", encoding="utf-8") as handle:
        for example in examples:
            handle.write(example.model_dump_json() + "\n")
            count += 1
    logger.info(f"Wrote {count} examples to {target}")
    return count

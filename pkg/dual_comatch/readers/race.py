"""
race.py

Reader for RACE-format directories.

Features:
- One JSON object per file with "article", "questions", "options" and "answers".
- One example per question, ids `<relative path>#<question index>`.
- Stable ordering: files by relative path, then question index.
- Malformed files are skipped and counted; invalid examples are rejected with a logged reason.
- Per-subset counts (the first directory level, e.g. `middle` / `high`).

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

from hestia_logger import get_logger
from pydantic import ValidationError

from dual_comatch.errors.exceptions import DataFormatError
from dual_comatch.schemas.example_schema import MultiChoiceExample

logger = get_logger("dmn_logger")

ANSWER_LETTERS = "ABCD"
RACE_SUFFIXES = (".txt", ".json")
ROOT_SUBSET = "all"


@dataclass
class RaceReadStats:
    files: int = 0
    skipped_files: int = 0
    rejected_examples: int = 0
    subsets: Dict[str, int] = field(default_factory=dict)


def answer_index(letter: str) -> int:
    """
    Map an answer letter A-D to 0-3.

    Raises:
        DataFormatError: For anything else.
    """
    if not isinstance(letter, str) or len(letter.strip()) != 1 or letter.strip() not in ANSWER_LETTERS:
        raise DataFormatError(f"Answer letter {letter!r} is not one of A-D")
    return ANSWER_LETTERS.index(letter.strip())


def subset_of(example_id: str) -> str:
    """Subset name carried by a RACE example id."""
    path = example_id.split("#", 1)[0]
    parts = Path(path).parts
    return parts[0] if len(parts) > 1 else ROOT_SUBSET


def count_by_subset(examples: Sequence[MultiChoiceExample]) -> Dict[str, int]:
    return dict(sorted(Counter(subset_of(example.id) for example in examples).items()))


def _load_record(path: Path) -> Tuple[str, List[str], List[List[str]], List[str]]:
    record = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(record, dict):
        raise DataFormatError("top-level value is not an object")
    missing = [key for key in ("article", "questions", "options", "answers") if key not in record]
    if missing:
        raise DataFormatError(f"missing fields {missing}")
    questions, options, answers = record["questions"], record["options"], record["answers"]
    if not (len(questions) == len(options) == len(answers)):
        raise DataFormatError(
            f"{len(questions)} questions, {len(options)} option lists, {len(answers)} answers"
        )
    return record["article"], questions, options, answers


def _examples_from_file(
    path: Path, relative: str, stats: RaceReadStats
) -> List[MultiChoiceExample]:
    article, questions, options, answers = _load_record(path)
    examples = []
    for index, (question, choices, letter) in enumerate(zip(questions, options, answers)):
        example_id = f"{relative}#{index}"
        try:
            if not isinstance(choices, list):
                raise DataFormatError(f"option entry is {type(choices).__name__}, not a list")
            if len(choices) != len(ANSWER_LETTERS):
                raise DataFormatError(f"expected 4 options, got {len(choices)}")
            examples.append(
                MultiChoiceExample(
                    id=example_id,
                    passage=article,
                    question=question,
                    candidates=list(choices),
                    gold=answer_index(letter),
                )
            )
        except (DataFormatError, ValidationError, TypeError) as exc:
            stats.rejected_examples += 1
            logger.warning(f"Rejected RACE example {example_id}: {exc}")
    return examples


def scan_race_dir(path: Union[str, Path]) -> Tuple[List[MultiChoiceExample], RaceReadStats]:
    """
    Read a RACE-format directory tree and report what was skipped.

    Raises:
        FileNotFoundError: If the directory does not exist.
    """
    root = Path(path)
    if not root.is_dir():
        raise FileNotFoundError(f"RACE directory {root} does not exist")

    files = sorted(
        (p for p in root.rglob("*") if p.is_file() and p.suffix in RACE_SUFFIXES),
        key=lambda p: p.relative_to(root).as_posix(),
    )
    stats = RaceReadStats()
    examples: List[MultiChoiceExample] = []
    for file in files:
        stats.files += 1
        relative = file.relative_to(root).as_posix()
        try:
            examples.extend(_examples_from_file(file, relative, stats))
        except (json.JSONDecodeError, UnicodeDecodeError, DataFormatError, TypeError) as exc:
            stats.skipped_files += 1
            logger.warning(f"Skipped malformed RACE file {relative}: {exc}")

    stats.subsets = count_by_subset(examples)
    logger.info(
        f"Read {len(examples)} RACE examples from {stats.files} files in {root} "
        f"(subsets {stats.subsets}, skipped files {stats.skipped_files}, "
        f"rejected examples {stats.rejected_examples})"
    )
    return examples, stats


def read_race_dir(path: Union[str, Path]) -> List[MultiChoiceExample]:
    """
    Read every example of a RACE-format directory tree.

    Args:
        path (str | Path): Dataset root, typically holding `middle/` and `high/`.

    Returns:
        List[MultiChoiceExample]: Examples ordered by file path, then question index.
    """
    examples, _ = scan_race_dir(path)
    return examples

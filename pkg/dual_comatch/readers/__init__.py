"""
readers package

Dataset ingestion into MultiChoiceExample lists.

Modules:
    - race: RACE-format directory reader with per-subset counts.
    - jsonl: Generic JSON-lines reader and writer.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from .jsonl import read_jsonl, write_jsonl
from .race import RaceReadStats, answer_index, count_by_subset, read_race_dir, scan_race_dir

__all__ = [
    "read_jsonl",
    "write_jsonl",
    "RaceReadStats",
    "answer_index",
    "count_by_subset",
    "read_race_dir",
    "scan_race_dir",
]

"""
table_utils.py

This module renders plain-text tables for reports printed by the CLI,
such as the ablation summary.

Example:
    >>> print(format_table(["variant", "mean"], [["full", "0.912"]]))
    variant  mean
    -------  -----
    full     0.912

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from typing import List, Sequence


def format_table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    """
    Left-align every column to its widest cell.

    Args:
        headers (Sequence[str]): Column titles.
        rows (Sequence[Sequence[object]]): Cells, converted with `str()`.

    Returns:
        str: The table without a trailing newline.
    """
    cells: List[List[str]] = [[str(cell) for cell in row] for row in rows]
    for row in cells:
        if len(row) != len(headers):
            raise ValueError(f"Row has {len(row)} cells for {len(headers)} columns")
    widths = [
        max([len(header)] + [len(row[i]) for row in cells]) for i, header in enumerate(headers)
    ]

    def render(values: Sequence[str]) -> str:
        return "  ".join(value.ljust(width) for value, width in zip(values, widths)).rstrip()

    lines = [render(headers), render(["-" * width for width in widths])]
    lines.extend(render(row) for row in cells)
    return "\n".join(lines)

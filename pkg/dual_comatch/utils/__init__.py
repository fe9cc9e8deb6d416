"""
utils package

Helpers shared across the toolkit, such as seeded generator derivation and
plain-text table rendering.

Modules:
    - seed_utils: Reproducible per-stream random generators.
    - table_utils: Plain-text tables for CLI reports.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from .seed_utils import derive_rng, stream_key
from .table_utils import format_table

__all__ = ["derive_rng", "stream_key", "format_table"]

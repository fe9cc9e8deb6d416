"""
__main__.py

Allows `python -m dual_comatch` and backs the `dual-comatch` console script.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import sys


def main() -> None:
    from dual_comatch.main import main as run

    sys.exit(run())


if __name__ == "__main__":
    main()

"""Allow `python -m lunes` as an alias for the `lunes` console script."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())

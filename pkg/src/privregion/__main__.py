"""Run the command line interface via `python -m privregion`."""

import sys

from privregion.cli import main

if __name__ == "__main__":
    sys.exit(main())

"""Command-line launcher: python qcoh.py check-beta --d 3 --n 2"""

import sys

from src.qudit_cohomology.presentation.cli.main import main


if __name__ == "__main__":
    sys.exit(main())

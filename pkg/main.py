"""Entry point for running loopagree

"""

import sys

from loopagree.cli import main


if __name__ == "__main__":
    sys.exit(main())

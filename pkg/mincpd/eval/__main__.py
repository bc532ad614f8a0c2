"""``python -m mincpd.eval CONFIG --seed S --out FILE`` is ``mincpd experiment`` under another name."""
import sys

from ..__main__ import cli_main

if __name__ == "__main__":
    sys.exit(cli_main(["experiment", *sys.argv[1:]]))

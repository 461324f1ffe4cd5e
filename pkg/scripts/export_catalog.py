#!/usr/bin/env python3
"""Export the small-group catalog as Cayley-table files.

Writes one .grp file per isomorphism class (exhaustive through order 8,
nonabelian catalog through 15) plus an index listing provenance tags.
Equivalent to `braidquot enumerate --bound 15 --out DIR`.
"""

import sys

from braidquot import cli


def main() -> int:
    out = sys.argv[1] if len(sys.argv) > 1 else "catalog"
    return cli.main(["enumerate", "--bound", "15", "--out", out])


if __name__ == "__main__":
    raise SystemExit(main())

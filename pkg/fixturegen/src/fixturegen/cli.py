"""Command line for fixture generation.

    fixturegen gen <molecule> <bond_length_angstrom> [--out DIR]
    fixturegen all [--out DIR]
"""

from __future__ import annotations

import argparse
import sys

from .gen import gen_all, gen_fixture
from .molecules import BUILDERS
from .scf import ScfError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="fixturegen", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate one fixture")
    p_gen.add_argument("molecule", choices=sorted(BUILDERS))
    p_gen.add_argument("bond_length", type=float)
    p_gen.add_argument("--out", default=".")

    p_all = sub.add_parser("all", help="regenerate the bundled fixture set")
    p_all.add_argument("--out", default=".")

    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            path = gen_fixture(args.molecule, args.bond_length, args.out)
            print(path)
        else:
            for path in gen_all(args.out):
                print(path)
    except ScfError as exc:
        print(f"error: SCF failed: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Compare commutator edges with definitional edges over many shapes.

Prints one row per shape: vertices, commutator edges, and how many edges the
relaxed and literal tbar_{n-1} rules miss or add.
"""

import argparse
import time

from krdeg.crystal import RectSeq
from krdeg.deg import commutator_edge_set, definitional_edge_set

DEFAULT = [
    "2x2,1x1", "2x1,1x2", "1x3,1x3", "1x1+1x1,1x1+1x1,2x1,2x1",
    "2x2,2x2", "1x2,1x2,1x2", "2x2,1x2", "3x1,2x2", "1x3,1x1,1x1,1x1", "2x3,1x1",
    "1x2,1x2,1x1,1x1", "3x2,1x1", "2x2,1x1,1x1", "1x4,1x4", "2x2,3x1",
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("shapes", nargs="*", default=DEFAULT)
    args = ap.parse_args(argv)
    print(f"{'shapes':28} {'V':>6} {'C-edges':>8} {'relaxed':>9} {'literal':>9} {'secs':>6}")
    for tok in args.shapes:
        R = RectSeq.parse(tok)
        t0 = time.perf_counter()
        ce = commutator_edge_set(R)
        relaxed = definitional_edge_set(R)
        literal = definitional_edge_set(R, literal=True)

        def diff(de):
            return f"-{len(ce - de)}/+{len(de - ce)}"

        secs = time.perf_counter() - t0
        print(f"{tok:28} {R.predicted_size():>6} {len(ce):>8} {diff(relaxed):>9} {diff(literal):>9} {secs:6.1f}")


if __name__ == "__main__":
    main()

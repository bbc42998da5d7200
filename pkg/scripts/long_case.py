"""Build the 277200-vertex graph for three 2x2 squares and check its components.

Prints build time, component sizes by charge residue and each component's
character next to the cyclic plethysm l_3^{(i)}[s_{2,2}].
"""

import argparse
import time
from pathlib import Path

from krdeg.crystal import RectSeq
from krdeg.deg import KRDegGraph, build_graph, components_by_charge
from krdeg.symfun import component_character, cyclic_character, plethysm, s


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--shapes", default="2x2,2x2,2x2")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--cache", type=Path, help="load from / save to this .json.gz file")
    args = ap.parse_args(argv)
    R = RectSeq.parse(args.shapes)
    t0 = time.perf_counter()
    if args.cache and args.cache.exists():
        G = KRDegGraph.load(args.cache)
    else:
        G = build_graph(R, force=True, jobs=args.jobs)
        if args.cache:
            G.save(args.cache)
    print(f"{R.token()}: {len(G)} vertices, {len(G.edges)} edges in {time.perf_counter() - t0:.1f}s")
    by_res = components_by_charge(G)
    d = R.d
    inner = s(*((R.rects[0][1],) * R.rects[0][0]))
    for i, comp in sorted(by_res.items()):
        got = component_character(G, G.component_of(comp[0]))
        want = plethysm(cyclic_character(d, i), inner) if len(set(R.rects)) == 1 else None
        print(f"charge = {i} mod {d}: {len(comp)} vertices")
        print(f"  character {got}")
        if want is not None:
            print(f"  matches l_{d}^({i})[{inner}]: {got == want}")


if __name__ == "__main__":
    main()

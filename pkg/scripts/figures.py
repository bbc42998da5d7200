"""Recompute the worked figures: the two small graphs as DOT, the two
S-sequence paths and the two-step row combing."""

import argparse
from pathlib import Path

from krdeg.crystal import RectSeq, TensorElement
from krdeg.deg import build_graph, comb_to_row, s_sequence_milestones


def show_path(R, m, d):
    print(f"S-sequence path for row_{m}, d = {d} (ends at pr^{R.n - d}):")
    for k, T in enumerate(s_sequence_milestones(R, m, d)):
        print(f"  T^({k}) = {T}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("figures"))
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    for tok in ("2x2,1x1", "1x3,1x3"):
        G = build_graph(RectSeq.parse(tok), definitional=True)
        path = args.out / f"{tok}.dot"
        path.write_text(G.to_dot())
        print(f"{tok}: {len(G)} vertices, {len(G.edges)} edges, components {[len(c) for c in G.components]} -> {path}")
    R = RectSeq.parse("2x2,3x3,3x3")
    show_path(R, 0, 8)
    show_path(R, 2, 16)
    T = TensorElement.from_factors([((1, 2), (3, 6)), ((4, 5), (7, 8))])
    j, steps = comb_to_row(T)
    print(f"row combing of {T}: {len(steps)} iterations, lands on pr^{j}(row)")
    for X in steps:
        print(f"  {X}")


if __name__ == "__main__":
    main()

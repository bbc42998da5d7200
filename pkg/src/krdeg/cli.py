"""Command line driver: ``krdeg {graph|components|charge|character|verify}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .charge import charge, semicharge
from .crystal import RectSeq, TensorElement, promote_word, tensor_e, tensor_f, weight
from .deg import (
    GuardError,
    KRDegGraph,
    VerificationError,
    build_graph,
    commutator_edge_set,
    components_by_charge,
    definitional_edge_set,
    descent_set,
)
from .symfun import (
    MAX_DEGREE,
    NotSymmetricError,
    component_character,
    graph_character,
    plethysm_prediction,
    product,
    s,
)

log = logging.getLogger("krdeg")

DEFAULT_LIMIT = 100_000
SUITES = ("thm-components", "thm-commutator", "thm-characters", "conj-plethysm", "props-charge", "pr-automorphism")


@dataclass
class RunConfig:
    command: str
    shapes: RectSeq | None = None
    fmt: str = "text"
    out: Path | None = None
    cache_dir: Path | None = None
    limit: int = DEFAULT_LIMIT
    force: bool = False
    jobs: int = 1
    component: int | None = None
    labels: bool = False
    suite: str | None = None
    element: Path | None = None

    def __post_init__(self):
        if self.limit < 1:
            raise ValueError("guard limit must be at least 1")


# -- graph access ------------------------------------------------------------

def cache_path(cfg: RunConfig) -> Path | None:
    if cfg.cache_dir is None or cfg.shapes is None:
        return None
    suffix = "-labelled" if cfg.labels else ""
    return cfg.cache_dir / f"{cfg.shapes.token()}{suffix}.json.gz"


def load_graph(cfg: RunConfig) -> KRDegGraph:
    path = cache_path(cfg)
    if path is not None and path.exists():
        log.info("loading cached graph %s", path)
        return KRDegGraph.load(path)
    G = build_graph(cfg.shapes, definitional=cfg.labels, limit=cfg.limit, force=cfg.force, jobs=cfg.jobs)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        G.save(path)
    return G


def emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        cfg.out.write_text(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True)


# -- verification suites -----------------------------------------------------

def _rect_schur(R: RectSeq):
    return [s(*((cols,) * rows)) for rows, cols in R.rects]


def suite_components(G: KRDegGraph) -> dict:
    try:
        by_res = components_by_charge(G)
    except VerificationError as err:
        return {"suite": "thm-components", "status": "fail", "error": str(err), **err.report}
    return {
        "suite": "thm-components",
        "status": "pass",
        "d": G.shapes.d,
        "components": len(G.components),
        "sizes_by_residue": {str(r): len(c) for r, c in by_res.items()},
    }


def suite_commutator(R: RectSeq) -> dict:
    ce = commutator_edge_set(R)
    de = definitional_edge_set(R)
    ok = ce == de
    return {
        "suite": "thm-commutator",
        "status": "pass" if ok else "fail",
        "commutator_edges": len(ce),
        "definitional_edges": len(de),
        "only_commutator": [list(map(list, e)) for e in sorted(ce - de)[:5]],
        "only_definitional": [list(map(list, e)) for e in sorted(de - ce)[:5]],
    }


def suite_characters(G: KRDegGraph) -> dict:
    if G.n > MAX_DEGREE:
        return {"suite": "thm-characters", "status": "skipped", "reason": f"degree {G.n} > {MAX_DEGREE}"}
    total = graph_character(G)
    expected = product(_rect_schur(G.shapes))
    return {
        "suite": "thm-characters",
        "status": "pass" if total == expected else "fail",
        "character": str(total),
        "expected": str(expected),
    }


def suite_plethysm(G: KRDegGraph) -> dict:
    if G.n > MAX_DEGREE:
        return {"suite": "conj-plethysm", "status": "skipped", "reason": f"degree {G.n} > {MAX_DEGREE}"}
    d = G.shapes.d
    rows = []
    ok = True
    for c, comp in enumerate(G.components):
        residues = sorted({G.charges[v] % d for v in comp})
        got = component_character(G, c)
        entry = {"component": c, "residues": residues, "character": str(got)}
        if len(residues) == 1:
            want = plethysm_prediction(G.shapes.rects, d, residues[0])
            entry["predicted"] = str(want)
            entry["match"] = got == want
        else:
            entry["match"] = False
        ok &= entry["match"]
        rows.append(entry)
    return {"suite": "conj-plethysm", "status": "pass" if ok else "counterexample", "components": rows}


def suite_props_charge(G: KRDegGraph) -> dict:
    d = G.shapes.d
    grouped = G.shapes.is_grouped()
    bad: list[dict] = []
    for v in range(len(G)):
        if grouped and (G.charges[v] - G.semicharges[v]) % d:
            bad.append({"law": "charge = semicharge mod d", "vertex": v})
        w = promote_word(G.shapes.rects, G.words[v], G.n)
        u = G.index_of(w)
        if grouped and (G.semicharges[u] - G.semicharges[v] + 1) % d:
            bad.append({"law": "semicharge(pr T) = semicharge(T) - 1 mod d", "vertex": v})
        T = G.vertex(v)
        for op, delta in ((tensor_e, 1), (tensor_f, -1)):
            X = op(T, G.n)
            if X is not None and grouped and (semicharge(X) - G.semicharges[v] - delta) % d:
                bad.append({"law": f"semicharge change {delta:+d} under the affine operator", "vertex": v})
    for u, v in G.edges:
        if grouped and (G.semicharges[u] - G.semicharges[v]) % d:
            bad.append({"law": "semicharge constant mod d on edges", "edge": [u, v]})
    return {
        "suite": "props-charge",
        "status": "pass" if not bad else "fail",
        "grouped": grouped,
        "vertices": len(G),
        "violations": bad[:10],
    }


def suite_promotion(G: KRDegGraph) -> dict:
    n = G.n
    bad = []
    image = [G.index_of(promote_word(G.shapes.rects, w, n)) for w in G.words]
    for v in range(len(G)):
        rotated = frozenset(i % n + 1 for i in G.descents[v])
        if G.descents[image[v]] != rotated:
            bad.append({"vertex": v, "law": "D(pr T) = D(T) + 1"})
    edges = set(G.edges)
    for u, v in edges:
        a, b = image[u], image[v]
        if (min(a, b), max(a, b)) not in edges:
            bad.append({"edge": [u, v], "law": "pr maps edges to edges"})
    return {"suite": "pr-automorphism", "status": "pass" if not bad else "fail", "violations": bad[:10]}


def run_suite(name: str, cfg: RunConfig) -> dict:
    if name == "thm-commutator":
        return suite_commutator(cfg.shapes)
    G = load_graph(cfg)
    return {
        "thm-components": suite_components,
        "thm-characters": suite_characters,
        "conj-plethysm": suite_plethysm,
        "props-charge": suite_props_charge,
        "pr-automorphism": suite_promotion,
    }[name](G)


# -- commands ----------------------------------------------------------------

def _graph_text(G: KRDegGraph) -> str:
    lines = [f"shapes {G.shapes}  n={G.n}  vertices={len(G)}  edges={len(G.edges)}  components={len(G.components)}"]
    for c, comp in enumerate(G.components):
        lines.append(f"component {c}: {len(comp)} vertices")
        for v in comp:
            lines.append(f"  {v}: {G.vertex(v)}  D={sorted(G.descents[v])}  charge={G.charges[v]}")
    for (u, v), labels in sorted(G.edges.items()):
        lines.append(f"edge {u} -- {v}  {','.join(sorted(labels))}")
    return "\n".join(lines)


def cmd_graph(cfg: RunConfig) -> int:
    G = load_graph(cfg)
    if cfg.fmt == "dot":
        emit(cfg, G.to_dot())
    elif cfg.fmt == "json":
        emit(cfg, json.dumps(G.to_json(), sort_keys=True))
    else:
        emit(cfg, _graph_text(G))
    return 0


def cmd_components(cfg: RunConfig) -> int:
    G = load_graph(cfg)
    d = G.shapes.d
    rows = []
    for c, comp in enumerate(G.components):
        residues = sorted({G.charges[v] % d for v in comp})
        rows.append({"component": c, "size": len(comp), "charge_residues": residues})
    report = {"shapes": str(G.shapes), "d": d, "vertices": len(G), "components": rows}
    if cfg.fmt == "json":
        emit(cfg, _dumps(report))
    else:
        lines = [f"{G.shapes}: {len(G)} vertices, {len(rows)} components, d = {d}"]
        lines += [f"component {r['component']}: size {r['size']}, charge mod {d} in {r['charge_residues']}" for r in rows]
        emit(cfg, "\n".join(lines))
    return 0


def cmd_character(cfg: RunConfig) -> int:
    G = load_graph(cfg)
    if cfg.component is None:
        chars = {"all": graph_character(G)}
    else:
        if not 0 <= cfg.component < len(G.components):
            raise SystemExit(f"component index {cfg.component} out of range (0..{len(G.components) - 1})")
        chars = {str(cfg.component): component_character(G, cfg.component)}
    if cfg.fmt == "json":
        emit(cfg, _dumps({k: v.to_json() for k, v in chars.items()}))
    else:
        emit(cfg, "\n".join(f"{k}: {v}" for k, v in chars.items()))
    return 0


def cmd_charge(cfg: RunConfig) -> int:
    try:
        T = TensorElement.from_json(json.loads(cfg.element.read_text()))
    except (ValueError, KeyError, TypeError) as err:
        print(f"invalid element: {err}", file=sys.stderr)
        return 2
    report = {"element": str(T), "charge": charge(T), "semicharge": semicharge(T), "weight": list(weight(T))}
    if sorted(T.word) == list(range(1, T.n + 1)):
        report["descents"] = sorted(descent_set(T))
    if cfg.fmt == "json":
        emit(cfg, _dumps(report))
    else:
        emit(cfg, "\n".join(f"{k}: {v}" for k, v in report.items()))
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    report = run_suite(cfg.suite, cfg)
    report["shapes"] = str(cfg.shapes)
    emit(cfg, _dumps(report))
    return 0 if report["status"] in ("pass", "skipped") else 1


COMMANDS = {
    "graph": cmd_graph,
    "components": cmd_components,
    "character": cmd_character,
    "charge": cmd_charge,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="krdeg", description="KR dual equivalence graphs on 0-weight spaces.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, shapes_required=True):
        p.add_argument("--shapes", required=shapes_required,
                       help="comma separated SxR tokens (S columns, R rows); '+' stacks, e.g. 1x1+1x1 = 1x2")
        p.add_argument("--format", dest="fmt", choices=("dot", "json", "text"), default="text")
        p.add_argument("--out", type=Path)
        p.add_argument("--force", action="store_true", help="build even above the vertex guard")
        p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="vertex guard (default %(default)s)")
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("graph", help="build a graph and write it as DOT, JSON or text")
    common(p)
    p.add_argument("--labels", action="store_true", help="also attach definitional edge labels")
    common(sub.add_parser("components", help="component sizes and charge residues"))
    p = sub.add_parser("character", help="Schur expansion of the fundamental sum")
    common(p)
    p.add_argument("--component", type=int)
    p = sub.add_parser("charge", help="charge, semicharge, descents and weight of one element")
    common(p, shapes_required=False)
    p.add_argument("element", type=Path, help="element JSON file")
    p = sub.add_parser("verify", help="run a verification suite")
    common(p)
    p.add_argument("suite", choices=SUITES)
    return ap


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cache = os.environ.get("KRDEG_CACHE_DIR")
    return RunConfig(
        command=args.command,
        shapes=RectSeq.parse(args.shapes) if args.shapes else None,
        fmt=args.fmt,
        out=args.out,
        cache_dir=Path(cache) if cache else None,
        limit=args.limit,
        force=args.force,
        jobs=args.jobs,
        component=getattr(args, "component", None),
        labels=getattr(args, "labels", False),
        suite=getattr(args, "suite", None),
        element=getattr(args, "element", None),
    )


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except ValueError as err:
        ap.error(str(err))
    if cfg.shapes is not None and not cfg.shapes.is_grouped():
        log.warning("equal rectangles in %s are not contiguous; semicharge statements assume grouped shapes", cfg.shapes)
    try:
        return COMMANDS[cfg.command](cfg)
    except GuardError as err:
        print(f"refusing: {err}", file=sys.stderr)
        return 3
    except NotSymmetricError as err:
        print(f"character error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

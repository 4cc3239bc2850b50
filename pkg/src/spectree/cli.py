"""Command-line entry point: ``spectree <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from fractions import Fraction
from typing import Sequence

from . import __version__
from .coalescence import (
    CertificationFailure,
    NotCospectrallyRooted,
    coalesce,
    cospectrally_rooted,
    find_cospectrally_rooted_pairs,
)
from .generate import enumerate_free_trees, enumerate_rooted_trees
from .graph import GraphError, RootedTree, canonical_code, decode_graph6, encode_graph6, rooted_code
from .measures import ConjectureId, MeasureConfig, Undecidable, conjecture_verdict, distance
from .spectra import MatrixKind, SizeMismatch, char_poly, cospectral, largest_root
from .survey import (
    CacheVersionMismatch,
    CorruptRecord,
    compute_invariants,
    emit_table,
    load_cache,
    store_cache,
    survey,
)


def _positive_fraction(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _rooted(text: str) -> RootedTree:
    """Parse ``<graph6>:<root>``."""
    code, sep, root = text.rpartition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected <graph6>:<root>, got {text!r}")
    try:
        return RootedTree(decode_graph6(code), int(root))
    except (GraphError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _g6(text: str):
    try:
        return decode_graph6(text)
    except GraphError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rooted_text(rt: RootedTree) -> str:
    return f"{encode_graph6(rt.tree).decode()}:{rt.root}"


def _fmt(x: float) -> str:
    return f"{x:.10f}"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sigma", type=_positive_float, default=1.0,
                        help="sigma of the distance measure (default 1.0); never changes verdicts")
    common.add_argument("--precision", type=_positive_fraction, default=Fraction(1, 10**12),
                        help="enclosure width for spectral radii (default 1e-12)")
    common.add_argument("--threads", type=int, default=0,
                        help="worker threads; 0 means all cores (default)")
    common.add_argument("--format", choices=["markdown", "csv", "json"], default="markdown",
                        help="table output format (default markdown)")

    p = argparse.ArgumentParser(
        prog="spectree",
        description="Tree spectra, distance-measure conjecture surveys and cospectral families.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    g = sub.add_parser("gen", parents=[common], help="stream non-isomorphic trees, one per line")
    g.add_argument("--n", type=int, required=True, help="vertex count")
    g.add_argument("--rooted", action="store_true", help="rooted trees instead of free trees")
    g.add_argument("--tree-format", dest="tree_format", choices=["graph6", "levels"], default=None,
                   help="line format (alias of --format graph6|levels)")

    inv = sub.add_parser("invariants", parents=[common], help="F2, lambda1, q1 and char polys")
    src = inv.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=int, help="all trees on n vertices")
    src.add_argument("--graph6", type=_g6, help="a single tree")

    v = sub.add_parser("verify", parents=[common], help="check one pair against a conjecture")
    v.add_argument("--graph6", type=_g6, action="append", required=True,
                   help="tree in graph6 (give exactly twice)")
    v.add_argument("--conjecture", type=ConjectureId.parse, required=True,
                   help="cj1 (q1 vs lambda1), cj2 (F2 vs q1) or cj3 (F2 vs lambda1)")

    s = sub.add_parser("survey", parents=[common], help="count counterexamples over all tree pairs")
    s.add_argument("--from", dest="n_from", type=int, default=4)
    s.add_argument("--to", dest="n_to", type=int, default=12)
    s.add_argument("--conjectures", default="cj1,cj2,cj3", help="comma-separated subset of cj1,cj2,cj3")
    s.add_argument("--cache", default=None, help="JSON-lines invariant cache (read and updated)")

    c = sub.add_parser("cospectral-search", parents=[common],
                       help="cospectrally rooted pairs of rooted trees on n vertices")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--kind", type=MatrixKind.parse, default=MatrixKind.LAPLACIAN)

    co = sub.add_parser("coalesce", parents=[common], help="coalesce two seeds with attachments")
    co.add_argument("--seed-a", type=_rooted, required=True, help="<graph6>:<root>")
    co.add_argument("--seed-b", type=_rooted, required=True, help="<graph6>:<root>")
    co.add_argument("--attach", type=_rooted, action="append", required=True,
                    help="<graph6>:<root>; repeatable")
    co.add_argument("--kind", type=MatrixKind.parse, default=MatrixKind.LAPLACIAN)
    return p


# the gen subcommand also accepts --format graph6|levels
def _split_gen_format(argv: list[str]) -> list[str]:
    if not argv or argv[0] != "gen":
        return argv
    out = []
    it = iter(argv)
    for a in it:
        if a == "--format":
            val = next(it, "")
            out += ["--tree-format", val] if val in ("graph6", "levels") else [a, val]
        elif a.startswith("--format=") and a.split("=", 1)[1] in ("graph6", "levels"):
            out += ["--tree-format", a.split("=", 1)[1]]
        else:
            out.append(a)
    return out


def _cmd_gen(args) -> int:
    fmt = args.tree_format or "graph6"
    if args.n < 1:
        raise ValueError("--n must be >= 1")
    if args.rooted:
        for rt in enumerate_rooted_trees(args.n):
            if fmt == "levels":
                print(" ".join(map(str, rooted_code(rt.tree, rt.root))))
            else:
                print(_rooted_text(rt))
    else:
        for t in enumerate_free_trees(args.n):
            print(" ".join(map(str, canonical_code(t))) if fmt == "levels" else encode_graph6(t).decode())
    return 0


def _cmd_invariants(args, cfg: MeasureConfig) -> int:
    trees = [args.graph6] if args.graph6 is not None else list(enumerate_free_trees(args.n))
    rows = []
    for t in trees:
        r = compute_invariants(t, cfg)
        rows.append({
            "graph6": encode_graph6(t).decode(),
            "code": list(r.code),
            "f2": r.f2,
            "lambda1": _fmt(float(r.lambda1.mid)),
            "q1": _fmt(float(r.q1.mid)),
            "charpoly_a": list(r.charpoly_a.coefficients),
            "charpoly_l": list(r.charpoly_l.coefficients),
        })
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    elif args.format == "csv":
        print("graph6,code,f2,lambda1,q1,charpoly_a,charpoly_l")
        for r in rows:
            print(",".join([r["graph6"], " ".join(map(str, r["code"])), str(r["f2"]), r["lambda1"], r["q1"],
                            " ".join(map(str, r["charpoly_a"])), " ".join(map(str, r["charpoly_l"]))]))
    else:
        print("| graph6 | code | F2 | lambda1 | q1 | charpoly A | charpoly L |")
        print("|---|---|---:|---:|---:|---|---|")
        for r in rows:
            print(f"| {r['graph6']} | {' '.join(map(str, r['code']))} | {r['f2']} | {r['lambda1']} | "
                  f"{r['q1']} | {r['charpoly_a']} | {r['charpoly_l']} |")
    return 0


def _cmd_verify(args, cfg: MeasureConfig) -> int:
    if len(args.graph6) != 2:
        raise ValueError("verify needs exactly two --graph6 arguments")
    t1, t2 = args.graph6
    c = args.conjecture
    v = conjecture_verdict(t1, t2, c, cfg)
    gl, gr = v.lhs_gap.mid, v.rhs_gap.mid
    print(f"conjecture: {c.name.lower()} (d_{c.larger} >= d_{c.smaller})")
    print(f"gap {c.larger}: {_fmt(gl)}  [{float(v.lhs_gap.lo):.3e}, {float(v.lhs_gap.hi):.3e}]")
    print(f"gap {c.smaller}: {_fmt(gr)}  [{float(v.rhs_gap.lo):.3e}, {float(v.rhs_gap.hi):.3e}]")
    print(f"d_{c.larger}: {_fmt(distance(gl, 0.0, cfg.sigma))}")
    print(f"d_{c.smaller}: {_fmt(distance(gr, 0.0, cfg.sigma))}")
    print(f"verdict: {'holds' if v.holds else 'counterexample'}")
    return 0


def _cmd_survey(args, cfg: MeasureConfig) -> int:
    conjs = [ConjectureId.parse(x) for x in args.conjectures.split(",") if x.strip()]
    cache = None
    if args.cache:
        cache = load_cache(args.cache) if os.path.exists(args.cache) else {}
    rows = survey(args.n_from, args.n_to, conjs, cfg,
                  threads=args.threads or None, cache=cache)
    if cache is not None:
        store_cache(args.cache, sorted(cache.values(), key=lambda r: (r.n, r.code)))
    sys.stdout.write(emit_table(rows, args.format, conjs))
    bad = [p for r in rows for p in r.undecidable_pairs]
    for a, b, c in bad:
        print(f"undecidable: {c} {a} {b}", file=sys.stderr)
    return 1 if bad else 0


def _cmd_cospectral_search(args, cfg: MeasureConfig) -> int:
    pairs = find_cospectrally_rooted_pairs(args.n, args.kind)
    recs = []
    for g, h in pairs:
        la = largest_root(char_poly(g.tree, MatrixKind.ADJACENCY), cfg.root_width)
        lb = largest_root(char_poly(h.tree, MatrixKind.ADJACENCY), cfg.root_width)
        recs.append({
            "a": _rooted_text(g),
            "b": _rooted_text(h),
            "lambda1_a": _fmt(float(la.mid)),
            "lambda1_b": _fmt(float(lb.mid)),
            "adjacency_cospectral": cospectral(g.tree, h.tree, MatrixKind.ADJACENCY),
            "isomorphic": canonical_code(g.tree) == canonical_code(h.tree),
        })
    if args.format == "json":
        print(json.dumps(recs, indent=2))
    else:
        for r in recs:
            print(f"{r['a']} {r['b']} {r['lambda1_a']} {r['lambda1_b']} "
                  f"adjacency_cospectral={int(r['adjacency_cospectral'])} isomorphic={int(r['isomorphic'])}")
    return 0


def _cmd_coalesce(args, cfg: MeasureConfig) -> int:
    kind = args.kind
    if not cospectrally_rooted(args.seed_a, args.seed_b, kind):
        raise NotCospectrallyRooted(f"seeds are not {kind.value} cospectrally rooted")
    for k in args.attach:
        a, b = coalesce(args.seed_a, k), coalesce(args.seed_b, k)
        if not cospectral(a, b, kind):
            raise CertificationFailure(f"coalesced pair is not {kind.value} cospectral")
        qa = largest_root(char_poly(a, MatrixKind.LAPLACIAN), cfg.root_width)
        qb = largest_root(char_poly(b, MatrixKind.LAPLACIAN), cfg.root_width)
        la = largest_root(char_poly(a, MatrixKind.ADJACENCY), cfg.root_width)
        lb = largest_root(char_poly(b, MatrixKind.ADJACENCY), cfg.root_width)
        print(f"{encode_graph6(a).decode()} {encode_graph6(b).decode()} certified={kind.value} "
              f"q1={_fmt(float(qa.mid))},{_fmt(float(qb.mid))} "
              f"lambda1={_fmt(float(la.mid))},{_fmt(float(lb.mid))}")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    warnings.filterwarnings("ignore", message=".*TBB.*")
    argv = _split_gen_format(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        return 2
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    cfg = MeasureConfig(sigma=args.sigma, root_width=args.precision)
    try:
        if args.command == "gen":
            return _cmd_gen(args)
        handler = {
            "invariants": _cmd_invariants,
            "verify": _cmd_verify,
            "survey": _cmd_survey,
            "cospectral-search": _cmd_cospectral_search,
            "coalesce": _cmd_coalesce,
        }[args.command]
        return handler(args, cfg)
    except (GraphError, SizeMismatch, ValueError, Undecidable, CertificationFailure,
            CacheVersionMismatch, CorruptRecord) as exc:
        print(f"spectree: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

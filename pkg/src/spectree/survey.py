"""Per-tree invariant records and the all-pairs counterexample survey."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from ._accel import set_threads
from .generate import enumerate_free_trees, pair_count
from .graph import CanonicalCode, TreeGraph, canonical_code, encode_graph6, from_levels
from .measures import ConjectureId, MeasureConfig, Undecidable, conjecture_verdict, degree_power
from .spectra import CharPoly, MatrixKind, RootEnclosure, char_poly, largest_root, roots_equal

CACHE_VERSION = "spectree-invariants/1"

_INDEX = {"f2": 0, "q1": 1, "lambda1": 2}


class CacheVersionMismatch(ValueError):
    pass


class CorruptRecord(ValueError):
    pass


class UnknownFormat(ValueError):
    pass


@dataclass(frozen=True)
class InvariantRecord:
    code: CanonicalCode
    n: int
    f2: int
    lambda1: RootEnclosure
    q1: RootEnclosure
    charpoly_a: CharPoly
    charpoly_l: CharPoly

    @property
    def tree(self) -> TreeGraph:
        return from_levels(self.code)


@dataclass
class SurveyRow:
    n: int
    pair_count: int
    counterexamples: dict[ConjectureId, int]
    undecidable: int = 0
    escalated: int = 0
    undecidable_pairs: list[tuple[str, str, str]] = field(default_factory=list)


def compute_invariants(t: TreeGraph, cfg: MeasureConfig | None = None) -> InvariantRecord:
    cfg = cfg or MeasureConfig()
    pa = char_poly(t, MatrixKind.ADJACENCY)
    pl = char_poly(t, MatrixKind.LAPLACIAN)
    return InvariantRecord(
        code=canonical_code(t),
        n=t.n,
        f2=degree_power(t, 2),
        lambda1=largest_root(pa, cfg.root_width),
        q1=largest_root(pl, cfg.root_width),
        charpoly_a=pa,
        charpoly_l=pl,
    )


def _records_chunk(args):
    codes, cfg = args
    return [compute_invariants(from_levels(c), cfg) for c in codes]


def compute_all(
    n: int,
    cfg: MeasureConfig | None = None,
    workers: int = 1,
    cache: dict[tuple[int, CanonicalCode], InvariantRecord] | None = None,
) -> list[InvariantRecord]:
    """Records for every tree on ``n`` vertices, in enumeration order."""
    cfg = cfg or MeasureConfig()
    trees = list(enumerate_free_trees(n))
    out: list[InvariantRecord | None] = [None] * len(trees)
    todo = []
    for idx, t in enumerate(trees):
        code = canonical_code(t)
        hit = cache.get((n, code)) if cache else None
        if hit is not None and max(hit.lambda1.width, hit.q1.width) <= Fraction(cfg.root_width):
            out[idx] = hit
        else:
            todo.append((idx, code))
    if todo:
        codes = [c for _, c in todo]
        if workers > 1 and len(codes) > 256:
            step = math.ceil(len(codes) / (4 * workers))
            chunks = [(codes[i : i + step], cfg) for i in range(0, len(codes), step)]
            with ProcessPoolExecutor(max_workers=workers) as ex:
                done = [r for part in ex.map(_records_chunk, chunks) for r in part]
        else:
            done = _records_chunk((codes, cfg))
        for (idx, _), rec in zip(todo, done):
            out[idx] = rec
            if cache is not None:
                cache[(n, rec.code)] = rec
    return out  # type: ignore[return-value]


def _outward(x: Fraction, up: bool) -> float:
    f = float(x)
    if up and Fraction(f) < x:
        f = math.nextafter(f, math.inf)
    elif not up and Fraction(f) > x:
        f = math.nextafter(f, -math.inf)
    return f


def _equality_classes(encls: Sequence[RootEnclosure], polys: Sequence[CharPoly]) -> np.ndarray:
    """Ids such that equal ids certify equal largest roots.

    Candidates are trees whose enclosures overlap; identical polynomials are
    merged directly, others through :func:`roots_equal`.
    """
    t = len(encls)
    parent = list(range(t))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    order = sorted(range(t), key=lambda i: encls[i].lo)
    start = 0
    while start < t:
        end = start + 1
        top = encls[order[start]].hi
        while end < t and encls[order[end]].lo <= top:
            top = max(top, encls[order[end]].hi)
            end += 1
        if end - start > 1:
            cluster = order[start:end]
            by_poly: dict[tuple[int, ...], int] = {}
            reps = []
            for i in cluster:
                key = polys[i].coefficients
                if key in by_poly:
                    parent[find(i)] = find(by_poly[key])
                else:
                    by_poly[key] = i
                    reps.append(i)
            for a_pos, a in enumerate(reps):
                for b in reps[a_pos + 1 :]:
                    if find(a) == find(b):
                        continue
                    if roots_equal(polys[a].coefficients, encls[a], polys[b].coefficients, encls[b]):
                        parent[find(b)] = find(a)
        start = end
    return np.array([find(i) for i in range(t)], dtype=np.int64)


def sweep_arrays(records: Sequence[InvariantRecord]):
    """``lo``, ``hi``, ``cls`` arrays and the rounding tolerance for the kernels."""
    t = len(records)
    lo = np.empty((3, t))
    hi = np.empty((3, t))
    cls = np.empty((3, t), dtype=np.int64)
    for i, r in enumerate(records):
        lo[0, i] = hi[0, i] = float(r.f2)
        lo[1, i], hi[1, i] = _outward(r.q1.lo, False), _outward(r.q1.hi, True)
        lo[2, i], hi[2, i] = _outward(r.lambda1.lo, False), _outward(r.lambda1.hi, True)
    cls[0] = np.array([r.f2 for r in records], dtype=np.int64)
    cls[1] = _equality_classes([r.q1 for r in records], [r.charpoly_l for r in records])
    cls[2] = _equality_classes([r.lambda1 for r in records], [r.charpoly_a for r in records])
    scale = float(np.max(np.abs(hi))) if t else 1.0
    # a few ulps of the largest magnitude cover every subtraction in the kernel
    tol = 8 * math.ulp(max(scale, 1.0))
    return lo, hi, cls, tol


def sweep_records(
    records: Sequence[InvariantRecord],
    conjectures: Sequence[ConjectureId],
    cfg: MeasureConfig | None = None,
    use_numba: bool | None = None,
) -> tuple[dict[ConjectureId, int], int, int, list[tuple[int, int, ConjectureId]]]:
    """Counts per conjecture, undecidable count, escalation count, undecidable pairs."""
    cfg = cfg or MeasureConfig()
    conjectures = list(conjectures)
    if not records:
        return {c: 0 for c in conjectures}, 0, 0, []
    lo, hi, cls, tol = sweep_arrays(records)
    conj = np.array([[_INDEX[c.larger], _INDEX[c.smaller]] for c in conjectures], dtype=np.int64)
    cex, amb = kernels.sweep(lo, hi, cls, conj, tol, use_numba)
    counts = {c: int(cex[:, k].sum()) for k, c in enumerate(conjectures)}
    pending = kernels.ambiguous_pairs(lo, hi, cls, conj, tol, amb, use_numba)
    undecided = []
    for i, j, k in pending:
        c = conjectures[k]
        try:
            v = conjecture_verdict(records[i].tree, records[j].tree, c, cfg)
        except Undecidable:
            undecided.append((i, j, c))
            continue
        counts[c] += int(v.counterexample)
    return counts, len(undecided), len(pending), undecided


def survey(
    n_from: int,
    n_to: int,
    conjectures: Iterable[ConjectureId | str] = tuple(ConjectureId),
    cfg: MeasureConfig | None = None,
    threads: int | None = 1,
    cache: dict | None = None,
    use_numba: bool | None = None,
) -> list[SurveyRow]:
    """One :class:`SurveyRow` per ``n`` in ``[n_from, n_to]``."""
    if not 4 <= n_from <= n_to:
        raise ValueError(f"need 4 <= n_from <= n_to, got {n_from}..{n_to}")
    cfg = cfg or MeasureConfig()
    conjs = [ConjectureId.parse(c) for c in conjectures]
    set_threads(threads)
    workers = threads if threads and threads > 0 else (os.cpu_count() or 1)
    rows = []
    for n in range(n_from, n_to + 1):
        records = compute_all(n, cfg, workers=workers, cache=cache)
        counts, und, esc, bad = sweep_records(records, conjs, cfg, use_numba)
        rows.append(
            SurveyRow(
                n=n,
                pair_count=pair_count(n),
                counterexamples=counts,
                undecidable=und,
                escalated=esc,
                undecidable_pairs=[
                    (
                        encode_graph6(records[i].tree).decode(),
                        encode_graph6(records[j].tree).decode(),
                        c.name.lower(),
                    )
                    for i, j, c in bad
                ],
            )
        )
    return rows


# rendering -------------------------------------------------------------------


def _conj_columns(rows: Sequence[SurveyRow], conjectures: Sequence[ConjectureId] | None):
    if conjectures is not None:
        return [ConjectureId.parse(c) for c in conjectures]
    seen: list[ConjectureId] = []
    for r in rows:
        for c in r.counterexamples:
            if c not in seen:
                seen.append(c)
    return sorted(seen, key=lambda c: c.name) or list(ConjectureId)


def emit_table(
    rows: Sequence[SurveyRow],
    fmt: str = "markdown",
    conjectures: Sequence[ConjectureId | str] | None = None,
) -> str:
    cols = _conj_columns(rows, conjectures)
    if fmt == "markdown":
        head = ["n", "tree pairs"] + [f"{c.name.lower()} counterexamples" for c in cols]
        lines = ["| " + " | ".join(head) + " |", "|" + "|".join("---:" for _ in head) + "|"]
        for r in rows:
            vals = [r.n, r.pair_count] + [r.counterexamples.get(c, 0) for c in cols]
            lines.append("| " + " | ".join(str(v) for v in vals) + " |")
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "pair_count"] + [c.name.lower() for c in cols] + ["undecidable"])
        for r in rows:
            w.writerow([r.n, r.pair_count] + [r.counterexamples.get(c, 0) for c in cols] + [r.undecidable])
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "conjectures": [c.name.lower() for c in cols],
            "rows": [
                {
                    "n": r.n,
                    "pair_count": r.pair_count,
                    "counterexamples": {c.name.lower(): r.counterexamples.get(c, 0) for c in cols},
                    "undecidable": r.undecidable,
                    "undecidable_pairs": [list(p) for p in r.undecidable_pairs],
                }
                for r in rows
            ],
        }
        return json.dumps(doc, indent=2) + "\n"
    raise UnknownFormat(f"unknown table format {fmt!r}; use csv, json or markdown")


def rows_from_json(text: str) -> list[SurveyRow]:
    doc = json.loads(text)
    return [
        SurveyRow(
            n=d["n"],
            pair_count=d["pair_count"],
            counterexamples={ConjectureId.parse(k): v for k, v in d["counterexamples"].items()},
            undecidable=d["undecidable"],
            undecidable_pairs=[tuple(p) for p in d.get("undecidable_pairs", [])],
        )
        for d in doc["rows"]
    ]


# cache -------------------------------------------------------------------------


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _unfrac(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def record_to_json(r: InvariantRecord) -> dict:
    return {
        "n": r.n,
        "code": list(r.code),
        "f2": r.f2,
        "lambda1": [_frac(r.lambda1.lo), _frac(r.lambda1.hi)],
        "q1": [_frac(r.q1.lo), _frac(r.q1.hi)],
        "charpoly_a": [str(c) for c in r.charpoly_a.coefficients],
        "charpoly_l": [str(c) for c in r.charpoly_l.coefficients],
    }


def record_from_json(d: dict) -> InvariantRecord:
    try:
        rec = InvariantRecord(
            code=tuple(int(v) for v in d["code"]),
            n=int(d["n"]),
            f2=int(d["f2"]),
            lambda1=RootEnclosure(*(_unfrac(s) for s in d["lambda1"])),
            q1=RootEnclosure(*(_unfrac(s) for s in d["q1"])),
            charpoly_a=CharPoly(tuple(int(c) for c in d["charpoly_a"]), MatrixKind.ADJACENCY),
            charpoly_l=CharPoly(tuple(int(c) for c in d["charpoly_l"]), MatrixKind.LAPLACIAN),
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise CorruptRecord(f"bad cache record: {exc}") from exc
    if len(rec.code) != rec.n or len(rec.charpoly_a.coefficients) != rec.n + 1:
        raise CorruptRecord(f"inconsistent record for n={rec.n}")
    return rec


def store_cache(path: str | os.PathLike, records: Iterable[InvariantRecord]) -> None:
    """Write a versioned JSON-lines cache (header line, then one record per line)."""
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"version": CACHE_VERSION}) + "\n")
        for r in records:
            fh.write(json.dumps(record_to_json(r), separators=(",", ":")) + "\n")
    os.replace(tmp, path)


def load_cache(path: str | os.PathLike) -> dict[tuple[int, CanonicalCode], InvariantRecord]:
    out: dict[tuple[int, CanonicalCode], InvariantRecord] = {}
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
        try:
            version = json.loads(first).get("version")
        except (json.JSONDecodeError, AttributeError) as exc:
            raise CorruptRecord("missing cache header") from exc
        if version != CACHE_VERSION:
            raise CacheVersionMismatch(f"cache version {version!r}, expected {CACHE_VERSION!r}")
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            try:
                d = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorruptRecord(f"line {lineno}: {exc}") from exc
            rec = record_from_json(d)
            out[(rec.n, rec.code)] = rec
    return out

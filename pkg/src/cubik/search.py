"""Exhaustive enumeration of grid diagrams: generate, filter, lift, identify.

The space of size-n grids is split into shards by a prefix of ``x_cols``.
Each shard walks its X permutations in lexicographic order and hands every
one to the compiled kernel, which loops over all O permutations.  A shard
checkpoints after every completed X permutation, so a killed run resumes
where it stopped and produces identical statistics.

Witnesses are always the lexicographically least (size, x_cols, o_cols)
triple, which makes merged results independent of shard order and of the
number of worker processes.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
from dataclasses import asdict, dataclass, field
from multiprocessing import get_context
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from . import _kernels as K
from .cube import cube_to_json, lift
from .grid import GridDiagram, new_grid
from .invariants import jones
from .knots import KnotRecord, fingerprint_id, load_table

__all__ = [
    "EnumSpec",
    "EnumStats",
    "SurveyEntry",
    "SurveyResult",
    "CHECKPOINT_HEADER",
    "shard_space",
    "enumerate_grids",
    "thread_count",
    "run_shards",
    "cube_number_survey",
    "survey_csv",
    "stats_csv",
    "census_csv",
    "write_survey",
]

CHECKPOINT_HEADER = "CNSV1"
COUNTER_NAMES = ("visited", "knots", "no_order", "type1", "type2", "candidate", "lifted", "audited", "audit_violations")


@dataclass(frozen=True)
class EnumSpec:
    n: int
    knots_only: bool = True
    use_filters: bool = True
    do_lift: bool = True
    prefix: tuple[int, ...] = ()
    audit_every: int = 0

    @property
    def key(self) -> str:
        return f"n{self.n}-p" + ("_".join(map(str, self.prefix)) or "all")


@dataclass
class EnumStats:
    counts: dict[str, int] = field(default_factory=lambda: dict.fromkeys(COUNTER_NAMES, 0))
    # fingerprint -> (n, x_cols, o_cols) of the least lifted grid
    found: dict[str, tuple[int, tuple[int, ...], tuple[int, ...]]] = field(default_factory=dict)

    def add_counts(self, arr) -> None:
        for name, v in zip(COUNTER_NAMES, arr):
            self.counts[name] += int(v)

    def offer(self, fp: str, n: int, x, o) -> None:
        cand = (n, tuple(int(v) for v in x), tuple(int(v) for v in o))
        if fp not in self.found or cand < self.found[fp]:
            self.found[fp] = cand

    def merge(self, other: "EnumStats") -> None:
        for k, v in other.counts.items():
            self.counts[k] += v
        for fp, (n, x, o) in other.found.items():
            self.offer(fp, n, x, o)

    def to_json(self) -> dict:
        return {"counts": self.counts, "found": {fp: [n, list(x), list(o)] for fp, (n, x, o) in sorted(self.found.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "EnumStats":
        st = cls()
        st.counts.update({k: int(v) for k, v in data["counts"].items()})
        for fp, (n, x, o) in data["found"].items():
            st.found[fp] = (int(n), tuple(x), tuple(o))
        return st


def shard_space(n: int, prefix_len: int, **options) -> list[EnumSpec]:
    """Disjoint shards keyed by the first ``prefix_len`` entries of x_cols."""
    if not 0 <= prefix_len <= n:
        raise ValueError("prefix length must lie in [0, n]")
    return [EnumSpec(n, prefix=p, **options) for p in itertools.permutations(range(n), prefix_len)]


def _x_perms(n: int, prefix: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    rest = [c for c in range(n) if c not in prefix]
    for tail in itertools.permutations(rest):
        yield prefix + tail


def _read_checkpoint(path: Path, spec: EnumSpec) -> tuple[int, EnumStats] | None:
    if not path.exists():
        return None
    header, _, body = path.read_text(encoding="ascii").partition("\n")
    if header.strip() != CHECKPOINT_HEADER:
        raise ValueError(f"{path} is not a checkpoint file")
    data = json.loads(body)
    if data["spec"] != asdict(spec) | {"prefix": list(spec.prefix)}:
        raise ValueError(f"{path} belongs to a different run")
    return int(data["done"]), EnumStats.from_json(data["stats"])


def _write_checkpoint(path: Path, spec: EnumSpec, done: int, stats: EnumStats, complete: bool) -> None:
    data = {
        "spec": asdict(spec) | {"prefix": list(spec.prefix)},
        "done": done,
        "complete": complete,
        "stats": stats.to_json(),
    }
    tmp = path.with_suffix(".tmp")
    tmp.write_text(CHECKPOINT_HEADER + "\n" + json.dumps(data, sort_keys=True) + "\n", encoding="ascii")
    os.replace(tmp, path)


class _JonesCache:
    """Jones fingerprints keyed by the canonical torus translate of a grid."""

    def __init__(self):
        self.memo: dict[tuple, str] = {}

    def __call__(self, x: np.ndarray, o: np.ndarray) -> str:
        cx, co = K.canonical_translate(x, o)
        key = (cx.tobytes(), co.tobytes())
        fp = self.memo.get(key)
        if fp is None:
            fp = jones(GridDiagram(x.shape[0], tuple(int(v) for v in x), tuple(int(v) for v in o))).fingerprint()
            self.memo[key] = fp
        return fp


def enumerate_grids(
    spec: EnumSpec,
    consumer: Callable[[np.ndarray, np.ndarray], None] | None = None,
    checkpoint_dir: str | os.PathLike | None = None,
    stop_after: int | None = None,
    identify: bool = True,
) -> EnumStats:
    """Visit every grid of the shard; returns counters and least lifted grid per knot type.

    ``consumer(x, o)`` is called for each grid that lifts.  ``stop_after``
    processes at most that many X permutations in this call (used to test
    resumption); the checkpoint then records where to continue.
    """
    if spec.n < 2:
        raise ValueError("grid size must be at least 2")
    path = None
    done = 0
    stats = EnumStats()
    if checkpoint_dir is not None:
        path = Path(checkpoint_dir) / f"{spec.key}.ckpt"
        path.parent.mkdir(parents=True, exist_ok=True)
        state = _read_checkpoint(path, spec)
        if state is not None:
            done, stats = state
    fp_of = _JonesCache()
    processed = 0
    total = math.factorial(spec.n - len(spec.prefix))
    for idx, xt in enumerate(_x_perms(spec.n, spec.prefix)):
        if idx < done:
            continue
        if stop_after is not None and processed >= stop_after:
            break
        x = np.asarray(xt, dtype=np.int64)
        phase = K.perm_rank(x) % spec.audit_every if spec.audit_every else 0
        counts, lifted = K.process_x(x, spec.knots_only, spec.use_filters, spec.do_lift, spec.audit_every, phase)
        stats.add_counts(counts)
        for o in lifted:
            if identify:
                stats.offer(fp_of(x, o), spec.n, x, o)
            if consumer is not None:
                consumer(x, o)
        done = idx + 1
        processed += 1
        if path is not None:
            _write_checkpoint(path, spec, done, stats, done == total)
    return stats


def thread_count(requested: int | None = None) -> int:
    """Worker processes: the request, capped by CUBIK_THREADS (default: CPU count)."""
    cap = int(os.environ.get("CUBIK_THREADS", os.cpu_count() or 1))
    want = requested if requested is not None else cap
    return max(1, min(want, cap))


def _run_one(args) -> EnumStats:
    spec, checkpoint_dir = args
    return enumerate_grids(spec, checkpoint_dir=checkpoint_dir)


def run_shards(specs: list[EnumSpec], threads: int | None = None, checkpoint_dir=None) -> EnumStats:
    """Run shards (in parallel when threads > 1) and merge their statistics."""
    threads = thread_count(threads)
    jobs = [(s, checkpoint_dir) for s in specs]
    if threads == 1 or len(specs) == 1:
        parts = [_run_one(j) for j in jobs]
    else:
        with get_context("spawn").Pool(threads) as pool:
            parts = pool.map(_run_one, jobs, chunksize=1)
    total = EnumStats()
    for p in parts:
        total.merge(p)
    return total


@dataclass(frozen=True)
class SurveyEntry:
    knot: str
    fingerprint: str
    min_cube_size: int | None  # None: no lift found up to max_n
    lower_bound: int | None
    witness: tuple[int, tuple[int, ...], tuple[int, ...]] | None


@dataclass
class SurveyResult:
    max_n: int
    entries: list[SurveyEntry]
    stats_by_size: dict[int, dict[str, int]]

    def entry(self, knot: str) -> SurveyEntry | None:
        for e in self.entries:
            if e.knot == knot:
                return e
        return None


def _name(fp: str, table: list[KnotRecord]) -> str:
    for r in table:
        if r.fingerprint == fp:
            return r.name
    return f"unknown-{fingerprint_id(fp)}"


def cube_number_survey(
    max_n: int,
    min_n: int = 2,
    threads: int | None = None,
    prefix_len: int = 1,
    checkpoint_dir=None,
    use_filters: bool = True,
    audit_every: int = 0,
    table: list[KnotRecord] | None = None,
) -> SurveyResult:
    """Least cube size for every knot type that lifts at sizes min_n..max_n.

    Knots from the table whose arc index is at most max_n but that never lift
    are reported with the lower bound max_n + 1.
    """
    table = load_table() if table is None else table
    found: dict[str, tuple[int, tuple, tuple]] = {}
    stats_by_size = {}
    for n in range(min_n, max_n + 1):
        specs = shard_space(n, min(prefix_len, n), use_filters=use_filters, audit_every=audit_every)
        st = run_shards(specs, threads, checkpoint_dir)
        stats_by_size[n] = dict(st.counts)
        for fp, w in st.found.items():
            if fp not in found or w < found[fp]:
                found[fp] = w
    entries = [SurveyEntry(_name(fp, table), fp, w[0], None, w) for fp, w in found.items()]
    for r in table:
        if r.fingerprint not in found and r.alpha <= max_n:
            entries.append(SurveyEntry(r.name, r.fingerprint, None, max_n + 1, None))
    entries.sort(key=lambda e: (e.min_cube_size or e.lower_bound, e.knot))
    return SurveyResult(max_n, entries, stats_by_size)


def _witness_name(e: SurveyEntry) -> str:
    return f"witness_{e.knot}_n{e.min_cube_size}.json"


def survey_csv(result: SurveyResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["knot", "fingerprint_id", "min_cube_size", "witness_file"])
    for e in result.entries:
        if e.min_cube_size is None:
            w.writerow([e.knot, fingerprint_id(e.fingerprint), f">={e.lower_bound}", ""])
        else:
            w.writerow([e.knot, fingerprint_id(e.fingerprint), e.min_cube_size, _witness_name(e)])
    return buf.getvalue()


def stats_csv(result: SurveyResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", *COUNTER_NAMES])
    for n in sorted(result.stats_by_size):
        w.writerow([n, *(result.stats_by_size[n][k] for k in COUNTER_NAMES)])
    return buf.getvalue()


def census_csv(buckets) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["fingerprint_id", "tb", "r", "count", "num_classes", "lifts_found"])
    for b in sorted(buckets.values(), key=lambda b: (fingerprint_id(b.fingerprint), b.tb, b.r)):
        w.writerow([fingerprint_id(b.fingerprint), b.tb, b.r, b.count, b.num_classes, b.lifts_found])
    return buf.getvalue()


def write_survey(result: SurveyResult, out_dir: str | os.PathLike) -> list[Path]:
    """Write survey.csv, survey_stats.csv and one cube JSON per witness."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for e in result.entries:
        if e.witness is None:
            continue
        n, x, o = e.witness
        p = out / _witness_name(e)
        p.write_text(cube_to_json(lift(new_grid(n, x, o))) + "\n", encoding="ascii")
        written.append(p)
    for name, text in (("survey.csv", survey_csv(result)), ("survey_stats.csv", stats_csv(result))):
        p = out / name
        p.write_text(text, encoding="ascii")
        written.append(p)
    return written

"""Knot table keyed by Jones fingerprint, and identification of grids.

Table file format, one record per line::

    name; alpha; exponent:coeff,exponent:coeff,...

Chiral knots carry ``_left``/``_right`` suffixes.  For torus knots ``right``
is the positive knot, whose Jones polynomial has positive exponents; the
left trefoil is therefore the one that lifts at size 5.  Other chiral knots
use the same rule: ``_left`` is the mirror whose Jones polynomial lives in
negative degrees.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable

import numpy as np

from . import _kernels as K
from .grid import GridDiagram, component_count, new_grid
from .invariants import jones, torus_knot_jones
from .polynomial import LaurentPolynomial

__all__ = [
    "KnotRecord",
    "AmbiguousFingerprint",
    "UNKNOWN",
    "KNOWN_FACTS",
    "torus_grid",
    "load_table",
    "parse_table",
    "format_table",
    "build_table",
    "identify",
    "fingerprint_id",
]

UNKNOWN = "Unknown"

# cube-number facts attached to records by name
KNOWN_FACTS = {
    "3_1_left": ("c = 5",),
    "3_1_right": ("c = 7",),
    "5_1_left": ("c = 7", "c_l(K_max) = 7", "c_l(K_min) > 7"),
    "5_1_right": ("c > 9",),
}


class AmbiguousFingerprint(ValueError):
    pass


@dataclass(frozen=True)
class KnotRecord:
    name: str
    alpha: int
    jones: LaurentPolynomial
    facts: tuple[str, ...] = field(default=(), compare=False)

    @property
    def fingerprint(self) -> str:
        return self.jones.fingerprint()


def torus_grid(p: int, q: int) -> GridDiagram:
    """Size p+q grid of the left-hand (p, q) torus knot: X on the diagonal, O shifted by q."""
    n = p + q
    return new_grid(n, range(n), [(i + q) % n for i in range(n)])


def parse_table(text: str) -> list[KnotRecord]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, alpha, fp = (part.strip() for part in line.split(";"))
        out.append(KnotRecord(name, int(alpha), LaurentPolynomial.from_fingerprint(fp), KNOWN_FACTS.get(name, ())))
    _check_unique(out)
    return out


def format_table(records: Iterable[KnotRecord]) -> str:
    return "".join(f"{r.name}; {r.alpha}; {r.fingerprint}\n" for r in records)


def load_table() -> list[KnotRecord]:
    text = resources.files("cubik").joinpath("data/knots.txt").read_text(encoding="ascii")
    return parse_table(text)


def _check_unique(records: list[KnotRecord]) -> None:
    seen: dict[str, str] = {}
    for r in records:
        if r.fingerprint in seen:
            raise AmbiguousFingerprint(f"{seen[r.fingerprint]} and {r.name} share a Jones polynomial")
        seen[r.fingerprint] = r.name


def identify(G: GridDiagram, table: list[KnotRecord] | None = None) -> KnotRecord | str:
    """Record whose Jones polynomial matches G, or ``UNKNOWN``."""
    if component_count(G) != 1:
        raise ValueError("identify needs a single-component grid")
    table = load_table() if table is None else table
    _check_unique(table)
    fp = jones(G).fingerprint()
    for r in table:
        if r.fingerprint == fp:
            return r
    return UNKNOWN


def fingerprint_id(fp: str) -> str:
    """Short stable id for a fingerprint string (first 12 hex digits of its SHA-1)."""
    return hashlib.sha1(fp.encode("ascii")).hexdigest()[:12]


# --- table construction -------------------------------------------------------

def _determinant(v: LaurentPolynomial) -> int:
    return abs(v.evaluate(-1))


def _span(v: LaurentPolynomial) -> int:
    exps = [e for e, _ in v.items()]
    return max(exps) - min(exps)


def _chiral(base: str, v: LaurentPolynomial) -> list[tuple[str, LaurentPolynomial]]:
    right = v if max(e for e, _ in v.items()) > 0 else v.invert_variable()
    return [(base + "_left", right.invert_variable()), (base + "_right", right)]


TORUS_KNOTS = {"3_1": (3, 2), "5_1": (5, 2), "7_1": (7, 2), "8_19": (4, 3), "10_124": (5, 3)}


def _named_targets() -> list[tuple[str, LaurentPolynomial, tuple[int, int] | None]]:
    targets = [("unknot", LaurentPolynomial({0: 1}), None)]
    for base, pq in TORUS_KNOTS.items():
        targets += [(name, v, pq) for name, v in _chiral(base, torus_knot_jones(*pq))]
    return targets


def _small_jones(max_n: int) -> dict[str, int]:
    """Distinct knot Jones fingerprints on grids up to max_n, with the least size seen."""
    found: dict[str, int] = {}
    for n in range(2, max_n + 1):
        fact = math.factorial(n)
        ids, _, _, _, _ = K.census_arrays(n, False)
        roots = np.unique(K.move_classes(n, ids))
        for r in roots:
            x = K.perm_unrank(ids[r] // fact, n)
            o = K.perm_unrank(ids[r] % fact, n)
            fp = jones(new_grid(n, x, o)).fingerprint()
            found.setdefault(fp, n)
    return found


def build_table(max_n: int = 7) -> list[KnotRecord]:
    """Regenerate the bundled table.

    Arc indices come from exhaustive enumeration up to ``max_n``.  Torus knots
    not reached there get the size of their torus grid, after checking the
    grid's Jones polynomial against the closed form.  Knots at size <= max_n
    that are not torus knots are named by span and determinant: 4_1 is the
    amphichiral one with determinant 5, 5_2 the chiral one with determinant 7.
    """
    small = _small_jones(max_n)
    records = []
    for name, v, pq in _named_targets():
        fp = v.fingerprint()
        if fp in small:
            alpha = small[fp]
        else:
            G = torus_grid(*pq)
            left = jones(G)
            if left != torus_knot_jones(*pq).invert_variable():
                raise AssertionError(f"torus grid for {pq} does not give the left-hand knot")
            alpha = G.n
        records.append(KnotRecord(name, alpha, v, KNOWN_FACTS.get(name, ())))
    known = {r.fingerprint for r in records}
    for fp, n in sorted(small.items(), key=lambda kv: (kv[1], kv[0])):
        if fp in known:
            continue
        v = LaurentPolynomial.from_fingerprint(fp)
        det, span = _determinant(v), _span(v)
        if v == v.invert_variable() and det == 5 and span == 4:
            records.append(KnotRecord("4_1", n, v))
            known.add(fp)
        elif det == 7 and span == 5:
            for name, w in _chiral("5_2", v):
                if w.fingerprint() not in known:
                    records.append(KnotRecord(name, n, w))
                    known.add(w.fingerprint())
    records.sort(key=lambda r: (r.alpha, r.name))
    _check_unique(records)
    return records

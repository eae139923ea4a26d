"""Brute-force generation of unimodal-sequence families with rank statistics.

A sequence is held as a triple ``(a, c, b)``: the parts before the peak in
nondecreasing order, the peak, and the parts after it in nonincreasing order.
Since ``a`` may end in ``c`` and ``b`` may start with ``c``, equal maxima with
different peak markings are distinct triples, which is how they are counted.

Overlined parts (only in the ``vScript`` family) are stored as negative
integers in ``b``.
"""

from __future__ import annotations

import csv
import io
import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterator

DEFAULT_LIMIT = 20
FAMILIES = ("strongU", "unimodal", "doublePeak", "vScript", "vDurfee", "oddUnimodal")


class LimitExceeded(ValueError):
    pass


@dataclass
class RankTable:
    """Counts by weight ``n`` and rank ``m``."""

    nmax: int
    counts: dict = field(default_factory=dict)

    def add(self, n: int, m: int, k: int = 1):
        row = self.counts.setdefault(n, {})
        row[m] = row.get(m, 0) + k

    def row(self, n: int) -> dict:
        return {m: c for m, c in sorted(self.counts.get(n, {}).items()) if c}

    def total(self, n: int) -> int:
        return sum(self.counts.get(n, {}).values())

    def rows(self) -> list[tuple[int, int, int]]:
        return [(n, m, c) for n in range(self.nmax + 1) for m, c in self.row(n).items()]

    def __eq__(self, other):
        if not isinstance(other, RankTable):
            return NotImplemented
        return self.nmax == other.nmax and self.rows() == other.rows()

    @classmethod
    def from_series(cls, s, nmax: int) -> RankTable:
        """Read ``x^m q^n`` coefficients as counts; x-exponent is the rank."""
        if s.den != 1 or s.hi < nmax:
            raise ValueError("series must be on the integer lattice and exact to nmax")
        tab = cls(nmax)
        for n, poly in s.items():
            if n > nmax:
                break
            for m, c in poly.items():
                if c < 0 or int(c) != c:
                    raise ValueError(f"coefficient {c} at q^{n} x^{m} is not a count")
                tab.add(n, m, int(c))
        return tab

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "m", "count"])
        w.writerows(self.rows())
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"nmax": self.nmax, "rows": [list(r) for r in self.rows()]})

    def to_text(self) -> str:
        lines = []
        for n in range(self.nmax + 1):
            row = self.row(n)
            body = " ".join(f"{m}:{c}" for m, c in row.items())
            lines.append(f"n={n} total={self.total(n)}" + (f"  {body}" if body else ""))
        return "\n".join(lines)


# partition generators ------------------------------------------------------------------

def partitions(n: int, largest: int | None = None, distinct: bool = False) -> Iterator[tuple]:
    """Partitions of ``n`` with parts at most ``largest``, largest part first."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 0, -1):
        nxt = p - 1 if distinct else p
        for rest in partitions(n - p, nxt, distinct):
            yield (p,) + rest


def _parts_filtered(n: int, largest: int, ok: Callable[[tuple], bool]) -> Iterator[tuple]:
    for p in partitions(n, largest):
        if ok(p):
            yield p


def durfee(parts) -> int:
    """Side of the largest square fitting in the Ferrers diagram."""
    ps = sorted(parts, reverse=True)
    k = 0
    while k < len(ps) and ps[k] >= k + 1:
        k += 1
    return k


def _split(n: int):
    for i in range(n + 1):
        yield i, n - i


# families -------------------------------------------------------------------------------

def _strong(n: int):
    for c in range(1, n + 1):
        for wa, wb in _split(n - c):
            for a in partitions(wa, c - 1, distinct=True):
                for b in partitions(wb, c - 1, distinct=True):
                    yield tuple(reversed(a)), c, b


def _unimodal(n: int, odd: bool = False):
    if n == 0 and not odd:
        yield (), 0, ()
    for c in range(1, n + 1):
        if odd and c % 2 == 0:
            continue
        for wa, wb in _split(n - c):
            for a in partitions(wa, c):
                if odd and any(p % 2 == 0 for p in a):
                    continue
                for b in partitions(wb, c):
                    if odd and any(p % 2 == 0 for p in b):
                        continue
                    yield tuple(reversed(a)), c, b


def _double_peak(n: int):
    if n == 0:
        yield (), 0, ()
    for c in range(1, n // 2 + 1):
        for wa, wb in _split(n - 2 * c):
            for a in partitions(wa, c):
                for b in partitions(wb, c):
                    yield tuple(reversed(a)), c, b


def _odd_overpartitions(n: int, largest: int) -> Iterator[tuple]:
    """Odd-part overpartitions; overlined parts are negative and sit first among equals."""
    for p in _parts_filtered(n, largest, lambda p: all(x % 2 for x in p)):
        distinct = sorted(set(p), reverse=True)
        for mask in range(1 << len(distinct)):
            marked = {v for i, v in enumerate(distinct) if mask >> i & 1}
            out, seen = [], set()
            for v in p:
                if v in marked and v not in seen:
                    out.append(-v)
                    seen.add(v)
                else:
                    out.append(v)
            yield tuple(out)


def _vscript(n: int):
    for c in range(1, n + 1, 2):
        for wa, wb in _split(n - c):
            for a in partitions(wa, c):
                evens = [p for p in a if p % 2 == 0]
                if len(evens) != len(set(evens)):
                    continue
                for b in _odd_overpartitions(wb, c):
                    if b and b[0] == -c:
                        continue
                    yield tuple(reversed(a)), c, b


def _vdurfee(n: int):
    if n == 0:
        yield (), 0, ()
    for c in range(1, n + 1):
        for wa, wb in _split(n - c):
            for a in partitions(wa, c):
                for b in partitions(wb, c - durfee(a)):
                    yield tuple(reversed(a)), c, b


def _rank_plain(a, c, b) -> int:
    return len(b) - len(a)


def _rank_vscript(a, c, b) -> int:
    return sum(1 for p in b if p > 0) - sum(1 for p in a if p % 2)


_GEN = {
    "strongU": (_strong, _rank_plain),
    "unimodal": (_unimodal, _rank_plain),
    "doublePeak": (_double_peak, _rank_plain),
    "vScript": (_vscript, _rank_vscript),
    "vDurfee": (_vdurfee, _rank_plain),
    "oddUnimodal": (lambda n: _unimodal(n, odd=True), _rank_plain),
}


def sequences(family: str, n: int) -> list[tuple]:
    """All ``(a, c, b)`` triples of weight ``n``."""
    try:
        gen, _ = _GEN[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}") from None
    return list(gen(n))


def enumerate_family(family: str, nmax: int, limit: int = DEFAULT_LIMIT) -> RankTable:
    if family not in _GEN:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    if nmax > limit:
        raise LimitExceeded(f"nmax={nmax} exceeds the enumeration limit {limit}")
    gen, rank = _GEN[family]
    tab = RankTable(nmax)
    for n in range(nmax + 1):
        tab.counts[n] = defaultdict(int)
        for a, c, b in gen(n):
            tab.counts[n][rank(a, c, b)] += 1
        tab.counts[n] = dict(tab.counts[n])
    return tab


def enum_strong(nmax: int, limit: int = DEFAULT_LIMIT) -> RankTable:
    return enumerate_family("strongU", nmax, limit)


def enum_unimodal(nmax: int, limit: int = DEFAULT_LIMIT) -> RankTable:
    return enumerate_family("unimodal", nmax, limit)


def enum_double_peak(nmax: int, limit: int = DEFAULT_LIMIT) -> RankTable:
    return enumerate_family("doublePeak", nmax, limit)


def enum_vscript(nmax: int, limit: int = DEFAULT_LIMIT) -> RankTable:
    return enumerate_family("vScript", nmax, limit)


def enum_vdurfee(nmax: int, limit: int = DEFAULT_LIMIT) -> RankTable:
    return enumerate_family("vDurfee", nmax, limit)


def enum_odd(nmax: int, limit: int = DEFAULT_LIMIT) -> RankTable:
    return enumerate_family("oddUnimodal", nmax, limit)


# display ------------------------------------------------------------------------------------

BAR = "̅"


def _show(p: int) -> str:
    return f"{-p}{BAR}" if p < 0 else str(p)


def format_sequence(family: str, seq) -> str:
    """Render a triple with the peak overlined, e.g. ``(1, 3̄, 1)``."""
    a, c, b = seq
    if c == 0:
        return "()"
    peak = [f"{c}{BAR}"] * (2 if family == "doublePeak" else 1)
    if family == "strongU":
        peak = [str(c)]
    return "(" + ", ".join([str(p) for p in a] + peak + [_show(p) for p in b]) + ")"


def listing(family: str, n: int) -> list[str]:
    return sorted(format_sequence(family, s) for s in sequences(family, n))

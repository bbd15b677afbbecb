"""Fatigue of steel details: S-N curves, cycle counting and Miner's rule.

Stresses are in ksi. Cycle counts may be half-integers because counted
half cycles are kept as 0.5.
"""
from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

CAFL_POLICIES = ("infinite", "extend", "error")


@dataclass(frozen=True)
class StressRangeHistogram:
    """Stress ranges ``S_r`` (ksi, ascending, unique) with cycle counts ``n``."""

    S_r: tuple[float, ...]
    n: tuple[float, ...]

    def __post_init__(self):
        if len(self.S_r) != len(self.n):
            raise DomainError("ranges and counts differ in length")
        if any(s <= 0 for s in self.S_r) or any(c < 0 for c in self.n):
            raise DomainError("ranges must be positive and counts non-negative")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, float]]) -> "StressRangeHistogram":
        acc: Counter = Counter()
        for s, c in pairs:
            acc[float(s)] += float(c)
        keys = sorted(acc)
        return cls(tuple(keys), tuple(acc[k] for k in keys))

    @property
    def total_cycles(self) -> float:
        return float(sum(self.n))

    def __len__(self):
        return len(self.S_r)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["S_r", "n"])
        for s, c in zip(self.S_r, self.n):
            w.writerow([repr(s), repr(c)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "StressRangeHistogram":
        rows = list(csv.DictReader(io.StringIO(text)))
        try:
            return cls.from_pairs((float(r["S_r"]), float(r["n"])) for r in rows)
        except (KeyError, ValueError) as exc:
            raise DomainError(f"bad histogram CSV: {exc}") from None


@dataclass(frozen=True)
class DetailConstant:
    A: float  # ksi^3
    CAFL: float = 0.0  # ksi
    category: str = ""

    def __post_init__(self):
        if not self.A > 0 or self.CAFL < 0:
            raise DomainError("need A > 0 and CAFL >= 0")


def sn_cycles(C: float, B: float, S_r: float) -> float:
    """Cycles to failure ``C * S_r**B``."""
    if not S_r > 0:
        raise DomainError("stress range must be positive")
    return C * S_r**B


def aashto_sn(A: float, S_r: float) -> float:
    """Cycles to failure ``A / S_r**3``."""
    if not S_r > 0:
        raise DomainError("stress range must be positive")
    return A / S_r**3


def reversals(history: Sequence[float]) -> list[float]:
    """Peaks and valleys of a history, endpoints included and plateaus collapsed."""
    pts = []
    for v in history:
        v = float(v)
        if not math.isfinite(v):
            raise DomainError("stress history contains non-finite values")
        if not pts or v != pts[-1]:
            pts.append(v)
    if len(pts) < 3:
        return pts
    out = [pts[0]]
    for prev, cur, nxt in zip(pts, pts[1:], pts[2:]):
        if (cur - prev) * (nxt - cur) < 0:
            out.append(cur)
    out.append(pts[-1])
    return out


def _check_history(history):
    if len(history) < 2:
        raise DomainError("a stress history needs at least two samples")


def rainflow_count(history: Sequence[float]) -> StressRangeHistogram:
    """Rainflow histogram with the four-point rule.

    A range enclosed by its two neighbours forms a full cycle and its two
    points are removed; the residue left at the end is counted as half cycles.
    """
    _check_history(history)
    stack: list[float] = []
    counts: list[tuple[float, float]] = []
    for p in reversals(history):
        stack.append(p)
        while len(stack) >= 4:
            s1, s2, s3, s4 = stack[-4:]
            inner = abs(s3 - s2)
            if inner <= abs(s2 - s1) and inner <= abs(s4 - s3):
                counts.append((inner, 1.0))
                del stack[-3:-1]
            else:
                break
    for a, b in zip(stack, stack[1:]):
        counts.append((abs(b - a), 0.5))
    return StressRangeHistogram.from_pairs(c for c in counts if c[0] > 0)


def simple_range_count(history: Sequence[float]) -> StressRangeHistogram:
    """Each range between successive reversals counts as a half cycle."""
    _check_history(history)
    r = reversals(history)
    return StressRangeHistogram.from_pairs((abs(b - a), 0.5) for a, b in zip(r, r[1:]))


def _pair_extremes(peaks: list[float], valleys: list[float]) -> StressRangeHistogram:
    # largest peak with lowest valley first, then the next pair, and so on
    peaks = sorted(peaks, reverse=True)
    valleys = sorted(valleys)
    pairs = [(p - v, 1.0) for p, v in zip(peaks, valleys) if p > v]
    k = len(pairs)
    extra = peaks[k:] + valleys[k:]
    # unmatched extremes close against the reference as half cycles
    return StressRangeHistogram.from_pairs(pairs + [(abs(e), 0.5) for e in extra if e != 0])


def peak_count(history: Sequence[float], reference: float | None = None) -> StressRangeHistogram:
    """Peak counting: peaks above and valleys below the reference (default mean)."""
    _check_history(history)
    ref = float(np.mean(history)) if reference is None else reference
    r = reversals(history)
    peaks, valleys = [], []
    for i, v in enumerate(r):
        left = r[i - 1] if i > 0 else None
        right = r[i + 1] if i + 1 < len(r) else None
        nb = [x for x in (left, right) if x is not None]
        if all(v > x for x in nb) and v > ref:
            peaks.append(v - ref)
        elif all(v < x for x in nb) and v < ref:
            valleys.append(v - ref)
    return _pair_extremes(peaks, valleys)


def level_crossing_count(
    history: Sequence[float], levels: Sequence[float], reference: float | None = None
) -> StressRangeHistogram:
    """Level-crossing counting on the given levels.

    Upward crossings are counted at levels at or above the reference and
    downward crossings below it; the differences between adjacent levels give
    the implied peaks and valleys, which are then paired largest first.
    """
    _check_history(history)
    ref = float(np.mean(history)) if reference is None else reference
    levels = sorted(float(x) for x in levels)
    r = reversals(history)
    crossings = Counter()
    for a, b in zip(r, r[1:]):
        for L in levels:
            if L >= ref and a < L <= b:
                crossings[L] += 1
            elif L < ref and b <= L < a:
                crossings[L] += 1
    upper = [L for L in levels if L >= ref]
    lower = [L for L in reversed(levels) if L < ref]
    peaks, valleys = [], []
    for seq, out in ((upper, peaks), (lower, valleys)):
        for i, L in enumerate(seq):
            nxt = crossings[seq[i + 1]] if i + 1 < len(seq) else 0
            out.extend([L - ref] * max(crossings[L] - nxt, 0))
    return _pair_extremes(peaks, valleys)


def miner_damage(hist: StressRangeHistogram, detail: DetailConstant, cafl_policy: str = "infinite") -> float:
    """Miner damage index ``sum n_j / N_f,j`` with ``N_f = A / S_r**3``.

    ``cafl_policy`` chooses the treatment of ranges below the CAFL:
    ``"infinite"`` drops them, ``"extend"`` keeps the straight-line S-N
    curve, ``"error"`` raises :class:`DomainError`.
    """
    if cafl_policy not in CAFL_POLICIES:
        raise DomainError(f"cafl_policy must be one of {CAFL_POLICIES}")
    D = 0.0
    for s, c in zip(hist.S_r, hist.n):
        if s < detail.CAFL:
            if cafl_policy == "infinite":
                continue
            if cafl_policy == "error":
                raise DomainError(f"stress range {s} ksi below the CAFL {detail.CAFL} ksi")
        D += c / aashto_sn(detail.A, s)
    return D


def effective_stress_range(hist: StressRangeHistogram) -> float:
    """Cube-root mean of the cubed stress ranges, weighted by cycle count."""
    n = np.asarray(hist.n, dtype=float)
    N_m = n.sum()
    if len(hist) == 0 or not N_m > 0:
        raise DomainError("histogram has no cycles")
    s = np.asarray(hist.S_r, dtype=float)
    return float(np.cbrt(np.sum(n / N_m * s**3)))


def aashto_remaining_life(R_R: float, A: float, n: float, ADTT_SL: float, R_s: float, S_r: float, a: float) -> float:
    """Remaining fatigue life in years (negative when exhausted).

    ``n`` cycles per truck passage, ``ADTT_SL`` single-lane trucks per day,
    ``a`` current age in years.
    """
    if min(R_R, A, n, ADTT_SL, R_s, S_r) <= 0:
        raise DomainError("resistance factor, A, n, ADTT, R_s and S_r must be positive")
    if a < 0:
        raise DomainError("age must be non-negative")
    return R_R * A / (365.0 * n * ADTT_SL * (R_s * S_r) ** 3) - a


def read_stress_history(text: str) -> list[float]:
    """Parse a single-column CSV of stresses; a non-numeric first row is treated as a header."""
    values = []
    for i, row in enumerate(csv.reader(io.StringIO(text))):
        if not row or not row[0].strip():
            continue
        try:
            values.append(float(row[0]))
        except ValueError:
            if i == 0:
                continue
            raise DomainError(f"non-numeric stress on line {i + 1}: {row[0]!r}") from None
    return values

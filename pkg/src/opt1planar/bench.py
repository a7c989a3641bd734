"""Wall-clock scaling harness for the two recognition engines.

Times recognition only; instance generation happens outside the clock.
The quadratic engine restarts its candidate scan after every reduction,
so it is capped by default: sizes past the cap get linear-engine rows
only.  Medians over explicit repeats keep one-off scheduler noise out
of the decade ratios.
"""

from __future__ import annotations

import io
import csv
import statistics
import time
from dataclasses import dataclass, field

from .engine import recognize_linear, recognize_quadratic
from .generator import random_optimal

#: default ceiling for the quadratic engine; past this it gets skipped
QUAD_CAP = 100_000


@dataclass
class BenchRow:
    n: int
    engine: str
    median_s: float
    times_s: list[float] = field(repr=False)
    accepted: bool = True

    @property
    def min_s(self) -> float:
        return min(self.times_s)

    @property
    def max_s(self) -> float:
        return max(self.times_s)


def _time_one(fn, g) -> tuple[float, bool]:
    t0 = time.perf_counter()
    res = fn(g)
    return time.perf_counter() - t0, bool(res)


def run_bench(
    sizes: list[int],
    repeats: int = 3,
    seed: int = 0,
    quad_cap: int | None = QUAD_CAP,
    prefer: str = "cr",
) -> list[BenchRow]:
    rows: list[BenchRow] = []
    for n in sizes:
        lin: list[float] = []
        quad: list[float] = []
        ok = True
        for r in range(repeats):
            inst = random_optimal(n, seed=seed + 7919 * r, prefer=prefer)
            t, acc = _time_one(recognize_linear, inst.graph)
            lin.append(t)
            ok = ok and acc
            if quad_cap is None or n <= quad_cap:
                t, acc = _time_one(recognize_quadratic, inst.graph)
                quad.append(t)
                ok = ok and acc
        rows.append(BenchRow(n, "linear", statistics.median(lin), lin, ok))
        if quad:
            rows.append(BenchRow(n, "quadratic", statistics.median(quad), quad, ok))
    return rows


def decade_ratios(rows: list[BenchRow], engine: str) -> list[float]:
    """t(next)/t(prev) over the engine's rows in size order."""
    ours = sorted((r for r in rows if r.engine == engine), key=lambda r: r.n)
    return [b.median_s / a.median_s for a, b in zip(ours, ours[1:])]


def to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["n", "engine", "median_s", "min_s", "max_s", "repeats", "accepted"])
    for r in rows:
        w.writerow([r.n, r.engine, f"{r.median_s:.6f}", f"{r.min_s:.6f}",
                    f"{r.max_s:.6f}", len(r.times_s), int(r.accepted)])
    return buf.getvalue()

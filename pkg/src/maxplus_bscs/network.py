"""Battery allocation across a network of swapping stations.

Station i earns r_i per swap and completes swaps every
max(a_i, b_i, (b_i+c_i)/m_i) time units when holding m_i packs, so its
income rate grows linearly in m_i up to a saturation point and is constant
after.  Given a fleet of M packs the heuristic seeds counts proportional to
w_i = r_i/(b_i+c_i) and then moves surplus packs from saturated stations to
the most valuable unsaturated ones; a brute-force enumeration over integer
compositions serves as the optimality oracle on small instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np


@dataclass(frozen=True)
class NetworkStation:
    """Mean interarrival a, swap time b, charge time c, income per swap r."""

    a: float
    b: float
    c: float
    r: float

    def __post_init__(self):
        if not self.a >= 0:
            raise ValueError("mean interarrival a must be nonnegative")
        if not self.b > 0:
            raise ValueError("swap time b must be positive")
        if not self.c > 0:
            raise ValueError("charge time c must be positive")
        if not self.r >= 0:
            raise ValueError("income per swap r must be nonnegative")

    @property
    def weight(self) -> float:
        """Allocation weight r/(b+c): income per unit of pack turnaround."""
        return self.r / (self.b + self.c)


@dataclass(frozen=True)
class AllocationPlan:
    counts: tuple[int, ...]
    total_income_rate: float
    thresholds: tuple[int, ...]
    saturated: tuple[bool, ...]
    warning: str | None = None

    def to_jsonable(self) -> dict:
        out = {
            "counts": list(self.counts),
            "objective": self.total_income_rate,
            "thresholds": list(self.thresholds),
            "saturated": list(self.saturated),
        }
        if self.warning is not None:
            out["warning"] = self.warning
        return out


def income_rate(st: NetworkStation, m: int) -> float:
    """Income per unit time r / max(a, b, (b+c)/m) with m packs."""
    if m < 1:
        raise ValueError("a station needs at least one battery pack")
    return st.r / max(st.a, st.b, (st.b + st.c) / m)


def threshold(st: NetworkStation) -> int:
    """Integer part of (b+c)/max(a, b), clamped to at least one pack.

    Income saturates once m reaches (b+c)/max(a,b); the integer part equals
    that saturating count when the ratio is integral and sits one pack below
    it otherwise.
    """
    return max(1, math.floor((st.b + st.c) / max(st.a, st.b)))


def evaluate(stations, counts) -> float:
    """Total network income rate for the given per-station pack counts."""
    return sum(income_rate(st, m) for st, m in zip(stations, counts))


def allocate_heuristic(stations, total: int) -> AllocationPlan:
    """Proportional seeding by w_i = r_i/(b_i+c_i) plus surplus redistribution.

    Seeds m_i = round(total * w_i / sum w), clamps to >= 1 and repairs the sum
    by largest remainders.  Then, while some station exceeds its threshold,
    one pack moves from it to the unsaturated station with the largest weight
    (ties to the lowest index).  If no station can receive, the surplus stays
    where it is and the plan carries a warning; the fleet constraint
    sum m_i = total always holds.
    """
    stations = list(stations)
    n = len(stations)
    if n < 1:
        raise ValueError("need at least one station")
    if total < n:
        raise ValueError(f"infeasible fleet: {total} packs for {n} stations")

    weights = np.array([st.weight for st in stations])
    if weights.sum() > 0:
        ideal = total * weights / weights.sum()
    else:
        ideal = np.full(n, total / n)
    counts = [max(1, round(v)) for v in ideal]

    # Largest-remainder repair of the fleet-size constraint.
    residual = ideal - np.array(counts)
    order = sorted(range(n), key=lambda i: (-residual[i], i))
    while sum(counts) < total:
        for i in order:
            counts[i] += 1
            if sum(counts) == total:
                break
    while sum(counts) > total:
        for i in reversed(order):
            if counts[i] > 1:
                counts[i] -= 1
            if sum(counts) == total:
                break

    thresholds = [threshold(st) for st in stations]
    warning = None
    while True:
        donors = [i for i in range(n) if counts[i] > thresholds[i]]
        if not donors:
            break
        receivers = [j for j in range(n) if counts[j] < thresholds[j]]
        if not receivers:
            warning = ("all stations saturated; surplus packs left in place "
                       "to keep the fleet constraint")
            break
        donor = donors[0]
        recv = max(receivers, key=lambda j: (stations[j].weight, -j))
        counts[donor] -= 1
        counts[recv] += 1

    counts_t = tuple(counts)
    return AllocationPlan(
        counts=counts_t,
        total_income_rate=evaluate(stations, counts_t),
        thresholds=tuple(thresholds),
        saturated=tuple(c >= t for c, t in zip(counts_t, thresholds)),
        warning=warning,
    )


def allocate_bruteforce(stations, total: int,
                        max_compositions: int = 10_000_000) -> AllocationPlan:
    """Exhaustive search over positive integer compositions of the fleet.

    Ties resolve to the lexicographically smallest counts.  Guarded by the
    composition count C(total-1, n-1); oversized instances are refused.
    """
    stations = list(stations)
    n = len(stations)
    if n < 1:
        raise ValueError("need at least one station")
    if total < n:
        raise ValueError(f"infeasible fleet: {total} packs for {n} stations")
    n_comp = math.comb(total - 1, n - 1)
    if n_comp > max_compositions:
        raise ValueError(f"instance too large for exhaustive search: "
                         f"{n_comp} compositions")

    best_counts = None
    best_val = -math.inf
    for cuts in combinations(range(1, total), n - 1):
        bounds = (0, *cuts, total)
        counts = tuple(bounds[i + 1] - bounds[i] for i in range(n))
        val = evaluate(stations, counts)
        if val > best_val:
            best_val = val
            best_counts = counts

    thresholds = tuple(threshold(st) for st in stations)
    return AllocationPlan(
        counts=best_counts,
        total_income_rate=best_val,
        thresholds=thresholds,
        saturated=tuple(c >= t for c, t in zip(best_counts, thresholds)),
    )


def stations_from_config(obj) -> tuple[list[NetworkStation], int | None]:
    """Parse a network config: a bare station array, or {"stations":..., "M":...}."""
    total = None
    if isinstance(obj, dict):
        total = obj.get("M")
        obj = obj.get("stations")
    if not isinstance(obj, list) or not obj:
        raise ValueError("network config needs a nonempty station array")
    stations = []
    for entry in obj:
        try:
            stations.append(NetworkStation(a=float(entry["a"]), b=float(entry["b"]),
                                           c=float(entry["c"]), r=float(entry["r"])))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad station entry: {entry!r}") from exc
    if total is not None:
        total = int(total)
    return stations, total

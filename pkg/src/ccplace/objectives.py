"""Objective evaluation and the Pareto arithmetic built on top.

A placement maps to five minimised components: negated dispersion (how well
devices interleave), layout-effect mismatch (well-proximity imbalance
between devices), routed net length, diffusion breaks, and dummy count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .netlist import Netlist
from .placement import Placement, Unit, count_diffusion_breaks, count_dummies
from .routing import routing_cost

OBJECTIVE_NAMES = ("neg_dispersion", "lde_mismatch", "routing_cost", "diffusion_breaks", "dummy_count")


@dataclass(frozen=True)
class ObjectiveVector:
    """The five minimised objectives of one placement."""

    neg_dispersion: float
    lde_mismatch: float
    routing_cost: int
    diffusion_breaks: int
    dummy_count: int

    def as_tuple(self) -> tuple:
        return (
            self.neg_dispersion,
            self.lde_mismatch,
            self.routing_cost,
            self.diffusion_breaks,
            self.dummy_count,
        )


def dispersion(p: Placement) -> Fraction:
    """Interleaving statistic in (-1, 1] over the grid's adjacency edges.

    +1 when every edge joins units of different devices, -1 when none does.
    Edges touching dummies or empty cells count as same-device.
    """
    rows, cols = p.dims.rows, p.dims.cols
    n_edges = 2 * rows * cols - rows - cols
    if n_edges == 0:
        raise ValueError("dispersion is undefined on a 1x1 grid")
    ok = 0
    for i, c in enumerate(p.cells):
        if not isinstance(c, Unit):
            continue
        x, y = p.coord(i)
        if x < cols:
            right = p.cells[i + 1]
            if isinstance(right, Unit) and right.device != c.device:
                ok += 1
        if y < rows:
            below = p.cells[i + cols]
            if isinstance(below, Unit) and below.device != c.device:
                ok += 1
    return Fraction(2 * ok - n_edges, n_edges)


def inv_wpe(p: Placement, device: str) -> Fraction:
    """Inverse-distance proxy for the well-proximity shift of one device.

    Sums 1/x + 1/(r+1-x) + 1/y + 1/(c+1-y) over the device's units, where r
    is the cells per row and c the cells per column; larger when units hug
    the array edges.  The horizontal terms double as a diffusion-length
    proxy.
    """
    r, c = p.dims.cols, p.dims.rows
    total = Fraction(0)
    found = False
    for i, cell in enumerate(p.cells):
        if isinstance(cell, Unit) and cell.device == device:
            found = True
            x, y = p.coord(i)
            total += Fraction(1, x) + Fraction(1, r + 1 - x) + Fraction(1, y) + Fraction(1, c + 1 - y)
    if not found:
        raise ValueError(f"device {device!r} has no units in the placement")
    return total


def lde_mismatch(p: Placement, nl: Netlist) -> Fraction:
    """Pairwise spread of the per-unit mean inverse-WPE across devices.

    Zero exactly when all devices see the same mean edge proximity; a single
    device yields 0 by convention (empty pair sum).
    """
    means = [inv_wpe(p, d.name) / d.unit_count for d in nl.devices]
    total = Fraction(0)
    for k in range(len(means)):
        for l in range(k + 1, len(means)):
            total += abs(means[k] - means[l])
    return total


def evaluate(p: Placement, nl: Netlist, *, route_cache: dict | None = None) -> ObjectiveVector:
    """All five objectives of a placement; pure and deterministic."""
    return ObjectiveVector(
        neg_dispersion=float(-dispersion(p)),
        lde_mismatch=float(lde_mismatch(p, nl)),
        routing_cost=routing_cost(p, nl, cache=route_cache),
        diffusion_breaks=count_diffusion_breaks(p, nl),
        dummy_count=count_dummies(p, nl),
    )


# ---------------------------------------------------------------------------
# Pareto arithmetic
# ---------------------------------------------------------------------------


def _components(v) -> tuple:
    return v.as_tuple() if isinstance(v, ObjectiveVector) else tuple(v)


def dominates(a, b) -> bool:
    """Strict Pareto domination: no component worse, at least one better."""
    ta, tb = _components(a), _components(b)
    if len(ta) != len(tb):
        raise ValueError(f"objective vectors differ in length: {len(ta)} vs {len(tb)}")
    return all(x <= y for x, y in zip(ta, tb)) and ta != tb


class ObjectiveRanges:
    """Running per-component (min, max) envelope of all evaluated vectors.

    The widths normalise domination amounts; a component never seen to vary
    gets width 1 so it stays neutral.
    """

    def __init__(self) -> None:
        self._lo: list[float] | None = None
        self._hi: list[float] | None = None

    @classmethod
    def from_bounds(cls, bounds: Iterable[tuple[float, float]]) -> "ObjectiveRanges":
        r = cls()
        pairs = list(bounds)
        r._lo = [float(lo) for lo, _ in pairs]
        r._hi = [float(hi) for _, hi in pairs]
        return r

    def update(self, vec) -> None:
        t = _components(vec)
        if self._lo is None:
            self._lo = [float(v) for v in t]
            self._hi = [float(v) for v in t]
            return
        if len(t) != len(self._lo):
            raise ValueError(f"expected {len(self._lo)} components, got {len(t)}")
        for i, v in enumerate(t):
            if v < self._lo[i]:
                self._lo[i] = float(v)
            if v > self._hi[i]:
                self._hi[i] = float(v)

    def width(self, i: int) -> float:
        if self._lo is None:
            raise ValueError("no vectors observed yet")
        span = self._hi[i] - self._lo[i]
        return span if span > 0 else 1.0

    def bounds(self) -> list[tuple[float, float]]:
        if self._lo is None:
            return []
        return list(zip(self._lo, self._hi))


def delta_dom(a, b, ranges: ObjectiveRanges) -> float:
    """Amount of domination: the product of normalised gaps over the
    components where ``a`` and ``b`` differ.  Undefined for equal vectors."""
    ta, tb = _components(a), _components(b)
    if ta == tb:
        raise ValueError("domination amount is undefined for identical vectors")
    out = 1.0
    for i, (x, y) in enumerate(zip(ta, tb)):
        if x != y:
            out *= abs(x - y) / ranges.width(i)
    return out

"""Multi-candidate, archive-based simulated annealing over CC placements.

Each iteration perturbs the current placement into a whole candidate set
(one mirrored swap plus every label-exchange variant), prunes it to the
admissible non-dominated front, and resolves the current point by domination
case analysis; every surviving candidate then challenges the archive.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .netlist import Netlist
from .objectives import ObjectiveRanges, ObjectiveVector, delta_dom, dominates, evaluate
from .placement import (
    GridDims,
    Placement,
    PlacementError,
    Unit,
    count_diffusion_breaks,
    enumerate_perturbations,
    transform_xx180,
)

DEFAULT_SELECTION_WEIGHTS = (1.0, 3.0, 3.0, 5.0, 5.0)


@dataclass(frozen=True)
class SaConfig:
    """Annealing schedule, admissibility bounds, and selection weights.

    ``db_max`` / ``dummy_max`` of None bound candidates at the initial
    placement's own counts.  ``original_accept`` switches to the classic
    temperature-multiplied acceptance formula; it exists only for
    comparison runs.
    """

    t_max: float = 100.0
    t_min: float = 1e-7
    alpha: float = 0.37
    iters_per_temp: int = 100
    db_max: int | None = None
    dummy_max: int | None = None
    seed: int = 0
    selection_weights: tuple[float, float, float, float, float] = DEFAULT_SELECTION_WEIGHTS
    original_accept: bool = False

    def __post_init__(self) -> None:
        if not (0 < self.t_min < self.t_max):
            raise ValueError(f"need 0 < t_min < t_max, got t_min={self.t_min}, t_max={self.t_max}")
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"cooling rate must be in (0, 1), got {self.alpha}")
        if self.iters_per_temp < 1:
            raise ValueError(f"iters_per_temp must be positive, got {self.iters_per_temp}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")
        if len(self.selection_weights) != 5 or any(w < 0 for w in self.selection_weights):
            raise ValueError("selection_weights must be five non-negative reals")


@dataclass(frozen=True)
class Solution:
    """A placement together with its (never stale) objective vector."""

    placement: Placement
    objectives: ObjectiveVector


class Archive:
    """Insertion-ordered set of mutually non-dominated solutions."""

    def __init__(self, track_removed: bool = False):
        self._solutions: list[Solution] = []
        self.removed: list[ObjectiveVector] | None = [] if track_removed else None

    def __len__(self) -> int:
        return len(self._solutions)

    def __iter__(self):
        return iter(self._solutions)

    @property
    def solutions(self) -> tuple[Solution, ...]:
        return tuple(self._solutions)

    def insert(self, sol: Solution) -> bool:
        """Admit ``sol`` unless dominated; evict members it dominates.

        Exact duplicates (same label grid and same vector) are rejected;
        distinct placements with equal vectors coexist.
        """
        vec = sol.objectives
        for s in self._solutions:
            if dominates(s.objectives, vec):
                return False
        kept = []
        for s in self._solutions:
            if dominates(vec, s.objectives):
                if self.removed is not None:
                    self.removed.append(s.objectives)
                continue
            kept.append(s)
        grid = sol.placement.label_grid()
        for s in kept:
            if s.objectives == vec and s.placement.label_grid() == grid:
                self._solutions = kept
                return False
        kept.append(sol)
        self._solutions = kept
        return True


def accept_probability(delta_avg: float, temp: float, original: bool = False) -> float:
    """Probability of adopting a candidate from the dominated side.

    0.5 at zero average domination, decreasing with the gap; high
    temperatures flatten the curve toward 0.5 (more exploration).  Large
    arguments saturate to 0 instead of overflowing.
    """
    if temp <= 0:
        raise ValueError(f"temperature must be positive, got {temp}")
    x = delta_avg * temp if original else delta_avg / temp
    if x > 700.0:
        return 0.0
    return 1.0 / (1.0 + math.exp(x))


def delta_dom_avg(cur: Solution, new_pts, archive, ranges: ObjectiveRanges) -> float:
    """Mean domination amount exerted on the candidates by the archive and
    the current point.

    Averages over every (archive member, candidate) pair with domination
    plus every candidate the current point dominates.  Raises when no such
    relation exists; the case analysis in ``step`` never calls it then.
    """
    total = 0.0
    count = 0
    for s in archive:
        for cand in new_pts:
            if dominates(s.objectives, cand.objectives):
                total += delta_dom(s.objectives, cand.objectives, ranges)
                count += 1
    for cand in new_pts:
        if dominates(cur.objectives, cand.objectives):
            total += delta_dom(cur.objectives, cand.objectives, ranges)
            count += 1
    if count == 0:
        raise ValueError("no domination relations between current point, archive, and candidates")
    return total / count


def _choose_next(cur, new_pts, archive, ranges, temp, rng, original_accept):
    """Resolve the next current point from a non-dominated candidate set.

    Candidates dominating the current point win unconditionally; otherwise a
    uniformly picked survivor is adopted with the acceptance probability.
    Within a mutually non-dominated candidate set the dominated-by-cur and
    dominating-cur subsets cannot both be non-empty (transitivity), so the
    three cases are exclusive.
    """
    dominators = [s for s in new_pts if dominates(s.objectives, cur.objectives)]
    if dominators:
        return dominators[int(rng.integers(len(dominators)))]
    dominated = {i for i, s in enumerate(new_pts) if dominates(cur.objectives, s.objectives)}
    pool = [s for i, s in enumerate(new_pts) if i not in dominated] if dominated else list(new_pts)
    if not pool:
        return cur
    pick = pool[int(rng.integers(len(pool)))]
    try:
        avg = delta_dom_avg(cur, new_pts, archive, ranges)
    except ValueError:
        avg = 0.0  # no domination relations at all: neutral exploration
    if rng.random() < accept_probability(avg, temp, original_accept):
        return pick
    return cur


class CcAnnealer:
    """Binds a netlist and grid to the annealing loop, caching evaluations.

    Objective evaluation is pure, so candidates are evaluated in their
    deterministic enumeration order (and could run in parallel) before any
    RNG draw happens; seed reproducibility is unaffected.
    """

    def __init__(self, nl: Netlist, dims: GridDims, cfg: SaConfig | None = None,
                 track_removed: bool = False):
        self.netlist = nl
        self.dims = dims
        self.cfg = cfg if cfg is not None else SaConfig()
        self.ranges = ObjectiveRanges()
        self._route_cache: dict = {}
        self._eval_cache: dict = {}
        self.archive = Archive(track_removed=track_removed)
        self.initial = initial_placement(nl, dims, evaluate_fn=self.evaluate)
        self.db_max = self.cfg.db_max if self.cfg.db_max is not None \
            else self.initial.objectives.diffusion_breaks
        self.dummy_max = self.cfg.dummy_max if self.cfg.dummy_max is not None \
            else self.initial.objectives.dummy_count
        self.ranges.update(self.initial.objectives)
        self.archive.insert(self.initial)

    def evaluate(self, placement: Placement) -> ObjectiveVector:
        key = placement.label_grid()
        vec = self._eval_cache.get(key)
        if vec is None:
            vec = evaluate(placement, self.netlist, route_cache=self._route_cache)
            self._eval_cache[key] = vec
        return vec

    def step(self, cur: Solution, temp: float, rng) -> Solution:
        """One perturbation round; updates the archive in place and returns
        the next current point (``cur`` itself when nothing was admissible)."""
        candidates = enumerate_perturbations(
            cur.placement, self.netlist, rng, self.db_max, self.dummy_max
        )
        if not candidates:
            return cur
        evaluated = [Solution(c, self.evaluate(c)) for c in candidates]
        for s in evaluated:
            self.ranges.update(s.objectives)
        new_pts = [
            s for s in evaluated
            if not any(dominates(o.objectives, s.objectives) for o in evaluated if o is not s)
        ]
        nxt = _choose_next(cur, new_pts, self.archive, self.ranges, temp, rng,
                           self.cfg.original_accept)
        for s in new_pts:
            self.archive.insert(s)
        return nxt

    def run(self, on_iteration=None) -> Archive:
        """Full anneal: geometric cooling from t_max down to t_min.

        Each temperature level draws from its own seeded stream, so a
        change in one level's iteration count cannot cascade into others.
        """
        cur = self.initial
        temp = self.cfg.t_max
        level = 0
        while temp > self.cfg.t_min:
            rng = np.random.default_rng([self.cfg.seed, level])
            for _ in range(self.cfg.iters_per_temp):
                cur = self.step(cur, temp, rng)
                if on_iteration is not None:
                    on_iteration(self.archive, cur, temp)
            temp *= self.cfg.alpha
            level += 1
        return self.archive


def initial_placement(nl: Netlist, dims: GridDims, evaluate_fn=None) -> Solution:
    """Mirrored sequential construction minimising diffusion breaks.

    Units of each device are grouped; the device order is chosen by
    exhaustive permutation (up to 8 devices, tiny at these sizes) or a
    greedy shared-terminal chain beyond that.  Half the units fill the grid
    sequentially, the other half is their 180-degree rotation, so the
    result is always common-centroid.

    A device with an odd unit count needs a grid with a true centre cell
    (odd rows and odd columns) to host its middle unit, and only one such
    device is supported; anything else fails with a diagnostic.
    """
    total = nl.total_units
    if total > dims.cells:
        raise PlacementError(f"{total} units do not fit a {dims.rows}x{dims.cols} grid")
    odd = [d for d in nl.devices if d.unit_count % 2]
    if odd:
        if len(odd) > 1 or dims.rows % 2 == 0 or dims.cols % 2 == 0:
            names = [d.name for d in odd]
            raise PlacementError(
                f"odd unit counts ({names}) need an odd-rows x odd-cols grid with a "
                f"single such device; got {dims.rows}x{dims.cols}"
            )
    if len(nl.devices) <= 8:
        orders = itertools.permutations(nl.devices)
    else:
        orders = [_greedy_chain(nl.devices)]
    best = None
    for order in orders:
        p = _mirrored_fill(order, dims)
        breaks = count_diffusion_breaks(p, nl)
        if best is None or breaks < best[0]:
            best = (breaks, p)
    placement = best[1]
    vec = evaluate_fn(placement) if evaluate_fn is not None else evaluate(placement, nl)
    return Solution(placement, vec)


def _mirrored_fill(order, dims: GridDims) -> Placement:
    half: list[Unit] = []
    centre_unit = None
    for d in order:
        m = d.unit_count // 2
        half.extend(Unit(d.name, k) for k in range(m))
        if d.unit_count % 2:
            centre_unit = Unit(d.name, d.unit_count - 1)
    p = transform_xx180(half, dims)
    if centre_unit is not None:
        cells = list(p.cells)
        cells[(dims.cells - 1) // 2] = centre_unit
        p = Placement(dims, tuple(cells))
    return p


def _greedy_chain(devices):
    rest = list(devices)
    order = [rest.pop(0)]
    while rest:
        tail = order[-1]
        for i, d in enumerate(rest):
            if tail.diffusion_nets & d.diffusion_nets:
                order.append(rest.pop(i))
                break
        else:
            order.append(rest.pop(0))
    return tuple(order)


def run(nl: Netlist, dims: GridDims, cfg: SaConfig | None = None, *,
        on_iteration=None, track_removed: bool = False) -> Archive:
    """Anneal a netlist on the given grid; deterministic for a fixed config."""
    annealer = CcAnnealer(nl, dims, cfg, track_removed=track_removed)
    return annealer.run(on_iteration=on_iteration)


def select_solution(archive, weights=None) -> Solution:
    """Pick the archive member minimising the weighted sum of min-max
    normalised objectives; ties fall back to lexicographic objective order.

    Min-max normalisation makes the argmin invariant under positive affine
    rescaling of any raw objective column.
    """
    sols = list(archive)
    if not sols:
        raise ValueError("archive is empty")
    w = tuple(weights) if weights is not None else DEFAULT_SELECTION_WEIGHTS
    if len(w) != 5:
        raise ValueError(f"expected five weights, got {len(w)}")
    columns = list(zip(*(s.objectives.as_tuple() for s in sols)))
    lows = [min(col) for col in columns]
    spans = [max(col) - min(col) for col in columns]

    def score(s: Solution) -> float:
        t = s.objectives.as_tuple()
        return sum(
            wi * ((v - lo) / span if span > 0 else 0.0)
            for wi, v, lo, span in zip(w, t, lows, spans)
        )

    return min(sols, key=lambda s: (score(s), s.objectives.as_tuple()))

"""Placement grid for common-centroid unit arrays.

Cells hold device units, dummies, or nothing.  Coordinates are 1-based:
``x`` is the column (1..cols, left to right), ``y`` the row (1..rows, top to
bottom).  Every operation returns a new placement; nothing mutates in place,
so values are safe to share between workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .netlist import Netlist


class PlacementError(ValueError):
    """Raised for invalid grids, cells, or transformation preconditions."""


@dataclass(frozen=True)
class GridDims:
    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise PlacementError(f"grid must be at least 1x1, got {self.rows}x{self.cols}")

    @property
    def cells(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class Unit:
    """One unit transistor of a device.

    ``flip`` mirrors the source/drain orientation.  Sharing tests quantify
    over both orientations of a unit, so the stored flag is carried through
    transformations but never consulted by the objectives.
    """

    device: str
    index: int
    flip: bool = False


@dataclass(frozen=True)
class Dummy:
    """Non-functional filler unit; shares diffusion with any neighbour."""


DUMMY = Dummy()

# Empty cells are stored as None.
Cell = Unit | Dummy | None


@dataclass(frozen=True)
class Placement:
    """A rectangular grid of cells in row-major order."""

    dims: GridDims
    cells: tuple[Cell, ...]

    def __post_init__(self) -> None:
        if len(self.cells) != self.dims.cells:
            raise PlacementError(f"expected {self.dims.cells} cells, got {len(self.cells)}")

    # -- indexing -----------------------------------------------------------

    def index(self, x: int, y: int) -> int:
        if not (1 <= x <= self.dims.cols and 1 <= y <= self.dims.rows):
            raise PlacementError(f"position ({x}, {y}) outside {self.dims.rows}x{self.dims.cols} grid")
        return (y - 1) * self.dims.cols + (x - 1)

    def coord(self, i: int) -> tuple[int, int]:
        y, x = divmod(i, self.dims.cols)
        return x + 1, y + 1

    def at(self, x: int, y: int) -> Cell:
        return self.cells[self.index(x, y)]

    def rot180_index(self, i: int) -> int:
        return self.dims.cells - 1 - i

    # -- views --------------------------------------------------------------

    def label_grid(self) -> tuple:
        """Device name per cell (DUMMY / None for fillers).

        Unit indices and flips are deliberately excluded: no objective
        depends on them, so this is the right key for caches and equality
        of topologies.
        """
        return tuple(
            c.device if isinstance(c, Unit) else (DUMMY if isinstance(c, Dummy) else None)
            for c in self.cells
        )

    def unit_positions(self) -> dict[str, list[tuple[int, int]]]:
        pos: dict[str, list[tuple[int, int]]] = {}
        for i, c in enumerate(self.cells):
            if isinstance(c, Unit):
                pos.setdefault(c.device, []).append(self.coord(i))
        return pos

    def validate(self, nl: Netlist) -> None:
        """Check that exactly the netlist's unit multiset is placed."""
        expected = {(d.name, k) for d in nl.devices for k in range(d.unit_count)}
        got = [(c.device, c.index) for c in self.cells if isinstance(c, Unit)]
        if len(got) != len(set(got)):
            dup = next(u for u in got if got.count(u) > 1)
            raise PlacementError(f"unit {dup} placed more than once")
        missing = expected - set(got)
        if missing:
            raise PlacementError(f"unit {sorted(missing)[0]} is not placed")
        extra = set(got) - expected
        if extra:
            raise PlacementError(f"unit {sorted(extra)[0]} does not belong to the netlist")


@dataclass(frozen=True)
class CentroidReport:
    """Exact per-device centroids; ``is_cc`` iff all sit at the array centre."""

    centroids: dict[str, tuple[Fraction, Fraction]]
    center: tuple[Fraction, Fraction]
    is_cc: bool


def check_cc(p: Placement) -> CentroidReport:
    """Compute each device's (mean column, mean row) in exact rationals."""
    sums: dict[str, list[int]] = {}
    for i, c in enumerate(p.cells):
        if isinstance(c, Unit):
            x, y = p.coord(i)
            acc = sums.setdefault(c.device, [0, 0, 0])
            acc[0] += x
            acc[1] += y
            acc[2] += 1
    center = (Fraction(p.dims.cols + 1, 2), Fraction(p.dims.rows + 1, 2))
    centroids = {d: (Fraction(sx, n), Fraction(sy, n)) for d, (sx, sy, n) in sums.items()}
    return CentroidReport(centroids, center, all(c == center for c in centroids.values()))


def _is_cc(p: Placement) -> bool:
    # Integer-only fast path equivalent to check_cc(p).is_cc; keeps the
    # perturbation filter off Fraction arithmetic.
    cols1 = p.dims.cols + 1
    rows1 = p.dims.rows + 1
    sums: dict[str, list[int]] = {}
    for i, c in enumerate(p.cells):
        if isinstance(c, Unit):
            x, y = p.coord(i)
            acc = sums.setdefault(c.device, [0, 0, 0])
            acc[0] += x
            acc[1] += y
            acc[2] += 1
    return all(2 * sx == n * cols1 and 2 * sy == n * rows1 for sx, sy, n in sums.values())


# ---------------------------------------------------------------------------
# Diffusion breaks and dummies
# ---------------------------------------------------------------------------

_SHARES_ANY = object()  # a dummy neighbour shares with anything


def break_positions(p: Placement, nl: Netlist) -> frozenset[tuple[int, int]]:
    """Diffusion breaks as (x, y): between columns x and x+1 in row y.

    Two horizontally adjacent units share iff some flip orientation brings
    equal nets into contact, i.e. their {source, drain} sets intersect.
    Dummies share with anything; empty cells have no junction at all.
    """
    nets: dict[str, frozenset[str]] = {d.name: d.diffusion_nets for d in nl.devices}
    out = set()
    for y in range(1, p.dims.rows + 1):
        prev = None  # left cell's terminal sets, _SHARES_ANY after a dummy, None after empty
        for x in range(1, p.dims.cols + 1):
            cell = p.cells[(y - 1) * p.dims.cols + (x - 1)]
            if cell is None:
                prev = None
                continue
            if isinstance(cell, Dummy):
                prev = _SHARES_ANY
                continue
            try:
                terms = nets[cell.device]
            except KeyError:
                raise PlacementError(f"device {cell.device!r} is not in the netlist") from None
            if prev is not None and prev is not _SHARES_ANY and not (prev & terms):
                out.add((x - 1, y))
            prev = terms
    return frozenset(out)


def count_diffusion_breaks(p: Placement, nl: Netlist) -> int:
    return len(break_positions(p, nl))


def _gap_orbit(point, rows, cols):
    # Gap (x, y) sits between columns x and x+1, so the horizontal mirror
    # sends x to cols - x (not cols + 1 - x as for cells).
    x, y = point
    return {(x, y), (cols - x, y), (x, rows + 1 - y), (cols - x, rows + 1 - y)}


def _cell_orbit(point, rows, cols):
    x, y = point
    return {(x, y), (cols + 1 - x, y), (x, rows + 1 - y), (cols + 1 - x, rows + 1 - y)}


def dummy_positions(p: Placement, nl: Netlist) -> frozenset[tuple]:
    """Dummy slots needed to fill every break while keeping CC symmetry.

    Break gaps and explicit dummy cells are closed under both mirrors and
    the 180-degree rotation, since a lone filler would destroy the very
    symmetry the placement exists for.  Entries are tagged ("gap", x, y) or
    ("cell", x, y).
    """
    rows, cols = p.dims.rows, p.dims.cols
    gaps: set[tuple[int, int]] = set()
    for point in break_positions(p, nl):
        gaps |= _gap_orbit(point, rows, cols)
    cells: set[tuple[int, int]] = set()
    for i, c in enumerate(p.cells):
        if isinstance(c, Dummy):
            cells |= _cell_orbit(p.coord(i), rows, cols)
    return frozenset({("gap", x, y) for x, y in gaps} | {("cell", x, y) for x, y in cells})


def count_dummies(p: Placement, nl: Netlist) -> int:
    """Dummies required by the breaks plus the explicit dummies already placed."""
    return len(dummy_positions(p, nl))


# ---------------------------------------------------------------------------
# Perturbation moves
# ---------------------------------------------------------------------------


def swap_mirrored(p: Placement, a: tuple[int, int], b: tuple[int, int]) -> Placement:
    """Swap the units at first-half positions ``a`` and ``b`` and repeat the
    identical swap on their 180-degree image cells.

    The first half is row-major index < cells // 2 (the centre cell of an
    odd grid belongs to neither half).
    """
    ia, ib = p.index(*a), p.index(*b)
    half = p.dims.cells // 2
    for pos, i in ((a, ia), (b, ib)):
        if i >= half:
            raise PlacementError(f"position {pos} is not in the first half of the grid")
        if not isinstance(p.cells[i], Unit):
            raise PlacementError(f"position {pos} does not hold a unit")
    cells = list(p.cells)
    ja, jb = p.rot180_index(ia), p.rot180_index(ib)
    cells[ia], cells[ib] = cells[ib], cells[ia]
    cells[ja], cells[jb] = cells[jb], cells[ja]
    return Placement(p.dims, tuple(cells))


def transform_xx180(half, dims: GridDims) -> Placement:
    """Fill the first ``len(half)`` cells with the given units and the last
    ``len(half)`` with their 180-degree rotation, keeping device labels.

    ``half`` entries are Units or bare device names (auto-indexed in order
    of appearance).  Per device the half must carry unit indices 0..m-1; the
    rotated copy receives m..2m-1.  Any slack sits in the middle of the
    grid, which is its own 180-degree image, so the result is
    common-centroid for every device by construction.
    """
    norm: list[Unit] = []
    auto: dict[str, int] = {}
    for u in half:
        if isinstance(u, str):
            k = auto.get(u, 0)
            auto[u] = k + 1
            norm.append(Unit(u, k))
        elif isinstance(u, Unit):
            norm.append(u)
        else:
            raise PlacementError(f"half entries must be Unit or device name, got {type(u).__name__}")
    n = dims.cells
    if 2 * len(norm) > n:
        raise PlacementError(f"{len(norm)} units cannot be mirrored into a {dims.rows}x{dims.cols} grid")
    counts: dict[str, int] = {}
    for u in norm:
        counts[u.device] = counts.get(u.device, 0) + 1
    indices: dict[str, set[int]] = {}
    for u in norm:
        indices.setdefault(u.device, set()).add(u.index)
    for device, m in counts.items():
        if indices[device] != set(range(m)):
            raise PlacementError(f"device {device!r}: half must carry unit indices 0..{m - 1}")
    cells: list[Cell] = [None] * n
    for i, u in enumerate(norm):
        cells[i] = u
        m = counts[u.device]
        cells[n - 1 - i] = Unit(u.device, 2 * m - 1 - u.index, u.flip)
    return Placement(dims, tuple(cells))


def transform_xy180(p: Placement, x_name: str, y_name: str) -> Placement:
    """Exchange the device labels of ``x`` and ``y`` within the rotated
    (second) half of the grid; the devices must have equal unit counts."""
    if x_name == y_name:
        raise PlacementError("label exchange needs two distinct devices")
    n_x = sum(1 for c in p.cells if isinstance(c, Unit) and c.device == x_name)
    n_y = sum(1 for c in p.cells if isinstance(c, Unit) and c.device == y_name)
    if n_x == 0 or n_y == 0:
        missing = x_name if n_x == 0 else y_name
        raise PlacementError(f"device {missing!r} has no units in the placement")
    if n_x != n_y:
        raise PlacementError(
            f"label exchange needs equal unit counts, got {x_name}:{n_x} vs {y_name}:{n_y}"
        )
    start = (p.dims.cells + 1) // 2  # centre cell of an odd grid stays put
    cells = list(p.cells)
    for i in range(start, len(cells)):
        c = cells[i]
        if isinstance(c, Unit):
            if c.device == x_name:
                cells[i] = Unit(y_name, c.index, c.flip)
            elif c.device == y_name:
                cells[i] = Unit(x_name, c.index, c.flip)
    out = Placement(p.dims, tuple(cells))
    return _renumber_duplicates(out)


def _renumber_duplicates(p: Placement) -> Placement:
    # Keeping indices across a label exchange is involutive and collision-free
    # for placements built by the mirrored constructions; hand-built inputs may
    # collide and get their later occurrences renumbered deterministically.
    by_dev: dict[str, list[int]] = {}
    for i, c in enumerate(p.cells):
        if isinstance(c, Unit):
            by_dev.setdefault(c.device, []).append(i)
    cells = None
    for device, spots in by_dev.items():
        seen: set[int] = set()
        clashes = []
        for i in spots:
            u = p.cells[i] if cells is None else cells[i]
            if u.index in seen:
                clashes.append(i)
            else:
                seen.add(u.index)
        if not clashes:
            continue
        if cells is None:
            cells = list(p.cells)
        free = iter(sorted(set(range(len(spots))) - seen))
        for i in clashes:
            cells[i] = Unit(device, next(free), cells[i].flip)
    return p if cells is None else Placement(p.dims, tuple(cells))


def enumerate_perturbations(
    p: Placement,
    nl: Netlist,
    rng,
    db_max: int | None = None,
    dummy_max: int | None = None,
) -> list[Placement]:
    """One random mirrored swap plus every label-exchange variant over
    equal-count device pairs, filtered down to admissible CC candidates.

    ``rng`` needs a numpy-Generator-compatible ``integers``.  Candidates
    identical to ``p`` (no-op swaps) are dropped; the rest must pass the CC
    check and the break/dummy bounds.  May return [] -- the caller simply
    retries with a fresh draw on the next iteration.
    """
    half = p.dims.cells // 2
    spots = [i for i in range(half) if isinstance(p.cells[i], Unit)]
    if len(spots) < 2:
        return []
    i = int(rng.integers(len(spots)))
    j = int(rng.integers(len(spots) - 1))
    if j >= i:
        j += 1
    base = swap_mirrored(p, p.coord(spots[i]), p.coord(spots[j]))

    candidates = [base]
    for ai in range(len(nl.devices)):
        for bi in range(ai + 1, len(nl.devices)):
            da, db = nl.devices[ai], nl.devices[bi]
            if da.unit_count == db.unit_count:
                candidates.append(transform_xy180(base, da.name, db.name))

    out = []
    seen = {p.label_grid()}
    for cand in candidates:
        key = cand.label_grid()
        if key in seen:
            continue
        seen.add(key)
        if not _is_cc(cand):
            continue
        if db_max is not None and count_diffusion_breaks(cand, nl) > db_max:
            continue
        if dummy_max is not None and count_dummies(cand, nl) > dummy_max:
            continue
        out.append(cand)
    return out

"""Grid rendering and JSON run reports.

Reports round-trip losslessly: parsing an emitted report reproduces the
archive exactly.  The canonical JSON bytes are deterministic for a fixed
seed and config; wall-clock time is therefore excluded unless explicitly
requested.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .anneal import Archive, Solution
from .netlist import DeviceSpec, Netlist
from .objectives import ObjectiveVector
from .placement import DUMMY, Dummy, GridDims, Placement, PlacementError, Unit

DUMMY_CHAR = "·"
_LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789"


def _letter_map(names) -> dict[str, str]:
    """One render character per device: the name itself when every name is a
    single character, else letters assigned in sorted-name order."""
    ordered = sorted(set(names))
    if all(len(n) == 1 for n in ordered):
        return {n: n for n in ordered}
    if len(ordered) > len(_LETTERS):
        raise PlacementError(f"cannot render more than {len(_LETTERS)} devices")
    return {n: _LETTERS[i] for i, n in enumerate(ordered)}


def render_placement(p: Placement) -> str:
    """Character grid: one cell per unit, '·' for dummies, blank for empty."""
    letters = _letter_map(c.device for c in p.cells if isinstance(c, Unit))
    lines = []
    for y in range(1, p.dims.rows + 1):
        chars = []
        for x in range(1, p.dims.cols + 1):
            c = p.at(x, y)
            if isinstance(c, Unit):
                chars.append(letters[c.device])
            elif isinstance(c, Dummy):
                chars.append(DUMMY_CHAR)
            else:
                chars.append(" ")
        lines.append(" ".join(chars))
    return "\n".join(lines)


def parse_rendered(text: str, device_names=None) -> Placement:
    """Rebuild a placement from its rendered grid.

    Unit indices are assigned row-major per device; pass ``device_names``
    to recover full names when the rendering had to assign letters.
    """
    lines = text.splitlines()
    if not lines or not any(line.strip() for line in lines):
        raise PlacementError("empty rendering")
    if device_names is None:
        device_names = sorted(
            {ch for line in lines for ch in line[::2] if ch not in (" ", DUMMY_CHAR)}
        )
    inverse = {v: k for k, v in _letter_map(device_names).items()}
    cols = max((len(line) + 1) // 2 for line in lines)
    cells = []
    counters: dict[str, int] = {}
    for line in lines:
        padded = line.ljust(2 * cols - 1)
        for x in range(cols):
            ch = padded[2 * x]
            if ch == " ":
                cells.append(None)
            elif ch == DUMMY_CHAR:
                cells.append(DUMMY)
            else:
                device = inverse.get(ch)
                if device is None:
                    raise PlacementError(f"unknown device letter {ch!r}")
                k = counters.get(device, 0)
                counters[device] = k + 1
                cells.append(Unit(device, k))
    return Placement(GridDims(len(lines), cols), tuple(cells))


# ---------------------------------------------------------------------------
# JSON serialisation
# ---------------------------------------------------------------------------


@dataclass
class RunReport:
    """Everything needed to reproduce and inspect one optimisation run."""

    seed: int
    config: dict
    dims: GridDims
    netlist: dict
    archive: list[Solution]
    selected: int
    ranges: list[tuple[float, float]]
    wall_clock_s: float | None = None


def netlist_to_dict(nl: Netlist) -> dict:
    return {
        "devices": [
            {"name": d.name, "units": d.unit_count, "gate": d.gate_net,
             "source": d.source_net, "drain": d.drain_net}
            for d in nl.devices
        ],
        "route_nets": [{"net": net, "members": list(members)} for net, members in nl.route_nets],
    }


def netlist_from_dict(doc: dict) -> Netlist:
    devices = tuple(
        DeviceSpec(d["name"], d["units"], d["gate"], d["source"], d["drain"])
        for d in doc["devices"]
    )
    nets = tuple((n["net"], tuple(n["members"])) for n in doc.get("route_nets", []))
    return Netlist(devices, nets)


def _cell_to_json(c):
    if c is None:
        return None
    if isinstance(c, Dummy):
        return "dummy"
    return [c.device, c.index, c.flip]


def _cell_from_json(v):
    if v is None:
        return None
    if v == "dummy":
        return DUMMY
    device, index, flip = v
    return Unit(device, index, bool(flip))


def _placement_to_json(p: Placement) -> dict:
    return {
        "rows": p.dims.rows,
        "cols": p.dims.cols,
        "cells": [_cell_to_json(c) for c in p.cells],
    }


def _placement_from_json(doc: dict) -> Placement:
    dims = GridDims(doc["rows"], doc["cols"])
    return Placement(dims, tuple(_cell_from_json(c) for c in doc["cells"]))


def _objectives_to_json(o: ObjectiveVector) -> dict:
    return {
        "neg_dispersion": o.neg_dispersion,
        "lde_mismatch": o.lde_mismatch,
        "routing_cost": o.routing_cost,
        "diffusion_breaks": o.diffusion_breaks,
        "dummy_count": o.dummy_count,
    }


def _objectives_from_json(doc: dict) -> ObjectiveVector:
    return ObjectiveVector(
        neg_dispersion=doc["neg_dispersion"],
        lde_mismatch=doc["lde_mismatch"],
        routing_cost=doc["routing_cost"],
        diffusion_breaks=doc["diffusion_breaks"],
        dummy_count=doc["dummy_count"],
    )


def report_to_json(r: RunReport, include_timing: bool = False) -> str:
    """Serialise a report; byte-stable for a fixed seed and config.

    ``include_timing`` adds the wall-clock field and intentionally breaks
    byte-for-byte comparability between runs.
    """
    doc = {
        "seed": r.seed,
        "config": r.config,
        "grid": {"rows": r.dims.rows, "cols": r.dims.cols},
        "netlist": r.netlist,
        "archive": [
            {"placement": _placement_to_json(s.placement),
             "objectives": _objectives_to_json(s.objectives)}
            for s in r.archive
        ],
        "selected": r.selected,
        "objective_ranges": [[lo, hi] for lo, hi in r.ranges],
    }
    if include_timing and r.wall_clock_s is not None:
        doc["wall_clock_s"] = r.wall_clock_s
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def report_from_json(text: str) -> RunReport:
    doc = json.loads(text)
    archive = [
        Solution(_placement_from_json(e["placement"]), _objectives_from_json(e["objectives"]))
        for e in doc["archive"]
    ]
    return RunReport(
        seed=doc["seed"],
        config=doc["config"],
        dims=GridDims(doc["grid"]["rows"], doc["grid"]["cols"]),
        netlist=doc["netlist"],
        archive=archive,
        selected=doc["selected"],
        ranges=[(lo, hi) for lo, hi in doc["objective_ranges"]],
        wall_clock_s=doc.get("wall_clock_s"),
    )

"""Shared fixtures: the canonical two-device instance and helpers."""

from __future__ import annotations

import pytest

from ccplace import DeviceSpec, GridDims, Netlist, parse_rendered


class FakeRng:
    """Scripted stand-in for a numpy Generator (integers/random only)."""

    def __init__(self, integers=(), randoms=()):
        self._ints = list(integers)
        self._floats = list(randoms)

    def integers(self, n):
        v = self._ints.pop(0)
        assert 0 <= v < n, f"scripted draw {v} out of range {n}"
        return v

    def random(self):
        return self._floats.pop(0)


def make_grid(rows, names=None):
    """Placement from per-cell characters, e.g. ["AABB", "BBAA"]."""
    return parse_rendered("\n".join(" ".join(row) for row in rows), names)


@pytest.fixture
def fake_rng_cls():
    return FakeRng


@pytest.fixture
def pair_netlist():
    """Two matched 4-unit devices wired in parallel (all terminals shared),
    with one routing net per device's units."""
    return Netlist(
        (
            DeviceSpec("A", 4, gate_net="G", source_net="S", drain_net="D"),
            DeviceSpec("B", 4, gate_net="G", source_net="S", drain_net="D"),
        ),
        (("A", ("A",)), ("B", ("B",))),
    )


@pytest.fixture
def pair_dims():
    return GridDims(2, 4)


@pytest.fixture
def topologies():
    """The four CC patterns of the 4+4 instance on a 2x4 grid."""
    return {
        1: make_grid(["ABAB", "BABA"]),
        2: make_grid(["AABB", "BBAA"]),
        3: make_grid(["ABBA", "ABBA"]),
        4: make_grid(["ABBA", "BAAB"]),
    }


@pytest.fixture
def disjoint_pair_netlist():
    """Two 4-unit devices with no shared diffusion nets (every junction
    between them is a break)."""
    return Netlist(
        (
            DeviceSpec("A", 4, gate_net="GA", source_net="n1", drain_net="n2"),
            DeviceSpec("B", 4, gate_net="GB", source_net="n3", drain_net="n4"),
        ),
        (("A", ("A",)), ("B", ("B",))),
    )

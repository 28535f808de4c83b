"""Placements, centroids, and diffusion accounting.

A placement is a small grid of unit transistors.  A layout is
common-centroid (CC) when every device's centroid sits exactly at the array
centre, which cancels linear process gradients across the die.
"""

from ccplace import (
    DeviceSpec,
    Netlist,
    check_cc,
    count_diffusion_breaks,
    count_dummies,
    parse_rendered,
    render_placement,
)

# Two matched devices, four units each.  A and B share a source net, so
# adjacent units of different devices can still share a diffusion region.
netlist = Netlist(
    (
        DeviceSpec("A", 4, gate_net="GA", source_net="S", drain_net="DA"),
        DeviceSpec("B", 4, gate_net="GB", source_net="S", drain_net="DB"),
    ),
)

good = parse_rendered("A B B A\nB A A B")
bad = parse_rendered("A A B B\nA A B B")

for name, p in [("interleaved", good), ("clustered", bad)]:
    report = check_cc(p)
    print(f"--- {name} ---")
    print(render_placement(p))
    for device, centroid in sorted(report.centroids.items()):
        print(f"  centroid {device}: ({centroid[0]}, {centroid[1]})")
    print(f"  array centre: ({report.center[0]}, {report.center[1]}), "
          f"common-centroid: {report.is_cc}")
    print(f"  diffusion breaks: {count_diffusion_breaks(p, netlist)}, "
          f"dummies needed: {count_dummies(p, netlist)}")
    print()

# A layout whose devices have no shareable nets needs dummy fillers, and the
# fillers must come in symmetric sets to preserve the centroids.
isolated = Netlist(
    (
        DeviceSpec("A", 1, gate_net="GA", source_net="n1", drain_net="n2"),
        DeviceSpec("B", 3, gate_net="GB", source_net="n3", drain_net="n4"),
    ),
)
p = parse_rendered("A B B B\n       ")
print("--- isolated nets ---")
print(render_placement(p))
print(f"  one break, but symmetry closure needs {count_dummies(p, isolated)} dummies")

"""The move set: mirrored construction, mirrored swaps, label exchanges.

Every candidate the optimiser looks at comes from three mechanical moves
that preserve (or are filtered back to) the common-centroid property.
"""

import numpy as np

from ccplace import (
    DeviceSpec,
    GridDims,
    Netlist,
    check_cc,
    enumerate_perturbations,
    render_placement,
    swap_mirrored,
    transform_xx180,
    transform_xy180,
)

# 1. Mirrored construction: fill half the grid, rotate it 180 degrees into
#    the other half.  The result is CC for every device, by symmetry.
half = ["A", "A", "B", "B"]
base = transform_xx180(half, GridDims(2, 4))
print("mirrored construction from half [A A B B]:")
print(render_placement(base))
print("common-centroid:", check_cc(base).is_cc)
print()

# 2. Mirrored swap: exchange two first-half units and repeat the exchange on
#    their images, so the symmetry survives.
swapped = swap_mirrored(base, (2, 1), (3, 1))
print("after swapping (2,1) and (3,1) plus their mirror images:")
print(render_placement(swapped))
print("common-centroid:", check_cc(swapped).is_cc)
print()

# 3. Label exchange: swap two equal-count devices' names inside the rotated
#    half only.  Some exchanges keep CC, others do not and get filtered.
for pair in [("A", "B")]:
    variant = transform_xy180(base, *pair)
    print(f"label exchange {pair} on the rotated half:")
    print(render_placement(variant))
    print("common-centroid:", check_cc(variant).is_cc)
print()

# The perturbation generator bundles all of this: one random mirrored swap,
# plus every label-exchange variant, filtered to admissible CC candidates.
netlist = Netlist(
    (
        DeviceSpec("A", 4, gate_net="G", source_net="S", drain_net="D"),
        DeviceSpec("B", 4, gate_net="G", source_net="S", drain_net="D"),
    ),
)
rng = np.random.default_rng(0)
candidates = enumerate_perturbations(base, netlist, rng)
print(f"one perturbation round produced {len(candidates)} admissible candidate(s):")
for c in candidates:
    print(render_placement(c))
    print()

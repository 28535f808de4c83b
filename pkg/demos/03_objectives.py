"""The five objectives, shown on the four classic 4+4 topologies.

Dispersion rewards interleaving, the layout-effect mismatch punishes
devices that see different average edge proximity, the routing model
estimates wire length, and breaks/dummies account for diffusion gaps.
The trade-offs are real: no topology wins everywhere.
"""

from ccplace import (
    DeviceSpec,
    Netlist,
    dispersion,
    evaluate,
    inv_wpe,
    lde_mismatch,
    parse_rendered,
    routing_cost,
)

netlist = Netlist(
    (
        DeviceSpec("A", 4, gate_net="G", source_net="S", drain_net="D"),
        DeviceSpec("B", 4, gate_net="G", source_net="S", drain_net="D"),
    ),
    (("A", ("A",)), ("B", ("B",))),
)

topologies = {
    "1  (fully interleaved)": "A B A B\nB A B A",
    "2  (half blocks)": "A A B B\nB B A A",
    "3  (B clustered centre)": "A B B A\nA B B A",
    "4  (ring)": "A B B A\nB A A B",
}

print(f"{'topology':<26}{'dispersion':>12}{'lde':>10}{'routing':>9}")
for name, text in topologies.items():
    p = parse_rendered(text)
    d = dispersion(p)
    l = lde_mismatch(p, netlist)
    r = routing_cost(p, netlist)
    print(f"{name:<26}{str(d):>12}{str(l):>10}{r:>9}")

print()
print("Topology 1 spreads best but pays in wire length; 2 and 3 route")
print("cheapest; only 3 leaves a layout-effect imbalance, because device B")
print("never touches the array edge:")
p3 = parse_rendered(topologies["3  (B clustered centre)"])
print(f"  inverse-WPE sums: A = {inv_wpe(p3, 'A')}, B = {inv_wpe(p3, 'B')}")
print()
print("The full objective vector (all components minimised):")
for name, text in topologies.items():
    print(f"  {name:<26}{evaluate(parse_rendered(text), netlist).as_tuple()}")

"""Lists the minimal connected graphs with dtd_graph 3 on at most seven vertices
and compares them with the packaged four-graph obstruction catalog."""
from degencount.graph import canonical_label
from degencount.minors import minimal_dtd3_graphs, obstructions

catalog = {canonical_label(g): name for name, g in obstructions()}
found = minimal_dtd3_graphs(7)
print(f"{len(found)} minimal dtd-3 graphs on <= 7 vertices")
for g in found:
    tag = catalog.get(canonical_label(g), "not in catalog")
    print(f"  n={g.n} m={g.m} {tag:>15}  " + " ".join(f"{u}-{v}" for u, v in g.edges()))

"""A tour of the library on small graphs: orientations, elimination forests,
constant-space hom counting and the sub/ind expansions."""
from degencount import (acyclic_orientations, count_hom, count_ind, count_sub, dtd_dag, dtd_graph, dtw_graph,
                        sub_expansion)
from degencount.families import cycle, path, random_degenerate
from degencount.homcount import HomStats, count_hom_dag, oriented_host

c6 = cycle(6)
print(f"C6 has {len(acyclic_orientations(c6))} acyclic orientations")
worst = max(acyclic_orientations(c6), key=lambda d: dtd_dag(d)[0])
depth, forest = dtd_dag(worst)
print(f"deepest orientation {worst.arcs()} has dtd {depth}; forest:\n{forest.render()}")
print(f"dtd_graph(C6) = {dtd_graph(c6)}, dtw_graph(C6) = {dtw_graph(c6)}")

host = random_degenerate(5000, 2, seed=42)
host_dag, d = oriented_host(host)
stats = HomStats()
n_dir = count_hom_dag(host_dag, worst, forest, stats)
print(f"host: n={host.n}, m={host.m}, degeneracy {d}")
print(f"directed homs of that orientation: {n_dir} (peak aux {stats.peak_aux_bytes} bytes, depth {stats.max_depth})")

print("sub(P3) expansion:")
print(sub_expansion(path(3)).format(), end="")
# the ind expansion of C6 sums over every 6-vertex supergraph, so use a smaller host here
small = random_degenerate(150, 2, seed=42)
print(f"on n={small.n}: hom(C6) = {count_hom(c6, small)}, sub(C6) = {count_sub(c6, small)}, "
      f"ind(C6) = {count_ind(c6, small)}")

"""The two graph rewrites that generate local Clifford equivalence.

op_mult scales every edge at a vertex by a nonzero constant; op_star
adds a * A_vj * A_vk to every other pair (the qubit a = 1 case is local
complementation). Both leave every cut rank - hence all bipartite
entanglement - unchanged, so an orbit can be explored to find, say, the
sparsest representative of a state.
"""

import itertools

from amegraph import cut_edits, graph_from_edges, op_mult, op_star
from amegraph.entanglement import lc_orbit, min_edge_representative

quad = graph_from_edges(3, 4, [(0, 1, 1), (0, 2, 1), (1, 3, 2), (2, 3, 1)])
print("start:", quad.edges())

g = quad
for v in (0, 2, 1):
    g = op_star(g, v, 1)
print("after the rewrite chain *1 at vertices 1, 3, 2:", g.edges())

cuts = list(itertools.combinations(range(4), 2))
print("cut ranks before:", [cut_edits(quad, c) for c in cuts])
print("cut ranks after: ", [cut_edits(g, c) for c in cuts])

g2 = op_mult(quad, 3, 2)
print("after scaling vertex 4's star by 2:", g2.edges())
print("cut ranks still:", [cut_edits(g2, c) for c in cuts])

orbit = lc_orbit(quad, max_nodes=5000)
print(f"\nrewrite orbit size (exact adjacency dedup): {len(orbit.graphs)}",
      f"truncated: {orbit.truncated}")
sparse = min_edge_representative(quad, max_nodes=5000)
print("fewest edges in the orbit:", sparse.edge_count(), "->", sparse.edges())

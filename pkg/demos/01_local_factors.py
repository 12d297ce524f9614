"""
Local factors of a coprimality graph
====================================

Each graph G on vertices 1..k has a per-prime factor Q(1/p). This script builds
it three independent ways for the 4-cycle and for a seven-vertex graph with two
isolated vertices, and shows that the routes agree.
"""

# %%
from coprimality import graph as gr
from coprimality import local_factor as lf

c4 = gr.cycle_graph(4)
print("edges", c4.sorted_edges())
print("independent set counts", gr.independent_set_counts(c4))

# %%
# independent sets: sum over m of i_m x^m (1 - x)^(k - m)
print(lf.factor_by_independent_sets(c4).to_list())

# %%
# signed edge subsets grouped by the vertices they touch
M = lf.factor_by_edge_subsets(c4)
print(M.pretty())
print(lf.collapse(M).to_list())

# %%
# vertex cover expansion, with J = {1, 3}
J = gr.min_vertex_cover(c4)
print("cover", sorted(J), "terms", [sorted(L) for L in lf.cover_terms(c4, J)])
print(lf.factor_by_vertex_cover(c4, J) == M)

# %%
# the seven-vertex graph: the monomial x2 x4 x5 picks up coefficient 2
g = gr.example2_graph()
M = lf.factor_by_vertex_cover(g, {1, 2, 4})
print(M.to_dict())
print(lf.collapse(M).to_list())

# %%
# the Mobius convolution of the characteristic function sees the same coefficients
print(lf.mobius_delta_oracle(g, (2, 2, 1, 1, 1, 1, 1)), M.coeff({1, 2}))
print(lf.mobius_delta_oracle(g, (1, 3, 1, 3, 3, 1, 1)), M.coeff({2, 4, 5}))

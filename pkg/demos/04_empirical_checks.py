"""
Counting tuples directly
========================

Exact counts on a box [1, x]^k and seeded Monte Carlo draws from [1, X]^k,
compared with the computed densities.
"""

# %%
from coprimality import density as dn
from coprimality import empirical as em
from coprimality.graph import CoprimalityGraph, cycle_graph

pair = CoprimalityGraph.from_edges(2, [(1, 2)])
for x in (10, 100, 1000):
    res = em.count_delta_exact(pair, x)
    print(x, res.count, res.estimate)

# %%
# the normalized remainder |D(x)/x^k - A| * x / log x stays bounded
for row in em.convergence_diagnostic(cycle_graph(4), [20, 40, 80]):
    print(row)

# %%
# two independent exact counters for exactly r coprime pairs
for r in range(4):
    print(r, em.count_beta_exact(3, r, dn.EXACT, 30).count,
          em.count_beta_via_inclusion_exclusion(3, r, 30).count)

# %%
res = em.monte_carlo((4, 0, dn.EXACT), X=10**6, samples=10**6, seed=1)
target = float(dn.density_exact_r(4, 0).value)
print(res.estimate, "+-", res.ci_halfwidth, "target", target, "brackets", res.brackets(target))

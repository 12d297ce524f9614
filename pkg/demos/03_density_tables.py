"""
Densities of tuples by number of coprime pairs
==============================================

C_{k,r} is the density of k-tuples with exactly r coprime pairs. It is a signed
sum over all graphs on k vertices, grouped here into isomorphism classes.
"""

# %%
from coprimality import density as dn
from coprimality.euler import format_decimal

table = dn.build_iso_table(4)
for c in table.classes:
    print(c.num_edges, c.multiplicity, c.factor.to_list())

# %%
for k in (2, 3, 4, 5):
    row = [dn.density_exact_r(k, r) for r in range(k * (k - 1) // 2 + 1)]
    print(k, " ".join(f"{float(rep.value):.6f}" for rep in row),
          "sum", format_decimal(sum(rep.value for rep in row)))

# %%
# pairwise non-coprime and pairwise coprime tuples
for k in (3, 4):
    for rep in (dn.density_pairwise_noncoprime(k), dn.density_pairwise_coprime(k)):
        print(rep.label, format_decimal(rep.value), f"+- {rep.error_bound:.1e}")

# %%
# the explicit closed form for k = 4 uses the same merged weights
print(dn.density_weights(4, 0))
print(format_decimal(dn.density_C4_closed().value))

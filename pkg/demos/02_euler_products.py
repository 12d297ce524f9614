"""
Euler products with a rigorous error bound
==========================================

A local factor Q(x) = 1 + a_2 x^2 + ... becomes a density through the product
of Q(1/p) over all primes. The product is truncated at a prime limit P and the
missing tail is bounded explicitly.
"""

# %%
import math

import numpy as np

from coprimality.euler import evaluate, format_decimal, sieve_primes, zeta_inverse

primes = sieve_primes(10**7)
print(len(primes), primes[:10])

# %%
# 1 - x^2 gives 1/zeta(2) = 6/pi^2
for P in (10**3, 10**5, 10**7):
    v = evaluate([1, 0, -1], P)
    print(P, format_decimal(v.value), f"bound {v.error_bound:.2e}",
          f"actual {abs(float(v.value) - 6 / math.pi**2):.2e}")

# %%
# the bound always covers the gap to any later truncation
lo, hi = evaluate([1, 0, -4, 4, -1], 10**5), evaluate([1, 0, -4, 4, -1], 10**7)
print(abs(float(hi.value - lo.value)), "<=", lo.error_bound)

# %%
# working precision is the platform long double
print(np.finfo(np.longdouble))
print(format_decimal(zeta_inverse(3).value))

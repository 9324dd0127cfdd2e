"""
Tail probabilities from the incomplete beta function
====================================================
"""

import numpy as np

from ordolex.stats import f_log10_sf, f_sf, reg_inc_beta, t_sf2

print(reg_inc_beta(0.5, 2, 2))  # 0.5 by symmetry
x = np.linspace(0.05, 0.95, 5)
print([round(reg_inc_beta(v, 3, 5) + reg_inc_beta(1 - v, 5, 3), 12) for v in x])

# F tails, including ones far below double precision underflow
print(f_sf(8.58, 3, 101))
print(f_sf(586.46, 1, 1484))
print(f_log10_sf(5000.0, 1, 1484))

# two-sided t tail
print(t_sf2(2.0, 10))

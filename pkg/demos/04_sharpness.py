"""The A_p family: p - 1 realizations, and a bound that says exactly that."""
from __future__ import annotations

import numpy as np

from arrmod import best_tower, build, count_components_univariate, upper_bound
from arrmod.families import a_p_combinatorics, a_p_tower
from arrmod.parametrization import realizations_univariate
from arrmod.perturbation import find_m_perturbation

for p in (2, 3, 5, 7):
    n = 2 * p + 2
    C = a_p_combinatorics(p)
    tower = find_m_perturbation(C, start=(n, (2, 3, n)))
    param = build(tower)
    roots = np.array(realizations_univariate(param))
    print(f"p={p}: count={count_components_univariate(param)} bound={upper_bound(a_p_tower(p))}")
    print("   residual condition:", param.deltas[0])
    print("   roots on the unit circle:", np.allclose(np.abs(roots), 1.0))

# the bound depends on the tower and its order; best_tower searches for a small one
for p in (3, 5):
    C = a_p_combinatorics(p)
    print(f"A_{p}: first tower bound", upper_bound(find_m_perturbation(C)),
          "optimized", upper_bound(best_tower(C)))

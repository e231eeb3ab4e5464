"""Perturbation towers: from A_3 down to an inductively connected base."""
from __future__ import annotations

from arrmod import find_m_perturbation, kappa, naive_dimension, perturb
from arrmod.families import a_p_combinatorics, pappus
from arrmod.perturbation import iter_minimal_perturbations

C = a_p_combinatorics(3)
print("A_3 points:", C.points)
print("kappa:", kappa(C))

# one elementary step: pull line 8 off the point (2, 3, 8)
D = perturb(C, 8, (2, 3, 8))
print("sigma", C.sigma(), "->", D.sigma(), "; naive", naive_dimension(C), "->", naive_dimension(D))

tower = find_m_perturbation(C)
print("first tower:", tower.steps, "order", tower.order.sequence)

towers = list(iter_minimal_perturbations(C))
print(len(towers), "minimal towers over", len({t.base for t in towers}), "bases")

print("Pappus kappa:", kappa(pappus()[1]))

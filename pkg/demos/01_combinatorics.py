"""Combinatorics, types and orders on a few small arrangements."""
from __future__ import annotations

from arrmod import combinatorics_of, find_ic_order, find_rigid_order, naive_dimension, type_of
from arrmod.families import ceva, figure_ic, figure_type, y_n

# Ceva: six lines, four triple points
A, C = ceva()
print("Ceva points:", C.points)
print("naive dimension:", naive_dimension(C))
print("type in index order:", type_of(C))

# an IC order keeps every tau_i <= 2; certificates carry their own type
cert = find_ic_order(C)
print("IC order:", cert.order.sequence, "tau:", cert.tau)

# recompute combinatorics from the rational equations
print("round trip ok:", combinatorics_of(A) == C)

# the eight-line figure has a 3 in its type; the first seven lines do not
for make in (figure_type, figure_ic):
    _, F = make()
    print(make.__name__, type_of(F), "IC:", find_ic_order(F) is not None)

# Y_2 is rigid but not inductively connected
_, Y2 = y_n(2)
print("Y_2 rigid:", find_rigid_order(Y2) is not None, "IC:", find_ic_order(Y2) is not None)

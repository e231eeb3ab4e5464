"""Structure classes: c-class, C3-simple cases, nice arrangements."""
from __future__ import annotations

from arrmod import Combinatorics, c3_simple_type, c_class, is_nice, rigid_pencil_form
from arrmod.errors import NotC3
from arrmod.families import rigid_pencil_example

_, C = rigid_pencil_example()
k, witness = c_class(C)
print("ten-line example: c-class", k, "witness", witness)
try:
    c3_simple_type(C)
except NotC3 as exc:
    print("not C3:", exc)

# a concurrent three-line cover: the second C3 case
D = Combinatorics.from_points(9, [[1, 2, 3], [1, 4, 5], [2, 6, 7], [3, 8, 9]])
print("c3 case:", c3_simple_type(D))
form = rigid_pencil_form(D)
print("rigid pencil form:", form.to_json() if form else None)

# two triangle-free stars make a nice arrangement
stars = Combinatorics.from_points(
    13, [[1, 2, 3], [1, 7, 8], [2, 7, 9], [4, 5, 6], [4, 10, 11], [5, 10, 12], [8, 11, 13]]
)
print("nice centres:", is_nice(stars))

"""Hand-built combinatorics used across the tests."""
from arrmod.combinatorics import Combinatorics

# two triangles in the incidence graph joined by a path; stars at {1,2,3} and {4,5,6}
TWO_STARS = Combinatorics.from_points(
    13, [[1, 2, 3], [1, 7, 8], [2, 7, 9], [4, 5, 6], [4, 10, 11], [5, 10, 12], [8, 11, 13]]
)

# generic cover {1,2,3}; line 1 carries a single triple point
C3_CASE_I = Combinatorics.from_points(13, [[1, 4, 5], [2, 6, 7], [2, 8, 9], [3, 10, 11], [3, 12, 13]])

# concurrent cover {1,2,3}
C3_CASE_II = Combinatorics.from_points(9, [[1, 2, 3], [1, 4, 5], [2, 6, 7], [3, 8, 9]])

# generic cover {1,2,3}, every cover line carries two triple points
C3_NONE = Combinatorics.from_points(
    15, [[1, 4, 5], [1, 6, 7], [2, 8, 9], [2, 10, 11], [3, 12, 13], [3, 14, 15]]
)

# Xbar(5) plus a generic sixth line, and a pencil-first IC order for it
XBAR5_PLUS = Combinatorics.from_points(6, [[1, 2, 3, 4]])
PENCIL_FIRST = (1, 2, 3, 4, 5, 6)

CEVA_POINTS = [[1, 2, 4], [1, 3, 5], [2, 3, 6], [4, 5, 6]]

# reference list of the ten-line example, doubles included (19 points)
RIGID_PENCIL_POINTS = [
    [1, 2, 5], [1, 3, 6, 10], [1, 4, 7], [1, 8], [1, 9], [2, 3, 7],
    [2, 4, 6, 9], [2, 8], [2, 10], [3, 4, 5], [3, 8, 9], [4, 8, 10],
    [5, 6], [5, 7], [5, 8], [5, 9, 10], [6, 7, 8], [7, 9], [7, 10],
]

RIGID_SUB_POINTS = [
    [1, 2, 5], [1, 3, 6], [1, 4, 7], [2, 3, 7], [2, 4, 6], [3, 4, 5], [5, 6], [5, 7], [6, 7],
]

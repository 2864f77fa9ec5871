"""
Forbidden 0-1 matrix patterns
=============================

Exact extremal functions for small patterns, the polarity construction
for the 2 x 2 all-ones pattern, and stacking into higher dimensions.
"""

from turanlab import all_ones, from_rows, inflate, mat_contains, mat_ex_exact, polarity_construction, stack

###############################################################################
# The Zarankiewicz numbers z(n; 2) for n up to 5, with a witness.

J = all_ones(2, 2)
for n in range(1, 6):
    rec = mat_ex_exact(n, J)
    print(f"ex({n}, J2) = {rec.value}")
print(rec.witness.grid())

###############################################################################
# Ordered patterns behave differently: the identity and its mirror image.

I2 = from_rows([[1, 0], [0, 1]])
anti = from_rows([[0, 1], [1, 0]])
print([mat_ex_exact(n, I2).value for n in range(1, 5)])
print([mat_ex_exact(n, anti).value for n in range(1, 5)])

###############################################################################
# The polarity matrix over GF(q): q+1 ones per row and no 2 x 2 rectangle.

for q in (2, 3, 4, 5):
    M = polarity_construction(q)
    print(q, M.dims[0], len(M.ones), "contains J2:", mat_contains(M, J))

###############################################################################
# Inflating to three dimensions. Which stacked patterns are avoided depends on
# which coordinates carry the rows and columns of M.

I3 = inflate(polarity_construction(2), 2)
print(len(I3.ones), "ones")
print("contains stack(2x1, 2):", mat_contains(I3, stack(from_rows([[1], [1]]), 2)))
print("contains stack(1x2, 2):", mat_contains(I3, stack(from_rows([[1, 1]]), 2)))

# Sums, intersections and complements of two column spaces, and one-sided inverses.
from linrel import GF, inverse, left_inverse, matrix, right_inverse, subspace_report, zassenhaus

F3 = GF(3)
a = matrix([[1, 0], [0, 1]], F3)
b = matrix([[1], [1]], F3)

rep = subspace_report(a, b)
for name, basis in rep.items():
    print(f"{name:<28} dim {basis.ncols}")

# the classic route through one row reduction gives the same sum and intersection
z_sum, z_meet = zassenhaus(a, b)
print(z_sum.ncols, z_meet.ncols)

# tall injective matrices have left inverses, wide surjective ones right inverses
tall = matrix([[1], [2], [0]])
print(left_inverse(tall), right_inverse(tall))
wide = tall.T
print(wide @ right_inverse(wide))

# square: injective, surjective and invertible coincide
m = matrix([["2", "1/2"], ["1", "-3/4"]])
print(inverse(m))
print(inverse(matrix([[1, 1], [1, 1]], GF(2))))  # singular: None

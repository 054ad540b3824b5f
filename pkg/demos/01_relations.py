# Linear relations as subspaces of K^m x K^n, composed like matrices.
from linrel import GF, QQ, matrix
from linrel import relation as rel

F2 = GF(2)

# a matrix is a relation through its graph
a = matrix([[1, 2], [0, 1]])
ga = rel.graph_of_map(a)
print(ga)                          # basis rows (x | a x)
print(rel.properties(ga).labels())  # invertible: all four properties

# composition of graphs is matrix product in the opposite order
b = matrix([[1, 0], [3, 1]])
assert rel.compose(ga, rel.graph_of_map(b)) == rel.graph_of_map(b @ a)

# opposite swaps the two sides; for an invertible map it is the graph of the inverse
print(rel.opposite(ga) == rel.graph_of_map(matrix([[1, -2], [0, 1]])))

# the cospan {(x, y) : x1 + x2 = y1 + y2} over GF(2)
ones = matrix([[1, 1]], F2)
r = rel.from_cospan(ones, ones)
print(r.dim, rel.properties(r).labels())  # 3 ('TOT', 'SUR')

# kernel, image, domain and indeterminacy are subspaces (relations out of K^0)
for name in ("kernel", "image", "domain", "indeterminacy"):
    print(name, getattr(rel, name)(r).dim)

# meet and join are intersection and sum of subspaces
x_axis = rel.graph_of_map(matrix([[0]], F2))  # {(x, 0)}
diag = rel.identity(F2, 1)                    # {(x, x)}
print(rel.meet(x_axis, diag).dim, rel.join(x_axis, diag) == rel.full(F2, 1, 1))

# the interchange law: products of composites are composites of products
s, t = rel.identity(QQ, 1), rel.graph_of_map(matrix([[2]]))
lhs = rel.direct_product(rel.compose(ga, ga), rel.compose(s, t))
rhs = rel.compose(rel.direct_product(ga, s), rel.direct_product(ga, t))
print(lhs == rhs)

# Every relation is a wiring diagram up to a change of basis on each side.
from linrel import GF, classify, cospan_decompose, matrix, pair_decompose
from linrel import relation as rel

# a projection onto the first coordinate
r = rel.graph_of_map(matrix([[1, 0], [0, 0]]))
cd = cospan_decompose(r)
print(cd.shape)                 # one through wire, one discarded input, one unreached output
print(cd.p, cd.q, sep="\n")
assert cd.reconstruct() == r    # (x, y) in r  <=>  (P x, Q y) in the wire relation

# the wire counts decide the properties: no dangling wire, no failure
ones = matrix([[1, 1]], GF(2))
print(classify(rel.from_cospan(ones, ones)))

# a subspace is a relation from K^0; only output wires survive
v = rel.subspace(matrix([[1], [2], [0]]))
print(cospan_decompose(v).shape)

# pair decomposition: two matrices with a shared codomain and one injective H
a, b = matrix([[1, 0], [0, 1]]), matrix([[1], [0]])
dec = pair_decompose(a, b)
print(dec.shape, dec.j)
assert dec.h @ dec.d1 @ dec.p == a and dec.h @ dec.d2 @ dec.q == b
print(dec.h)

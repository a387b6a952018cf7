"""
Distance matrices and block structure
=====================================

A strongly connected digraph has a finite distance for every ordered pair.
Cut vertices split it into blocks, and the block structure is what every
later composition theorem runs on.
"""

from blockinv import block_decompose, distance_matrix, parse_edge_list

# two directed triangles sharing the vertex x
text = """
a -> b 1
b -> x 1
x -> a 1
x -> c 1
c -> d 1
d -> x 1
"""
g = parse_edge_list(text)

d = distance_matrix(g)
print("vertices:", g.vertices)
print("D(G) =")
print(d)

# the decomposition finds the shared vertex and the two triangle blocks
dec = block_decompose(g)
print("blocks:", dec.blocks)
print("cut vertices:", sorted(dec.cut_vertices))

n, sizes = dec.structure
print("structure: n =", n, ", block sizes =", sizes)

# two bookkeeping identities that hold for every decomposition:
# the block sizes tile the vertex set around the cut vertices,
assert sum(s - 1 for s in sizes) == n - 1
# and the total excess block membership counts the splits
assert dec.block_index_total == dec.r - 1
print("identities: sum(n_i - 1) = n - 1 and total excess =", dec.r - 1)

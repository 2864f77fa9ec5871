"""
Exact Turan numbers on a handful of vertices
============================================

We compute ex_d(n, H) exactly for a few small forbidden hypergraphs and
watch the K_{H,t} construction push the numbers up one uniformity.
"""

from turanlab import build_k_h_t, cycle, ex_exact, matching

###############################################################################
# The four-cycle. The search also returns an extremal witness, which we can
# print in the plain text format used by every command.

for n in range(1, 7):
    rec = ex_exact(n, cycle(4))
    print(f"ex_2({n}, C4) = {rec.value}")

print(rec.witness.to_text())

###############################################################################
# K_{H,t} adds t apex vertices and extends each edge of H by each apex.
# For H a 2-edge 1-uniform matching this is the bipartite graph K_{2,t}.

for t in (2, 3):
    K = build_k_h_t(matching(1, 2), t)
    print(f"K_{{M(1,2),{t}}}: {K.n} vertices, {K.m} edges;",
          "ex on 6 vertices =", ex_exact(6, K).value)

###############################################################################
# One level up: three-uniform hypergraphs avoiding K_{C4,2}.

K = build_k_h_t(cycle(4), 2)
for n in range(4, 7):
    print(f"ex_3({n}, K_(C4,2)) = {ex_exact(n, K).value}")

"""
The letter method, step by step
===============================

Lettering turns an extremal question about (d+1)-uniform hypergraphs into
one about d-uniform ones. Here we letter a concrete hypergraph, check the
inequality ex <= k (f + n) exactly, and audit the pigeonhole count.
"""

import random

from turanlab import (
    build_k_h_t,
    cycle,
    ex_exact,
    f_exact,
    kst_parameters,
    lemma2_audit,
    letter_transform,
    theorem3_bound,
    validate_lettering,
    verify_lemma1,
)
from turanlab.bounds import counting_chain
from turanlab.hypercore import random_free_hypergraph

###############################################################################
# Greedy lettering: for each vertex from the top down, the edges whose
# greatest vertex it is are cut into blocks of exactly k.

W = ex_exact(6, cycle(4)).witness
L = letter_transform(W, 2)
print(L.to_text())
print(validate_lettering(L, 2))

###############################################################################
# Both sides of ex_d(n, H) <= k (f_d(n, k, H) + n), computed exactly.

for k in (1, 2, 3):
    rep = verify_lemma1(6, k, cycle(4))
    print(f"k={k}: ex={rep.ex_value}  f={rep.f_value}  k(f+n)={rep.rhs}  holds={rep.holds}")
print("f_2(4, 2, C4) =", f_exact(4, 2, cycle(4)).value)

###############################################################################
# A random K_{C4,2}-free three-uniform hypergraph, lettered, and the
# counting chain evaluated on it.

rng = random.Random(7)
Q = random_free_hypergraph(6, 3, build_k_h_t(cycle(4), 2), rng)
audit = lemma2_audit(letter_transform(Q, 1), cycle(4), 2, ex_exact(6, cycle(4)).value)
print(f"{Q.m} edges, r={audit.r}: tuples={audit.tuple_count} <= C(r,t) ex={audit.pigeonhole_bound}")
print(audit.verdicts)

###############################################################################
# The parameters behind the bound, and the bound itself with C = 16.

for n in (10, 100, 1000):
    p = kst_parameters(n, 2, 2, n)
    print(n, p.k, p.r, counting_chain(p).contradiction, float(theorem3_bound(n, 2, 2, n).value))

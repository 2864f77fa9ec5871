"""
Dependent random choice with exact expectations
===============================================

The vertices adjacent to t random d-sets form a set B, and B is cleaned of
the r-subsets with few common neighbors. Every expectation below is an
exact rational number.
"""

from fractions import Fraction

from turanlab import DrcInstance, bound_EY, complete, drc_sweep, drc_witness, exact_expectation_X
from turanlab.drc import enumerate_expectations, hypothesis_lhs

G = complete(3, 6)
inst = DrcInstance(G, t=2, r=2, x=4)

###############################################################################
# E[X] and E[Y] from the closed forms, against a full enumeration of the
# ordered choices of T.

print(exact_expectation_X(inst))
print(bound_EY(inst))
print(enumerate_expectations(inst))

###############################################################################
# The hypothesis left side is weak at this size: for x = 4 it is negative, so
# the lemma promises nothing. The cleaned witness is still a good set.

print("lhs for x=4:", hypothesis_lhs(inst))
w = drc_witness(inst)
print("A =", w.A, " removed", w.removed, "of X =", w.X)

###############################################################################
# With t = 1 and x = 0 the left side is positive, and setting a to it asks the
# witness to reach size at least a.

inst = DrcInstance(G, 1, 2, 0)
inst = DrcInstance(G, 1, 2, 0, hypothesis_lhs(inst))
w = drc_witness(inst)
print("a =", inst.a, " A =", w.A, " guarantee met:", w.guarantee_ok)

###############################################################################
# A full sweep over every three-uniform hypergraph on four vertices.

rep = drc_sweep(4)
print(rep.instances, "instances,", rep.hypothesis_instances, "with a > 0, violations:", len(rep.violations))
print(Fraction(rep.hypothesis_instances, rep.instances))

"""
Thue-Morse: where coincidence fails
===================================

The Thue-Morse substitution is primitive with integer inflation 2, but its
final letters cycle, so the theorem does not apply. The overlap graph then
exhibits a class that never reaches a coincidence.
"""

from fractions import Fraction

from substral import Substitution, TileSet, theorem_certify
from substral.coincidence import dense_coincidence_probe
from substral.tiling import FixedTiling

phi = Substitution.from_strings("12", "21")
report = theorem_certify(phi)
h = report.hypotheses
print("primitive:", h.primitive, "| injective on first letters:", h.initial_injective)
print("last letters:", [w[-1] for w in phi.images], "-> eventually constant:", h.final_eventually_constant)
print("overall verdict:", report.verdict.kind.value)
print("witness cycle:", " -> ".join(str(c) for c in report.verdict.cycle))

# the overlap (1, 2, 0) reproduces itself: a 1 over a 2 inflates to 12 over 21
for node in report.graph.nodes:
    kids = ", ".join(str(c) for c in report.graph.edges[node])
    print(f"  {node} -> {kids}")

# two fixed tilings differing left of 0 stay apart at every sampled point
ts = TileSet.from_substitution(phi)
u1, u2 = FixedTiling(ts, 2, 1, 1), FixedTiling(ts, 2, 1, 2)
probe = dense_coincidence_probe(u1, u2, Fraction(-1, 2), 0, 64, 12)
print("hit fraction on [-1/2, 0]:", probe.hit_fraction)

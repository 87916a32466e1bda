"""
The golden substitution as a tiling of the line
===============================================

Start from the beta-substitution of the golden mean, build its
self-similar tiling with exact endpoints in Q(sqrt 5), and watch two
different tilings fall into step under inflation.
"""

from fractions import Fraction

from substral import Substitution, TileSet, admissible_seed, render_patch, theorem_certify
from substral.coincidence import dense_coincidence_probe, eventually_coincident_at
from substral.tiling import FixedTiling, Patch, PatchTiling

phi = Substitution.from_strings("21", "1")
ts = TileSet.from_substitution(phi)
lam = ts.inflation
print("inflation:", lam.decimal(), "with minimal polynomial", ts.field.min_poly)
print("tile lengths:", [w.decimal(12) for w in ts.lengths])

# the fixed tiling grown from the least admissible seed
k, a, b = admissible_seed(phi)
tiling = FixedTiling(ts, k, a, b)
print(f"seed (k, a, b) = {(k, a, b)}")
print("B_3:", render_patch(tiling.window(3), digits=6))

# inflation scales supports and commutes with translation, exactly
patch = tiling.window(2)
lo, hi = patch.support
image = ts.inflate(patch)
assert image.support == (lam * lo, lam * hi)
assert ts.inflate(patch.shifted(lam)) == image.shifted(lam * lam)

# two single tiles with right ends at 0 coincide after one step of phi^2
ts2 = ts.power(2)
t1 = PatchTiling(ts2, Patch([ts2.tile(1, -ts.length(1))]))
t2 = PatchTiling(ts2, Patch([ts2.tile(2, -ts.length(2))]))
print("coincidence level at t = -1/2:", eventually_coincident_at(t1, t2, Fraction(-1, 2), 8, ts2))

eps = ts.length(1) / lam**2
probe = dense_coincidence_probe(t1, t2, -eps, 0, 64, 8, ts2)
print("covered fraction of [-omega_1/lambda^2, 0]:", probe.coverage.decimal(6))

report = theorem_certify(phi)
print("verdict:", report.verdict.kind.value, "| overlap graph:", report.overlap.kind.value,
      f"on {len(report.graph.nodes)} classes")

"""
Arnoux-Rauzy, Brun and Jacobi-Perron products
=============================================

Products of the elementary substitutions from multidimensional continued
fraction algorithms. Each one is checked against the theorem's
hypotheses and cross-validated on the overlap graph.
"""

import itertools
import time

from substral import arnoux_rauzy, brun, jacobi_perron, theorem_certify

families = {
    "AR": [arnoux_rauzy(3, w) for w in ("123", "1123", "3121")],
    "Brun": [brun(w) for w in ("3", "13", "233")],
    "JP": [jacobi_perron(p) for p in itertools.product([(0, 1), (1, 2)], repeat=2)],
}

for name, subs in families.items():
    for phi in subs:
        t0 = time.perf_counter()
        r = theorem_certify(phi)
        lam = r.tileset.inflation
        print(f"{name:4s} {str(phi):40s} lambda={lam.decimal(6):>10s} "
              f"{r.verdict.kind.value:26s} overlap={r.overlap.kind.value} "
              f"({len(r.graph.nodes)} classes, {time.perf_counter() - t0:.2f}s)")

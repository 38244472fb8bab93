"""Solve for the constant a with psi~(d x) = a d(psi~ x).

The probe is the two-term complex F_p -> F_p given by multiplication by
``scale``; the answer should not depend on the scale, nor on the complex
used (compare with the constants found by ``psi_check`` on random inputs).
"""

import random

from cyclohom.complex_engine import ChainComplex
from cyclohom.conjugate_frobenius import psi_check, psi_constant
from cyclohom.gf_linalg import PrimeFieldMatrix

for p in (3, 5):
    by_scale = {s: psi_constant(p, s) for s in range(1, p)}
    rng = random.Random(p)
    seen = set()
    for _ in range(6):
        a, b = rng.randint(1, 2), rng.randint(1, 2)
        d = PrimeFieldMatrix(p, a, b, {(i, j): rng.randrange(p) for i in range(a) for j in range(b)})
        rep = psi_check(ChainComplex.build(p, {0: a, 1: b}, {1: d}, 0, 1), p)
        if rep.constant is not None:
            seen.add(rep.constant)
    print(f"p={p}: probe constants by scale {by_scale}, constants on random complexes {sorted(seen)}")

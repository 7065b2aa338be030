"""Weight-graded syntomic cohomology of k[x]/x^e, orbit by orbit.

The degree-1 cohomology in weight i splits as a direct sum of cyclic
pieces W(k)/p^h, one per Frobenius orbit (m, alpha) with m coprime to p.
This demo walks the orbits for a few small parameter choices, prints the
per-orbit exponent h, and checks that the exponents add up to the known
total i*(e-1) whenever e is coprime to p.
"""

from trcalc import TruncationParams, enumerate_orbits

CASES = [(3, 2, 1), (2, 3, 2), (3, 2, 2), (5, 4, 3), (2, 7, 3)]

for p, e, i in CASES:
    params = TruncationParams(p, e, i)
    summands = enumerate_orbits(params)
    print(f"p={p} e={e} weight={i}")
    total = 0
    for sm in summands:
        print(f"  orbit m={sm.orbit.m:>2}  s={sm.s}  W(k)/{p}^{sm.module.h}")
        total += sm.module.h
    if e % p:
        assert total == i * (e - 1), "total order drifted from i*(e-1)"
        print(f"  total exponent {total} == i*(e-1) = {i * (e - 1)}")
    else:
        print(f"  total exponent {total} (e not coprime to p, no closed total)")
    print()

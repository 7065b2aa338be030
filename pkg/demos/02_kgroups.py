"""Relative algebraic K-groups of truncated polynomial rings.

K_{2i-1}(k[x]/x^e, (x)) is the degree-1 syntomic cohomology in weight i;
the even relative K-groups vanish.  For k = F_p each summand W(k)/p^h is
the finite cyclic group Z/p^h, so the whole K-group is a finite abelian
p-group whose elementary divisors we can print.  The first two rows are
the classical unit-group cases K_1 = (1 + (x))^*.
"""

from trcalc import TruncationParams, enumerate_orbits

CASES = [
    (3, 2, 1),  # K_1(F_3[x]/x^2, (x)) = Z/3
    (2, 3, 1),  # K_1(F_2[x]/x^3, (x)) = Z/4
    (3, 2, 2),  # K_3(F_3[x]/x^2, (x)) = Z/9
    (2, 3, 2),  # K_3(F_2[x]/x^3, (x)) = Z/8 + Z/2
    (5, 4, 3),  # K_5(F_5[x]/x^4, (x))
]

for p, e, i in CASES:
    summands = enumerate_orbits(TruncationParams(p, e, i))
    divisors = sorted((p**sm.module.h for sm in summands), reverse=True)
    group = " + ".join(f"Z/{d}" for d in divisors) or "0"
    order = 1
    for d in divisors:
        order *= d
    print(f"K_{2 * i - 1}(F_{p}[x]/x^{e}, (x)) = {group}   (order {order})")

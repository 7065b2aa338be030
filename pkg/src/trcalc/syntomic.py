"""Closed-form weight-i syntomic cohomology of truncated polynomial
algebras over the prototype base rings, orbit by orbit.

An orbit is a pair (m, alpha) with p not dividing m; it indexes the
Frobenius-stable family of bidegrees (p^a m, p^a alpha), a >= 0, which is
the unit all computations decompose into.  Degree-1 cohomology of the
fiber of (divided Frobenius - canonical) on an orbit is the cyclic module
W(k)/brace(p^s m, e), where s is the first level at which the divided
Frobenius stops being an isomorphism along the orbit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .drw import Bidegree, CyclicWittModule, TruncationParams
from .padic import MultiIndex, PAdicFraction, brace, ceil_div, vp


@dataclass(frozen=True)
class Orbit:
    """One Frobenius-stable summand index: x-weight m coprime to p plus a
    y-multiweight alpha."""

    m: int
    alpha: MultiIndex = MultiIndex()

    def validate(self, p: int) -> None:
        if self.m < 1:
            raise ValueError("orbit needs m >= 1")
        if self.m % p == 0:
            raise ValueError(f"orbit x-weight {self.m} must be coprime to p={p}")

    def bidegree(self, a: int, p: int) -> Bidegree:
        """The level-a member (p^a m, p^a alpha) of the orbit."""
        return Bidegree(p**a * self.m, self.alpha.scale_by_p(a, p))

    def sort_key(self) -> tuple:
        return (self.m, tuple((slot, frac.num, frac.pexp) for slot, frac in self.alpha.entries))


@dataclass(frozen=True)
class SyntomicSummand:
    """The degree-1 contribution of one orbit: its cyclic module, the
    stopping level s, and the kernel-generator scalings per level."""

    orbit: Orbit
    module: CyclicWittModule
    s: int
    generator_exponents: tuple[int, ...]


@dataclass(frozen=True)
class AlphaBounds:
    """Finite enumeration window for multi-indices: slot names, a numerator
    bound, and a denominator-exponent bound."""

    slots: tuple[str, ...] = ()
    num_max: int = 0
    pexp_max: int = 0

    def __post_init__(self) -> None:
        if self.slots and (self.num_max < 1 or self.pexp_max < 0):
            raise ValueError("nonempty slot set needs positive numerator and pexp bounds")


def s_function(params: TruncationParams, m: int, alpha: MultiIndex = MultiIndex()) -> int:
    """Least s >= 0 with ceil(p^s m / e) + floor-l1(p^s alpha) > i.

    Terminates because ceil(p^s m / e) is unbounded in s.
    """
    if m < 1:
        raise ValueError("s_function needs m >= 1")
    p, e, i = params.p, params.e, params.i
    s = 0
    while ceil_div(p**s * m, e) + alpha.scale_by_p(s, p).floor_l1(p) <= i:
        s += 1
    return s


def kernel_generator(params: TruncationParams, orbit: Orbit) -> tuple[int, ...]:
    """p-power scalings (c_{s-1}, ..., c_0) of the kernel generator of
    (divided Frobenius - canonical) across the orbit levels s-1 down to 0.

    The generator is pinned at level s-1 (c_{s-1} = 0) and propagated
    downward through the level-a isomorphisms, which forces
    c_a = sum_{j=a+1}^{s-1} (i - ceil(p^j m / e) - floor_l1(p^j alpha)).
    Rejects orbits with s = 0, whose kernel summand is trivial.
    """
    orbit.validate(params.p)
    p, e, i = params.p, params.e, params.i
    s = s_function(params, orbit.m, orbit.alpha)
    if s == 0:
        raise ValueError("orbit has s = 0; kernel summand is trivial")
    exponents = []
    acc = 0
    for a in range(s - 1, -1, -1):
        exponents.append(acc)
        # accumulate the level-a term for the next step down
        acc += i - ceil_div(p**a * orbit.m, e) - orbit.alpha.scale_by_p(a, p).floor_l1(p)
    return tuple(exponents)


def h1_syntomic_orbit(params: TruncationParams, orbit: Orbit) -> SyntomicSummand:
    """Degree-1 syntomic cohomology of one orbit: W(k)/brace(p^s m, e)."""
    orbit.validate(params.p)
    s = s_function(params, orbit.m, orbit.alpha)
    h = vp(brace(params.p**s * orbit.m, params.e), params.p)
    gens = kernel_generator(params, orbit) if s >= 1 else ()
    return SyntomicSummand(orbit, CyclicWittModule(h), s, gens)


def enumerate_alphas(bounds: AlphaBounds, p: int):
    """All multi-indices supported on the bounded window, including the
    empty one.  Entries are num/p^a with 1 <= num <= num_max, p not
    dividing num, 0 <= a <= pexp_max."""
    values = [PAdicFraction(0, 0)]
    for num in range(1, bounds.num_max + 1):
        if num % p == 0:
            continue
        for pexp in range(bounds.pexp_max + 1):
            values.append(PAdicFraction(num, pexp))
    for combo in itertools.product(values, repeat=len(bounds.slots)):
        yield MultiIndex.from_dict(dict(zip(bounds.slots, combo)))


def enumerate_orbits(params: TruncationParams, bounds: AlphaBounds = AlphaBounds()) -> list[SyntomicSummand]:
    """All orbits in the window with nontrivial degree-1 contribution.

    A nontrivial module forces s >= 1, hence ceil(m/e) <= i, hence
    m <= i*e; the m-range is therefore finite and the alpha-range is the
    user-supplied finite window.  Results are sorted by (m, alpha).
    """
    p, e, i = params.p, params.e, params.i
    out = []
    for alpha in enumerate_alphas(bounds, p):
        for m in range(1, i * e + 1):
            if m % p == 0:
                continue
            summand = h1_syntomic_orbit(params, Orbit(m, alpha))
            if not summand.module.is_trivial():
                out.append(summand)
    out.sort(key=lambda sm: sm.orbit.sort_key())
    return out


@dataclass(frozen=True)
class CohomologyReport:
    """Symbolic statement of the cohomology outside degree 1."""

    reduced_h0: str = "0"
    full_h0: str = ""
    higher: str = "0 for every degree >= 2"

    @classmethod
    def for_params(cls, params: TruncationParams) -> "CohomologyReport":
        # The full degree-0 group is carried entirely by the split m = 0
        # column and equals the crystalline period ring of the base.
        return cls(full_h0="Acrys(base)")


def h_other_degrees(params: TruncationParams) -> CohomologyReport:
    """Reduced degree-0 cohomology vanishes; the full degree-0 group is the
    symbolic period ring of the base; everything in degrees >= 2 is zero."""
    return CohomologyReport.for_params(params)

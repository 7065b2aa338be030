"""Towers of degree-1 cohomology groups over the truncation exponent e,
their transition valuations, Mittag-Leffler stabilization of images, and
the classification of inverse limits.

Levels range over the naturals coprime to p (cofinal among all e), ordered
by size, with one map tr_fe for every pair f >= e.  All group data is the
symbolic exponent h of W(k)/p^h; transition maps are recorded by their
p-valuation only, the unit factor being irrelevant to images and limits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .drw import TruncationParams
from .padic import ceil_div, factorial_ratio, vp
from .syntomic import Orbit, h1_syntomic_orbit, s_function


class MLViolationError(Exception):
    """Images failed to stabilize where theory says they must; indicates a
    bug, not expected behavior."""


class ClassificationRefusedError(Exception):
    """The probe window is too short to tell a finite limit from one that
    is still growing."""


def tr_valuation(params: TruncationParams, f: int, orbit: Orbit) -> int | None:
    """Closed-form p-valuation of the transition map from truncation f down
    to e = params.e on one orbit, in cohomological weight i = params.i.

    Returns None in the degenerate case s_e = 0, where the target group is
    trivial and the map is zero.  The unit factor is not tracked.

    The valuation tracks the generator coordinate at level s_e - 1, where
    both kernel generators are supported: factorial-ratio valuation, plus
    the difference of ceiling exponents at j = s_e - 1, plus the generator
    corrections accumulated over j in [s_e, s_f).  Starting the sum one
    step earlier would double count the j = s_e - 1 term, as the
    brute-force oracle confirms.
    """
    p, e, i = params.p, params.e, params.i
    if f < e:
        raise ValueError("need f >= e")
    if e % p == 0 or f % p == 0:
        raise ValueError("levels must be coprime to p")
    orbit.validate(p)
    m, alpha = orbit.m, orbit.alpha
    s_e = s_function(params, m, alpha)
    if s_e == 0 or m % e == 0:
        # target group trivial (either s_e = 0 or e divides p^s m)
        return None
    s_f = s_function(TruncationParams(p, f, i), m, alpha)
    m1 = p ** (s_e - 1) * m
    v = vp(factorial_ratio((m1 - 1) // e, (m1 - 1) // f), p)
    v += ceil_div(m1, e) - ceil_div(m1, f)
    for j in range(s_e, s_f):
        v += i - ceil_div(p**j * m, f) - alpha.scale_by_p(j, p).floor_l1(p)
    return v


def image_exponent(h_f: int, h_e: int, v: int) -> int:
    """Image of a valuation-v map Z/p^h_f -> Z/p^h_e: the subgroup
    p^min(v, h_e) Z/p^h_e.  Rejects maps that are not well defined."""
    if v + h_f < h_e:
        raise ValueError(f"map with v={v} from h={h_f} to h={h_e} is not well defined")
    return min(v, h_e)


def ml_bound(params: TruncationParams, m: int) -> int:
    """Smallest level f0 >= e coprime to p beyond which transition images
    into level e are guaranteed constant, uniformly in the multi-index.

    Both sufficient conditions -- ceil(p^(2s) m / f) = 1 and
    floor((p^s m - 1)/f) = 0, with s taken at the empty multi-index --
    reduce to f >= p^(2s) m.
    """
    p, e = params.p, params.e
    if e % p == 0:
        raise ValueError("level must be coprime to p")
    s = s_function(params, m)
    f = max(e, p ** (2 * s) * m)
    while f % p == 0:
        f += 1
    return f


@dataclass(frozen=True)
class Tower:
    """One orbit's groups over an ascending window of levels coprime to p."""

    p: int
    weight: int
    orbit: Orbit
    levels: tuple[int, ...]
    groups: tuple[int, ...]  # exponent h per level

    def params(self, e: int) -> TruncationParams:
        return TruncationParams(self.p, e, self.weight)

    def adjacent_transitions(self) -> tuple[int | None, ...]:
        """Valuation of each map from level j+1 down to level j."""
        return tuple(
            tr_valuation(self.params(e), f, self.orbit)
            for e, f in zip(self.levels, self.levels[1:])
        )


def build_tower(p: int, weight: int, orbit: Orbit, levels: list[int]) -> Tower:
    levels = sorted(levels)
    if any(lv % p == 0 for lv in levels):
        raise ValueError("levels must be coprime to p")
    groups = tuple(
        h1_syntomic_orbit(TruncationParams(p, e, weight), orbit).module.h for e in levels
    )
    return Tower(p, weight, orbit, tuple(levels), groups)


@dataclass(frozen=True)
class LevelStabilization:
    """Image data at one target level: the probed image exponents, the
    eventual value, where they settled, and whether the theoretical bound
    was inside the probe window."""

    level: int
    h: int
    ml_bound: int
    images: tuple[int, ...]  # image exponent per probed source level
    sources: tuple[int, ...]
    stabilized: int          # eventual image exponent
    ml_index: int            # first probed source from which images are constant
    certified: bool          # probe reached ml_bound

    @property
    def image_order_exponent(self) -> int:
        return self.h - self.stabilized

    @property
    def settled(self) -> bool:
        """Certified, or images constant over the trailing probe window;
        only settled levels feed the limit classification."""
        if self.certified:
            return True
        tail = self.images[-3:]
        return len(tail) == 3 and all(img == tail[0] for img in tail)


@dataclass(frozen=True)
class StabilizedTower:
    tower: Tower
    per_level: tuple[LevelStabilization, ...]

    def image_orders(self) -> tuple[int, ...]:
        return tuple(rec.image_order_exponent for rec in self.per_level)


def stabilized_images(tower: Tower, probe: int) -> StabilizedTower:
    """Sweep sources f up to the probe bound for every level of the tower
    and record where images settle.

    A level is certified when the probe reaches its theoretical bound; on
    certified levels any image change at or past the bound raises
    MLViolationError (with the witness pair), since stabilization there is
    a theorem.
    """
    p = tower.p
    out = []
    all_levels = [f for f in range(2, probe + 1) if f % p]
    for e, h in zip(tower.levels, tower.groups):
        params = tower.params(e)
        bound = ml_bound(params, tower.orbit.m)
        sources = [f for f in all_levels if f >= e]
        images = []
        for f in sources:
            v = tr_valuation(params, f, tower.orbit)
            if v is None or h == 0:
                images.append(h)  # zero map: trivial image
                continue
            h_f = h1_syntomic_orbit(TruncationParams(p, f, tower.weight), tower.orbit).module.h
            images.append(image_exponent(h_f, h, v))
        certified = bool(sources) and sources[-1] >= bound
        if certified:
            past = [img for f, img in zip(sources, images) if f >= bound]
            if any(img != past[-1] for img in past):
                bad = next(f for f, img in zip(sources, images) if f >= bound and img != past[-1])
                raise MLViolationError(
                    f"images changed past the bound at level e={e}: witness f={bad}"
                )
        stabilized = images[-1] if images else h
        ml_index = sources[0] if sources else e
        for f, img in zip(reversed(sources), reversed(images)):
            if img != stabilized:
                break
            ml_index = f
        out.append(
            LevelStabilization(
                level=e,
                h=h,
                ml_bound=bound,
                images=tuple(images),
                sources=tuple(sources),
                stabilized=stabilized,
                ml_index=ml_index,
                certified=certified,
            )
        )
    return StabilizedTower(tower, tuple(out))


@dataclass(frozen=True)
class ProCyclicLimit:
    """Classification of the inverse limit of a tower of stabilized images.

    kind is "finite" (limit W(k)/p^h) or "zp" (pro-cyclic of unbounded
    order, W(k)-full at probe scale).  The verdict is a probe-scale
    judgment over the recorded evidence window, not a theorem.  lim^1
    vanishes for every Mittag-Leffler tower of finite groups, which the
    stabilization step has already verified.
    """

    kind: str
    h: int | None
    ml_index: int
    evidence: tuple[int, ...]
    lim1_zero: bool = True


def classify_orders(
    orders: tuple[int, ...],
    ml_index: int,
    zpfull_run: int = 8,
    stable_window: int = 6,
) -> ProCyclicLimit:
    """Classify a nondecreasing sequence of image-order exponents indexed
    by ascending level.

    Constant everywhere, or constant over the trailing window, reads as a
    finite limit; a trailing run of at least zpfull_run strict increases
    reads as pro-cyclic of unbounded order.  Anything in between refuses,
    since the probe cannot tell slow growth from eventual stabilization.
    """
    if not orders:
        return ProCyclicLimit("finite", 0, ml_index, ())
    if all(o == orders[0] for o in orders):
        return ProCyclicLimit("finite", orders[0], ml_index, orders)
    tail = orders[-stable_window:]
    if len(tail) == stable_window and all(o == tail[0] for o in tail):
        return ProCyclicLimit("finite", tail[0], ml_index, orders)
    tail = orders[-(zpfull_run + 1):]
    if len(tail) == zpfull_run + 1 and all(a < b for a, b in zip(tail, tail[1:])):
        return ProCyclicLimit("zp", None, ml_index, orders)
    raise ClassificationRefusedError(
        f"probe too short to classify: image orders {orders} still changing"
    )


def limit_classify(stab: StabilizedTower, zpfull_run: int = 8, stable_window: int = 6) -> ProCyclicLimit:
    """Inverse limit of the stabilized-image tower; restricted transitions
    are surjective, so the limit is pro-cyclic and lim^1 vanishes."""
    settled = [rec for rec in stab.per_level if rec.settled]
    orders = tuple(rec.image_order_exponent for rec in settled)
    ml_index = max(
        (rec.ml_index for rec in settled),
        default=stab.tower.levels[0] if stab.tower.levels else 0,
    )
    return classify_orders(orders, ml_index, zpfull_run, stable_window)


@dataclass(frozen=True)
class RefusedClassification:
    """Recorded in place of a verdict when the probe is too short; carries
    the evidence window so the caller can widen the probe and retry."""

    reason: str
    evidence: tuple[int, ...]


@dataclass(frozen=True)
class OddZeroCertificate:
    """Vanishing certificate for one odd TR degree: every probed tower
    satisfied the Mittag-Leffler check, so the derived-limit obstruction
    is zero and the odd group receives no contribution."""

    degree: int
    probe: int
    orbits_checked: int
    zero: bool = True
    lim1_zero: bool = True


@dataclass(frozen=True)
class TRGroups:
    """Homotopy of TR in one even degree and the odd degree below it.

    Degree 2i is assembled from the weight i+1 towers (the loop shift in
    the curves description of TR); the weight is recorded to prevent
    off-by-one misuse.  even pairs each orbit with its limit verdict or a
    refusal.  The m = 1 slice is the p-typical summand under the standard
    curves indexing of the product decomposition over I_p.
    """

    p: int
    degree: int
    weight: int
    even: tuple[tuple[Orbit, ProCyclicLimit | RefusedClassification], ...]
    odd: OddZeroCertificate

    @property
    def refused(self) -> bool:
        return any(isinstance(res, RefusedClassification) for _, res in self.even)


def tr_groups(p: int, i: int, bounds, probe: int) -> TRGroups:
    """TR in degrees 2i and 2i-1 of the prototype algebra with multi-index
    slots and numerator sizes limited by bounds, probed over truncation
    levels up to probe.

    Every enumerated orbit is run through the stabilization check, so a
    returned result always carries a valid odd-degree zero certificate;
    classification refusals on the even side are recorded, not raised.
    """
    from .syntomic import enumerate_orbits

    weight = i + 1
    levels = [e for e in range(2, probe + 1) if e % p]
    orbits: set[Orbit] = set()
    if weight >= 1:
        for e in levels:
            params = TruncationParams(p, e, weight)
            orbits.update(s.orbit for s in enumerate_orbits(params, bounds))
    even = []
    for orbit in sorted(orbits, key=lambda o: o.sort_key()):
        tower = build_tower(p, weight, orbit, levels)
        stab = stabilized_images(tower, probe)
        try:
            verdict: ProCyclicLimit | RefusedClassification = limit_classify(stab)
        except ClassificationRefusedError as exc:
            verdict = RefusedClassification(str(exc), stab.image_orders())
        even.append((orbit, verdict))
    odd = OddZeroCertificate(degree=2 * i - 1, probe=probe, orbits_checked=len(orbits))
    return TRGroups(p, 2 * i, weight, tuple(even), odd)

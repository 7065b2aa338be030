"""Transition valuations, Mittag-Leffler stabilization, and limit
classification of the degree-1 towers."""

import pytest

from trcalc.drw import TruncationParams
from trcalc.oracle import oracle_transition_map
from trcalc.padic import MultiIndex, PAdicFraction
from trcalc.prosystem import (
    ClassificationRefusedError,
    RefusedClassification,
    build_tower,
    classify_orders,
    image_exponent,
    limit_classify,
    ml_bound,
    stabilized_images,
    tr_groups,
    tr_valuation,
)
from trcalc.syntomic import AlphaBounds, Orbit, h1_syntomic_orbit

EMPTY = MultiIndex()


def test_tr_valuation_examples():
    params = TruncationParams(3, 2, 1)
    assert tr_valuation(params, 4, Orbit(1)) == 0
    assert tr_valuation(params, 8, Orbit(1)) == 0
    # degenerate target: s_e = 0, map to the trivial group
    assert tr_valuation(params, 4, Orbit(2)) is None


def test_tr_valuation_rejects_bad_levels():
    params = TruncationParams(3, 2, 1)
    with pytest.raises(ValueError):
        tr_valuation(params, 1, Orbit(1))
    with pytest.raises(ValueError):
        tr_valuation(params, 6, Orbit(1))


def test_tr_valuation_matches_oracle_spotchecks():
    cases = [
        (3, 2, 2, 4, 1),
        (3, 3, 2, 4, 1),
        (2, 2, 3, 5, 1),
        (2, 3, 5, 9, 1),
        (2, 2, 5, 7, 3),
        (3, 2, 4, 13, 5),
    ]
    for p, i, e, f, m in cases:
        params = TruncationParams(p, e, i)
        orbit = Orbit(m)
        h_e = h1_syntomic_orbit(params, orbit).module.h
        v = tr_valuation(params, f, orbit)
        assert min(v, h_e) == min(oracle_transition_map(p, i, e, f, orbit), h_e)


def test_image_exponent():
    assert image_exponent(2, 1, 0) == 0
    assert image_exponent(3, 3, 2) == 2
    assert image_exponent(1, 3, 2) == 2  # boundary case v + h_f = h_e
    with pytest.raises(ValueError):
        image_exponent(1, 4, 2)


def test_ml_bound_examples():
    assert ml_bound(TruncationParams(3, 2, 1), 1) == 10
    assert ml_bound(TruncationParams(2, 3, 1), 1) == 17
    assert ml_bound(TruncationParams(3, 2, 0), 1) == 2


def test_build_tower_groups():
    tower = build_tower(3, 1, Orbit(1), [2, 4, 5, 7, 8])
    assert tower.groups == (1, 2, 2, 2, 2)
    assert all(v == 0 for v in tower.adjacent_transitions())


def test_stabilized_images_full_at_every_level():
    levels = [e for e in range(2, 29) if e % 3]
    tower = build_tower(3, 1, Orbit(1), levels)
    stab = stabilized_images(tower, 28)
    assert all(rec.stabilized == 0 for rec in stab.per_level)
    certified = [rec for rec in stab.per_level if rec.certified]
    assert certified and certified[0].level == 2


def test_stabilized_images_degenerate_orbit():
    tower = build_tower(3, 1, Orbit(2), [2, 4])
    stab = stabilized_images(tower, 8)
    assert stab.per_level[0].h == 0
    assert stab.per_level[0].image_order_exponent == 0


def test_stabilization_before_bound_when_certifiable():
    levels = [e for e in range(3, 41) if e % 2]
    for i in (1, 2):
        tower = build_tower(2, i, Orbit(1), levels)
        stab = stabilized_images(tower, 40)
        for rec in stab.per_level:
            if rec.certified:
                assert rec.ml_index <= rec.ml_bound
    # weight 1 at e=3 has bound 17, inside the probe, so certification
    # actually fires somewhere in this grid
    tower = build_tower(2, 1, Orbit(1), levels)
    stab = stabilized_images(tower, 40)
    assert any(rec.certified for rec in stab.per_level)


def test_classify_zp_full():
    verdict = classify_orders(tuple(range(1, 11)), ml_index=2)
    assert verdict.kind == "zp" and verdict.lim1_zero


def test_classify_constant_tower():
    verdict = classify_orders((3,) * 7, ml_index=2)
    assert verdict.kind == "finite" and verdict.h == 3


def test_classify_all_trivial():
    verdict = classify_orders((0, 0, 0), ml_index=2)
    assert verdict.kind == "finite" and verdict.h == 0


def test_classify_refuses_ambiguous_growth():
    with pytest.raises(ClassificationRefusedError):
        classify_orders((0, 1, 1, 2, 2, 3), ml_index=2)


def test_limit_classify_on_real_tower():
    levels = [e for e in range(2, 29) if e % 3]
    tower = build_tower(3, 1, Orbit(1), levels)
    verdict = limit_classify(stabilized_images(tower, 28))
    # probe-scale judgment: orders settle at 3 over the settled window
    assert verdict.kind == "finite" and verdict.h == 3


def test_tr_groups_odd_certificate():
    result = tr_groups(3, 0, AlphaBounds(), 30)
    assert result.odd.degree == -1
    assert result.odd.zero and result.odd.lim1_zero
    assert result.weight == 1
    assert result.odd.orbits_checked > 0


def test_tr_groups_with_slots():
    result = tr_groups(2, 1, AlphaBounds(("t",), 4, 2), 12)
    assert result.odd.degree == 1
    assert result.odd.zero
    assert any(orbit.alpha.entries for orbit, _ in result.even)


def test_tr_groups_degenerate_weight():
    # weight 0 towers are all trivial
    result = tr_groups(3, -1, AlphaBounds(), 10)
    assert result.even == ()
    assert result.odd.zero


def test_refusals_are_recorded_not_raised():
    result = tr_groups(3, 0, AlphaBounds(), 30)
    kinds = {type(res) for _, res in result.even}
    if result.refused:
        assert RefusedClassification in kinds

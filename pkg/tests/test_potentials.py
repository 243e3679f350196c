"""Potential catalog: discontinuity ledgers, evaluation, and JSON round-trips."""

import json
import math

import pytest

from momtail import potentials as pot

ALL_SPECS = [
    pot.DeltaSum(deltas=((1.0, 0.0),)),
    pot.DeltaSum(deltas=((1.0, -1.0), (2.0, 1.5))),
    pot.InfiniteWell(length=math.pi),
    pot.FiniteWell(depth=10.0, a=-1.0, b=1.0),
    pot.StepSum(steps=((0.0, -5.0), (1.0, 2.0), (2.0, 3.0))),
    pot.HybridDeltaStep(g=1.0, step_height=1.0, a=1.0),
    pot.Bouncer(force=0.5),
    pot.SymmetricLinear(force=0.5),
    pot.AsymmetricLinear(force_right=0.5, force_left=2.0),
]


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind)
def test_ledger_sorted_and_idempotent(spec):
    recs = pot.discontinuities(spec)
    assert recs == pot.discontinuities(spec)
    locs = [r.location for r in recs]
    assert locs == sorted(locs)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind)
def test_json_round_trip(spec):
    text = pot.to_json(spec)
    again = pot.from_json(text)
    assert again == spec
    assert pot.to_json(again) == text


def test_delta_ledger():
    spec = pot.DeltaSum(deltas=((2.0, -1.0), (1.0, 1.5)))
    recs = pot.discontinuities(spec)
    assert [(r.location, r.order, r.jump) for r in recs] == [
        (-1.0, -1, -2.0), (1.5, -1, -1.0)]


def test_wall_records_marked():
    for spec in (pot.InfiniteWell(length=2.0), pot.Bouncer(force=1.0)):
        walls = [r for r in pot.discontinuities(spec) if r.is_wall]
        assert walls and all(r.order == -1 for r in walls)


def test_finite_well_step_jumps():
    spec = pot.FiniteWell(depth=7.0, a=0.0, b=2.0)
    recs = pot.discontinuities(spec)
    assert [(r.order, r.jump) for r in recs] == [(0, -7.0), (0, 7.0)]


def test_kink_jump_is_twice_force():
    spec = pot.SymmetricLinear(force=0.75)
    (rec,) = pot.discontinuities(spec)
    assert rec.order == 1 and rec.jump == pytest.approx(1.5)
    asym = pot.AsymmetricLinear(force_right=0.5, force_left=2.0)
    (rec,) = pot.discontinuities(asym)
    assert rec.jump == pytest.approx(2.5)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind)
def test_step_records_match_pointwise_evaluation(spec):
    # every order-0 record's jump equals V(a+) - V(a-) from evaluate()
    eps = 1e-9
    for rec in pot.discontinuities(spec):
        if rec.order == 0:
            jump = (pot.evaluate(spec, rec.location + eps)
                    - pot.evaluate(spec, rec.location - eps))
            assert jump == pytest.approx(rec.jump, rel=1e-6)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind)
def test_kink_records_match_derivative_jump(spec):
    # order-1 records: V'(a+) - V'(a-) by central differences on each side
    h = 1e-6
    for rec in pot.discontinuities(spec):
        if rec.order == 1:
            a = rec.location
            right = (pot.evaluate(spec, a + 2 * h) - pot.evaluate(spec, a + h)) / h
            left = (pot.evaluate(spec, a - h) - pot.evaluate(spec, a - 2 * h)) / h
            assert right - left == pytest.approx(rec.jump, rel=1e-6)


def test_wall_evaluation():
    well = pot.InfiniteWell(length=1.0)
    assert pot.evaluate(well, -0.1) == math.inf
    assert pot.evaluate(well, 0.5) == 0.0
    b = pot.Bouncer(force=2.0)
    assert pot.evaluate(b, -1e-9) == math.inf
    assert pot.evaluate(b, 3.0) == 6.0


def test_bouncer_length_scale():
    b = pot.Bouncer(force=0.5)      # hbar = m = 1
    assert b.rho == pytest.approx(1.0)
    assert b.energy_scale == pytest.approx(0.5)
    b2 = pot.Bouncer(force=2.0)
    assert b2.rho == pytest.approx(0.25 ** (1 / 3))


def test_validation_errors():
    with pytest.raises(ValueError):
        pot.DeltaSum(deltas=())
    with pytest.raises(ValueError):
        pot.DeltaSum(deltas=((-1.0, 0.0),))
    with pytest.raises(ValueError):
        pot.DeltaSum(deltas=((1.0, 1.0), (1.0, 0.0)))
    with pytest.raises(ValueError):
        pot.InfiniteWell(length=0.0)
    with pytest.raises(ValueError):
        pot.FiniteWell(depth=1.0, a=1.0, b=0.0)
    with pytest.raises(ValueError):
        pot.StepSum(steps=((0.0, 0.0),))
    with pytest.raises(ValueError):
        pot.Bouncer(force=-1.0)
    with pytest.raises(ValueError):
        pot.HybridDeltaStep(g=1.0, step_height=1.0, a=-1.0)


def test_from_dict_rejects_unknown():
    with pytest.raises(ValueError):
        pot.from_dict({"kind": "nonsense"})
    with pytest.raises(ValueError):
        pot.from_dict({"kind": "bouncer", "force": 1.0, "zzz": 2})
    with pytest.raises(ValueError):
        pot.from_dict({"kind": "bouncer"})


def test_units_survive_round_trip():
    spec = pot.Bouncer(force=1.0, mass=2.0, hbar=0.5)
    again = pot.from_json(pot.to_json(spec))
    assert again.mass == 2.0 and again.hbar == 0.5

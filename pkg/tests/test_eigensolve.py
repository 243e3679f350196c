"""Bound-state solvers: energies, normalization, derivative tables, jumps."""

import math

import mpmath
import numpy as np
import pytest
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad

from momtail import eigensolve as eig
from momtail import potentials as pot
from momtail.errors import NoBoundState, NoSuchState

mpmath.mp.dps = 30


def norm_integral(state, other=None):
    """<state|other> with quadrature panels aligned to psi kinks."""
    other = other or state
    lo = min(state.support[0], other.support[0])
    hi = max(state.support[1], other.support[1])
    breaks = sorted({b for b in state.breaks + other.breaks if lo < b < hi})
    f = lambda x: float(state.psi(np.array([x]))[0] * other.psi(np.array([x]))[0])
    total, _ = quad(f, lo, hi, points=breaks or None, limit=800)
    return total


def one_sided_derivs(state, a, side, orders=3):
    """Derivatives at a from one side by local polynomial fit."""
    h = min(state.osc_scale, 1.0) * 0.02
    sgn = 1.0 if side == "right" else -1.0
    xs = a + sgn * (1e-9 + h * np.arange(12))
    vals = state.psi(xs)
    poly = np.polynomial.polynomial.Polynomial.fit(xs - a, vals, 7)
    return [poly.deriv(j)(0.0) for j in range(orders + 1)]


def fd_residual(state, spec, x):
    """Schrodinger residual -(hbar^2/2m) psi'' + (V - E) psi at one point."""
    h = 2e-4 * min(state.osc_scale, 1.0)   # balances truncation vs rounding
    f = lambda t: float(state.psi(np.array([t]))[0])
    second = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    m, hbar = spec.mass, spec.hbar
    return (-hbar ** 2 / (2 * m) * second
            + (pot.evaluate(spec, x) - state.energy) * f(x))


# --- energies -------------------------------------------------------------

def test_delta_ground_state():
    st = eig.solve(pot.DeltaSum(deltas=((1.0, 0.0),)))
    assert st.energy == -0.5
    assert st.table_at(0.0).value == pytest.approx(1.0, rel=1e-14)
    assert st.parity == "even"
    with pytest.raises(NoSuchState):
        eig.solve(pot.DeltaSum(deltas=((1.0, 0.0),)), n=2)


def test_delta_energy_scales_with_strength():
    st = eig.solve(pot.DeltaSum(deltas=((2.0, 0.0),)))
    assert st.energy == pytest.approx(-2.0, rel=1e-14)


def test_double_delta_against_transcendental():
    # symmetric pair g at +-d: even kappa = K0(1 + e^{-2 kappa d}), odd with minus
    g, d = 1.0, 1.0
    spec = pot.DeltaSum(deltas=((g, -d), (g, d)))
    kap_even = float(mpmath.findroot(
        lambda k: k - g * (1 + mpmath.e ** (-2 * k * d)), 1.1))
    kap_odd = float(mpmath.findroot(
        lambda k: k - g * (1 - mpmath.e ** (-2 * k * d)), 0.8))
    assert eig.solve(spec, 1).energy == pytest.approx(-kap_even ** 2 / 2, rel=1e-12)
    assert eig.solve(spec, 2).energy == pytest.approx(-kap_odd ** 2 / 2, rel=1e-12)
    with pytest.raises(NoSuchState):
        eig.solve(spec, 3)


def test_infinite_well_energies():
    for n in range(1, 6):
        st = eig.solve(pot.InfiniteWell(length=math.pi), n)
        assert st.energy == pytest.approx(n * n / 2.0, rel=1e-14)
    st = eig.solve_infinite_well(math.pi, 1)
    assert st.table_at(0.0).right[1] == pytest.approx(math.sqrt(2 / math.pi), rel=1e-14)
    st2 = eig.solve_infinite_well(math.pi, 2)
    assert st2.table_at(math.pi).left[1] == pytest.approx(
        2 * math.sqrt(2 / math.pi), rel=1e-14)


def test_finite_well_against_shooting():
    spec = pot.FiniteWell(depth=10.0, a=-1.0, b=1.0)
    st = eig.solve(spec, 1)
    osc = eig.shooting_oracle(spec, (st.energy - 0.1, st.energy + 0.1), 1)
    assert st.energy == pytest.approx(osc.energy, abs=1e-8)


def test_finite_well_deep_limit():
    spec = pot.FiniteWell(depth=1e4, a=0.0, b=math.pi)
    for n in (1, 2, 3):
        above_floor = eig.solve(spec, n).energy + 1e4
        assert above_floor == pytest.approx(n * n / 2.0, rel=1e-2)


def test_finite_well_state_count():
    with pytest.raises(NoSuchState):
        eig.solve(pot.FiniteWell(depth=1.0, a=-0.5, b=0.5), 5)


def test_step_sum_reduces_to_finite_well():
    ss = pot.StepSum(steps=((-1.0, -10.0), (1.0, 10.0)))
    fw = pot.FiniteWell(depth=10.0, a=-1.0, b=1.0)
    for n in (1, 2, 3):
        assert eig.solve(ss, n).energy == pytest.approx(
            eig.solve(fw, n).energy, abs=1e-10)


def test_step_sum_without_well():
    with pytest.raises(NoSuchState):
        eig.solve(pot.StepSum(steps=((0.0, 5.0),)), 1)


def test_hybrid_limits():
    st = eig.solve(pot.HybridDeltaStep(g=1.0, step_height=1e-12, a=1.0))
    assert st.energy == pytest.approx(-0.5, abs=1e-10)
    far = eig.solve(pot.HybridDeltaStep(g=1.0, step_height=1.0, a=30.0))
    assert far.energy == pytest.approx(-0.5, abs=1e-10)


def test_hybrid_against_shooting():
    spec = pot.HybridDeltaStep(g=1.0, step_height=1.0, a=1.0)
    st = eig.solve(spec)
    osc = eig.shooting_oracle(spec, (st.energy - 0.05, st.energy + 0.05))
    assert st.energy == pytest.approx(osc.energy, abs=1e-9)


def test_hybrid_no_bound_state():
    # strongly repulsive well region pushes the root out of the window
    with pytest.raises(NoBoundState):
        eig.solve(pot.HybridDeltaStep(g=0.1, step_height=-50.0, a=1.0))


def test_bouncer_energies_airy_zeros():
    spec = pot.Bouncer(force=0.5)
    for n in (1, 2, 3):
        ref = float(-mpmath.airyaizero(n)) * 0.5
        assert eig.solve(spec, n).energy == pytest.approx(ref, rel=1e-13)


def test_bouncer_wall_slope_n_independent():
    spec = pot.Bouncer(force=0.5)   # rho = 1
    for n in (1, 4, 9):
        st = eig.solve(spec, n)
        assert st.table_at(0.0).right[1] == pytest.approx(1.0, rel=1e-12)
        assert st.table_at(0.0).value == 0.0


def test_symmetric_linear_energies():
    spec = pot.SymmetricLinear(force=0.5)
    for n in (1, 2):
        e_even = float(-mpmath.airyaizero(n, derivative=1)) * 0.5
        e_odd = float(-mpmath.airyaizero(n)) * 0.5
        assert eig.solve(spec, n, parity="even").energy == pytest.approx(e_even, rel=1e-13)
        assert eig.solve(spec, n, parity="odd").energy == pytest.approx(e_odd, rel=1e-13)
    with pytest.raises(ValueError):
        eig.solve(spec, 1)


def test_symmetric_linear_center_value():
    st = eig.solve(pot.SymmetricLinear(force=0.5), 1, parity="even")
    eta1 = float(-mpmath.airyaizero(1, derivative=1))
    assert st.table_at(0.0).value == pytest.approx(1 / math.sqrt(2 * eta1), rel=1e-12)


def test_asymmetric_linear_reduces_to_symmetric():
    asym = pot.AsymmetricLinear(force_right=0.5, force_left=0.5)
    sym = pot.SymmetricLinear(force=0.5)
    # asym levels alternate even/odd of the symmetric problem
    assert eig.solve(asym, 1).energy == pytest.approx(
        eig.solve(sym, 1, parity="even").energy, rel=1e-10)
    assert eig.solve(asym, 2).energy == pytest.approx(
        eig.solve(sym, 1, parity="odd").energy, rel=1e-10)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_asymmetric_linear_against_shooting(n):
    spec = pot.AsymmetricLinear(force_right=0.5, force_left=2.0)
    st = eig.solve(spec, n)
    osc = eig.shooting_oracle(spec, (st.energy - 0.05, st.energy + 0.05), n)
    assert st.energy == pytest.approx(osc.energy, abs=1e-9)


# --- state quality --------------------------------------------------------

STATES = [
    ("delta", pot.DeltaSum(deltas=((1.0, 0.5),)), dict()),
    ("double_delta", pot.DeltaSum(deltas=((1.0, -1.0), (1.0, 1.0))), dict(n=2)),
    ("well", pot.InfiniteWell(length=math.pi), dict(n=3)),
    ("finite_well", pot.FiniteWell(depth=10.0, a=-1.0, b=1.0), dict(n=2)),
    ("step_ladder", pot.StepSum(steps=((0.0, -5.0), (1.0, 2.0), (2.0, 3.0))), dict(n=1)),
    ("hybrid", pot.HybridDeltaStep(g=1.0, step_height=1.0, a=1.0), dict()),
    ("bouncer", pot.Bouncer(force=0.5), dict(n=4)),
    ("symlin_even", pot.SymmetricLinear(force=0.5), dict(n=2, parity="even")),
    ("symlin_odd", pot.SymmetricLinear(force=0.5), dict(n=2, parity="odd")),
    ("asymlin", pot.AsymmetricLinear(force_right=0.5, force_left=2.0), dict(n=2)),
]


@pytest.mark.parametrize("name,spec,kw", STATES, ids=[s[0] for s in STATES])
def test_normalization(name, spec, kw):
    st = eig.solve(spec, kw.get("n", 1), kw.get("parity"))
    assert norm_integral(st) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("name,spec,kw", STATES, ids=[s[0] for s in STATES])
def test_psi_continuity(name, spec, kw):
    st = eig.solve(spec, kw.get("n", 1), kw.get("parity"))
    for b in st.breaks:
        lo, hi = st.psi(np.array([b - 1e-11, b + 1e-11]))
        assert abs(hi - lo) < 1e-10


@pytest.mark.parametrize("name,spec,kw", STATES, ids=[s[0] for s in STATES])
def test_schrodinger_residual(name, spec, kw):
    st = eig.solve(spec, kw.get("n", 1), kw.get("parity"))
    lo, hi = st.support
    span = hi - lo
    xs = np.linspace(lo + 0.05 * span, hi - 0.05 * span, 41)
    keep = [x for x in xs
            if all(abs(x - b) > 1e-3 for b in st.breaks)
            and math.isfinite(pot.evaluate(spec, x))]
    for x in keep:
        assert abs(fd_residual(st, spec, x)) < 1e-6


@pytest.mark.parametrize("name,spec,kw", STATES, ids=[s[0] for s in STATES])
def test_derivative_table_matches_finite_differences(name, spec, kw):
    st = eig.solve(spec, kw.get("n", 1), kw.get("parity"))
    for a, side in st.derivative_table.items():
        scale = max(max(abs(v) for v in side.right),
                    max(abs(v) for v in side.left), 1.0)
        lo, hi = st.support
        if a + 1e-6 < hi:
            fd = one_sided_derivs(st, a, "right")
            for j in range(4):
                assert abs(fd[j] - side.right[j]) < 1e-5 * scale
        if a - 1e-6 > lo:
            fd = one_sided_derivs(st, a, "left")
            for j in range(4):
                assert abs(fd[j] - side.left[j]) < 1e-5 * scale


@pytest.mark.parametrize("name,spec,kw", STATES, ids=[s[0] for s in STATES])
def test_jump_conditions(name, spec, kw):
    st = eig.solve(spec, kw.get("n", 1), kw.get("parity"))
    m, hbar = spec.mass, spec.hbar
    for rec in pot.discontinuities(spec):
        if rec.is_wall:
            continue
        side = st.table_at(rec.location)
        k = rec.order
        if k == -1:
            got = side.right[1] - side.left[1]
            want = 2 * m / hbar ** 2 * rec.jump * side.value
        else:
            got = side.right[k + 2] - side.left[k + 2]
            want = 2 * m / hbar ** 2 * rec.jump * side.value
        scale = max(abs(got), abs(want), 1.0)
        assert abs(got - want) < 1e-8 * scale


FAMILIES = [
    ("well", pot.InfiniteWell(length=math.pi), [dict(n=i) for i in range(1, 6)]),
    ("finite_well", pot.FiniteWell(depth=200.0, a=-math.pi / 2, b=math.pi / 2),
     [dict(n=i) for i in range(1, 6)]),
    ("bouncer", pot.Bouncer(force=0.5), [dict(n=i) for i in range(1, 6)]),
    ("symlin", pot.SymmetricLinear(force=0.5),
     [dict(n=1, parity="even"), dict(n=1, parity="odd"),
      dict(n=2, parity="even"), dict(n=2, parity="odd"),
      dict(n=3, parity="even")]),
    ("asymlin", pot.AsymmetricLinear(force_right=0.5, force_left=2.0),
     [dict(n=i) for i in range(1, 6)]),
]


@pytest.mark.parametrize("name,spec,sels", FAMILIES, ids=[f[0] for f in FAMILIES])
def test_orthonormality(name, spec, sels):
    states = [eig.solve(spec, s["n"], s.get("parity")) for s in sels]
    for i, a in enumerate(states):
        for j, b in enumerate(states):
            want = 1.0 if i == j else 0.0
            assert norm_integral(a, b) == pytest.approx(want, abs=1e-6)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_shooting_agreement_bouncer(n):
    spec = pot.Bouncer(force=0.5)
    st = eig.solve(spec, n)
    osc = eig.shooting_oracle(spec, (st.energy - 0.05, st.energy + 0.05), n)
    assert abs(st.energy - osc.energy) / abs(st.energy) < 1e-8


@pytest.mark.parametrize("n,parity", [(n, p) for n in (1, 2, 3, 4, 5)
                                      for p in ("even", "odd")])
def test_shooting_agreement_symmetric_linear(n, parity):
    spec = pot.SymmetricLinear(force=0.5)
    st = eig.solve(spec, n, parity)
    osc = eig.shooting_oracle(spec, (st.energy - 0.04, st.energy + 0.04),
                              n, parity)
    assert abs(st.energy - osc.energy) / abs(st.energy) < 1e-8

"""Large-|p| expansion of the momentum-space wavefunction from discontinuity data.

Each non-smooth point a of psi contributes a series of terms

    T_n(p) = (-i)^n [psi^(n-1)(a+) - psi^(n-1)(a-)] e^{-ipa/hbar} (hbar/p)^n,

and phi(p) = (1/sqrt(2 pi hbar)) * sum_n T_n(p), summed over all locations.
Order-1 terms vanish identically because psi is continuous.

Two independent routes give the lowest nonvanishing jump at each location:
reading the solver's analytic derivative table, or applying the jump condition
psi^(k+2)(a+) - psi^(k+2)(a-) = (2m/hbar^2) [V^(k)(a+) - V^(k)(a-)] psi(a)
(with the (k+1)-enhanced psi'(a) variant when psi(a) = 0). ``predict_tail``
cross-checks the two and refuses to emit a prediction when they disagree.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .eigensolve import BoundState
from .errors import InconsistentJumps, InsufficientDerivativeDepth, UnsupportedCase
from .potentials import DiscontinuityRecord

_REL_ZERO = 1e-9    # below this (relative to the one-sided values) a jump is "zero"

DEFAULT_ORDER_CUTOFF = 6


@dataclass(frozen=True)
class TailTerm:
    """One term of the large-|p| expansion, anchored at one discontinuity."""
    location: float
    order: int            # power of (hbar/p)
    jump: float           # psi^(order-1)(a+) - psi^(order-1)(a-)
    hbar: float = 1.0

    @property
    def phase_prefactor(self) -> complex:
        return (-1j) ** self.order

    @property
    def coefficient(self) -> complex:
        """Complex prefactor of e^{-ipa/hbar} p^{-order}."""
        return (self.phase_prefactor * self.jump * self.hbar ** self.order
                / math.sqrt(2.0 * math.pi * self.hbar))

    def contribution(self, p):
        """Complex contribution to phi(p), vectorized over p."""
        p = np.asarray(p, dtype=float)
        return (self.coefficient * np.exp(-1j * p * self.location / self.hbar)
                / p.astype(complex) ** self.order)


@dataclass
class TailPrediction:
    """All expansion terms up to a cutoff, plus the leading-order envelope."""
    terms: list[TailTerm]
    leading_exponent: int

    def leading_terms(self) -> list[TailTerm]:
        return [t for t in self.terms if t.order == self.leading_exponent and t.jump != 0.0]

    def series(self, p, max_order: int | None = None):
        """Sum of all (or all up-to-max_order) term contributions at p."""
        p = np.asarray(p, dtype=float)
        total = np.zeros(p.shape, dtype=complex)
        for t in self.terms:
            if t.jump == 0.0:
                continue
            if max_order is not None and t.order > max_order:
                continue
            total += t.contribution(p)
        return total

    def leading_envelope(self, p):
        """|sum of leading-order contributions|, phases included, vectorized."""
        p = np.asarray(p, dtype=float)
        total = np.zeros(p.shape, dtype=complex)
        for t in self.leading_terms():
            total += t.contribution(p)
        return np.abs(total)


def expansion_terms(state: BoundState, records: list[DiscontinuityRecord],
                    n_max: int = DEFAULT_ORDER_CUTOFF) -> list[TailTerm]:
    """All T_n terms with n <= n_max at every discontinuity location."""
    terms: list[TailTerm] = []
    hbar = _state_hbar(state)
    for rec in records:
        side = state.table_at(rec.location)
        if n_max - 1 > len(side.right) - 1:
            raise InsufficientDerivativeDepth(
                f"need derivatives through order {n_max - 1}, table holds {len(side.right) - 1}")
        for n in range(1, n_max + 1):
            raw = side.right[n - 1] - side.left[n - 1]
            scale = abs(side.right[n - 1]) + abs(side.left[n - 1])
            jump = 0.0 if abs(raw) <= _REL_ZERO * scale else raw
            terms.append(TailTerm(rec.location, n, jump, hbar))
    return terms


def _state_hbar(state: BoundState) -> float:
    return getattr(state, "hbar", 1.0)


def jump_from_potential(record: DiscontinuityRecord, state: BoundState,
                        mass: float = 1.0, hbar: float = 1.0) -> float:
    """Predicted lowest nonvanishing psi-derivative jump from potential data alone.

    Uses only the V-jump and psi(a) (or psi'(a) when psi(a) = 0); never reads
    the one-sided derivative differences, so it is an independent route.
    The derivative order it applies to is given by ``jump_order``.
    """
    if record.is_wall:
        raise UnsupportedCase("walls have one-sided data only; no jump-condition route")
    side = state.table_at(record.location)
    if record.order == -1:
        # delta: psi'(a+) - psi'(a-) = (2m/hbar^2) * c * psi(a), c the delta coefficient
        return 2.0 * mass / hbar ** 2 * record.jump * side.value
    scale = max(abs(side.right[1]), abs(side.left[1]), 1.0)
    if abs(side.value) > 1e-10 * scale:
        return 2.0 * mass / hbar ** 2 * record.jump * side.value
    psi_prime = side.right[1]
    if abs(psi_prime) <= 1e-10 * scale:
        raise UnsupportedCase("psi and psi' both vanish at the discontinuity")
    return (record.order + 1) * 2.0 * mass / hbar ** 2 * record.jump * psi_prime


def jump_order(record: DiscontinuityRecord, state: BoundState) -> int:
    """Derivative order of the jump predicted by ``jump_from_potential``."""
    if record.is_wall:
        raise UnsupportedCase("walls have one-sided data only")
    side = state.table_at(record.location)
    if record.order == -1:
        return 1
    scale = max(abs(side.right[1]), abs(side.left[1]), 1.0)
    if abs(side.value) > 1e-10 * scale:
        return record.order + 2
    return record.order + 3


def predict_tail(state: BoundState, records: list[DiscontinuityRecord],
                 n_max: int = DEFAULT_ORDER_CUTOFF, mass: float = 1.0,
                 hbar: float = 1.0, check_tol: float = 1e-8) -> TailPrediction:
    """Expansion terms plus the leading exponent, with the two-route cross-check."""
    terms = expansion_terms(state, records, n_max)
    for rec in records:
        if rec.is_wall:
            continue
        predicted = jump_from_potential(rec, state, mass, hbar)
        order = jump_order(rec, state)
        side = state.table_at(rec.location)
        tabulated = side.right[order] - side.left[order]
        tol = check_tol * max(abs(predicted), abs(tabulated), 1.0)
        if abs(predicted - tabulated) > tol:
            raise InconsistentJumps(
                f"at x={rec.location}: potential route gives {predicted!r} for the "
                f"order-{order} jump, derivative table gives {tabulated!r}")
    nonzero = [t.order for t in terms if t.jump != 0.0]
    if not nonzero:
        raise UnsupportedCase("no nonvanishing jump up to the requested order")
    return TailPrediction(terms=terms, leading_exponent=min(nonzero))


def prediction_to_csv(prediction: TailPrediction) -> str:
    """CSV rows (order, location, jump, coefficient_re, coefficient_im)."""
    buf = io.StringIO()
    buf.write("order,location,jump,coefficient_re,coefficient_im\n")
    for t in sorted(prediction.terms, key=lambda t: (t.order, t.location)):
        c = t.coefficient
        buf.write(f"{t.order},{t.location:.17g},{t.jump:.17g},{c.real:.17g},{c.imag:.17g}\n")
    return buf.getvalue()


def summary(prediction: TailPrediction) -> str:
    lines = [f"leading exponent: {prediction.leading_exponent} "
             f"(|phi| ~ p^-{prediction.leading_exponent})"]
    for t in prediction.leading_terms():
        lines.append(f"  x = {t.location:g}: jump {t.jump:.6g}, "
                     f"|coefficient| {abs(t.coefficient):.6g}")
    return "\n".join(lines)

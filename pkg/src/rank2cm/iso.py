"""Isomorphism of rank-2 modules: closed-form criteria and explicit witnesses.

An isomorphism ``phi: M_B -> M_C`` is fixed by its matrix at one even vertex
``s``, ``[[alpha, beta], [gamma, delta]]``; every other ``phi_v`` follows from
``phi_e x_e = x'_e phi_(e-1)``.  The propagated matrices stay integral iff
``t | gamma`` and, for ``k = 1..4``,

    t | -alpha P_k + delta Q_k - P_k Q_k gamma / t

where ``P_k`` (``Q_k``) is the sum of the ``2k`` coefficients of ``b`` (``c``)
following vertex ``s``.  Each case below picks two of these relations, makes
them hold exactly with one of ``alpha``, ``delta`` normalised to 1 and
``beta = 0``, and relies on the case criterion for the remaining ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import matrix as mx
from .rank2 import (
    CaseLabel,
    DecomposableInputError,
    Rank2Module,
    b_sums,
    build_M,
    classify_case,
    divisibility_profile,
    odd,
)
from .series import NotDivisibleError, PowerSeries


class WitnessError(RuntimeError):
    """A constructed witness failed verification (an internal inconsistency)."""


# --------------------------------------------------------------------------
# criteria


def profiles_match(mB: Rank2Module, mC: Rank2Module) -> bool:
    """Same divisibility of every ``B_i`` and of every cyclic interval sum."""
    return divisibility_profile(mB).invariant_part() == divisibility_profile(mC).invariant_part()


@dataclass(frozen=True)
class IsoDecision:
    isomorphic: bool
    criterion: str
    case: CaseLabel
    value: tuple = ()  # the constant term(s) that had to vanish, when applicable

    def __bool__(self):
        return self.isomorphic


def four_generic_value(B: dict, C: dict, idx: tuple) -> Fraction:
    i1, i2, i3, i4 = idx
    return B[i1] * C[i2] * B[i3] * C[i4] - C[i1] * B[i2] * C[i3] * B[i4]


def five_single_value(B: dict, C: dict, l: int) -> Fraction:
    o = lambda s: odd(l + s)  # noqa: E731
    return (B[o(-2)] + B[l]) * C[l] * B[o(4)] * C[o(6)] - (C[o(-2)] + C[l]) * B[l] * C[o(4)] * B[o(6)]


def five_generic_values(B: dict, C: dict) -> tuple:
    first = C[1] * B[3] * (C[5] + C[7]) * B[9] - B[1] * C[3] * (B[5] + B[7]) * C[9]
    second = C[1] * B[3] * C[5] * (B[7] + B[9]) - B[1] * C[3] * B[5] * (C[7] + C[9])
    return first, second


def _require_indecomposable(m: Rank2Module, which: str) -> CaseLabel:
    case = classify_case(m)
    if not case.indecomposable:
        raise DecomposableInputError(f"{which} module is decomposable ({case}); the criteria need indecomposables")
    return case


def decide_isomorphic(mB: Rank2Module, mC: Rank2Module) -> IsoDecision:
    caseB = _require_indecomposable(mB, "first")
    _require_indecomposable(mC, "second")
    if not profiles_match(mB, mC):
        return IsoDecision(False, "profile-mismatch", caseB)
    B, C = b_sums(mB).constants(), b_sums(mC).constants()
    kind = caseB.kind
    if kind == "Three":
        return IsoDecision(True, "three-rigid", caseB)
    if kind == "FourSplit":
        return IsoDecision(True, "four-split-rigid", caseB)
    if kind == "FiveDouble":
        return IsoDecision(True, "five-double-rigid", caseB)
    if kind == "FourGeneric":
        v = four_generic_value(B, C, caseB.indices)
        return IsoDecision(v == 0, "four-generic-quartic", caseB, (v,))
    if kind == "FiveSingle":
        v = five_single_value(B, C, caseB.l)
        return IsoDecision(v == 0, "five-single-quartic", caseB, (v,))
    if kind == "FiveGeneric":
        v = five_generic_values(B, C)
        return IsoDecision(v[0] == 0 and v[1] == 0, "five-generic-quartics", caseB, v)
    raise AssertionError(kind)


# --------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class IsoWitness:
    """``phi[v]`` is the 2x2 matrix at vertex ``v`` (``v = 0..9``)."""

    phi: tuple

    @property
    def prec(self) -> int:
        return mx.prec_of(self.phi[0])

    def to_json(self) -> list:
        return [mx.to_json(a) for a in self.phi]

    @classmethod
    def from_json(cls, data) -> "IsoWitness":
        if len(data) != 10:
            raise ValueError(f"a witness has 10 matrices, got {len(data)}")
        return cls(tuple(mx.from_json(a) for a in data))


@dataclass
class WitnessReport:
    ok: bool
    failures: list

    def __bool__(self):
        return self.ok


def identity_witness(prec: int) -> IsoWitness:
    return IsoWitness(tuple(mx.identity(2, prec) for _ in range(10)))


def verify_witness(mB: Rank2Module, mC: Rank2Module, w: IsoWitness) -> WitnessReport:
    """Check both commutation squares on every edge and that ``det phi_0`` is a unit."""
    prec = w.prec
    a, b = mB.maps.with_prec(prec), mC.maps.with_prec(prec)
    phi = w.phi
    failures = []
    if len(phi) != 10:
        return WitnessReport(False, [f"expected 10 matrices, got {len(phi)}"])
    for e in range(1, 11):
        src, dst = e - 1, e % 10
        diff = mx.first_difference(mx.matmul(phi[dst], a.x_at(e)), mx.matmul(b.x_at(e), phi[src]))
        if diff:
            failures.append(f"edge {e}: phi_{dst} x_{e} != x'_{e} phi_{src} at entry {diff[:2]}, t^{diff[2]}")
        diff = mx.first_difference(mx.matmul(b.y_at(e), phi[dst]), mx.matmul(phi[src], a.y_at(e)))
        if diff:
            failures.append(f"edge {e}: y'_{e} phi_{dst} != phi_{src} y_{e} at entry {diff[:2]}, t^{diff[2]}")
    if not mx.det(phi[0]).is_unit():
        failures.append("det(phi_0) is not a unit")
    return WitnessReport(not failures, failures)


def partial_sum(m: Rank2Module, base: int, k: int) -> PowerSeries:
    """Sum of the ``2k`` coefficients following even vertex ``base``."""
    tup = m.tuple
    acc = PowerSeries.zero(tup.prec)
    for j in range(1, 2 * k + 1):
        acc = acc + tup[(base + j - 1) % 10 + 1]
    return acc


def propagate(mB: Rank2Module, mC: Rank2Module, base: int, phi_base) -> tuple:
    """All ``phi_v`` from the matrix at ``base``; raises NotDivisibleError if one leaves the ring.

    Each step loses one order to the division by ``t``, so the result is valid
    ten orders below the working precision of the inputs.
    """
    phi = [None] * 10
    phi[base % 10] = phi_base
    cur = phi_base
    for step in range(1, 11):
        e = (base + step - 1) % 10 + 1
        num = mx.matmul(mx.matmul(mC.maps.x_at(e), cur), mB.maps.y_at(e))
        cur = mx.matmap(lambda s: s.div_by_t(), num)
        if step < 10:
            phi[e % 10] = cur
    return tuple(phi), cur


# which two relations each case solves exactly, and which entry is normalised
def _plan(case: CaseLabel):
    kind = case.kind
    if kind in ("Three", "FourGeneric"):
        i1, i2 = case.indices[0], case.indices[1]
        return i1 - 1, (i2 - i1) // 2 + 1, "delta" if kind == "Three" else "alpha"
    if kind == "FourSplit":
        idx = case.indices
        for pos, i1 in enumerate(idx):
            i2 = idx[(pos + 1) % 4]
            if (i1, i2) not in case.split and (i2, i1) not in case.split:
                return i1 - 1, (i2 - i1) % 10 // 2 + 1, "delta"
    if kind in ("FiveDouble", "FiveSingle"):
        return (case.l - 3) % 10, 2, "delta" if kind == "FiveDouble" else "alpha"
    if kind == "FiveGeneric":
        return 0, 2, "alpha"
    raise AssertionError(case)


def construct_witness(mB: Rank2Module, mC: Rank2Module, check: bool = True) -> IsoWitness:
    """Build and verify an explicit isomorphism ``M_B -> M_C``."""
    decision = decide_isomorphic(mB, mC)
    if not decision:
        raise ValueError(f"modules are not isomorphic ({decision.criterion})")
    prec = min(mB.prec, mC.prec)
    work = prec + 12
    wB, wC = build_M(mB.tuple.with_prec(work)), build_M(mC.tuple.with_prec(work))
    base, k2, normalise = _plan(decision.case)
    p1, p2 = partial_sum(wB, base, 1), partial_sum(wB, base, k2)
    q1, q2 = partial_sum(wC, base, 1), partial_sum(wC, base, k2)
    one = PowerSeries.one(work)
    # -alpha p + delta q - p q g = 0 for both pairs, i.e. g = delta/p - alpha/q
    if normalise == "delta":
        delta = one
        alpha = (p2 - p1) * q1 * q2 / (p1 * p2 * (q2 - q1))
    else:
        alpha = one
        delta = (q2 - q1) * p1 * p2 / (q1 * q2 * (p2 - p1))
    g = delta / p1 - alpha / q1
    phi_base = ((alpha, PowerSeries.zero(work)), (g.shift(1), delta))
    try:
        phi, closing = propagate(wB, wC, base, phi_base)
    except NotDivisibleError as exc:
        raise WitnessError(f"propagation left the ring for case {decision.case}: {exc}") from exc
    if mx.with_prec(closing, prec) != mx.with_prec(phi_base, prec):
        raise WitnessError("propagation around the cycle did not close up")
    w = IsoWitness(tuple(mx.with_prec(a, prec) for a in phi))
    if check:
        report = verify_witness(mB, mC, w)
        if not report:
            raise WitnessError("; ".join(report.failures))
    return w

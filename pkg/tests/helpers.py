"""Random generators shared by the test modules.

Everything is driven by an explicit ``random.Random`` so failures reproduce.
"""

from __future__ import annotations

import random
from fractions import Fraction as F

from rank2cm import families as fam
from rank2cm.rank2 import (
    ODD,
    CoeffTuple,
    b_sums,
    build_M,
    classify_constants,
    odd,
    profile_from_constants,
)
from rank2cm.series import PowerSeries

ALL_KINDS = ("TrivialSum", "DecomposableOther", "Three", "FourSplit", "FiveDouble",
             "FourGeneric", "FiveSingle", "FiveGeneric")


def small(rng: random.Random) -> F:
    return F(rng.randint(-3, 3), rng.choice((1, 1, 2, 3)))


def rand_series(rng, prec, const=None) -> PowerSeries:
    c = [small(rng) for _ in range(prec)]
    if const is not None:
        c[0] = F(const)
    return PowerSeries(c, prec)


def random_tuple(rng, prec=8) -> CoeffTuple:
    """Nine random coefficients, the tenth forced so the sum is zero."""
    b = [rand_series(rng, prec) for _ in range(9)]
    total = b[0]
    for s in b[1:]:
        total = total + s
    return CoeffTuple(tuple(b) + (-total,))


def realize(consts: dict, rng, prec=8) -> CoeffTuple:
    """Random tuple whose sums ``B_i`` have the given constant terms."""
    b = []
    for i in ODD[:4]:
        bi = rand_series(rng, prec)
        b += [bi, rand_series(rng, prec, consts[i]) - bi]
    b.append(rand_series(rng, prec))
    total = b[0]
    for s in b[1:]:
        total = total + s
    b.append(-total)
    tup = CoeffTuple(tuple(b))
    assert b_sums(build_M(tup)).constants() == consts
    return tup


def random_constants(kind: str, rng, bound=4) -> dict:
    """Rejection-sample integer constants (summing to 0) with the given case kind."""
    while True:
        v = {i: F(0) for i in ODD}
        if kind != "TrivialSum":
            support = rng.sample(ODD, rng.choice((2, 3, 4, 5)) if kind == "DecomposableOther" else
                                 {"Three": 3, "FourSplit": 4, "FourGeneric": 4}.get(kind, 5))
            for i in support[:-1]:
                v[i] = F(rng.choice([x for x in range(-bound, bound + 1) if x]))
            v[support[-1]] = -sum(v[i] for i in support[:-1])
        if classify_constants(v).kind == kind:
            return v


def same_profile_constants(consts: dict, rng, tries=5000) -> dict:
    kind = classify_constants(consts).kind
    target = profile_from_constants(consts).invariant_part()
    for _ in range(tries):
        c = random_constants(kind, rng)
        if profile_from_constants(c).invariant_part() == target:
            return c
    raise RuntimeError(f"no same-profile sample found for {consts}")


def scale(consts: dict, lam) -> dict:
    return {i: F(lam) * v for i, v in consts.items()}


def _candidates_iso(consts: dict) -> list:
    """Constant patterns that carry the same invariant as ``consts`` (before scaling)."""
    case = classify_constants(consts)
    B = dict(consts)
    out = [dict(B)]
    if case.kind == "FourGeneric":
        i1, i2, i3, i4 = case.indices
        c = dict(B)
        c[i2], c[i4] = B[i4], B[i2]
        out.append(c)
        c = dict(B)
        c[i1], c[i3] = B[i3], B[i1]
        out.append(c)
    elif case.kind == "FiveSingle":
        l = case.l
        lm2, l4 = odd(l - 2), odd(l + 4)
        x, y = B[lm2] + B[l], B[l4]
        c = dict(B)
        c[lm2], c[l4] = y - B[l], x
        out.append(c)
    elif case.kind == "FiveGeneric":
        nf = fam.five_generic_normal_form(build_M(CoeffTuple.from_sums(B, 2)))
        if nf is not None:
            out.append(nf.sums())
    return out


def isomorphic_constants(consts: dict, rng) -> dict:
    """A same-profile constant pattern isomorphic to ``consts`` by construction, not by the criterion.

    FiveGeneric uses the normal form and therefore the criterion; the oracle
    still checks those pairs independently.
    """
    target = profile_from_constants(consts).invariant_part()
    cands = _candidates_iso(consts)
    rng.shuffle(cands)
    for c in cands:
        c = scale(c, rng.choice((1, -1, 2, F(1, 2), -3, F(2, 3))))
        if profile_from_constants(c).invariant_part() == target:
            return c
    return scale(consts, rng.choice((-1, 2, F(1, 3))))

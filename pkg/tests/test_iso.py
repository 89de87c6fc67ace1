import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import isomorphic_constants, random_constants, realize, same_profile_constants
from rank2cm import families as fam
from rank2cm import matrix as mx
from rank2cm.iso import (
    IsoWitness,
    construct_witness,
    decide_isomorphic,
    identity_witness,
    partial_sum,
    profiles_match,
    verify_witness,
)
from rank2cm.oracle import in_span, iso_oracle, solve_hom_space
from rank2cm.rank2 import (
    INDECOMPOSABLE_KINDS,
    CoeffTuple,
    DecomposableInputError,
    build_M,
    divisibility_profile,
    module_from_sums,
)
from rank2cm.series import PowerSeries

M2 = module_from_sums((1, 2, -1, -2, 0))
M_2 = module_from_sums((1, -2, -1, 2, 0))
M3 = module_from_sums((1, 3, -1, -3, 0))


def iso_pair(kind, rng, prec=8):
    cb = random_constants(kind, rng)
    cc = isomorphic_constants(cb, rng)
    return build_M(realize(cb, rng, prec)), build_M(realize(cc, rng, prec))


# --- profiles --------------------------------------------------------------------


def test_profiles_match_examples():
    assert profiles_match(M2, M2)
    assert not profiles_match(M2, module_from_sums((1, 2, -1, 0, -2)))
    assert profiles_match(M2, M3)


def test_non_interval_pair_sums_are_not_invariant():
    # B_1 + B_5 vanishes for M_2 but not here; the modules are still isomorphic
    y = module_from_sums((1, 1, F(-2, 5), F(-8, 5), 0))
    assert divisibility_profile(y).div_pairs != divisibility_profile(M2).div_pairs
    assert profiles_match(y, M2)
    assert decide_isomorphic(y, M2)
    assert iso_oracle(y, M2, 4)
    assert verify_witness(y, M2, construct_witness(y, M2))


# --- decisions -------------------------------------------------------------------


def test_four_generic_examples():
    d = decide_isomorphic(M2, M_2)
    assert d and d.criterion == "four-generic-quartic" and d.value == (0,)
    d = decide_isomorphic(M2, M3)
    assert not d and d.value == (5,)


def test_five_single_example():
    a = fam.representative(fam.five_single(1))
    b = fam.representative(fam.five_single(-3))
    assert decide_isomorphic(a, b).criterion == "five-single-quartic"
    assert decide_isomorphic(a, b)


def test_three_profile_mismatch():
    a = module_from_sums((1, 1, -2, 0, 0))
    b = module_from_sums((1, 1, 0, -2, 0))
    d = decide_isomorphic(a, b)
    assert not d and d.criterion == "profile-mismatch"


@pytest.mark.parametrize(
    "sums,criterion",
    [
        ((1, 1, -2, 0, 0), "three-rigid"),
        ((1, 1, -1, -1, 0), "four-split-rigid"),
        ((1, -1, 1, 1, -2), "five-double-rigid"),
        ((2, -7, 3, 1, 1), "five-generic-quartics"),
    ],
)
def test_criterion_names(sums, criterion):
    m = module_from_sums(sums)
    assert decide_isomorphic(m, m).criterion == criterion


def test_decomposable_input_rejected():
    with pytest.raises(DecomposableInputError):
        decide_isomorphic(module_from_sums((1, -1, 0, 0, 0)), M2)
    with pytest.raises(DecomposableInputError):
        decide_isomorphic(M2, module_from_sums((0, 0, 0, 0, 0)))


@given(st.integers(0, 10**6), st.sampled_from(INDECOMPOSABLE_KINDS))
def test_decision_symmetric(seed, kind):
    rng = random.Random(seed)
    cb = random_constants(kind, rng)
    cc = same_profile_constants(cb, rng) if rng.random() < 0.7 else random_constants(kind, rng)
    a, b = build_M(realize(cb, rng, 3)), build_M(realize(cc, rng, 3))
    assert decide_isomorphic(a, b).isomorphic == decide_isomorphic(b, a).isomorphic


@pytest.mark.parametrize("shift", [2, 4, 6, 8])
def test_five_generic_rotation_against_oracle(shift):
    # the printed conditions single out no index; rotated inputs must still agree with the oracle
    rng = random.Random(shift)
    for k in range(3):
        cb = random_constants("FiveGeneric", rng)
        cc = isomorphic_constants(cb, rng) if k == 0 else same_profile_constants(cb, rng)
        a, b = realize(cb, rng, 4), realize(cc, rng, 4)
        ra = build_M(CoeffTuple(a.b[shift:] + a.b[:shift]))
        rb = build_M(CoeffTuple(b.b[shift:] + b.b[:shift]))
        assert decide_isomorphic(ra, rb).isomorphic == iso_oracle(ra, rb, 4).isomorphic


@pytest.mark.parametrize("l", [1, 3, 5, 7, 9])
def test_five_single_rotation_against_oracle(l):
    reps = {b: fam.representative(fam.five_single(b, l)) for b in (1, -3, 2)}
    assert decide_isomorphic(reps[1], reps[-3]) and iso_oracle(reps[1], reps[-3], 4)
    assert not decide_isomorphic(reps[1], reps[2]) and not iso_oracle(reps[1], reps[2], 4)


# --- witnesses -------------------------------------------------------------------


def test_identity_witness():
    assert verify_witness(M2, M2, identity_witness(8))


def test_gamma_not_divisible_is_rejected():
    w = construct_witness(M2, M_2)
    phi = list(w.phi)
    (a, b), (g, d) = phi[0]
    phi[0] = ((a, b), (g + PowerSeries.one(8), d))
    rep = verify_witness(M2, M_2, IsoWitness(tuple(phi)))
    assert not rep and rep.failures


def test_non_isomorphic_has_no_witness():
    with pytest.raises(ValueError):
        construct_witness(M2, M3)


def test_three_case_closed_form():
    rng = random.Random(3)
    mB, mC = iso_pair("Three", rng)
    w = construct_witness(mB, mC)
    # normalised at the vertex before the first nondivisible index, cut after the second one
    i1, i2, _ = divisibility_profile(mB).nondivisible()
    base, k2 = i1 - 1, (i2 - i1) // 2 + 1
    (alpha, beta), (gamma, delta) = w.phi[base]
    assert beta.is_zero() and delta == PowerSeries.one(8) and gamma.divisible_by_t()
    p1, p2 = partial_sum(mB, base, 1), partial_sum(mB, base, k2)
    q1, q2 = partial_sum(mC, base, 1), partial_sum(mC, base, k2)
    const = lambda s: s.constant_term()  # noqa: E731
    expect = (const(p2) - const(p1)) * const(q1) * const(q2) / (const(p1) * const(p2) * (const(q2) - const(q1)))
    assert alpha.constant_term() == expect


@pytest.mark.parametrize("kind", INDECOMPOSABLE_KINDS)
@pytest.mark.parametrize("prec", [4, 6, 8])
def test_witness_soundness(kind, prec):
    rng = random.Random(INDECOMPOSABLE_KINDS.index(kind) * 10 + prec)
    for _ in range(4):
        mB, mC = iso_pair(kind, rng, prec)
        assert decide_isomorphic(mB, mC)
        w = construct_witness(mB, mC)
        assert w.prec == prec
        assert verify_witness(mB, mC, w)
        dets = {mx.det(a) for a in w.phi}
        assert len(dets) == 1


@pytest.mark.parametrize("kind", INDECOMPOSABLE_KINDS)
def test_witness_in_hom_span(kind):
    rng = random.Random(len(kind))
    mB, mC = iso_pair(kind, rng, 4)
    w = construct_witness(mB, mC)
    hom = solve_hom_space(mB, mC, 4)
    assert in_span(w.phi, hom)


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.sampled_from(INDECOMPOSABLE_KINDS))
def test_witness_json_roundtrip(seed, kind):
    mB, mC = iso_pair(kind, random.Random(seed), 5)
    w = construct_witness(mB, mC)
    back = IsoWitness.from_json(w.to_json())
    assert back == w
    assert verify_witness(mB, mC, back)

"""Representatives and invariants for the isomorphism classes of indecomposables.

Representatives put all the mass on odd positions (``b_i = B_i`` for odd
``i``, ``b_even = 0``).  Rigid cases contribute 10 + 10 + 5 classes; the three
infinite families are parameterised by one or two scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .rank2 import (
    FAMILY_KINDS,
    ODD,
    CaseLabel,
    DecomposableInputError,
    Rank2Module,
    b_sums,
    classify_case,
    classify_constants,
    module_from_sums,
    odd,
)
from .series import DEFAULT_PREC, to_scalar


class ParameterError(ValueError):
    """A family parameter hits an excluded value."""


def _rotate(values_from_l: dict, l: int) -> dict:
    """``values_from_l[s]`` is the sum at odd index ``l + s``."""
    return {odd(l + s): v for s, v in values_from_l.items()}


def _sums_for(case: CaseLabel, params: tuple) -> dict:
    kind = case.kind
    sums = {i: Fraction(0) for i in ODD}
    if kind == "Three":
        for i, v in zip(case.indices, (1, 1, -2)):
            sums[i] = Fraction(v)
    elif kind == "FourSplit":
        i1, i2, i3, i4 = case.indices
        pattern = (1, -1, -1, 1) if (i1, i2) in case.split else (1, 1, -1, -1)
        for i, v in zip(case.indices, pattern):
            sums[i] = Fraction(v)
    elif kind == "FiveDouble":
        sums = _rotate({0: 1, 2: -1, 4: 1, 6: 1, 8: -2}, case.l)
    elif kind == "FourGeneric":
        (beta,) = params
        for i, v in zip(case.indices, (1, beta, -1, -beta)):
            sums[i] = Fraction(v)
    elif kind == "FiveSingle":
        (beta,) = params
        sums = _rotate({-2: beta, 0: 1, 2: -1, 4: -beta - 1, 6: 1}, case.l)
    elif kind == "FiveGeneric":
        a, g = params
        sums = dict(zip(ODD, (a, -2 - a - g, g, Fraction(1), Fraction(1))))
    else:
        raise ValueError(f"no representatives for {case}")
    return {i: Fraction(v) for i, v in sums.items()}


_EXCLUDED = {
    "FourGeneric": ((-1, 0, 1),),
    "FiveSingle": ((0, -1, -2),),
    "FiveGeneric": ((0, -1, -2), (0, -1, -2)),
}
_N_PARAMS = {"FourGeneric": 1, "FiveSingle": 1, "FiveGeneric": 2}


@dataclass(frozen=True)
class FamilyPoint:
    """A case label plus its family parameters (none for rigid cases)."""

    case: CaseLabel
    parameters: tuple = ()

    def __post_init__(self):
        params = tuple(to_scalar(p) for p in self.parameters)
        object.__setattr__(self, "parameters", params)
        kind = self.case.kind
        if len(params) != _N_PARAMS.get(kind, 0):
            raise ParameterError(f"{kind} takes {_N_PARAMS.get(kind, 0)} parameter(s), got {len(params)}")
        for p, bad in zip(params, _EXCLUDED.get(kind, ())):
            if p in bad:
                raise ParameterError(f"{kind}: parameter {p} is excluded (must avoid {list(bad)})")
        if kind == "FiveGeneric" and -2 - params[0] - params[1] == 0:
            raise ParameterError("FiveGeneric: alpha + gamma = -2 makes B_3 divisible")
        # the exclusion lists are the ones for the standard positions; confirm on the sums themselves
        got = classify_constants(self.sums())
        if got != self.case:
            raise ParameterError(f"parameters {list(map(str, params))} give {got}, not {self.case}")

    def sums(self) -> dict:
        return _sums_for(self.case, self.parameters)

    def __str__(self):
        if not self.parameters:
            return str(self.case)
        return f"{self.case}[{', '.join(map(str, self.parameters))}]"

    def to_json(self) -> dict:
        return {"case": self.case.to_json(), "parameters": [str(p) for p in self.parameters]}


def four_generic(beta, indices=(1, 3, 5, 7)) -> FamilyPoint:
    return FamilyPoint(CaseLabel("FourGeneric", tuple(indices)), (beta,))


def five_single(beta, l: int = 3) -> FamilyPoint:
    return FamilyPoint(CaseLabel("FiveSingle", l=l), (beta,))


def five_generic(alpha, gamma) -> FamilyPoint:
    return FamilyPoint(CaseLabel("FiveGeneric"), (alpha, gamma))


def representative(p: FamilyPoint, prec: int = DEFAULT_PREC) -> Rank2Module:
    return module_from_sums(p.sums(), prec)


# --------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class Invariant:
    """``data`` identifies the discrete part (indices, split, l); ``value`` the modulus if any."""

    kind: str
    data: tuple
    value: Fraction | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "data": _jsonable(self.data)}
        if self.value is not None:
            out["value"] = str(self.value)
        return out


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


def four_generic_beta_squared(B: dict, idx: tuple) -> Fraction:
    i1, i2, i3, i4 = idx
    return B[i2] * B[i4] / (B[i1] * B[i3])


def five_single_shift_squared(B: dict, l: int) -> Fraction:
    """``(1 + beta)^2`` of the class, read off at rotation ``l``."""
    o = lambda s: odd(l + s)  # noqa: E731
    return -(B[o(-2)] + B[l]) * B[o(4)] / (B[l] * B[o(6)])


def invariant(m: Rank2Module) -> Invariant:
    case = classify_case(m)
    if not case.indecomposable:
        raise DecomposableInputError(f"no invariant for a decomposable module ({case})")
    B = b_sums(m).constants()
    kind = case.kind
    if kind == "Three":
        return Invariant(kind, case.indices)
    if kind == "FourSplit":
        return Invariant(kind, (case.indices, case.split))
    if kind == "FiveDouble":
        return Invariant(kind, (case.l,))
    if kind == "FourGeneric":
        return Invariant(kind, case.indices, four_generic_beta_squared(B, case.indices))
    if kind == "FiveSingle":
        return Invariant(kind, (case.l,), five_single_shift_squared(B, case.l))
    return Invariant(kind, ())


def five_generic_normal_form(m: Rank2Module):
    """Parameters ``(alpha, gamma)`` of a FiveGeneric representative matching ``m``.

    Eliminating between the two quartic conditions against
    ``(alpha, -2-alpha-gamma, gamma, 1, 1)`` leaves one linear equation for each
    parameter, so the solution is unique when it exists.  Returns None when a
    denominator vanishes or the solution hits an excluded value.
    """
    case = classify_case(m)
    if case.kind != "FiveGeneric":
        raise ValueError(f"expected a FiveGeneric module, got {case}")
    B = b_sums(m).constants()
    den = (B[7] + B[9]) * (B[5] + B[7]) - 2 * B[5] * B[9]
    if den == 0:
        return None
    gamma = 2 * B[5] * B[9] / den
    den2 = B[1] + gamma * B[3] * (B[7] + B[9]) / (2 * B[5])
    if den2 == 0:
        return None
    alpha = B[1] * (-2 - gamma) / den2
    try:
        return five_generic(alpha, gamma)
    except ParameterError:
        return None


# --------------------------------------------------------------------------
# enumeration


def enumerate_rigid_classes() -> list:
    """The 10 Three, 10 FourSplit and 5 FiveDouble classes."""
    out = []
    for idx in combinations(ODD, 3):
        out.append(FamilyPoint(CaseLabel("Three", idx)))
    for missing in ODD:
        idx = tuple(i for i in ODD if i != missing)
        i1, i2, i3, i4 = idx
        for split in (((i1, i2), (i3, i4)), ((i2, i3), (i4, i1))):
            split = tuple(sorted(split))
            out.append(FamilyPoint(CaseLabel("FourSplit", idx, split=split)))
    for l in ODD:
        out.append(FamilyPoint(CaseLabel("FiveDouble", l=l)))
    return out


def sample_family_points() -> list:
    """One member of each infinite family, at the standard positions."""
    return [four_generic(2), five_single(3), five_generic(2, 3)]


def is_family(kind: str) -> bool:
    return kind in FAMILY_KINDS

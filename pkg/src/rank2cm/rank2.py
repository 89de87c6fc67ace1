"""Rank-2 modules with profile {1,3,5,7,9} | {2,4,6,8,10} over B_{5,10}.

A module is defined by ten series ``b_1 .. b_10`` summing to zero.  For odd
``i``, ``B_i = b_i + b_(i+1)``; whether each ``B_i`` (and each cyclic interval
sum of them) vanishes modulo ``t`` decides the whole classification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .quiver import EdgeMaps, check_relations
from .series import DEFAULT_PREC, PowerSeries, ScalarLike

N = 10
K = 5
ODD = (1, 3, 5, 7, 9)


class TupleError(ValueError):
    """An invalid coefficient tuple."""


class DecomposableInputError(ValueError):
    """A criterion meant for indecomposable modules was handed a decomposable one."""


def odd(i: int) -> int:
    """Reduce an odd index into ``{1,3,5,7,9}`` (cyclically, so 11 -> 1 and -1 -> 9)."""
    if i % 2 == 0:
        raise ValueError(f"{i} is not odd")
    return (i - 1) % N + 1


def odd_between(i: int, j: int) -> list:
    """Odd indices strictly between ``i`` and ``j`` walking forward from ``i``."""
    out = []
    cur = odd(i + 2)
    while cur != odd(j):
        out.append(cur)
        cur = odd(cur + 2)
    return out


# --------------------------------------------------------------------------
# tuples and modules


@dataclass(frozen=True)
class CoeffTuple:
    """The coefficients ``b_1 .. b_10``; ``b[0]`` is ``b_1``."""

    b: tuple

    def __post_init__(self):
        b = tuple(self.b)
        if len(b) != N:
            raise TupleError(f"expected {N} coefficients, got {len(b)}")
        prec = b[0].prec
        if any(s.prec != prec for s in b):
            raise TupleError("all coefficients must share one precision")
        total = b[0]
        for s in b[1:]:
            total = total + s
        if not total.is_zero():
            raise TupleError(f"coefficients must sum to 0; residual is {total}")
        object.__setattr__(self, "b", b)

    @property
    def prec(self) -> int:
        return self.b[0].prec

    def __getitem__(self, i: int) -> PowerSeries:
        """1-based access: ``tup[1]`` is ``b_1``."""
        if not 1 <= i <= N:
            raise IndexError(i)
        return self.b[i - 1]

    def with_prec(self, prec: int) -> "CoeffTuple":
        return CoeffTuple(tuple(s.with_prec(prec) for s in self.b))

    @classmethod
    def from_scalars(cls, values: Sequence[ScalarLike], prec: int = DEFAULT_PREC) -> "CoeffTuple":
        return cls(tuple(PowerSeries.const(v, prec) for v in values))

    @classmethod
    def from_sums(cls, sums: Mapping[int, object] | Sequence, prec: int = DEFAULT_PREC) -> "CoeffTuple":
        """Tuple with ``b_i = B_i`` for odd ``i`` and ``b_even = 0``."""
        if not isinstance(sums, Mapping):
            sums = dict(zip(ODD, sums))
        b = []
        for i in range(1, N + 1):
            if i % 2:
                v = sums[i]
                b.append(v.with_prec(prec) if isinstance(v, PowerSeries) else PowerSeries.const(v, prec))
            else:
                b.append(PowerSeries.zero(prec))
        return cls(tuple(b))


@dataclass(frozen=True)
class Rank2Module:
    """The module ``M(I, J)`` defined by a coefficient tuple."""

    tuple: CoeffTuple
    maps: EdgeMaps = field(compare=False, repr=False)

    @property
    def n(self) -> int:
        return N

    @property
    def k(self) -> int:
        return K

    @property
    def prec(self) -> int:
        return self.tuple.prec

    def edge_maps(self) -> EdgeMaps:
        return self.maps

    def B(self, i: int) -> PowerSeries:
        i = odd(i)
        return self.tuple[i] + self.tuple[i + 1]


def _edge_matrices(tup: CoeffTuple):
    prec = tup.prec
    t, one, zero = PowerSeries.t(prec), PowerSeries.one(prec), PowerSeries.zero(prec)
    xs, ys = [], []
    for i in range(1, N + 1):
        b = tup[i]
        if i % 2:
            xs.append(((t, b), (zero, one)))
            ys.append(((one, -b), (zero, t)))
        else:
            xs.append(((one, b), (zero, t)))
            ys.append(((t, -b), (zero, one)))
    return tuple(xs), tuple(ys)


def build_M(tup: CoeffTuple) -> Rank2Module:
    if not isinstance(tup, CoeffTuple):
        tup = CoeffTuple(tuple(tup))
    xs, ys = _edge_matrices(tup)
    return Rank2Module(tup, EdgeMaps(N, K, xs, ys, label="M"))


def module_from_sums(sums, prec: int = DEFAULT_PREC) -> Rank2Module:
    return build_M(CoeffTuple.from_sums(sums, prec))


# --------------------------------------------------------------------------
# sums and divisibility


@dataclass(frozen=True)
class BSums:
    values: tuple  # B_1, B_3, B_5, B_7, B_9

    def __getitem__(self, i: int) -> PowerSeries:
        return self.values[ODD.index(odd(i))]

    def constants(self) -> dict:
        return {i: self[i].constant_term() for i in ODD}


def b_sums(m: Rank2Module) -> BSums:
    return BSums(tuple(m.B(i) for i in ODD))


def interval_sum_constant(consts: Mapping[int, Fraction], start: int, length: int) -> Fraction:
    return sum((consts[odd(start + 2 * s)] for s in range(length)), Fraction(0))


@dataclass(frozen=True)
class DivisibilityProfile:
    """Which ``B_i``, pair sums and cyclic interval sums vanish mod t.

    ``div_intervals[(s, L)]`` refers to ``B_s + B_(s+2) + ... `` with ``L``
    terms (``1 <= L <= 4``).  Interval sums are what the isomorphism class
    sees; arbitrary pair sums are kept for reporting.
    """

    div_B: tuple
    div_pairs: tuple  # ((i, j), bool) for odd i < j
    div_intervals: tuple  # ((s, L), bool)

    def B_divisible(self, i: int) -> bool:
        return self.div_B[ODD.index(odd(i))]

    def pair_divisible(self, i: int, j: int) -> bool:
        i, j = sorted((odd(i), odd(j)))
        return dict(self.div_pairs)[(i, j)]

    def interval_divisible(self, start: int, length: int) -> bool:
        return dict(self.div_intervals)[(odd(start), length)]

    def nondivisible(self) -> tuple:
        return tuple(i for i, d in zip(ODD, self.div_B) if not d)

    def invariant_part(self) -> tuple:
        return (self.div_B, self.div_intervals)

    def to_json(self) -> dict:
        return {
            "div_B": {str(i): d for i, d in zip(ODD, self.div_B)},
            "div_pairs": {f"{i}+{j}": d for (i, j), d in self.div_pairs},
            "div_intervals": {f"{s}:{L}": d for (s, L), d in self.div_intervals},
        }


def profile_from_constants(consts: Mapping[int, Fraction]) -> DivisibilityProfile:
    div_B = tuple(consts[i] == 0 for i in ODD)
    pairs = tuple(((i, j), consts[i] + consts[j] == 0) for i, j in combinations(ODD, 2))
    intervals = tuple(
        ((s, L), interval_sum_constant(consts, s, L) == 0) for s in ODD for L in range(1, 5)
    )
    return DivisibilityProfile(div_B, pairs, intervals)


def divisibility_profile(m: Rank2Module) -> DivisibilityProfile:
    return profile_from_constants(b_sums(m).constants())


def is_trivial_sum(m: Rank2Module) -> bool:
    return all(divisibility_profile(m).div_B)


@dataclass(frozen=True)
class Indecomposability:
    indecomposable: bool
    pair: tuple | None = None

    def __bool__(self):
        return self.indecomposable


def indecomposability_from_constants(consts: Mapping[int, Fraction]) -> Indecomposability:
    for i in ODD:
        if consts[i] == 0:
            continue
        for j in ODD:
            if j == i or consts[j] == 0:
                continue
            if any(consts[m] != 0 for m in odd_between(i, j)):
                continue
            if consts[i] + consts[j] != 0:
                return Indecomposability(True, (i, j))
    return Indecomposability(False, None)


def is_indecomposable(m: Rank2Module) -> Indecomposability:
    """Look for odd ``i, j`` with nondivisible ``B_i``, ``B_j``, ``B_i + B_j`` and only divisible sums between."""
    return indecomposability_from_constants(b_sums(m).constants())


# --------------------------------------------------------------------------
# case labels

RIGID_KINDS = ("Three", "FourSplit", "FiveDouble")
FAMILY_KINDS = ("FourGeneric", "FiveSingle", "FiveGeneric")
INDECOMPOSABLE_KINDS = RIGID_KINDS + FAMILY_KINDS


@dataclass(frozen=True)
class CaseLabel:
    kind: str
    indices: tuple = ()
    split: tuple = ()
    l: int | None = None

    def __str__(self):
        if self.kind in ("Three", "FourGeneric"):
            return f"{self.kind}({','.join(map(str, self.indices))})"
        if self.kind == "FourSplit":
            pairs = ";".join(f"{a}+{b}" for a, b in self.split)
            return f"FourSplit({','.join(map(str, self.indices))}|{pairs})"
        if self.kind in ("FiveDouble", "FiveSingle"):
            return f"{self.kind}(l={self.l})"
        return self.kind

    @property
    def indecomposable(self) -> bool:
        return self.kind in INDECOMPOSABLE_KINDS

    def to_json(self) -> dict:
        out = {"kind": self.kind, "label": str(self)}
        if self.indices:
            out["indices"] = list(self.indices)
        if self.split:
            out["split"] = [list(p) for p in self.split]
        if self.l is not None:
            out["l"] = self.l
        return out


def classify_constants(consts: Mapping[int, Fraction]) -> CaseLabel:
    nondiv = tuple(i for i in ODD if consts[i] != 0)
    if not nondiv:
        return CaseLabel("TrivialSum")
    if not indecomposability_from_constants(consts):
        return CaseLabel("DecomposableOther")
    if len(nondiv) == 3:
        return CaseLabel("Three", nondiv)
    if len(nondiv) == 4:
        cyc = list(zip(nondiv, nondiv[1:] + nondiv[:1]))
        divisible = tuple(p for p in cyc if consts[p[0]] + consts[p[1]] == 0)
        if not divisible:
            return CaseLabel("FourGeneric", nondiv)
        return CaseLabel("FourSplit", nondiv, split=tuple(sorted(divisible)))
    # all five nondivisible (one or two nondivisible never pass the criterion)
    ls = [l for l in ODD if consts[l] + consts[odd(l + 2)] == 0]
    if not ls:
        return CaseLabel("FiveGeneric")
    if len(ls) == 1:
        return CaseLabel("FiveSingle", l=ls[0])
    a, b = ls
    if odd(a + 2) == b:
        return CaseLabel("FiveDouble", l=a)
    if odd(b + 2) == a:
        return CaseLabel("FiveDouble", l=b)
    raise AssertionError(f"impossible divisibility pattern {consts}")  # excluded by sum zero


def classify_case(m: Rank2Module) -> CaseLabel:
    return classify_constants(b_sums(m).constants())


def validate(m: Rank2Module):
    """Relations report for a module (always passes for a valid tuple)."""
    return check_relations(m)

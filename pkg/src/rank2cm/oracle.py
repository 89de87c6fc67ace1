"""Brute-force homomorphism spaces and an isomorphism test that knows no theorems.

A module map ``h: M -> M'`` is a family of matrices ``h_v`` (one per vertex)
with ``h_i x_i = x'_i h_(i-1)`` and ``y'_i h_i = h_(i-1) y_i`` on every edge.
Writing each entry as a truncated series turns these into a linear system in
the rational coefficients, solved here by exact elimination.

Truncation creates spurious solutions living in the top few degrees (maps
that exist modulo ``t^W`` but do not lift).  :func:`solve_hom_space` therefore
solves modulo ``t^(prec + slack)`` and keeps only the image in degrees below
``prec``; with enough slack this is exactly ``Hom(M, M') / t^prec``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, count
from typing import Sequence

from . import matrix as mx
from .linalg import Echelon, row_space_basis
from .quiver import EdgeMaps, Rim, build_rank1, direct_sum
from .rank2 import Rank2Module
from .series import PowerSeries

DEFAULT_ORACLE_PREC = 4
DEFAULT_SLACK = 5


def _maps(m) -> EdgeMaps:
    return m if isinstance(m, EdgeMaps) else m.edge_maps()


@dataclass(frozen=True)
class HomBasis:
    """A rational basis of ``Hom(source, target)`` reduced modulo ``t^prec``.

    Each element is a tuple of ``n`` matrices (vertex ``0 .. n-1``).
    """

    source: str
    target: str
    prec: int
    working_prec: int
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)


class _Layout:
    """Column numbering for the unknown coefficients.

    Pivots are taken at the largest column, so vertex 0 gets the smallest
    numbers: everything else is eliminated in terms of the vertex-0 data.
    """

    def __init__(self, n: int, r: int, w: int):
        self.n, self.r, self.w = n, r, w
        self.ncols = n * r * r * w

    def col(self, v: int, i: int, j: int, d: int) -> int:
        return ((v * self.r + i) * self.r + j) * self.w + d

    def split(self, col: int):
        d = col % self.w
        rest = col // self.w
        j = rest % self.r
        rest //= self.r
        i = rest % self.r
        v = rest // self.r
        return v, i, j, d


def _product_rows(lay: _Layout, v: int, known, side: str, sign: int, rows):
    """Accumulate coefficient rows of ``h_v . known`` (side 'L') or ``known . h_v`` (side 'R')."""
    r, w = lay.r, lay.w
    for i in range(r):
        for j in range(r):
            for k in range(r):
                if side == "L":  # (h known)[i][j] = sum_k h[i][k] known[k][j]
                    coeffs, hi, hj = known[k][j].coeffs, i, k
                else:  # (known h)[i][j] = sum_k known[i][k] h[k][j]
                    coeffs, hi, hj = known[i][k].coeffs, k, j
                nz = [(e, c) for e, c in enumerate(coeffs) if c]
                if not nz:
                    continue
                base = lay.col(v, hi, hj, 0)
                for d in range(w):
                    row = rows[(i, j, d)]
                    for e, c in nz:
                        if e > d:
                            break
                        key = base + d - e
                        row[key] = row.get(key, 0) + sign * c


def hom_equations(m1, m2, working_prec: int):
    """Linear equations (as sparse rows) cutting out Hom(m1, m2) modulo ``t^working_prec``."""
    a, b = _maps(m1).with_prec(working_prec), _maps(m2).with_prec(working_prec)
    if a.n != b.n or a.rank != b.rank:
        raise ValueError(
            f"shape mismatch: n={a.n}/{b.n}, rank={a.rank}/{b.rank}"
        )
    n, r, w = a.n, a.rank, working_prec
    lay = _Layout(n, r, w)
    out = []
    for e in range(1, n + 1):
        src, dst = e - 1, e % n
        for lhs, rhs in (
            # h_dst x_e - x'_e h_src
            (("L", dst, a.x_at(e)), ("R", src, b.x_at(e))),
            # y'_e h_dst - h_src y_e
            (("R", dst, b.y_at(e)), ("L", src, a.y_at(e))),
        ):
            rows = {(i, j, d): {} for i in range(r) for j in range(r) for d in range(w)}
            _product_rows(lay, lhs[1], lhs[2], lhs[0], 1, rows)
            _product_rows(lay, rhs[1], rhs[2], rhs[0], -1, rows)
            out.extend(row for row in rows.values() if any(row.values()))
    return lay, out


def _vector_to_map(lay: _Layout, vec: dict, prec: int):
    coeffs = [[[[Fraction(0)] * prec for _ in range(lay.r)] for _ in range(lay.r)] for _ in range(lay.n)]
    for col, val in vec.items():
        v, i, j, d = lay.split(col)
        if d < prec:
            coeffs[v][i][j][d] = val
    return tuple(
        tuple(tuple(PowerSeries(coeffs[v][i][j], prec) for j in range(lay.r)) for i in range(lay.r))
        for v in range(lay.n)
    )


def _project(lay: _Layout, vec: dict, prec: int) -> dict:
    return {c: v for c, v in vec.items() if c % lay.w < prec}


def _solve_projected(m1, m2, prec: int, slack: int):
    if prec < 1:
        raise ValueError("prec must be at least 1")
    lay, rows = hom_equations(m1, m2, prec + slack)
    ech = Echelon(lay.ncols)
    ech.add_all(rows)
    projected = [_project(lay, v, prec) for v in ech.nullspace()]
    return lay, row_space_basis([p for p in projected if p], lay.ncols)


def solve_hom_space(m1, m2, prec: int = DEFAULT_ORACLE_PREC, slack: int = DEFAULT_SLACK) -> HomBasis:
    """Basis of ``Hom(m1, m2)`` modulo ``t^prec`` (maps that lift ``slack`` further orders)."""
    lay, basis = _solve_projected(m1, m2, prec, slack)
    maps = tuple(_vector_to_map(lay, v, prec) for v in basis)
    return HomBasis(_maps(m1).label, _maps(m2).label, prec, prec + slack, maps)


def map_to_vector(h, prec: int) -> dict:
    """Inverse of the internal coordinates, for span-membership checks."""
    n, r = len(h), len(h[0])
    lay = _Layout(n, r, prec)
    vec = {}
    for v in range(n):
        for i in range(r):
            for j in range(r):
                for d, c in enumerate(h[v][i][j].coeffs[:prec]):
                    if c:
                        vec[lay.col(v, i, j, d)] = c
    return vec


def in_span(h, hom: HomBasis) -> bool:
    n, r = len(h), len(h[0])
    ech = Echelon(n * r * r * hom.prec)
    ech.add_all(map_to_vector(b, hom.prec) for b in hom.basis)
    return ech.contains(map_to_vector(h, hom.prec))


def is_module_map(m1, m2, h, prec: int | None = None) -> bool:
    a, b = _maps(m1), _maps(m2)
    p = prec or h[0][0][0].prec
    a, b = a.with_prec(p), b.with_prec(p)
    h = tuple(mx.with_prec(hv, p) for hv in h)
    for e in range(1, a.n + 1):
        src, dst = e - 1, e % a.n
        if mx.matmul(h[dst], a.x_at(e)) != mx.matmul(b.x_at(e), h[src]):
            return False
        if mx.matmul(b.y_at(e), h[dst]) != mx.matmul(h[src], a.y_at(e)):
            return False
    return True


# --------------------------------------------------------------------------
# isomorphism test


@dataclass(frozen=True)
class OracleVerdict:
    isomorphic: bool
    hom_dimension: int
    prec: int
    combination: tuple | None = None  # coefficients of an invertible combination
    witness: tuple | None = None

    def __bool__(self):
        return self.isomorphic


def _det_forms(basis: Sequence, n: int):
    """Per vertex, the quadratic form ``lambda -> det(sum lambda_j h^j_v)(0)`` as a coefficient dict."""
    forms = []
    for v in range(n):
        ents = [tuple(tuple(s.constant_term() for s in row) for row in h[v]) for h in basis]
        q = {}
        if len(ents[0]) == 1:
            # rank 1: the "determinant" is linear; square it to keep one code path
            for a_ in range(len(ents)):
                for b_ in range(a_, len(ents)):
                    val = ents[a_][0][0] * ents[b_][0][0] * (1 if a_ == b_ else 2)
                    if val:
                        q[(a_, b_)] = val
        else:
            for a_ in range(len(ents)):
                for b_ in range(a_, len(ents)):
                    A, B = ents[a_], ents[b_]
                    if a_ == b_:
                        val = A[0][0] * A[1][1] - A[0][1] * A[1][0]
                    else:
                        val = A[0][0] * B[1][1] + B[0][0] * A[1][1] - A[0][1] * B[1][0] - B[0][1] * A[1][0]
                    if val:
                        q[(a_, b_)] = val
        forms.append(q)
    return forms


def _evaluate(q: dict, lam: Sequence) -> Fraction:
    return sum((c * lam[a] * lam[b] for (a, b), c in q.items()), Fraction(0))


def _candidates(m: int):
    for j in range(m):
        yield tuple(1 if i == j else 0 for i in range(m))
    for j, k in combinations(range(m), 2):
        yield tuple(1 if i in (j, k) else 0 for i in range(m))
    # Kronecker substitution: distinct monomials stay distinct, so some s works
    for s in count(2):
        yield tuple(s ** (2**i) for i in range(m))


def iso_oracle(m1, m2, prec: int = DEFAULT_ORACLE_PREC, slack: int = DEFAULT_SLACK) -> OracleVerdict:
    """Decide ``m1 ~= m2`` from the homomorphism space alone.

    Some map is invertible iff no per-vertex determinant form vanishes
    identically (the scalar field is infinite); the search then exhibits a
    concrete invertible combination.
    """
    hom = solve_hom_space(m1, m2, prec, slack)
    n = _maps(m1).n
    if not hom.basis:
        return OracleVerdict(False, 0, prec)
    forms = _det_forms(hom.basis, n)
    if any(not q for q in forms):
        return OracleVerdict(False, hom.dimension, prec)
    for lam in _candidates(hom.dimension):
        if all(_evaluate(q, lam) != 0 for q in forms):
            witness = tuple(
                _combine([h[v] for h in hom.basis], lam) for v in range(n)
            )
            return OracleVerdict(True, hom.dimension, prec, tuple(Fraction(x) for x in lam), witness)
    raise AssertionError("unreachable")


def _combine(mats: Sequence, lam: Sequence):
    acc = None
    for a, c in zip(mats, lam):
        if not c:
            continue
        term = mx.matscale(a, Fraction(c))
        acc = term if acc is None else mx.matadd(acc, term)
    if acc is None:
        acc = mx.matscale(mats[0], 0)
    return acc


def trivial_sum_oracle(m: Rank2Module, prec: int = DEFAULT_ORACLE_PREC, slack: int = DEFAULT_SLACK) -> bool:
    from .quiver import EVEN_RIM, ODD_RIM

    target = direct_sum(build_rank1(ODD_RIM, m.prec), build_rank1(EVEN_RIM, m.prec))
    return bool(iso_oracle(m, target, prec, slack))


def _exchanges(i: Rim, j: Rim, pairs) -> list:
    out = []
    for mask in range(2 ** len(pairs)):
        a, b = set(i), set(j)
        for bit, (p, q) in enumerate(pairs):
            if mask >> bit & 1:
                for s in (a, b):
                    if p in s:
                        s.remove(p)
                        s.add(q)
                    elif q in s:
                        s.remove(q)
                        s.add(p)
        out.append((Rim(a, i.n), Rim(b, i.n)))
    return out


def default_candidates(i: Rim, j: Rim) -> list:
    """Rim pairs obtained by exchanging neighbours between the two rims.

    Both pairings of neighbours are used, ``(2a-1, 2a)`` and ``(2a, 2a+1)``
    (cyclically), for every subset of pairs: at most 2^6 distinct candidates.
    """
    n = i.n
    first = [(e, e + 1) for e in range(1, n, 2)]
    second = [(e, e % n + 1) for e in range(2, n + 1, 2)]
    out = []
    for pair in _exchanges(i, j, first) + _exchanges(i, j, second):
        if pair not in out:
            out.append(pair)
    return out


def complementary_candidates(n: int = 10, k: int = 5) -> list:
    """Every ``(A, complement of A)``; the only shapes a direct sum can take here.

    Each ``x_i`` of a rank-2 module in this profile has rank one modulo t,
    so exactly one of the two rims contains ``i``.
    """
    out = []
    for c in combinations(range(1, n + 1), k):
        if 1 in c:
            a = Rim(c, n)
            out.append((a, a.complement()))
    return out


def probe_decomposition(
    m: Rank2Module,
    prec: int = DEFAULT_ORACLE_PREC,
    candidates: Sequence | None = None,
    slack: int = DEFAULT_SLACK,
):
    """First candidate ``(A, B)`` with ``m ~= L_A (+) L_B``, or None.

    Sound, and complete only relative to the candidates searched.
    """
    from .quiver import EVEN_RIM, ODD_RIM

    if candidates is None:
        candidates = default_candidates(ODD_RIM, EVEN_RIM)
    for a, b in candidates:
        target = direct_sum(build_rank1(a, m.prec), build_rank1(b, m.prec))
        if iso_oracle(m, target, prec, slack):
            return a, b
    return None

"""The circular quiver, rank-1 modules ``L_I`` and relation checking.

Vertices are ``0 .. n-1``.  Edge ``i`` (``1 <= i <= n``) joins vertex ``i-1``
to vertex ``i mod n``; ``x_i`` points forward along it and ``y_i`` backward.
Maps at an edge are square matrices of power series (1x1 for rank 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import matrix as mx
from .series import DEFAULT_PREC, PowerSeries


class RimError(ValueError):
    pass


@dataclass(frozen=True)
class Rim:
    """A k-subset of ``{1..n}``; the rim of the rank-1 module ``L_I``."""

    n: int
    elements: tuple

    def __init__(self, elements: Iterable[int], n: int):
        elems = tuple(sorted(elements))
        if n < 1:
            raise RimError("n must be positive")
        if len(set(elems)) != len(elems):
            raise RimError(f"repeated element in rim {list(elems)}")
        if not elems:
            raise RimError("a rim must be nonempty")
        for e in elems:
            if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= n:
                raise RimError(f"rim element {e!r} outside 1..{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "elements", elems)

    @property
    def k(self) -> int:
        return len(self.elements)

    def __contains__(self, i: int) -> bool:
        return i in self.elements

    def __iter__(self):
        return iter(self.elements)

    def complement(self) -> "Rim":
        return Rim([i for i in range(1, self.n + 1) if i not in self.elements], self.n)

    def __str__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"


ODD_RIM = Rim((1, 3, 5, 7, 9), 10)
EVEN_RIM = Rim((2, 4, 6, 8, 10), 10)


@dataclass(frozen=True)
class EdgeMaps:
    """A representation of the circular quiver by free modules of rank ``rank``.

    ``x[i-1]`` and ``y[i-1]`` hold the maps of edge ``i``.
    """

    n: int
    k: int
    x: tuple
    y: tuple
    label: str = field(default="", compare=False)

    @property
    def rank(self) -> int:
        return len(self.x[0])

    @property
    def prec(self) -> int:
        return mx.prec_of(self.x[0])

    def x_at(self, i: int):
        return self.x[(i - 1) % self.n]

    def y_at(self, i: int):
        return self.y[(i - 1) % self.n]

    def edge_maps(self) -> "EdgeMaps":
        return self

    def with_prec(self, prec: int) -> "EdgeMaps":
        return EdgeMaps(
            self.n,
            self.k,
            tuple(mx.with_prec(a, prec) for a in self.x),
            tuple(mx.with_prec(a, prec) for a in self.y),
            self.label,
        )


@dataclass(frozen=True)
class Rank1Module:
    """``L_I``: ``x_i`` is 1 and ``y_i`` is t when ``i`` is in the rim, and the other way round otherwise."""

    rim: Rim
    prec: int = DEFAULT_PREC

    @property
    def n(self) -> int:
        return self.rim.n

    @property
    def k(self) -> int:
        return self.rim.k

    def x(self, i: int) -> PowerSeries:
        return PowerSeries.one(self.prec) if i in self.rim else PowerSeries.t(self.prec)

    def y(self, i: int) -> PowerSeries:
        return PowerSeries.t(self.prec) if i in self.rim else PowerSeries.one(self.prec)

    def edge_maps(self) -> EdgeMaps:
        n = self.n
        return EdgeMaps(
            n,
            self.k,
            tuple(((self.x(i),),) for i in range(1, n + 1)),
            tuple(((self.y(i),),) for i in range(1, n + 1)),
            label=f"L{self.rim}",
        )


def build_rank1(rim: Rim, prec: int = DEFAULT_PREC) -> Rank1Module:
    return Rank1Module(rim, prec)


def direct_sum(a: Rank1Module, b: Rank1Module) -> EdgeMaps:
    """Block-diagonal realisation of ``L_A (+) L_B`` (``L_A`` in the top-left slot)."""
    if a.n != b.n:
        raise ValueError(f"cannot add modules over different quivers (n={a.n}, n={b.n})")
    if a.prec != b.prec:
        raise ValueError("precision mismatch")
    n = a.n
    return EdgeMaps(
        n,
        a.k,
        tuple(mx.diag(a.x(i), b.x(i)) for i in range(1, n + 1)),
        tuple(mx.diag(a.y(i), b.y(i)) for i in range(1, n + 1)),
        label=f"L{a.rim}+L{b.rim}",
    )


# --------------------------------------------------------------------------
# relations


@dataclass
class RelationReport:
    ok: bool
    failures: list

    def __bool__(self):
        return self.ok


def _path_x(m: EdgeMaps, v: int, length: int):
    """Composite of ``length`` x-maps starting at vertex ``v`` (ascending)."""
    acc = mx.identity(m.rank, m.prec)
    for s in range(1, length + 1):
        acc = mx.matmul(m.x_at(v + s), acc)
    return acc


def _path_y(m: EdgeMaps, v: int, length: int):
    """Composite of ``length`` y-maps starting at vertex ``v`` (descending)."""
    acc = mx.identity(m.rank, m.prec)
    for s in range(length):
        acc = mx.matmul(m.y_at(v - s), acc)
    return acc


def check_relations(module) -> RelationReport:
    """Check ``xy = yx = t`` on every edge and ``x^k = y^(n-k)`` from every vertex."""
    m = module.edge_maps()
    n, k, r = m.n, m.k, m.rank
    t_id = mx.scalar_matrix(PowerSeries.t(m.prec), r)
    failures = []
    for i in range(1, n + 1):
        if mx.matmul(m.x_at(i), m.y_at(i)) != t_id:
            failures.append(f"vertex {i % n}: x_{i} y_{i} != t")
        if mx.matmul(m.y_at(i), m.x_at(i)) != t_id:
            failures.append(f"vertex {i - 1}: y_{i} x_{i} != t")
    for v in range(n):
        if _path_x(m, v, k) != _path_y(m, v, n - k):
            failures.append(f"vertex {v}: x^{k} != y^{n - k}")
    return RelationReport(not failures, failures)


# --------------------------------------------------------------------------
# combinatorics of rims


def _check_compatible(i: Rim, j: Rim) -> None:
    if i.n != j.n or i.k != j.k:
        raise ValueError(f"rims {i} (n={i.n}, k={i.k}) and {j} (n={j.n}, k={j.k}) are not comparable")


def interlacing(i: Rim, j: Rim) -> tuple[int, bool]:
    """Return ``(r, tight)`` where I and J are r-interlacing.

    Walking once round the cycle through the symmetric difference, the largest
    alternating selection has one element per maximal run of same-side labels.
    """
    _check_compatible(i, j)
    labels = [("I" if e in i else "J") for e in range(1, i.n + 1) if (e in i) != (e in j)]
    if not labels:
        r = 0
    else:
        runs = sum(1 for a, b in zip(labels, labels[1:] + labels[:1]) if a != b)
        r = runs // 2
    common = len(set(i) & set(j))
    return r, common == i.k - r


def canonical_hom_exponents(i: Rim, j: Rim) -> tuple:
    """Exponents ``p_v`` (vertex ``v = 0..n-1``) of the generator of Hom(L_I, L_J).

    The map is multiplication by ``t^p_v`` at vertex ``v``; commuting with
    ``x`` forces ``p_i - p_(i-1) = [i in I] - [i in J]`` and the generator is
    the solution with smallest entry 0.
    """
    _check_compatible(i, j)
    c = [0]
    for e in range(1, i.n):
        c.append(c[-1] + (e in i) - (e in j))
    low = min(c)
    return tuple(v - low for v in c)


def _heights(rim: Rim) -> list:
    h = [0]
    for e in range(1, rim.n + 1):
        h.append(h[-1] - 1 if e in rim else h[-1] + 1)
    return h


def _draw(paths: Sequence[list], n: int) -> list:
    top = max(max(h) for h in paths)
    bottom = min(min(h) for h in paths)
    rows = [[" "] * (3 * n) for _ in range(top - bottom)]
    for h in paths:
        for e in range(1, n + 1):
            a, b = h[e - 1], h[e]
            row = top - max(a, b)
            rows[row][3 * (e - 1) + 1] = "\\" if b < a else "/"
    lines = ["".join(r).rstrip() for r in rows]
    lines.append("".join(f"{e:^3}" for e in range(1, n + 1)).rstrip())
    return lines


def render_rim(rim: Rim) -> str:
    """ASCII rim: ``\\`` for a down-step (edge in the rim), ``/`` for an up-step."""
    return "\n".join([f"rim {rim} (n={rim.n}, k={rim.k})"] + _draw([_heights(rim)], rim.n))


def render_profile(i: Rim, j: Rim) -> str:
    """Draw rim J under rim I, raised until the two rims touch."""
    _check_compatible(i, j)
    hi, hj = _heights(i), _heights(j)
    shift = min(a - b for a, b in zip(hi, hj))
    hj = [b + shift for b in hj]
    return "\n".join([f"profile {i} | {j}"] + _draw([hi, hj], i.n))

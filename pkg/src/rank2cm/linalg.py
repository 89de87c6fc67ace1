"""Exact sparse Gaussian elimination over the rationals.

Rows are dicts ``{column: Fraction}``.  :class:`Echelon` keeps its rows in
reduced row echelon form as they arrive, so the null space of everything
added so far can be read off at any point.

Internally the entries are ``gmpy2.mpq`` when gmpy2 is installed (about twice
as fast); results handed back are always Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _Q = Fraction


def _out(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    return Fraction(int(q.numerator), int(q.denominator))


def _out_row(row: dict) -> dict:
    return {c: _out(v) for c, v in row.items()}


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Each stored row has pivot coefficient 1, and no pivot column occurs in any
    other stored row.  The pivot of a new row is its largest column index, so
    callers control elimination order through their column numbering.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}
        # column -> set of pivot columns whose row mentions it
        self._occurs: dict[int, set] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        row = {c: _Q(v) for c, v in row.items() if v}
        hits = [c for c in row if c in self.rows]
        for c in hits:
            v = row.get(c)
            if not v:
                continue
            for cc, vv in self.rows[c].items():
                nv = row.get(cc, 0) - v * vv
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
        return row

    def add(self, row: dict) -> bool:
        """Add a row; return True if it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        p = max(row)
        inv = 1 / row[p]
        if inv != 1:
            row = {c: v * inv for c, v in row.items()}
        # clear column p from existing rows
        for q in list(self._occurs.get(p, ())):
            other = self.rows[q]
            f = other.pop(p)
            for c, v in row.items():
                if c == p:
                    continue
                nv = other.get(c, 0) - f * v
                if nv:
                    if c not in other:
                        self._occurs.setdefault(c, set()).add(q)
                    other[c] = nv
                else:
                    if c in other:
                        del other[c]
                        self._occurs[c].discard(q)
        self._occurs.pop(p, None)
        self.rows[p] = row
        for c in row:
            if c != p:
                self._occurs.setdefault(c, set()).add(p)
        return True

    def add_all(self, rows: Iterable[dict]) -> None:
        for r in rows:
            self.add(r)

    def nullspace(self) -> list:
        """Basis of the solution space, one vector per free column (as dicts)."""
        basis = {f: {f: Fraction(1)} for f in range(self.ncols) if f not in self.rows}
        for p, row in self.rows.items():
            for c, v in row.items():
                if c != p:
                    basis[c][p] = -_out(v)
        return [basis[f] for f in sorted(basis)]

    def contains(self, vec: dict) -> bool:
        """Whether ``vec`` lies in the row space."""
        return not self.reduce(dict(vec))


def row_space_basis(vectors: Iterable[dict], ncols: int) -> list:
    """Reduced basis (list of dicts) of the span of ``vectors``."""
    e = Echelon(ncols)
    e.add_all(vectors)
    return [_out_row(e.rows[p]) for p in sorted(e.rows)]


def rank(vectors: Iterable[dict], ncols: int) -> int:
    e = Echelon(ncols)
    e.add_all(vectors)
    return e.rank


def solve_particular(rows: list, rhs: list, ncols: int):
    """One solution of ``rows . x = rhs`` (rows as dicts), or None if inconsistent."""
    # column 0 carries the right-hand side so that it is never chosen as a pivot
    # unless the system is inconsistent
    e = Echelon(ncols + 1)
    for r, b in zip(rows, rhs):
        rr = {c + 1: v for c, v in r.items()}
        if b:
            rr[0] = -Fraction(b)
        e.add(rr)
    if 0 in e.rows:
        return None
    return {p - 1: -_out(row[0]) for p, row in e.rows.items() if row.get(0)}

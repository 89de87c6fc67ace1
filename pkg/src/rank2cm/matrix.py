"""Square matrices of power series, stored as tuples of row tuples."""

from __future__ import annotations

from typing import Sequence

from .series import PowerSeries

Matrix = tuple  # tuple[tuple[PowerSeries, ...], ...]


def mat(rows: Sequence[Sequence[PowerSeries]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def size(a: Matrix) -> int:
    return len(a)


def prec_of(a: Matrix) -> int:
    return a[0][0].prec


def identity(r: int, prec: int) -> Matrix:
    one, zero = PowerSeries.one(prec), PowerSeries.zero(prec)
    return tuple(tuple(one if i == j else zero for j in range(r)) for i in range(r))


def scalar_matrix(s: PowerSeries, r: int) -> Matrix:
    zero = PowerSeries.zero(s.prec)
    return tuple(tuple(s if i == j else zero for j in range(r)) for i in range(r))


def diag(*entries: PowerSeries) -> Matrix:
    zero = PowerSeries.zero(entries[0].prec)
    r = len(entries)
    return tuple(tuple(entries[i] if i == j else zero for j in range(r)) for i in range(r))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = a[i][0] * b[0][j]
            for k in range(1, m):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matsub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matscale(a: Matrix, s) -> Matrix:
    return tuple(tuple(x * s for x in row) for row in a)


def matmap(f, a: Matrix) -> Matrix:
    return tuple(tuple(f(x) for x in row) for row in a)


def with_prec(a: Matrix, prec: int) -> Matrix:
    return matmap(lambda s: s.with_prec(prec), a)


def det(a: Matrix) -> PowerSeries:
    if len(a) == 1:
        return a[0][0]
    if len(a) == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    raise NotImplementedError("only 1x1 and 2x2 determinants are needed")


def first_difference(a: Matrix, b: Matrix):
    """Return ``(row, col, degree)`` of the first differing coefficient, or None."""
    for i, (ra, rb) in enumerate(zip(a, b)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                for d, (cx, cy) in enumerate(zip(x.coeffs, y.coeffs)):
                    if cx != cy:
                        return (i, j, d)
    return None


def to_json(a: Matrix) -> list:
    return [[s.to_strings() for s in row] for row in a]


def from_json(data, prec: int | None = None) -> Matrix:
    return tuple(tuple(PowerSeries.from_strings(s, prec) for s in row) for row in data)

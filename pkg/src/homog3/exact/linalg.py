"""Exact linear algebra over the rationals.

Matrices are plain nested sequences; every routine copies its input into lists
of :class:`~fractions.Fraction` and never mutates the caller's data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rational import as_fraction

Matrix = list[list[Fraction]]
Vector = tuple[Fraction, ...]


class Infeasible(ValueError):
    """Raised when a linear system has no solution."""


class NotSymmetric(ValueError):
    pass


def to_matrix(rows) -> Matrix:
    return [[as_fraction(x) for x in row] for row in rows]


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a) -> Matrix:
    a = to_matrix(a)
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def matmul(a, b) -> Matrix:
    a, b = to_matrix(a), to_matrix(b)
    bt = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a, v) -> Vector:
    return tuple(sum((as_fraction(x) * as_fraction(y) for x, y in zip(row, v)), Fraction(0)) for row in a)


def rref(a) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = to_matrix(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a) -> int:
    return len(rref(a)[1])


def nullspace(a, ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : a x = 0}`` (one vector per free column)."""
    m = to_matrix(a)
    n = ncols if ncols is not None else (len(m[0]) if m else 0)
    if not m:
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    r, pivots = rref(m)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(r, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class AffineSpace:
    """``particular + span(kernel)``, the full solution set of a linear system."""

    particular: Vector
    kernel: tuple[Vector, ...]

    @property
    def dimension(self) -> int:
        return len(self.kernel)

    def point(self, params: Sequence = ()) -> Vector:
        x = list(self.particular)
        for t, k in zip(params, self.kernel):
            t = as_fraction(t)
            x = [xi + t * ki for xi, ki in zip(x, k)]
        return tuple(x)


def solve_linear(a, b) -> AffineSpace:
    """Exact solution space of ``a x = b``; raises :class:`Infeasible`."""
    a = to_matrix(a)
    b = [as_fraction(x) for x in b]
    if len(a) != len(b):
        raise ValueError("row count of matrix and right-hand side differ")
    n = len(a[0]) if a else 0
    aug = [row + [bi] for row, bi in zip(a, b)]
    if not aug:
        return AffineSpace(tuple([Fraction(0)] * n), tuple(nullspace([], n)))
    r, pivots = rref(aug)
    if n in pivots:
        raise Infeasible("rank(A) != rank([A|b])")
    x = [Fraction(0)] * n
    for row, pc in zip(r, pivots):
        x[pc] = row[n]
    return AffineSpace(tuple(x), tuple(nullspace(a, n)))


def inverse(a) -> Matrix:
    a = to_matrix(a)
    n = len(a)
    aug = [row + e for row, e in zip(a, identity(n))]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r]


def det(a) -> Fraction:
    m = to_matrix(a)
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def is_symmetric(a) -> bool:
    a = to_matrix(a)
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(i))


def diagonalize_form(sym) -> list[tuple[Fraction, Vector]]:
    """Write ``x^T M x`` as ``sum d * (l . x)**2`` by completing squares.

    When every remaining diagonal entry vanishes a hyperbolic pair is split off
    with ``4 a x_i x_j = (x_i + x_j)**2 - (x_i - x_j)**2``, so no pivot is ever
    zero.
    """
    m = to_matrix(sym)
    if not is_symmetric(m):
        raise NotSymmetric("form matrix is not symmetric")
    n = len(m)
    out: list[tuple[Fraction, Vector]] = []

    def subtract(d: Fraction, l: Sequence[Fraction]) -> None:
        for i in range(n):
            if l[i] == 0:
                continue
            for j in range(n):
                m[i][j] -= d * l[i] * l[j]

    while True:
        k = next((i for i in range(n) if m[i][i] != 0), None)
        if k is not None:
            d = m[k][k]
            l = tuple(x / d for x in m[k])
            out.append((d, l))
            subtract(d, l)
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if m[i][j] != 0), None)
        if pair is None:
            return out
        i, j = pair
        a = m[i][j]
        w1 = tuple(x + y for x, y in zip(m[i], m[j]))
        w2 = tuple(x - y for x, y in zip(m[i], m[j]))
        d = 1 / (2 * a)
        out.append((d, w1))
        out.append((-d, w2))
        subtract(d, w1)
        subtract(-d, w2)


def inertia(sym) -> tuple[int, int, int]:
    """Sylvester inertia ``(n_plus, n_minus, n_zero)`` of a symmetric matrix."""
    terms = diagonalize_form(sym)
    n = len(sym)
    plus = sum(1 for d, _ in terms if d > 0)
    minus = sum(1 for d, _ in terms if d < 0)
    return plus, minus, n - plus - minus


def char_poly_3x3(sym) -> list[Fraction]:
    """Coefficients (lowest first) of ``det(lambda I - M)`` for a 3x3 matrix."""
    m = to_matrix(sym)
    tr = m[0][0] + m[1][1] + m[2][2]
    minors = (
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
        + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2] - m[1][2] * m[2][1]
    )
    return [-det(m), minors, -tr, Fraction(1)]


def char_poly_multiplicities(sym) -> tuple[str, list[Fraction]]:
    """Eigenvalue multiplicity pattern of a symmetric 3x3 matrix.

    Returns ``(pattern, coefficients)`` with pattern one of ``"distinct"``,
    ``"one-double"``, ``"triple"``. The pattern is read off the degree of
    ``gcd(p, p')``; no roots are extracted.
    """
    from .poly import upoly_derivative, upoly_gcd

    m = to_matrix(sym)
    if len(m) != 3 or any(len(r) != 3 for r in m):
        raise ValueError("expected a 3x3 matrix")
    if not is_symmetric(m):
        raise NotSymmetric("Ricci-type input must be symmetric")
    p = char_poly_3x3(m)
    g = upoly_gcd(p, upoly_derivative(p))
    pattern = {1: "distinct", 2: "one-double", 3: "triple"}[len(g)]
    return pattern, p

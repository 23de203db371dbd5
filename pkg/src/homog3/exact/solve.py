"""Rational points and rational lines on small quadratic systems.

The solver works on an affine chart ``x = base + K t``. Linear equations shrink
the chart; each quadric is then tried, in order, as

* semidefinite: ``[t,1]^T M [t,1] = 0`` forces ``M [t,1] = 0`` (linear),
* a product of two rational linear forms: branch on each factor,
* a degenerate or degree-dropping member of a pencil ``f + lam g``,
* in two variables, the resultant of a pair.

Anything left over is reported in ``unresolved`` instead of being guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import (
    Infeasible,
    diagonalize_form,
    inverse,
    nullspace,
    rref,
    solve_linear,
    transpose,
)
from .poly import (
    Poly,
    poly_as_univariate,
    rational_roots,
    rational_sqrt,
    resultant,
    upoly_gcd,
)
from .rational import as_fraction

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class SolutionSet:
    points: tuple[Vector, ...] = ()
    lines: tuple[tuple[Vector, Vector], ...] = ()
    unresolved: tuple[tuple[Poly, ...], ...] = field(default=())

    @property
    def is_empty(self) -> bool:
        return not (self.points or self.lines or self.unresolved)

    @property
    def complete(self) -> bool:
        return not self.unresolved

    def line_point(self, index: int, t) -> Vector:
        base, direction = self.lines[index]
        t = as_fraction(t)
        return tuple(b + t * d for b, d in zip(base, direction))


def _canonical_line(base: Sequence[Fraction], direction: Sequence[Fraction]) -> tuple[Vector, Vector]:
    k = next(i for i, d in enumerate(direction) if d != 0)
    direction = tuple(d / direction[k] for d in direction)
    shift = base[k]
    base = tuple(b - shift * d for b, d in zip(base, direction))
    return base, direction


def _on_line(p: Sequence[Fraction], line: tuple[Vector, Vector]) -> bool:
    base, direction = line
    k = next(i for i, d in enumerate(direction) if d != 0)
    t = p[k] - base[k]
    return all(b + t * d == x for b, d, x in zip(base, direction, p))


class _Chart:
    """Affine chart ``x = base + sum_j t_j * dirs[j]`` of the original space."""

    def __init__(self, base: Vector, dirs: tuple[Vector, ...]):
        self.base = base
        self.dirs = dirs

    @property
    def dim(self) -> int:
        return len(self.dirs)

    def image(self, t: Sequence[Fraction]) -> Vector:
        x = list(self.base)
        for tj, d in zip(t, self.dirs):
            x = [xi + tj * di for xi, di in zip(x, d)]
        return tuple(x)

    def restrict(self, sub_base: Vector, sub_dirs: tuple[Vector, ...]) -> "_Chart":
        base = self.image(sub_base)
        dirs = []
        for sd in sub_dirs:
            v = [Fraction(0)] * len(self.base)
            for tj, d in zip(sd, self.dirs):
                v = [vi + tj * di for vi, di in zip(v, d)]
            dirs.append(tuple(v))
        return _Chart(base, tuple(dirs))

    def defining_polys(self, chart_polys: Sequence[Poly]) -> tuple[Poly, ...]:
        """Equations in the original variables cutting out ``chart ∩ V(chart_polys)``."""
        n = len(self.base)
        xs = Poly.variables(n)
        out: list[Poly] = []
        # linear equations for the chart itself
        if self.dirs:
            normals = nullspace([list(d) for d in self.dirs], n)
        else:
            normals = [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
        for nv in normals:
            rhs = sum((a * b for a, b in zip(nv, self.base)), Fraction(0))
            out.append(Poly.linear(nv, -rhs))
        if self.dirs and chart_polys:
            # left inverse on a set of pivot rows of K
            k = transpose([list(d) for d in self.dirs])
            _, rows = rref(transpose(k))
            sub = inverse([k[r] for r in rows])
            ts = []
            for j in range(self.dim):
                expr = Poly(n)
                for c, r in zip(sub[j], rows):
                    expr = expr + (xs[r] - self.base[r]) * c
                ts.append(expr)
            out.extend(p.substitute(ts) for p in chart_polys)
        return tuple(out)


@dataclass
class _Components:
    points: list[Vector] = field(default_factory=list)
    lines: list[tuple[Vector, Vector]] = field(default_factory=list)
    unresolved: list[tuple[Poly, ...]] = field(default_factory=list)

    def merge(self, other: "_Components") -> None:
        self.points += other.points
        self.lines += other.lines
        self.unresolved += other.unresolved


def _clean(polys: Sequence[Poly]) -> list[Poly] | None:
    out: list[Poly] = []
    for p in polys:
        if p.is_zero():
            continue
        if p.degree() == 0:
            return None
        if p not in out:
            out.append(p)
    return out


def _is_semidefinite(m) -> tuple[bool, list]:
    terms = diagonalize_form(m)
    signs = {d > 0 for d, _ in terms}
    return len(signs) <= 1, terms


def _linear_factors(p: Poly) -> tuple[Poly, Poly] | None:
    """Split a degree-2 polynomial into two rational linear factors if possible."""
    m = p.homogenized_matrix()
    terms = diagonalize_form(m)
    if len(terms) != 2:
        return None
    (d1, l1), (d2, l2) = terms
    s = rational_sqrt(-d2 / d1)
    if s is None:
        return None
    n = p.nvars

    def dehom(v):
        return Poly.linear(v[:n], v[n])

    u1, u2 = dehom(l1), dehom(l2)
    f1, f2 = (u1 - u2 * s) * d1, u1 + u2 * s
    if f1.degree() < 1 or f2.degree() < 1:
        return None
    assert f1 * f2 == p
    return f1, f2


def _pencil_det(mf, mg) -> list[Poly]:
    """det(Mf + lam Mg) as a univariate coefficient list (via a 1-variable Poly)."""
    lam = Poly.var(1, 0)
    rows = [[Poly.const(1, a) + lam * b for a, b in zip(ra, rb)] for ra, rb in zip(mf, mg)]
    from .poly import _det_generic

    d = _det_generic(rows)
    if not isinstance(d, Poly):
        d = Poly.const(1, d)
    return [d.coefficient((k,)) for k in range(d.degree() + 1)] if not d.is_zero() else []


def _quadratic_block(p: Poly) -> dict:
    return {e: c for e, c in p.terms.items() if sum(e) == 2}


def _solve(polys: list[Poly], chart: _Chart, depth: int = 0) -> _Components:
    if depth > 40:
        return _Components(unresolved=[chart.defining_polys(polys)])
    cleaned = _clean(polys)
    if cleaned is None:
        return _Components()
    polys = cleaned
    d = chart.dim

    linear = [p for p in polys if p.degree() == 1]
    if linear:
        a = [p.linear_coefficients() for p in linear]
        b = [-p.constant_term() for p in linear]
        try:
            aff = solve_linear(a, b)
        except Infeasible:
            return _Components()
        rest = [p.substitute_affine(aff.particular, aff.kernel) for p in polys if p.degree() > 1]
        return _solve(rest, chart.restrict(aff.particular, aff.kernel), depth + 1)

    if not polys:
        if d == 0:
            return _Components(points=[chart.base])
        if d == 1:
            return _Components(lines=[_canonical_line(chart.base, chart.dirs[0])])
        return _Components(unresolved=[chart.defining_polys([])])

    # every remaining polynomial has degree 2
    for idx, p in enumerate(polys):
        m = p.homogenized_matrix()
        semi, _ = _is_semidefinite(m)
        if semi:
            others = polys[:idx] + polys[idx + 1 :]
            eqs = [Poly.linear(row[:d], row[d]) for row in m]
            return _solve(others + eqs, chart, depth + 1)
    for idx, p in enumerate(polys):
        factors = _linear_factors(p)
        if factors is not None:
            others = polys[:idx] + polys[idx + 1 :]
            out = _Components()
            for f in factors:
                out.merge(_solve(others + [f], chart, depth + 1))
            return out

    if len(polys) >= 2:
        for i, f in enumerate(polys):
            for j, g in enumerate(polys):
                if i == j:
                    continue
                reduced = _pencil_reduce(f, g)
                if reduced is not None:
                    others = [q for k, q in enumerate(polys) if k != i]
                    return _solve(others + [reduced], chart, depth + 1)

    if d == 1:
        coeffs = [[p.coefficient((k,)) for k in range(3)] for p in polys]
        g = coeffs[0]
        for c in coeffs[1:]:
            g = upoly_gcd(g, c)
        roots, rest = rational_roots(g)
        out = _Components(points=[chart.image((r,)) for r in roots])
        if len(rest) > 1:
            out.unresolved.append(chart.defining_polys([Poly(1, {(k,): c for k, c in enumerate(rest)})]))
        return out

    if d == 2 and len(polys) >= 2:
        f, g = polys[0], polys[1]
        res = resultant(f, g, 1)
        if not res.is_zero():
            coeffs = [res.coefficient((k, 0)) for k in range(res.degree() + 1)]
            roots, rest = rational_roots(coeffs)
            out = _Components()
            for r in roots:
                out.merge(_solve(polys + [Poly.linear((1, 0), -r)], chart, depth + 1))
            if len(rest) > 1:
                out.unresolved.append(chart.defining_polys(polys))
            return out

    return _Components(unresolved=[chart.defining_polys(polys)])


def _pencil_reduce(f: Poly, g: Poly) -> Poly | None:
    """A member ``f + lam g`` that is linear, semidefinite or splits; else None."""
    qf, qg = _quadratic_block(f), _quadratic_block(g)
    e0 = next(iter(qg))
    lam = -qf.get(e0, Fraction(0)) / qg[e0]
    cand = f + g * lam
    if cand.degree() < 2:
        return cand
    mf, mg = f.homogenized_matrix(), g.homogenized_matrix()
    coeffs = _pencil_det(mf, mg)
    if not coeffs:
        lams = []
    else:
        try:
            lams, _ = rational_roots(coeffs)
        except ValueError:
            lams = []
    for lam in lams:
        cand = f + g * lam
        if cand.is_zero() or cand.degree() < 2:
            return cand
        semi, _ = _is_semidefinite(cand.homogenized_matrix())
        if semi or _linear_factors(cand) is not None:
            return cand
    return None


def solve_quadratic_small(polys: Sequence[Poly], nvars: int | None = None) -> SolutionSet:
    """Rational points and rational affine lines on ``V(polys)``.

    At most three variables and total degree two. Components that are neither
    (a conic, an irrational point, a plane) come back in ``unresolved`` as
    lists of defining polynomials in the original variables.
    """
    polys = list(polys)
    if nvars is None:
        if not polys:
            raise ValueError("nvars is required for an empty system")
        nvars = polys[0].nvars
    if nvars > 3:
        raise ValueError("at most three variables are supported")
    if any(p.nvars != nvars for p in polys):
        raise ValueError("polynomials must share one ring")
    if any(p.degree() > 2 for p in polys):
        raise ValueError("total degree must be at most two")
    origin = tuple([Fraction(0)] * nvars)
    axes = tuple(tuple(Fraction(int(i == j)) for i in range(nvars)) for j in range(nvars))
    comps = _solve(polys, _Chart(origin, axes))

    lines: list[tuple[Vector, Vector]] = []
    for ln in comps.lines:
        if not any(_on_line(ln[0], other) and _parallel(ln[1], other[1]) for other in lines):
            lines.append(ln)
    points: list[Vector] = []
    for p in comps.points:
        if p not in points and not any(_on_line(p, ln) for ln in lines):
            points.append(p)
    unresolved = []
    for u in comps.unresolved:
        if u not in unresolved:
            unresolved.append(u)
    return SolutionSet(tuple(sorted(points)), tuple(sorted(lines)), tuple(unresolved))


def _parallel(u: Vector, v: Vector) -> bool:
    return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(len(u)))


def vanishes_on(polys: Sequence[Poly], solutions: SolutionSet) -> bool:
    """Soundness check: every point and every line lies in ``V(polys)``."""
    for p in polys:
        for pt in solutions.points:
            if p.evaluate(pt) != 0:
                return False
        for base, direction in solutions.lines:
            restricted = p.substitute_affine(base, [direction])
            if not restricted.is_zero():
                return False
    return True


__all__ = ["SolutionSet", "solve_quadratic_small", "vanishes_on", "poly_as_univariate"]

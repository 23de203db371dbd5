"""Independent reference computations used by the tests.

Everything here is written with plain loops over sympy rationals and never
imports the package, so agreement with the package is a genuine cross-check.
Index conventions: ``c[i][j][k]`` is the ``e_k`` coefficient of ``[e_i, e_j]``;
``G[i][j][k]`` is the ``e_k`` coefficient of ``nabla_{e_i} e_j``.
"""

from __future__ import annotations

import itertools

import sympy as sp

N = range(3)


def Q(x):
    return sp.Rational(str(x)) if not isinstance(x, sp.Basic) else x


def unimodular_c(c1, c2, c3):
    c = [[[sp.Integer(0)] * 3 for _ in N] for _ in N]
    for (i, j, k), v in (((0, 1, 2), c3), ((1, 2, 0), c1), ((2, 0, 1), c2)):
        c[i][j][k] = Q(v)
        c[j][i][k] = -Q(v)
    return c


def nonunimodular_c(alpha, beta):
    a, b = Q(alpha), Q(beta)
    c = [[[sp.Integer(0)] * 3 for _ in N] for _ in N]
    c[0][1][1], c[0][1][2] = 1 + a, (1 + a) * b
    c[0][2][1], c[0][2][2] = -(1 - a) * b, 1 - a
    for k in N:
        c[1][0][k] = -c[0][1][k]
        c[2][0][k] = -c[0][2][k]
    return c


def koszul(c):
    """``<nabla_X Y, Z>`` from the Koszul formula, basis by basis."""
    G = [[[None] * 3 for _ in N] for _ in N]
    for i, j, k in itertools.product(N, N, N):
        G[i][j][k] = sp.Rational(1, 2) * (-c[j][k][i] + c[k][i][j] + c[i][j][k])
    return G


def riemann(c, G):
    """``Rv[i][j][l][k]``: the ``e_k`` component of ``R(e_i, e_j) e_l``."""
    Rv = [[[[sp.Integer(0)] * 3 for _ in N] for _ in N] for _ in N]
    for i, j, l, k in itertools.product(N, N, N, N):
        v = 0
        for m in N:
            v += G[j][l][m] * G[i][m][k] - G[i][l][m] * G[j][m][k] - c[i][j][m] * G[m][l][k]
        Rv[i][j][l][k] = sp.expand(v)
    return Rv


def ricci(Rv):
    """``Ric(X, Y) = tr(Z -> R(Z, Y) X)``."""
    return [[sum(Rv[k][b][a][k] for k in N) for b in N] for a in N]


def unimodular_closed_form(c1, c2, c3):
    c1, c2, c3 = Q(c1), Q(c2), Q(c3)
    cs = (c1, c2, c3)
    mu = [sp.Rational(1, 2) * (c1 + c2 + c3) - ci for ci in cs]
    G = [[[sp.Integer(0)] * 3 for _ in N] for _ in N]
    G[0][1][2], G[0][2][1] = mu[0], -mu[0]
    G[1][0][2], G[1][2][0] = -mu[1], mu[1]
    G[2][0][1], G[2][1][0] = mu[2], -mu[2]
    R = {
        (0, 1, 0, 1): mu[0] * mu[1] - c3 * mu[2],
        (1, 2, 1, 2): mu[1] * mu[2] - c1 * mu[0],
        (0, 2, 0, 2): mu[2] * mu[0] - c2 * mu[1],
    }
    rho = (2 * mu[1] * mu[2], 2 * mu[0] * mu[2], 2 * mu[0] * mu[1])
    return mu, G, R, rho


def nonunimodular_closed_form(alpha, beta):
    a, b = Q(alpha), Q(beta)
    G = [[[sp.Integer(0)] * 3 for _ in N] for _ in N]
    G[0][1][2], G[0][2][1] = b, -b
    G[1][0][1], G[1][0][2] = -(1 + a), -a * b
    G[1][1][0] = 1 + a
    G[1][2][0] = a * b
    G[2][0][1], G[2][0][2] = -a * b, -(1 - a)
    G[2][1][0] = a * b
    G[2][2][0] = 1 - a
    R = {
        (0, 1, 0, 1): a * b**2 + (1 + a) ** 2 + a * b**2 * (1 + a),
        (0, 2, 0, 2): -(a * b**2 - (1 - a) ** 2 + a * b**2 * (1 - a)),
        (1, 2, 1, 2): 1 - a**2 * (1 + b**2),
    }
    rho = (
        -2 * (1 + a**2 * (1 + b**2)),
        -2 * (1 + a * (1 + b**2)),
        -2 * (1 - a * (1 + b**2)),
    )
    return G, R, rho


def closed_form_riemann_ok(Rv, table) -> bool:
    """Compare against ``R(e_i, e_j) e_i = v e_j`` entries of a closed-form table.

    The tables list, for each plane, the coefficient ``v`` in
    ``R(e_i, e_j) e_i = v e_j`` and ``R(e_i, e_j) e_j = -v e_i``; every other
    component of ``R(e_i, e_j) e_l`` must vanish.
    """
    expected = [[[[sp.Integer(0)] * 3 for _ in N] for _ in N] for _ in N]
    for (i, j, _, _), v in table.items():
        expected[i][j][i][j] = v
        expected[i][j][j][i] = -v
        expected[j][i][i][j] = -v
        expected[j][i][j][i] = v
    return all(
        sp.simplify(Rv[i][j][l][k] - expected[i][j][l][k]) == 0 for i, j, l, k in itertools.product(N, N, N, N)
    )


# brute-force Ambrose-Singer system ----------------------------------------


def as_system(c):
    """Unknown tensor with 9 free components and the linear/quadratic equations.

    Returns ``(symbols, S, linear_eqs, quadratic_eqs)`` where ``S[x][a][b]`` is
    skew in ``a, b``; the linear equations encode the parallel Ricci tensor and
    the quadratic ones the parallel torsion-like tensor ``S`` itself.
    """
    syms = sp.symbols("s0:9")
    S = [[[sp.Integer(0)] * 3 for _ in N] for _ in N]
    pairs = [(0, 1), (1, 2), (2, 0)]
    for x in N:
        for p, (a, b) in enumerate(pairs):
            s = syms[3 * x + p]
            S[x][a][b] = s
            S[x][b][a] = -s
    G = koszul(c)
    Rv = riemann(c, G)
    Ric = ricci(Rv)
    Gt = [[[G[i][j][k] + S[i][j][k] for k in N] for j in N] for i in N]
    lin = []
    for i, a, b in itertools.product(N, N, N):
        v = -sum(Gt[i][a][m] * Ric[m][b] + Gt[i][b][m] * Ric[a][m] for m in N)
        lin.append(sp.expand(v))
    quad = []
    for i, a, b, d in itertools.product(N, N, N, N):
        v = -sum(
            Gt[i][a][m] * S[m][b][d] + Gt[i][b][m] * S[a][m][d] + Gt[i][d][m] * S[a][b][m] for m in N
        )
        quad.append(sp.expand(v))
    return syms, S, [e for e in lin if e != 0], [e for e in quad if e != 0]


def brute_force_solutions(c):
    """All solutions of the full system as sympy dicts (possibly with free symbols)."""
    syms, S, lin, quad = as_system(c)
    lin_sol = sp.solve(lin, syms, dict=True) if lin else [{}]
    out = []
    for ls in lin_sol:
        rest = [sp.expand(q.subs(ls)) for q in quad]
        rest = [q for q in rest if q != 0]
        free = sorted({s for q in rest for s in q.free_symbols}, key=str)
        if not rest:
            out.append(ls)
            continue
        basis = sp.groebner(rest, *free, order="lex")
        for sol in sp.solve(list(basis), free, dict=True):
            full = {k: sp.simplify(v.subs(sol)) for k, v in ls.items()}
            full.update(sol)
            out.append(full)
    return syms, S, out


def tensor_from_solution(syms, S, sol, free_values=None):
    """Evaluate ``S`` at a solution dict, giving remaining free symbols the values provided."""
    free_values = free_values or {}
    sub = {s: sol.get(s, s) for s in syms}
    vals = {}
    for x, a, b in itertools.product(N, N, N):
        v = sp.sympify(S[x][a][b]).subs(sub)
        v = v.subs(free_values)
        vals[(x, a, b)] = v
    return vals

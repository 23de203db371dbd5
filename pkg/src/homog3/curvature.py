"""Levi-Civita connection and curvature of a left-invariant metric.

All tensors are numpy object arrays over an orthonormal basis. Sign conventions:

* ``gamma[i, j, k]`` is the ``e_k`` component of ``nabla_{e_i} e_j``;
* ``R(X,Y) = [nabla_X, nabla_Y] - nabla_{[X,Y]}``, stored as operators
  ``ops[i, j]`` whose column ``l`` is ``R(e_i, e_j) e_l``;
* the (0,4) tensor is ``R[i, j, k, l] = g(R(e_i, e_j) e_l, e_k)``, so the
  sectional curvature of the plane (e_i, e_j) is ``R[i, j, i, j]``;
* ``Ric(X, Y) = tr(Z -> R(Z, Y) X)``.

The helpers only use ``+`` and ``*`` on entries, so they also run on arrays of
:class:`~homog3.exact.Poly` (used by the structure solver).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import format_rational
from .lie import LieAlgebra, fraction_array, is_zero_array, zero_array


@dataclass(frozen=True, eq=False)
class Connection:
    """Left-invariant connection: ``nabla_{e_i} e_j = sum_k gamma[i, j, k] e_k``."""

    gamma: np.ndarray

    def nabla(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", fraction_array(x), fraction_array(y), self.gamma)

    def operator(self, i: int) -> np.ndarray:
        """Matrix of ``Y -> nabla_{e_i} Y``."""
        return self.gamma[i].T

    def is_metric(self) -> bool:
        return is_zero_array(self.gamma + self.gamma.transpose(0, 2, 1))

    def torsion(self, g: LieAlgebra) -> np.ndarray:
        return self.gamma - self.gamma.transpose(1, 0, 2) - g.c

    def __add__(self, other) -> "Connection":
        return Connection(self.gamma + _as_gamma(other))

    def __eq__(self, other):
        return isinstance(other, Connection) and np.array_equal(self.gamma, other.gamma)

    __hash__ = None


def _as_gamma(x):
    if isinstance(x, Connection):
        return x.gamma
    return getattr(x, "S", x)


def koszul_gamma(c: np.ndarray) -> np.ndarray:
    """``2 <nabla_X Y, Z> = -<X,[Y,Z]> + <Y,[Z,X]> + <Z,[X,Y]>`` for orthonormal bases."""
    return (-c.transpose(2, 0, 1) + c.transpose(1, 2, 0) + c) / 2


def levi_civita(g: LieAlgebra) -> Connection:
    return Connection(koszul_gamma(g.c))


def curvature_operators(c: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    """``ops[i, j] = [G_i, G_j] - sum_m c[i, j, m] G_m`` with ``G_i`` the matrix of nabla_{e_i}."""
    G = gamma.transpose(0, 2, 1)
    prod = np.einsum("iab,jbc->ijac", G, G)
    return prod - prod.transpose(1, 0, 2, 3) - np.einsum("ijm,mac->ijac", c, G)


def ricci_from_ops(ops: np.ndarray) -> np.ndarray:
    return np.einsum("kbka->ab", ops)


def covariant_derivative(gamma: np.ndarray, T: np.ndarray) -> np.ndarray:
    """``(nabla_{e_i} T)_{j1..jr}`` for a left-invariant covariant tensor ``T``.

    Only the connection terms survive since the components are constant:
    ``-sum_s sum_k gamma[i, j_s, k] T[.., k, ..]``. Both tensors are mostly
    zero, so the sum runs over nonzero entries only.
    """
    by_k: dict[int, list] = {}
    for (i, j, k), v in np.ndenumerate(gamma):
        if v:
            by_k.setdefault(k, []).append((i, j, v))
    out = zero_array((gamma.shape[0],) + T.shape)
    for idx, t in np.ndenumerate(T):
        if not t:
            continue
        for s, k in enumerate(idx):
            for i, j, v in by_k.get(k, ()):
                target = (i,) + idx[:s] + (j,) + idx[s + 1 :]
                out[target] = out[target] - v * t
    return out


@dataclass(frozen=True, eq=False)
class CurvatureData:
    ops: np.ndarray
    R: np.ndarray
    ric: np.ndarray
    scalar: Fraction

    def sectional(self, i: int, j: int) -> Fraction:
        return self.R[i, j, i, j]

    @property
    def ricci_is_diagonal(self) -> bool:
        return all(self.ric[i, j] == 0 for i in range(3) for j in range(3) if i != j)

    @property
    def principal_ricci(self) -> tuple[Fraction, ...] | None:
        if not self.ricci_is_diagonal:
            return None
        return tuple(self.ric[i, i] for i in range(3))

    def to_json(self) -> dict:
        out = {
            "R": [format_rational(x) for x in self.R.flat],
            "ric": [[format_rational(x) for x in row] for row in self.ric.tolist()],
            "scalar": format_rational(self.scalar),
        }
        if self.principal_ricci is not None:
            out["principal_ricci"] = [format_rational(x) for x in self.principal_ricci]
        return out


def curvature(g: LieAlgebra, conn: Connection | None = None) -> CurvatureData:
    conn = conn or levi_civita(g)
    ops = curvature_operators(g.c, conn.gamma)
    R = ops.copy()
    ric = ricci_from_ops(ops)
    return CurvatureData(ops, R, ric, sum(ric[i, i] for i in range(g.dim)))


def nabla_R(g: LieAlgebra, conn: Connection | None = None) -> np.ndarray:
    conn = conn or levi_civita(g)
    return covariant_derivative(conn.gamma, curvature(g, conn).R)


def is_locally_symmetric(g: LieAlgebra) -> bool:
    return is_zero_array(nabla_R(g))


def space_form_tensor(k, n: int = 3) -> np.ndarray:
    """``k (delta_ik delta_jl - delta_il delta_jk)``."""
    d = np.eye(n, dtype=int)
    t = np.einsum("ik,jl->ijkl", d, d) - np.einsum("il,jk->ijkl", d, d)
    return fraction_array(t) * Fraction(k)


def constant_curvature_check(g: LieAlgebra) -> Fraction | None:
    """The constant sectional curvature, or None when the metric is not a space form."""
    R = curvature(g).R
    k = R[0, 1, 0, 1]
    return k if is_zero_array(R - space_form_tensor(k, g.dim)) else None


def first_bianchi_defect(R: np.ndarray) -> np.ndarray:
    # cyclic sum over the first three slots of R(e_i,e_j)e_l
    ops = R  # ops[i, j, k, l] = component k of R(e_i, e_j) e_l
    return ops + ops.transpose(1, 3, 2, 0) + ops.transpose(3, 0, 2, 1)


def ricci_matrix(g: LieAlgebra) -> np.ndarray:
    return curvature(g).ric


__all__ = [
    "Connection",
    "CurvatureData",
    "constant_curvature_check",
    "covariant_derivative",
    "curvature",
    "curvature_operators",
    "first_bianchi_defect",
    "is_locally_symmetric",
    "koszul_gamma",
    "levi_civita",
    "nabla_R",
    "ricci_from_ops",
    "space_form_tensor",
    "zero_array",
]

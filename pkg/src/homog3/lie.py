"""Lie algebras by structure constants, and metric Lie algebras in dimension three.

Convention: ``c[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
Metric Lie algebras are given in a basis declared orthonormal, so the inner
product is the identity matrix and never appears explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from .errors import GenericForm, JacobiViolation, NormalizationViolated
from .exact import inertia, nullspace, solve_linear
from .exact.rational import as_fraction

ZERO = Fraction(0)


def fraction_array(values, shape=None) -> np.ndarray:
    arr = np.array(values, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = as_fraction(v)
    return out


def zero_array(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def is_zero_array(arr) -> bool:
    return all(x == 0 for x in np.asarray(arr, dtype=object).flat)


class LieAlgebra:
    """A finite-dimensional real Lie algebra with rational structure constants."""

    def __init__(self, structure_constants, *, validate: bool = True):
        c = fraction_array(structure_constants)
        n = c.shape[0]
        if c.shape != (n, n, n):
            raise ValueError(f"structure constants must have shape (n, n, n), got {c.shape}")
        c.flags.writeable = False
        self._c = c
        if validate:
            self.validate()

    @property
    def c(self) -> np.ndarray:
        return self._c

    @property
    def dim(self) -> int:
        return self._c.shape[0]

    def validate(self) -> None:
        c = self._c
        if not is_zero_array(c + c.transpose(1, 0, 2)):
            raise JacobiViolation("structure constants are not antisymmetric: c[i,j,k] != -c[j,i,k]")
        defect = self.jacobi_defect()
        if not is_zero_array(defect):
            i, j, k, l = next(idx for idx, v in np.ndenumerate(defect) if v != 0)
            raise JacobiViolation(
                f"Jacobi identity fails for (e{i + 1}, e{j + 1}, e{k + 1}), component e{l + 1}"
            )

    def jacobi_defect(self) -> np.ndarray:
        c = self._c
        t = np.einsum("ijm,mkl->ijkl", c, c)
        return t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)

    def bracket(self, u, v) -> np.ndarray:
        u = fraction_array(u)
        v = fraction_array(v)
        return np.einsum("i,j,ijk->k", u, v, self._c)

    def ad(self, x) -> np.ndarray:
        """Matrix of ``ad(x)``; column ``j`` holds ``[x, e_j]``."""
        x = fraction_array(x)
        return np.einsum("i,ijk->kj", x, self._c)

    def ad_basis(self, i: int) -> np.ndarray:
        return self._c[i].T

    def killing_form(self) -> np.ndarray:
        ads = [self.ad_basis(i) for i in range(self.dim)]
        n = self.dim
        return fraction_array(
            [[np.trace(ads[i].dot(ads[j])) for j in range(n)] for i in range(n)]
        )

    def killing_inertia(self) -> tuple[int, int, int]:
        return inertia(self.killing_form().tolist())

    def trace_form(self) -> np.ndarray:
        """``tr ad(e_i)`` for each basis vector."""
        return fraction_array([np.trace(self.ad_basis(i)) for i in range(self.dim)])

    def is_unimodular(self) -> bool:
        return is_zero_array(self.trace_form())

    def unimodular_kernel(self) -> list[tuple[Fraction, ...]]:
        return nullspace([list(self.trace_form())], self.dim)

    def subalgebra(self, basis) -> "LieAlgebra":
        """Structure constants of the span of ``basis`` (must be closed)."""
        b = [fraction_array(v) for v in basis]
        k = len(b)
        cols = [[b[a][r] for a in range(k)] for r in range(self.dim)]
        c = zero_array((k, k, k))
        for i in range(k):
            for j in range(k):
                w = self.bracket(b[i], b[j])
                coords = solve_linear(cols, list(w)).particular
                c[i, j, :] = list(coords)
        return LieAlgebra(c)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash(tuple(self._c.flat))

    def __repr__(self):
        brackets = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                w = self._c[i, j]
                if not is_zero_array(w):
                    terms = " + ".join(f"{w[k]}*e{k + 1}" for k in range(self.dim) if w[k] != 0)
                    brackets.append(f"[e{i + 1},e{j + 1}]={terms}")
        return f"{type(self).__name__}(dim={self.dim}; {', '.join(brackets) or 'abelian'})"


@dataclass(frozen=True)
class NormalForm:
    kind: str  # "unimodular" | "nonunimodular" | "generic"
    params: tuple[Fraction, ...] = ()


class MetricLieAlgebra(LieAlgebra):
    """A 3-dimensional Lie algebra with orthonormal basis ``e1, e2, e3``."""

    def __init__(self, structure_constants, normal_form: NormalForm | None = None, *, validate=True):
        super().__init__(structure_constants, validate=validate)
        if self.dim != 3:
            raise ValueError("metric Lie algebras are three-dimensional")
        self.normal_form = normal_form or NormalForm("generic")

    @property
    def metric(self) -> np.ndarray:
        return fraction_array(np.eye(3, dtype=int))

    def with_constants(self, c) -> "MetricLieAlgebra":
        return MetricLieAlgebra(c, NormalForm("generic"))

    def permuted(self, perm) -> "MetricLieAlgebra":
        """Same algebra in the reordered basis ``e'_a = e_{perm[a]}``."""
        p = list(perm)
        c = self.c[np.ix_(p, p, p)]
        return MetricLieAlgebra(c, NormalForm("generic"))


def unimodular(c1, c2, c3) -> MetricLieAlgebra:
    """Milnor frame: ``[e1,e2]=c3 e3``, ``[e2,e3]=c1 e1``, ``[e3,e1]=c2 e2``."""
    c1, c2, c3 = (as_fraction(x) for x in (c1, c2, c3))
    c = zero_array((3, 3, 3))
    for (i, j, k), v in (((0, 1, 2), c3), ((1, 2, 0), c1), ((2, 0, 1), c2)):
        c[i, j, k] = v
        c[j, i, k] = -v
    return MetricLieAlgebra(c, NormalForm("unimodular", (c1, c2, c3)))


def nonunimodular(alpha, beta) -> MetricLieAlgebra:
    """The normalized non-unimodular algebra g(alpha, beta), alpha, beta >= 0."""
    a, b = as_fraction(alpha), as_fraction(beta)
    if a < 0 or b < 0:
        raise NormalizationViolated(f"alpha and beta must be non-negative, got ({a}, {b})")
    c = zero_array((3, 3, 3))
    # [e1,e2] = (1+a) e2 + (1+a) b e3
    c[0, 1, 1], c[0, 1, 2] = 1 + a, (1 + a) * b
    # [e3,e1] = (1-a) b e2 - (1-a) e3
    c[2, 0, 1], c[2, 0, 2] = (1 - a) * b, -(1 - a)
    c[1, 0] = -c[0, 1]
    c[0, 2] = -c[2, 0]
    return MetricLieAlgebra(c, NormalForm("nonunimodular", (a, b)))


def generic(structure_constants) -> MetricLieAlgebra:
    return MetricLieAlgebra(structure_constants, NormalForm("generic"))


def abelian() -> MetricLieAlgebra:
    return unimodular(0, 0, 0)


def bi_invariance_obstruction(g: LieAlgebra) -> np.ndarray:
    """``U[i, j, k] = <U(e_i, e_j), e_k>`` from ``2<U(X,Y),Z> = <X,[Z,Y]> + <Y,[Z,X]>``."""
    c = g.c
    return (c.transpose(2, 1, 0) + c.transpose(1, 2, 0)) / 2


def vector_product_operator(g: MetricLieAlgebra) -> tuple[np.ndarray, bool]:
    """The endomorphism L with ``[X,Y] = L(X x Y)`` and whether it is self-adjoint."""
    L = zero_array((3, 3))
    # e2 x e3 = e1, e3 x e1 = e2, e1 x e2 = e3
    L[:, 0] = g.c[1, 2]
    L[:, 1] = g.c[2, 0]
    L[:, 2] = g.c[0, 1]
    return L, bool(is_zero_array(L - L.T))


# classification -------------------------------------------------------------

_TABLE2 = {
    "+++": ("SU(2)", "su(2)", "compact and simple"),
    "++-": ("SL2R~", "sl2R", "non-compact and simple"),
    "++0": ("E(2)~", "se(2)", "solvable"),
    "+-0": ("E(1,1)", "se(1,1)", "solvable"),
    "+00": ("Nil3", "heisenberg", "nilpotent"),
    "000": ("R3", "abelian", "abelian"),
}


def sign_pattern(c1, c2, c3) -> str:
    """Table-2 signature of (c1, c2, c3) up to renumbering and a global sign."""
    signs = [(x > 0) - (x < 0) for x in (c1, c2, c3)]
    pos, neg = signs.count(1), signs.count(-1)
    if neg > pos:
        pos, neg = neg, pos
    zeros = 3 - pos - neg
    return "+" * pos + "-" * neg + "0" * zeros


@dataclass(frozen=True)
class MilnorClass:
    kind: str
    signature: str | None = None
    group: str | None = None
    algebra: str | None = None
    property: str | None = None
    milnor_invariant: Fraction | None = None
    chi: Fraction | str | None = None
    char_poly: tuple[Fraction, ...] | None = None  # lowest degree first


def _require_normal_form(g: MetricLieAlgebra) -> NormalForm:
    nf = getattr(g, "normal_form", NormalForm("generic"))
    if nf.kind == "generic":
        raise GenericForm("this operation needs an algebra built by unimodular() or nonunimodular()")
    return nf


def milnor_classify(g: MetricLieAlgebra) -> MilnorClass:
    nf = _require_normal_form(g)
    if nf.kind == "unimodular":
        sig = sign_pattern(*nf.params)
        group, algebra, prop = _TABLE2[sig]
        return MilnorClass("unimodular", sig, group, algebra, prop)
    # A is ad(e1) restricted to span{e2, e3}
    a11, a21 = g.c[0, 1, 1], g.c[0, 1, 2]
    a12, a22 = g.c[0, 2, 1], g.c[0, 2, 2]
    D = a11 * a22 - a12 * a21
    chi = "inf" if D == 0 else 4 / D
    return MilnorClass(
        "nonunimodular",
        milnor_invariant=D,
        chi=chi,
        char_poly=(D, -(a11 + a22), Fraction(1)),
    )


def isometry_dimension(g: MetricLieAlgebra) -> int:
    nf = _require_normal_form(g)
    if nf.kind == "nonunimodular":
        alpha = nf.params[0]
        if alpha == 0:
            return 6
        return 4 if alpha == 1 else 3
    cs = nf.params
    best = 3
    for i, j, k in permutations(range(3)):
        if cs[i] != cs[j]:
            continue
        if cs[k] == cs[i] or cs[k] == 0:
            return 6
        best = 4
    return best


def algebra_from_json(payload: dict) -> MetricLieAlgebra:
    from .exact import parse_rational

    form = payload.get("form")
    if form == "unimodular":
        cs = payload["c"]
        if len(cs) != 3:
            raise ValueError("unimodular form needs three constants")
        return unimodular(*(parse_rational(x) for x in cs))
    if form == "nonunimodular":
        return nonunimodular(parse_rational(payload["alpha"]), parse_rational(payload["beta"]))
    if form == "generic":
        c = [[[parse_rational(x) for x in row] for row in plane] for plane in payload["c"]]
        return generic(c)
    raise ValueError(f"unknown form {form!r}; expected unimodular, nonunimodular or generic")


def algebra_to_json(g: MetricLieAlgebra) -> dict:
    from .exact import format_rational

    nf = g.normal_form
    if nf.kind == "unimodular":
        return {"form": "unimodular", "c": [format_rational(x) for x in nf.params]}
    if nf.kind == "nonunimodular":
        return {
            "form": "nonunimodular",
            "alpha": format_rational(nf.params[0]),
            "beta": format_rational(nf.params[1]),
        }
    return {
        "form": "generic",
        "c": [[[format_rational(x) for x in row] for row in plane] for plane in g.c.tolist()],
    }

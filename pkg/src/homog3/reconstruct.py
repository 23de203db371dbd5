"""Holonomy of an Ambrose-Singer connection and the transitive Lie algebra it defines.

For a homogeneous structure ``S`` on ``g`` the algebra ``l = h + m`` has
``m = g`` as a vector space (basis ``e1, e2, e3``) followed by a basis of the
holonomy algebra ``h`` of ``nabla + S``. Brackets:

* ``[U, V] = UV - VU`` for ``U, V`` in ``h``;
* ``[U, X] = U(X)``;
* ``[X, Y] = -R~(X, Y) - S(X)Y + S(Y)X``, the first term read in ``h``.

Holonomy generators are taken as ``-R~(e_i, e_j)``, so ``[e_i, e_j]`` carries
the corresponding ``h`` basis vector with coefficient one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .curvature import curvature_operators, levi_civita
from .errors import ClosureDiverged, DimensionMismatch, JacobiFailed, JacobiViolation, NotAmbroseSinger
from .exact import format_rational, inertia, rref, solve_linear
from .exact.linalg import inverse
from .homstruct import HomStructure, as_verify
from .lie import LieAlgebra, MetricLieAlgebra, fraction_array, is_zero_array, zero_array

PAIRS = ((0, 1), (1, 2), (2, 0))


def as_curvature(g: MetricLieAlgebra, S: HomStructure) -> np.ndarray:
    """Operators ``ops[i, j]`` with column ``l`` equal to ``R~(e_i, e_j) e_l``."""
    report = as_verify(g, S)
    if not report.ok:
        failed = ", ".join(sorted(report.residuals))
        raise NotAmbroseSinger(f"S is not a homogeneous structure (failed: {failed})")
    return curvature_operators(g.c, levi_civita(g).gamma + S.S)


def _flat(m) -> list[Fraction]:
    return list(np.asarray(m, dtype=object).flat)


def _independent(vectors: list[list[Fraction]]) -> list[int]:
    """Indices of a greedy maximal independent subset, in input order."""
    keep: list[int] = []
    for i, v in enumerate(vectors):
        rows = [vectors[k] for k in keep] + [v]
        if len(rref(rows)[1]) == len(rows):
            keep.append(i)
    return keep


def holonomy_algebra(ops: np.ndarray, max_dim: int = 3) -> list[np.ndarray]:
    """Basis of the span of ``-R~(e_i, e_j)`` closed under commutators."""
    basis = [-ops[i, j] for i, j in PAIRS]
    basis = [basis[k] for k in _independent([_flat(m) for m in basis])]
    while True:
        if len(basis) > max_dim:
            raise ClosureDiverged(f"holonomy span exceeded dimension {max_dim}")
        new = [a.dot(b) - b.dot(a) for a in basis for b in basis]
        cand = basis + new
        keep = _independent([_flat(m) for m in cand])
        if len(keep) == len(basis):
            return basis
        basis = [cand[k] for k in keep]


def _coords(basis: list[np.ndarray], m: np.ndarray) -> tuple[Fraction, ...]:
    if not basis:
        if not is_zero_array(m):
            raise JacobiFailed("curvature operator outside the holonomy algebra")
        return ()
    cols = [[b.flat[r] for b in basis] for r in range(9)]
    return solve_linear(cols, _flat(m)).particular


@dataclass(frozen=True, eq=False)
class AlgebraFingerprint:
    dim: int
    derived_series_dims: tuple[int, ...]
    lower_central_dims: tuple[int, ...]
    center_dim: int
    killing_inertia: tuple[int, int, int]
    solvable: bool
    nilpotent: bool
    unimodular: bool
    derived_killing_inertia: tuple[int, int, int]

    def as_tuple(self) -> tuple:
        return (
            self.dim,
            self.derived_series_dims,
            self.lower_central_dims,
            self.center_dim,
            self.killing_inertia,
            self.solvable,
            self.nilpotent,
            self.unimodular,
            self.derived_killing_inertia,
        )

    def __eq__(self, other):
        return isinstance(other, AlgebraFingerprint) and self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def profile(self) -> str | None:
        """Name of the algebra when the fingerprint pins it down among the usual suspects."""
        key = (self.dim, self.derived_series_dims, self.center_dim, self.killing_inertia)
        table = {
            (3, (3,), 0, (2, 1, 0)): "sl2R",
            (3, (3,), 0, (0, 3, 0)): "su2",
            (3, (0,), 3, (0, 0, 3)): "abelian",
            (3, (1, 0), 1, (0, 0, 3)): "heisenberg",
        }
        if key in table:
            return table[key]
        if self.dim == 4 and self.derived_series_dims == (3,) and self.center_dim == 1:
            if self.derived_killing_inertia == (2, 1, 0):
                return "sl2R+R"
            if self.derived_killing_inertia == (0, 3, 0):
                return "su2+R"
        if self.dim == 3 and self.derived_series_dims == (1, 0) and self.center_dim == 1 and not self.unimodular:
            return "ga1+R"
        return None

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "derived_series_dims": list(self.derived_series_dims),
            "lower_central_dims": list(self.lower_central_dims),
            "center_dim": self.center_dim,
            "killing_inertia": list(self.killing_inertia),
            "solvable": self.solvable,
            "nilpotent": self.nilpotent,
            "unimodular": self.unimodular,
            "derived_killing_inertia": list(self.derived_killing_inertia),
            "profile": self.profile(),
        }


def _span(vectors) -> list[list[Fraction]]:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    m, pivots = rref(vectors)
    return m[: len(pivots)]


def _bracket_span(L: LieAlgebra, A, B) -> list[list[Fraction]]:
    return _span([list(L.bracket(a, b)) for a in A for b in B])


def _unit(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _series(step, start) -> list[int]:
    """Dimensions of ``step(start), step(step(start)), ...`` until they stabilize."""
    dims: list[int] = []
    cur = start
    while True:
        nxt = step(cur)
        if dims and len(nxt) == len(cur):
            return dims
        dims.append(len(nxt))
        if len(nxt) in (0, len(cur)):
            return dims
        cur = nxt


def fingerprint(L: LieAlgebra) -> AlgebraFingerprint:
    n = L.dim
    whole = _unit(n)
    derived = _series(lambda cur: _bracket_span(L, cur, cur), whole)
    lower = _series(lambda cur: _bracket_span(L, whole, cur), whole)
    # rows indexed by (j, k), columns by i: sum_i x_i c[i, j, k]
    center_rows = [[L.c[i, j, k] for i in range(n)] for j in range(n) for k in range(n)]
    center_dim = n - len(rref(center_rows)[1]) if n else 0
    der = _bracket_span(L, whole, whole)
    der_inertia = L.subalgebra(der).killing_inertia() if der else (0, 0, 0)
    return AlgebraFingerprint(
        dim=n,
        derived_series_dims=tuple(derived),
        lower_central_dims=tuple(lower),
        center_dim=center_dim,
        killing_inertia=L.killing_inertia(),
        solvable=derived[-1] == 0,
        nilpotent=lower[-1] == 0,
        unimodular=L.is_unimodular(),
        derived_killing_inertia=der_inertia,
    )


@dataclass(frozen=True, eq=False)
class ReconstructedAlgebra:
    total: LieAlgebra
    isotropy_indices: tuple[int, ...]
    holonomy_generators: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return self.total.dim

    @property
    def m_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.dim) if i not in self.isotropy_indices)

    @property
    def m_metric(self) -> np.ndarray:
        return fraction_array(np.eye(len(self.m_indices), dtype=int))

    def fingerprint(self) -> AlgebraFingerprint:
        return fingerprint(self.total)

    def to_json(self) -> dict:
        n = self.dim
        brackets = [
            [i + 1, j + 1, k + 1, format_rational(self.total.c[i, j, k])]
            for i in range(n)
            for j in range(i + 1, n)
            for k in range(n)
            if self.total.c[i, j, k] != 0
        ]
        return {
            "dim": n,
            "brackets": brackets,
            "isotropy": [i + 1 for i in self.isotropy_indices],
            "fingerprint": self.fingerprint().to_json(),
        }


def build_transitive_algebra(g: MetricLieAlgebra, S: HomStructure) -> ReconstructedAlgebra:
    ops = as_curvature(g, S)
    hol = holonomy_algebra(ops)
    h = len(hol)
    n = 3 + h
    c = zero_array((n, n, n))
    for i in range(3):
        for j in range(3):
            hpart = _coords(hol, -ops[i, j])
            mpart = -S.apply(_e(i), _e(j)) + S.apply(_e(j), _e(i))
            c[i, j, :3] = list(mpart)
            c[i, j, 3:] = list(hpart)
    for a, U in enumerate(hol):
        for j in range(3):
            c[3 + a, j, :3] = list(U[:, j])
            c[j, 3 + a, :3] = list(-U[:, j])
        for b, V in enumerate(hol):
            c[3 + a, 3 + b, 3:] = list(_coords(hol, U.dot(V) - V.dot(U)))
    try:
        total = LieAlgebra(c)
    except JacobiViolation as exc:
        raise JacobiFailed(str(exc)) from exc
    for U in hol:
        if not is_zero_array(U + U.T):
            raise JacobiFailed("holonomy generator is not skew-symmetric")
    return ReconstructedAlgebra(total, tuple(range(3, n)), tuple(hol))


def _e(i: int) -> list[int]:
    return [int(k == i) for k in range(3)]


def verify_isomorphism(F, A, B) -> bool:
    """Whether ``F`` (columns are images of basis vectors) is an isomorphism ``A -> B``.

    For reconstructed algebras the isotropy, the ``m`` block and the metric on
    ``m`` must be respected too; plain Lie algebras are compared as algebras.
    """
    LA = A.total if isinstance(A, ReconstructedAlgebra) else A
    LB = B.total if isinstance(B, ReconstructedAlgebra) else B
    F = fraction_array(F)
    n = LA.dim
    if LB.dim != n or F.shape != (n, n):
        raise DimensionMismatch(f"map of shape {F.shape} between algebras of dims {LA.dim} and {LB.dim}")
    try:
        inverse(F.tolist())
    except ZeroDivisionError:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            lhs = F.dot(LA.c[i, j])
            rhs = LB.bracket(F[:, i], F[:, j])
            if not is_zero_array(lhs - rhs):
                return False
    if isinstance(A, ReconstructedAlgebra) and isinstance(B, ReconstructedAlgebra):
        if any(F[r, i] != 0 for i in A.isotropy_indices for r in B.m_indices):
            return False
        if any(F[r, i] != 0 for i in A.m_indices for r in B.isotropy_indices):
            return False
        Fm = F[np.ix_(list(B.m_indices), list(A.m_indices))]
        if not is_zero_array(Fm.T.dot(Fm) - A.m_metric):
            return False
    return True


@dataclass(frozen=True)
class FamilyHolonomy:
    flat_parameters: tuple[Fraction, ...]
    generic_parameter: Fraction
    generic_dim: int


def family_holonomy(g: MetricLieAlgebra, fam) -> FamilyHolonomy:
    """Where along a structure family the Ambrose-Singer curvature vanishes.

    ``flat_parameters`` are the rational parameters with ``R~ = 0``;
    ``generic_dim`` is the holonomy dimension at the smallest non-negative
    integer parameter avoiding every root of a nonzero curvature component.
    """
    from .exact.poly import rational_roots, upoly_gcd

    ops = curvature_operators(g.c, levi_civita(g).gamma + fam.symbolic())
    comps = []
    for p in ops.flat:
        if p != 0:
            comps.append([p.coefficient((k,)) for k in range(p.degree() + 1)])
    flat: list[Fraction] = []
    special: set[Fraction] = set()
    if comps:
        common = comps[0]
        for q in comps[1:]:
            common = upoly_gcd(common, q)
        if len(common) > 1:
            flat = rational_roots(common)[0]
        for q in comps:
            if len(q) > 1:
                special.update(rational_roots(q)[0])
    t = Fraction(0)
    while t in special:
        t += 1
    dim = len(holonomy_algebra(as_curvature(g, fam.member(t))))
    return FamilyHolonomy(tuple(sorted(flat)), t, dim)


def ga1_plus_r() -> LieAlgebra:
    """``[e1, e2] = -e1``, ``e3`` central."""
    c = zero_array((3, 3, 3))
    c[0, 1, 0] = Fraction(-1)
    c[1, 0, 0] = Fraction(1)
    return LieAlgebra(c)


__all__ = [
    "AlgebraFingerprint",
    "ReconstructedAlgebra",
    "as_curvature",
    "build_transitive_algebra",
    "family_holonomy",
    "fingerprint",
    "ga1_plus_r",
    "holonomy_algebra",
    "inertia",
    "verify_isomorphism",
]

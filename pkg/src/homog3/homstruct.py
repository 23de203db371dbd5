"""Homogeneous Riemannian structures on three-dimensional metric Lie algebras.

A structure is stored by its components ``S[i, j, k] = g(S(e_i) e_j, e_k)``.
Two-forms use the half-wedge normalization, so the form term
``-2a theta^x (x) (theta^y ^ theta^z)`` is stored as ``S[x, y, z] = -a``.
The Ambrose-Singer connection is ``nabla + S``; its coefficients are
``gamma + S`` in the layout of :mod:`homog3.curvature`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .curvature import covariant_derivative, curvature, curvature_operators, is_locally_symmetric, levi_civita
from .errors import MetricalConditionViolated, RicciNotDiagonal, WrongNormalForm
from .exact import Poly, SolutionSet, char_poly_multiplicities, format_rational, solve_quadratic_small
from .exact.rational import as_fraction
from .lie import MetricLieAlgebra, fraction_array, is_zero_array, milnor_classify, zero_array


# structures -----------------------------------------------------------------


class HomStructure:
    """A (0,3) tensor ``S[i, j, k]``; skew in ``j, k`` unless ``check=False``."""

    __slots__ = ("S",)

    def __init__(self, components, *, check: bool = True):
        S = fraction_array(components, (3, 3, 3))
        S.flags.writeable = False
        if check and not is_zero_array(S + S.transpose(0, 2, 1)):
            raise MetricalConditionViolated("S[i,j,k] must equal -S[i,k,j]")
        self.S = S

    @classmethod
    def from_entries(cls, entries: dict, *, skew: bool = True) -> "HomStructure":
        """Build from ``{(i, j, k): value}`` with 1-based indices; skew partners filled in."""
        S = zero_array((3, 3, 3))
        for (i, j, k), v in entries.items():
            S[i - 1, j - 1, k - 1] = as_fraction(v)
            if skew:
                S[i - 1, k - 1, j - 1] = -as_fraction(v)
        return cls(S, check=skew)

    @classmethod
    def zero(cls) -> "HomStructure":
        return cls(zero_array((3, 3, 3)))

    @property
    def is_metrical(self) -> bool:
        return is_zero_array(self.S + self.S.transpose(0, 2, 1))

    def apply(self, x, y) -> np.ndarray:
        """The vector ``S(x) y``."""
        return np.einsum("i,j,ijk->k", fraction_array(x), fraction_array(y), self.S)

    def operator(self, i: int) -> np.ndarray:
        """Matrix of ``Y -> S(e_i) Y``."""
        return self.S[i].T

    def component(self, i: int, j: int, k: int) -> Fraction:
        """1-based accessor matching the usual ``S_{ijk}`` notation."""
        return self.S[i - 1, j - 1, k - 1]

    def __add__(self, other: "HomStructure") -> "HomStructure":
        return HomStructure(self.S + other.S, check=False)

    def __sub__(self, other: "HomStructure") -> "HomStructure":
        return HomStructure(self.S - other.S, check=False)

    def __mul__(self, t) -> "HomStructure":
        return HomStructure(self.S * as_fraction(t), check=False)

    __rmul__ = __mul__

    def __neg__(self) -> "HomStructure":
        return HomStructure(-self.S, check=False)

    def __eq__(self, other):
        return isinstance(other, HomStructure) and bool(np.array_equal(self.S, other.S))

    def __hash__(self):
        return hash(tuple(self.S.flat))

    def __bool__(self):
        return not is_zero_array(self.S)

    def __repr__(self):
        nz = [
            f"S{i + 1}{j + 1}{k + 1}={format_rational(v)}"
            for (i, j, k), v in np.ndenumerate(self.S)
            if v != 0 and j < k
        ]
        return f"HomStructure({', '.join(nz) or '0'})"

    def to_json(self) -> dict:
        return {"S": [format_rational(x) for x in self.S.flat]}

    @classmethod
    def from_json(cls, payload: dict, *, check: bool = True) -> "HomStructure":
        from .exact import parse_rational

        vals = payload["S"]
        if len(vals) != 27:
            raise ValueError(f"'S' needs 27 entries, got {len(vals)}")
        return cls([parse_rational(x) for x in vals], check=check)


@dataclass(frozen=True, eq=False)
class StructureFamily:
    """``member(t) = base + t * direction``."""

    base: HomStructure
    direction: HomStructure
    parameter: str = "r"

    def member(self, t) -> HomStructure:
        return HomStructure(self.base.S + self.direction.S * as_fraction(t))

    def parameter_of(self, S: HomStructure) -> Fraction | None:
        """The parameter value of ``S`` on this line, or None if it is not a member."""
        diff = S.S - self.base.S
        idx = next(i for i, d in np.ndenumerate(self.direction.S) if d != 0)
        t = diff[idx] / self.direction.S[idx]
        return t if is_zero_array(diff - self.direction.S * t) else None

    def contains(self, S: HomStructure) -> bool:
        return self.parameter_of(S) is not None

    def same_set(self, other: "StructureFamily") -> bool:
        if not other.contains(self.base):
            return False
        return other.contains(self.member(1))

    def symbolic(self) -> np.ndarray:
        """Components as degree-one polynomials in the parameter."""
        t = Poly.var(1, 0)
        out = np.empty((3, 3, 3), dtype=object)
        for idx in np.ndindex(3, 3, 3):
            out[idx] = Poly.const(1, self.base.S[idx]) + t * self.direction.S[idx]
        return out

    def to_json(self) -> dict:
        return {
            "S": self.base.to_json()["S"],
            "direction": self.direction.to_json()["S"],
            "parameter": self.parameter,
        }

    def __repr__(self):
        return f"StructureFamily({self.base!r} + {self.parameter}*{self.direction!r})"


# canonical structures -------------------------------------------------------


def canonical_structure(g: MetricLieAlgebra, which: str = "minus") -> HomStructure:
    """``S = nabla^(which) - nabla`` for the Cartan-Schouten connections."""
    gamma = levi_civita(g).gamma
    if which == "minus":
        S = -gamma
    elif which == "plus":
        S = g.c - gamma
    elif which == "zero":
        S = g.c / 2 - gamma
    else:
        raise ValueError(f"which must be minus, plus or zero, not {which!r}")
    return HomStructure(S, check=False)


def _unimodular_params(g) -> tuple[Fraction, Fraction, Fraction]:
    nf = getattr(g, "normal_form", None)
    if nf is None or nf.kind != "unimodular":
        raise WrongNormalForm("expected an algebra built by unimodular()")
    return nf.params


def s4_family(g: MetricLieAlgebra) -> StructureFamily:
    c1, c2, c3 = _unimodular_params(g)
    if not (c1 == c2 and c1 != c3 and c3 != 0):
        raise WrongNormalForm(f"needs c1 = c2 != c3 and c3 != 0, got ({c1}, {c2}, {c3})")
    base = HomStructure.from_entries({(1, 2, 3): -c3 / 2, (2, 3, 1): -c3 / 2})
    direction = HomStructure.from_entries({(3, 1, 2): -1})
    return StructureFamily(base, direction, "r")


def so2_family(g: MetricLieAlgebra) -> StructureFamily:
    nf = getattr(g, "normal_form", None)
    if nf is None or nf.kind != "nonunimodular" or nf.params[0] != 1 or nf.params[1] == 0:
        raise WrongNormalForm("needs nonunimodular(1, beta) with beta != 0")
    beta = nf.params[1]
    base = HomStructure.from_entries({(1, 2, 3): -beta, (2, 3, 1): -beta})
    direction = HomStructure.from_entries({(3, 1, 2): -1})
    return StructureFamily(base, direction, "r")


def so2_flat_parameter(beta) -> Fraction:
    beta = as_fraction(beta)
    return -(beta * beta + 2) / beta


# Tricerri-Vanhecke ----------------------------------------------------------

TV_CLASSES = ("symmetric", "T1", "T2", "T3", "T1+T2", "T1+T3", "T2+T3", "T1+T2+T3")


@dataclass(frozen=True, eq=False)
class TVDecomposition:
    S1: HomStructure
    S2: HomStructure
    S3: HomStructure
    omega: tuple[Fraction, ...]
    satisfied: tuple[str, ...]

    @property
    def xi(self) -> tuple[Fraction, ...]:
        return tuple(-w for w in self.omega)

    @property
    def label(self) -> str:
        """The smallest class whose defining condition holds."""
        return min(self.satisfied, key=lambda name: (0 if name == "symmetric" else name.count("T"), name))

    def is_of_type(self, name: str) -> bool:
        return name in self.satisfied

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "satisfied": list(self.satisfied),
            "xi": [format_rational(x) for x in self.xi],
            "S1": self.S1.to_json()["S"],
            "S2": self.S2.to_json()["S"],
            "S3": self.S3.to_json()["S"],
        }


def _as_array(S) -> np.ndarray:
    return S.S if isinstance(S, HomStructure) else fraction_array(S, (3, 3, 3))


def c12(S) -> np.ndarray:
    return np.einsum("iiz->z", _as_array(S))


def cyclic_sum(S) -> np.ndarray:
    A = _as_array(S)
    # A[y,z,x] and A[z,x,y] placed at [x,y,z]
    return A + A.transpose(2, 0, 1) + A.transpose(1, 2, 0)


def _t1_shape(omega) -> np.ndarray:
    d = np.eye(3, dtype=int)
    w = fraction_array(omega)
    return np.einsum("xy,z->xyz", d, w) - np.einsum("xz,y->xyz", d, w)


def tv_decompose(g: MetricLieAlgebra, S) -> TVDecomposition:
    A = _as_array(S)
    if not is_zero_array(A + A.transpose(0, 2, 1)):
        raise MetricalConditionViolated("S[i,j,k] must equal -S[i,k,j]")
    omega = c12(A) / 2
    S1 = _t1_shape(omega)
    S3 = cyclic_sum(A) / 3
    S2 = A - S1 - S3
    sym_xy = A + A.transpose(1, 0, 2)
    d = np.eye(3, dtype=int)
    w = fraction_array(omega)
    t13 = 2 * np.einsum("xy,z->xyz", d, w) - np.einsum("zx,y->xyz", d, w) - np.einsum("yz,x->xyz", d, w)
    conds = {
        "symmetric": is_zero_array(A),
        "T1": is_zero_array(A - S1),
        "T2": is_zero_array(cyclic_sum(A)) and is_zero_array(c12(A)),
        "T3": is_zero_array(sym_xy),
        "T1+T2": is_zero_array(cyclic_sum(A)),
        "T1+T3": is_zero_array(sym_xy - t13),
        "T2+T3": is_zero_array(c12(A)),
        "T1+T2+T3": True,
    }
    return TVDecomposition(
        HomStructure(S1),
        HomStructure(S2),
        HomStructure(S3),
        tuple(omega),
        tuple(name for name in TV_CLASSES if conds[name]),
    )


# Ambrose-Singer verification -----------------------------------------------


@dataclass(frozen=True, eq=False)
class AmbroseSingerReport:
    metric_ok: bool
    ricci_parallel_ok: bool
    curvature_parallel_ok: bool
    S_parallel_ok: bool
    residuals: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.metric_ok and self.ricci_parallel_ok and self.curvature_parallel_ok and self.S_parallel_ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "metric_ok": self.metric_ok,
            "ricci_parallel_ok": self.ricci_parallel_ok,
            "curvature_parallel_ok": self.curvature_parallel_ok,
            "S_parallel_ok": self.S_parallel_ok,
            "residuals": {
                key: [[list(idx), _fmt_entry(v)] for idx, v in entries] for key, entries in self.residuals.items()
            },
        }


def _fmt_entry(v) -> str:
    return v.to_string() if isinstance(v, Poly) else format_rational(v)


def _nonzero(arr) -> list:
    return [(idx, v) for idx, v in np.ndenumerate(arr) if not v == 0]


def as_tensors(g: MetricLieAlgebra, S: np.ndarray) -> dict[str, np.ndarray]:
    """The four covariant derivatives with respect to ``nabla + S``.

    ``S`` may hold polynomials; the results then hold polynomials too.
    """
    gamma = levi_civita(g).gamma
    cd = curvature(g)
    gt = gamma + S
    metric = fraction_array(np.eye(3, dtype=int))
    return {
        "metric": covariant_derivative(gt, metric),
        "ricci": covariant_derivative(gt, cd.ric),
        "curvature": covariant_derivative(gt, cd.R),
        "S": covariant_derivative(gt, S),
    }


def as_verify(g: MetricLieAlgebra, S) -> AmbroseSingerReport:
    if isinstance(S, StructureFamily):
        A = S.symbolic()
    elif isinstance(S, HomStructure):
        A = S.S
    else:
        A = np.asarray(S, dtype=object).reshape(3, 3, 3)
    t = as_tensors(g, A)
    res = {k: _nonzero(v) for k, v in t.items()}
    return AmbroseSingerReport(
        metric_ok=not res["metric"],
        ricci_parallel_ok=not res["ricci"],
        curvature_parallel_ok=not res["curvature"],
        S_parallel_ok=not res["S"],
        residuals={k: v for k, v in res.items() if v},
    )


# solver ---------------------------------------------------------------------

LOCALLY_SYMMETRIC_NOTE = "locally symmetric - classification out of scope (Abe/Ohno)"
SPACE_FORM_NOTE = "constant curvature - classification out of scope (Abe)"
NON_LEFT_INVARIANT_NOTE = "possible non-left-invariant extras exist for sl2R-type input"


@dataclass(frozen=True, eq=False)
class SolverOutcome:
    kind: str  # "structures" | "locally_symmetric"
    ricci_pattern: str
    structures: tuple[HomStructure, ...] = ()
    families: tuple[StructureFamily, ...] = ()
    unresolved: tuple = ()
    notes: tuple[str, ...] = ()
    sigma_solutions: SolutionSet | None = None

    @property
    def space_form(self) -> bool:
        return self.ricci_pattern == "triple"

    @property
    def is_complete(self) -> bool:
        return not self.unresolved

    def to_json(self) -> dict:
        out = {"kind": self.kind, "ricci_pattern": self.ricci_pattern, "notes": list(self.notes)}
        if self.kind == "structures":
            out["structures"] = [s.to_json() for s in self.structures]
            out["families"] = [f.to_json() for f in self.families]
            out["unresolved"] = [[p.to_string(["s1", "s2", "s3"]) for p in comp] for comp in self.unresolved]
        return out


def _sl2_extras_expected(g: MetricLieAlgebra) -> bool:
    nf = g.normal_form
    if nf.kind == "nonunimodular":
        return nf.params[0] == 1 and nf.params[1] != 0
    if nf.kind != "unimodular" or milnor_classify(g).signature != "++-":
        return False
    cs = nf.params
    return any(
        cs[i] == cs[j] and cs[k] != cs[i] and cs[k] != 0
        for i, j, k in ((0, 1, 2), (1, 2, 0), (0, 2, 1))
    )


def forced_components(gamma: np.ndarray, pairs: Sequence[tuple[int, int]]) -> dict:
    """``S[x, a, b] = gamma[x, b, a]`` for each pair ``(a, b)`` with distinct Ricci values."""
    out = {}
    for a, b in pairs:
        for x in range(3):
            out[(x, a, b)] = gamma[x, b, a]
            out[(x, b, a)] = -gamma[x, b, a]
    return out


def _sigma_tensor(gamma: np.ndarray) -> np.ndarray:
    """Ansatz in a frame with ``rho_1 = rho_2``: ``S[x,0,1] = sigma_x``, the rest forced."""
    sig = Poly.variables(3)
    S = np.empty((3, 3, 3), dtype=object)
    for idx in np.ndindex(3, 3, 3):
        S[idx] = Poly.const(3, 0)
    for (x, a, b), v in forced_components(gamma, [(1, 2), (2, 0)]).items():
        S[x, a, b] = Poly.const(3, v)
    for x in range(3):
        S[x, 0, 1] = sig[x]
        S[x, 1, 0] = -sig[x]
    return S


def _evaluate(S_poly: np.ndarray, point) -> np.ndarray:
    out = zero_array((3, 3, 3))
    for idx, p in np.ndenumerate(S_poly):
        out[idx] = p.evaluate(point)
    return out


def _unpermute(A: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    out = zero_array(A.shape)
    p = list(perm)
    for idx, v in np.ndenumerate(A):
        out[tuple(p[i] for i in idx)] = v
    return out


def _named_family(g: MetricLieAlgebra, fam: StructureFamily) -> StructureFamily:
    for make in (s4_family, so2_family):
        try:
            named = make(g)
        except WrongNormalForm:
            continue
        if fam.same_set(named):
            return named
    return fam


def sigma_system(g: MetricLieAlgebra) -> tuple[list[Poly], np.ndarray]:
    """Polynomial equations in ``sigma`` for an algebra whose Ricci has ``rho_1 = rho_2``."""
    gamma = levi_civita(g).gamma
    S = _sigma_tensor(gamma)
    eqs: list[Poly] = []
    for arr in as_tensors(g, S).values():
        for v in arr.flat:
            p = v if isinstance(v, Poly) else Poly.const(3, v)
            if p != 0:
                eqs.append(p)
    return eqs, S


def solve_left_invariant(g: MetricLieAlgebra) -> SolverOutcome:
    cd = curvature(g)
    pattern, _ = char_poly_multiplicities(cd.ric)
    notes = (NON_LEFT_INVARIANT_NOTE,) if _sl2_extras_expected(g) else ()
    if is_locally_symmetric(g):
        # space forms land here too; they carry an extra note
        extra = (SPACE_FORM_NOTE,) if pattern == "triple" else ()
        return SolverOutcome("locally_symmetric", pattern, notes=(LOCALLY_SYMMETRIC_NOTE,) + extra)

    if pattern == "distinct":
        gamma = levi_civita(g).gamma
        candidate = canonical_structure(g, "minus")
        if cd.ricci_is_diagonal:
            A = zero_array((3, 3, 3))
            for idx, v in forced_components(gamma, [(0, 1), (1, 2), (2, 0)]).items():
                A[idx] = v
            if HomStructure(A) != candidate:
                raise AssertionError("forced structure differs from the (-)-structure")
        found = (candidate,) if as_verify(g, candidate).ok else ()
        return SolverOutcome("structures", pattern, found, notes=notes)

    if not cd.ricci_is_diagonal:
        raise RicciNotDiagonal("a repeated principal Ricci curvature needs a basis diagonalizing Ric")
    rho = cd.principal_ricci
    a, b = next((i, j) for i in range(3) for j in range(i + 1, 3) if rho[i] == rho[j])
    k = 3 - a - b
    perm = (a, b, k)
    gp = g.permuted(perm)
    eqs, S_poly = sigma_system(gp)
    sol = solve_quadratic_small(eqs, 3)

    structures = []
    for pt in sol.points:
        A = _unpermute(_evaluate(S_poly, pt), perm)
        structures.append(HomStructure(A))
    families = []
    for base, direction in sol.lines:
        A0 = _unpermute(_evaluate(S_poly, base), perm)
        A1 = _unpermute(_evaluate(S_poly, tuple(x + y for x, y in zip(base, direction))), perm)
        fam = StructureFamily(HomStructure(A0), HomStructure(A1 - A0), "t")
        families.append(_named_family(g, fam))

    for s in structures:
        if not as_verify(g, s).ok:
            raise AssertionError(f"solver produced a non-homogeneous structure {s!r}")
    for f in families:
        if not as_verify(g, f).ok:
            raise AssertionError(f"solver produced a non-homogeneous family {f!r}")
    return SolverOutcome(
        "structures",
        pattern,
        tuple(structures),
        tuple(families),
        unresolved=sol.unresolved,
        notes=notes,
        sigma_solutions=sol,
    )


__all__ = [
    "AmbroseSingerReport",
    "HomStructure",
    "SolverOutcome",
    "StructureFamily",
    "TVDecomposition",
    "TV_CLASSES",
    "as_tensors",
    "as_verify",
    "c12",
    "canonical_structure",
    "curvature_operators",
    "cyclic_sum",
    "forced_components",
    "s4_family",
    "sigma_system",
    "so2_family",
    "so2_flat_parameter",
    "solve_left_invariant",
    "tv_decompose",
]

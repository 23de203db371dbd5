"""Left-invariant almost contact structures and the connections attached to them.

Exterior derivatives of left-invariant one-forms follow ``d eta(X, Y) = -1/2 eta([X, Y])``.
Endomorphisms are 3x3 matrices acting on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .curvature import Connection, curvature, levi_civita
from .errors import SasakianInput, UnsupportedForm, WrongNormalForm
from .exact import Infeasible, format_rational, solve_linear
from .exact.rational import as_fraction
from .homstruct import HomStructure, canonical_structure, so2_family
from .lie import MetricLieAlgebra, fraction_array, is_zero_array, zero_array


@dataclass(frozen=True, eq=False)
class AlmostContactStructure:
    phi: np.ndarray
    xi: np.ndarray
    eta: np.ndarray

    def defects(self) -> dict[str, bool]:
        I = fraction_array(np.eye(3, dtype=int))
        phi, xi, eta = self.phi, self.xi, self.eta
        return {
            "phi_squared": is_zero_array(phi.dot(phi) + I - np.outer(xi, eta)),
            "eta_xi": eta.dot(xi) == 1,
            "phi_xi": is_zero_array(phi.dot(xi)),
            "eta_phi": is_zero_array(eta.dot(phi)),
            "compatible": is_zero_array(phi.T.dot(phi) - I + np.outer(eta, eta)),
        }

    @property
    def valid(self) -> bool:
        return all(self.defects().values())

    def to_json(self) -> dict:
        return {
            "phi": [[format_rational(x) for x in row] for row in self.phi.tolist()],
            "xi": [format_rational(x) for x in self.xi],
            "eta": [format_rational(x) for x in self.eta],
        }


def _acs(xi_index: int, a: int, b: int) -> AlmostContactStructure:
    """``xi = e_xi``, ``phi e_a = e_b``, ``phi e_b = -e_a``."""
    phi = zero_array((3, 3))
    phi[b, a] = Fraction(1)
    phi[a, b] = Fraction(-1)
    xi = zero_array(3)
    xi[xi_index] = Fraction(1)
    return AlmostContactStructure(phi, xi, xi.copy())


def standard_acs(g: MetricLieAlgebra) -> AlmostContactStructure:
    nf = g.normal_form
    if nf.kind == "unimodular":
        acs = _acs(0, 1, 2)
    elif nf.kind == "nonunimodular" and nf.params[0] == 1:
        acs = _acs(2, 0, 1)
    else:
        raise UnsupportedForm("almost contact structure defined for unimodular or nonunimodular(1, beta) input")
    if not acs.valid:
        raise AssertionError("standard almost contact structure fails its identities")
    return acs


def d_eta(g: MetricLieAlgebra, acs: AlmostContactStructure) -> np.ndarray:
    """``d eta(e_i, e_j) = -1/2 eta([e_i, e_j])``."""
    return -np.einsum("ijk,k->ij", g.c, acs.eta) / 2


def contact_metric_constant(g: MetricLieAlgebra, acs: AlmostContactStructure) -> Fraction | None:
    """The constant ``beta != 0`` with ``d eta(X, Y) = beta g(X, phi Y)``, if any."""
    lhs = d_eta(g, acs)
    rhs = acs.phi  # g(e_i, phi e_j) = phi[i, j]
    idx = next((i for i, v in np.ndenumerate(rhs) if v != 0), None)
    beta = lhs[idx] / rhs[idx]
    if beta == 0 or not is_zero_array(lhs - rhs * beta):
        return None
    return beta


def h_tensor(g: MetricLieAlgebra, acs: AlmostContactStructure) -> np.ndarray:
    """``h = 1/2 L_xi phi`` with ``(L_xi phi) X = [xi, phi X] - phi [xi, X]``."""
    ad = g.ad(acs.xi)
    return (ad.dot(acs.phi) - acs.phi.dot(ad)) / 2


def kappa_mu(g: MetricLieAlgebra, acs: AlmostContactStructure) -> tuple[Fraction, Fraction | None] | None:
    """Constants with ``R(X,Y) xi = (kappa I + mu h)(eta(Y) X - eta(X) Y)``.

    ``mu`` is None when ``h = 0`` leaves it undetermined; the whole result is
    None when no constants work.
    """
    ops = curvature(g).ops
    h = h_tensor(g, acs)
    rows, rhs = [], []
    for i in range(3):
        for j in range(3):
            lhs = ops[i, j].dot(acs.xi)
            v = zero_array(3)
            v[i] += acs.eta[j]
            v[j] -= acs.eta[i]
            hv = h.dot(v)
            for k in range(3):
                rows.append([v[k], hv[k]])
                rhs.append(lhs[k])
    try:
        sol = solve_linear(rows, rhs)
    except Infeasible:
        return None
    free = {k for vec in sol.kernel for k, x in enumerate(vec) if x != 0}
    kappa = None if 0 in free else sol.particular[0]
    mu = None if 1 in free else sol.particular[1]
    if kappa is None:
        return None
    return kappa, mu


def is_flat(g: MetricLieAlgebra) -> bool:
    return is_zero_array(curvature(g).R)


def sasakian_check(g: MetricLieAlgebra, acs: AlmostContactStructure) -> Fraction | None:
    """``beta != 0`` with ``(nabla_X phi) Y = beta (g(X, Y) xi - eta(Y) X)``, if any."""
    gamma = levi_civita(g).gamma
    rows, rhs = [], []
    for i in range(3):
        G = gamma[i].T
        lhs = G.dot(acs.phi) - acs.phi.dot(G)
        for j in range(3):
            target = acs.xi * int(i == j)
            target = target.copy()
            target[i] -= acs.eta[j]
            for k in range(3):
                rows.append([target[k]])
                rhs.append(lhs[k, j])
    try:
        sol = solve_linear(rows, rhs)
    except Infeasible:
        return None
    beta = sol.particular[0]
    return beta if beta != 0 else None


def _contact_tensor(acs: AlmostContactStructure, h: np.ndarray, coeff) -> np.ndarray:
    """``-g(phi(I+h)X, Y) xi + coeff eta(X) phi Y + eta(Y) phi(I+h) X`` as components."""
    I = fraction_array(np.eye(3, dtype=int))
    M = acs.phi.dot(I + h)
    phi, xi, eta = acs.phi, acs.xi, acs.eta
    S = zero_array((3, 3, 3))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                S[i, j, k] = -M[j, i] * xi[k] + coeff * eta[i] * phi[k, j] + eta[j] * M[k, i]
    return S


def boeckx_structure(g: MetricLieAlgebra, acs: AlmostContactStructure, mu=None) -> HomStructure:
    h = h_tensor(g, acs)
    if is_zero_array(h):
        raise SasakianInput("the Boeckx structure needs a non-Sasakian input (h != 0)")
    if mu is None:
        km = kappa_mu(g, acs)
        if km is None or km[1] is None:
            raise ValueError("input is not a contact (kappa, mu)-space")
        mu = km[1]
    return HomStructure(_contact_tensor(acs, h, as_fraction(mu) / 2))


def tanaka_webster_tensor(g: MetricLieAlgebra, acs: AlmostContactStructure) -> HomStructure:
    """Difference tensor of the Tanaka-Webster connection and the Levi-Civita one."""
    return HomStructure(_contact_tensor(acs, h_tensor(g, acs), 1))


def tanaka_webster(g: MetricLieAlgebra, acs: AlmostContactStructure) -> Connection:
    return levi_civita(g) + tanaka_webster_tensor(g, acs)


def equal_structures(a: HomStructure, b: HomStructure) -> bool:
    return a == b


def equal_connections(a: Connection, b: Connection) -> bool:
    return a == b


@dataclass(frozen=True)
class OkumuraResult:
    structure: HomStructure
    display_matches: bool


def okumura_display(g: MetricLieAlgebra, acs: AlmostContactStructure, r) -> np.ndarray:
    """Components of ``beta g(X,Y) xi - r eta(X) phi Y + beta eta(Y) phi X`` read literally."""
    beta = g.normal_form.params[1]
    r = as_fraction(r)
    phi, xi, eta = acs.phi, acs.xi, acs.eta
    S = zero_array((3, 3, 3))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                S[i, j, k] = beta * int(i == j) * xi[k] - r * eta[i] * phi[k, j] + beta * eta[j] * phi[k, i]
    return S


def okumura_structure(g: MetricLieAlgebra, acs: AlmostContactStructure, r) -> OkumuraResult:
    nf = g.normal_form
    if nf.kind != "nonunimodular" or nf.params[0] != 1:
        raise WrongNormalForm("Okumura's family lives on nonunimodular(1, beta)")
    member = so2_family(g).member(r)
    literal = okumura_display(g, acs, r)
    return OkumuraResult(member, bool(np.array_equal(literal, member.S)))


@dataclass(frozen=True, eq=False)
class ContactReport:
    acs: AlmostContactStructure
    contact_constant: Fraction | None
    h: np.ndarray
    kappa: Fraction | None
    mu: Fraction | None
    sasakian_beta: Fraction | None
    flat: bool
    boeckx_equals_minus: bool | None
    tw_equals_boeckx: bool | None

    def to_json(self) -> dict:
        def opt(x):
            return None if x is None else format_rational(x)

        return {
            "acs": self.acs.to_json(),
            "contact_constant": opt(self.contact_constant),
            "h": [[format_rational(x) for x in row] for row in self.h.tolist()],
            "kappa": opt(self.kappa),
            "mu": opt(self.mu),
            "sasakian_beta": opt(self.sasakian_beta),
            "flat": self.flat,
            "boeckx_equals_minus": self.boeckx_equals_minus,
            "tw_equals_boeckx": self.tw_equals_boeckx,
        }


def contact_report(g: MetricLieAlgebra) -> ContactReport:
    acs = standard_acs(g)
    cc = contact_metric_constant(g, acs)
    h = h_tensor(g, acs)
    km = kappa_mu(g, acs) if cc == 1 else None
    kappa, mu = km if km else (None, None)
    b_minus = tw_b = None
    if not is_zero_array(h) and mu is not None:
        SB = boeckx_structure(g, acs, mu)
        b_minus = SB == canonical_structure(g, "minus")
        tw_b = tanaka_webster_tensor(g, acs) == SB
    return ContactReport(
        acs=acs,
        contact_constant=cc,
        h=h,
        kappa=kappa,
        mu=mu,
        sasakian_beta=sasakian_check(g, acs),
        flat=is_flat(g),
        boeckx_equals_minus=b_minus,
        tw_equals_boeckx=tw_b,
    )


__all__ = [
    "AlmostContactStructure",
    "ContactReport",
    "OkumuraResult",
    "boeckx_structure",
    "contact_metric_constant",
    "contact_report",
    "d_eta",
    "equal_connections",
    "equal_structures",
    "h_tensor",
    "is_flat",
    "kappa_mu",
    "okumura_display",
    "okumura_structure",
    "sasakian_check",
    "standard_acs",
    "tanaka_webster",
    "tanaka_webster_tensor",
]

"""Assemble analysis reports as plain JSON-ready dictionaries, and render them as text."""

from __future__ import annotations

import json
from fractions import Fraction

from .contact import contact_report
from .curvature import constant_curvature_check, curvature, is_locally_symmetric
from .errors import UnsupportedForm
from .exact import char_poly_multiplicities, format_rational
from .homstruct import HomStructure, StructureFamily, solve_left_invariant, tv_decompose
from .lie import MetricLieAlgebra, algebra_to_json, isometry_dimension, milnor_classify
from .reconstruct import build_transitive_algebra, family_holonomy


def dumps(payload) -> str:
    """Canonical serialization: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _opt(x):
    return None if x is None else format_rational(x)


def milnor_json(g: MetricLieAlgebra) -> dict | None:
    if g.normal_form.kind == "generic":
        return None
    mc = milnor_classify(g)
    out = {"kind": mc.kind}
    if mc.kind == "unimodular":
        out.update(signature=mc.signature, group=mc.group, algebra=mc.algebra, property=mc.property)
    else:
        chi = mc.chi if mc.chi == "inf" else format_rational(mc.chi)
        out.update(
            milnor_invariant=format_rational(mc.milnor_invariant),
            chi=chi,
            char_poly=[format_rational(x) for x in mc.char_poly],
        )
    return out


def curvature_json(g: MetricLieAlgebra) -> dict:
    cd = curvature(g)
    out = cd.to_json()
    out["ricci_pattern"] = char_poly_multiplicities(cd.ric)[0]
    out["locally_symmetric"] = is_locally_symmetric(g)
    out["constant_curvature"] = _opt(constant_curvature_check(g))
    if g.normal_form.kind == "unimodular":
        c1, c2, c3 = g.normal_form.params
        half = (c1 + c2 + c3) / 2
        out["mu"] = [format_rational(half - c) for c in (c1, c2, c3)]
    return out


def _coset_hint(profile: str | None, dim: int, h: int) -> str:
    name = profile or f"dim-{dim} algebra"
    iso = {0: "{e}", 1: "SO(2)"}.get(h, f"dim-{h} isotropy")
    return f"{name} / {iso}"


def structure_json(g: MetricLieAlgebra, S: HomStructure) -> dict:
    rec = build_transitive_algebra(g, S)
    fp = rec.fingerprint()
    h = len(rec.isotropy_indices)
    return {
        "S": S.to_json()["S"],
        "tv": tv_decompose(g, S).to_json(),
        "holonomy_dim": h,
        "reconstruction": rec.to_json(),
        "coset_hint": _coset_hint(fp.profile(), rec.dim, h),
    }


def family_json(g: MetricLieAlgebra, fam: StructureFamily) -> dict:
    fh = family_holonomy(g, fam)
    generic = fam.member(fh.generic_parameter)
    out = fam.to_json()
    out["flat_parameters"] = [format_rational(x) for x in fh.flat_parameters]
    out["generic_parameter"] = format_rational(fh.generic_parameter)
    out["generic_holonomy_dim"] = fh.generic_dim
    out["generic_member"] = structure_json(g, generic)
    out["flat_members"] = [structure_json(g, fam.member(r)) for r in fh.flat_parameters]
    return out


def analysis_report(g: MetricLieAlgebra) -> dict:
    outcome = solve_left_invariant(g)
    report = {
        "input": algebra_to_json(g),
        "classification": None,
        "curvature": curvature_json(g),
        "solver": outcome.to_json(),
        "structures": [structure_json(g, s) for s in outcome.structures],
        "families": [family_json(g, f) for f in outcome.families],
        "contact": None,
    }
    if g.normal_form.kind != "generic":
        report["classification"] = {"milnor": milnor_json(g), "isometry_dimension": isometry_dimension(g)}
    try:
        report["contact"] = contact_report(g).to_json()
    except UnsupportedForm:
        pass
    return report


# text rendering -------------------------------------------------------------


def _vec(xs) -> str:
    return "(" + ", ".join(xs) + ")"


def render_text(report: dict) -> str:
    lines: list[str] = []
    inp = report["input"]
    if inp["form"] == "unimodular":
        lines.append(f"unimodular (c1, c2, c3) = {_vec(inp['c'])}")
    elif inp["form"] == "nonunimodular":
        lines.append(f"non-unimodular (alpha, beta) = ({inp['alpha']}, {inp['beta']})")
    else:
        lines.append("generic structure constants")
    cls = report.get("classification")
    if cls:
        m = cls["milnor"]
        if m["kind"] == "unimodular":
            lines.append(f"  Milnor signs {m['signature']}: {m['group']} ({m['property']})")
        else:
            lines.append(f"  Milnor invariant D = {m['milnor_invariant']}, chi = {m['chi']}")
        lines.append(f"  isometry group dimension {cls['isometry_dimension']}")
    cur = report["curvature"]
    if "mu" in cur:
        lines.append(f"  mu_i = {_vec(cur['mu'])}")
    if "principal_ricci" in cur:
        lines.append(f"  rho_i = {_vec(cur['principal_ricci'])}  [{cur['ricci_pattern']}]")
    else:
        lines.append(f"  Ricci not diagonal in this basis [{cur['ricci_pattern']}]")
    lines.append(f"  scalar curvature {cur['scalar']}")
    if cur["constant_curvature"] is not None:
        lines.append(f"  constant curvature {cur['constant_curvature']}")
    sol = report["solver"]
    for note in sol["notes"]:
        lines.append(f"  note: {note}")
    if sol["kind"] == "structures":
        lines.append(f"  {len(report['structures'])} isolated structure(s), {len(report['families'])} family(ies)")
        for k, s in enumerate(report["structures"], 1):
            lines.append(f"  structure {k}: {_components(s['S'])}")
            lines.append(f"    class {s['tv']['label']}; holonomy dim {s['holonomy_dim']}; {s['coset_hint']}")
        for k, f in enumerate(report["families"], 1):
            p = f["parameter"]
            lines.append(f"  family {k}: {_components(f['S'])} + {p} * [{_components(f['direction'])}]")
            flat = ", ".join(f["flat_parameters"]) or "none"
            lines.append(f"    generic holonomy dim {f['generic_holonomy_dim']}; flat at {p} = {flat}")
        if sol.get("unresolved"):
            lines.append(f"  unresolved components: {sol['unresolved']}")
    c = report.get("contact")
    if c:
        lines.append(
            "  contact: constant {}, kappa {}, mu {}, Sasakian beta {}, flat {}".format(
                c["contact_constant"], c["kappa"], c["mu"], c["sasakian_beta"], c["flat"]
            )
        )
    return "\n".join(lines) + "\n"


def _components(flat: list[str]) -> str:
    out = []
    for idx, v in enumerate(flat):
        i, j, k = idx // 9, (idx // 3) % 3, idx % 3
        if v != "0" and j < k:
            out.append(f"S{i + 1}{j + 1}{k + 1}={v}")
    return ", ".join(out) or "0"


def denominator_bits(payload) -> int:
    """Largest denominator bit-length among the rational strings inside a JSON payload."""
    best = 0
    if isinstance(payload, dict):
        for v in payload.values():
            best = max(best, denominator_bits(v))
    elif isinstance(payload, list):
        for v in payload:
            best = max(best, denominator_bits(v))
    elif isinstance(payload, str) and "/" in payload:
        num, _, den = payload.partition("/")
        if num.lstrip("-").isdigit() and den.isdigit():
            best = Fraction(int(num), int(den)).denominator.bit_length()
    return best

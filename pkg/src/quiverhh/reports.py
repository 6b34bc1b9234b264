"""Plain-data reports behind the command-line subcommands.

Every ``*_report`` returns nested dicts/lists of strings, ints and bools in a
fixed key order, so ``json.dumps`` of the result is byte-stable.  ``render``
turns a report into the text form.
"""

from __future__ import annotations

from math import lcm

from .algebra import QuotientAlgebra, ideal_dims
from .bimodule import brick_report
from .extension import ExtensionResult, extension_for
from .hochschild import CochainComplex, CoefficientBimodule, ExtensionComplexes
from .presentation import BoundQuiverPresentation
from .quiver import format_combination, validate_triangular
from .relations import minimal_generator_counts, minimal_relation_system, relation_report
from .ses import verify_ses


def _pair(q, x, y) -> str:
    return f"{q.vertices[x].label}->{q.vertices[y].label}"


def _structure(pres: BoundQuiverPresentation) -> dict:
    q = pres.quiver
    tri = validate_triangular(q, "old" if pres.has_new_arrows else "all")
    return {
        "field": pres.field.name,
        "vertices": [v.label for v in q.vertices],
        "arrows": [f"{a.label}: {q.vertices[a.source].label} -> {q.vertices[a.target].label}"
                   + (" new" if a.is_new else "") for a in q.arrows],
        "relations": [r.format(q) for r in pres.relations],
        "connected": q.is_connected(),
        "triangular": tri.is_triangular,
        "cycle": None if tri.is_triangular else q.format_path(tri.cycle),
    }


def check_report(pres: BoundQuiverPresentation, max_degree=None) -> dict:
    out = _structure(pres)
    alg = QuotientAlgebra(pres, max_degree=max_degree)
    out.update(
        dim=alg.dim,
        nilpotency_bound=alg.nilpotency_bound,
        groebner_size=len(alg.groebner.elements),
        homogeneous=alg.groebner.homogeneous,
        associative=alg.check_associativity(None),
        basis=[alg.label(i) for i in range(alg.dim)],
    )
    return out


def basis_report(pres: BoundQuiverPresentation, max_degree=None) -> dict:
    alg = QuotientAlgebra(pres, max_degree=max_degree)
    q = alg.quiver
    by_pair = []
    for x in range(q.num_vertices):
        for y in range(q.num_vertices):
            words = alg.basis_between(x, y)
            if words:
                by_pair.append({"pair": _pair(q, x, y), "words": [alg.label(i) for i in words]})
    return {
        "dim": alg.dim,
        "basis": [alg.label(i) for i in range(alg.dim)],
        "by_pair": by_pair,
        "groebner_basis": [g.format(q) for g in alg.groebner.elements],
    }


def dims_report(pres: BoundQuiverPresentation, max_degree=None) -> dict:
    alg = QuotientAlgebra(pres, max_degree=max_degree)
    d = ideal_dims(alg)
    q = alg.quiver
    rows = []
    for (x, y), row in sorted(d["pairs"].items()):
        if row["paths"]:
            rows.append({"pair": _pair(q, x, y), **row})
    return {"dim": d["dim"], "truncation": d["truncation"], "oracle_checked": d["oracle_checked"], "pairs": rows}


def _relations_entries(alg: QuotientAlgebra, rels, names=None) -> list:
    q = alg.quiver
    out = []
    for e in relation_report(alg, rels):
        item = {"relation": e["relation"].format(q), "strongly_minimal": e["strongly_minimal"]}
        if names is not None and names[e["index"]]:
            item["name"] = names[e["index"]]
        if not e["strongly_minimal"]:
            w = e["witness"]
            item["witness"] = w.element.format(q)
            comb = e["combination"]
            if comb is not None:
                item["witness_identity"] = _identity(w.element.format(q), comb, names or [None] * len(comb))
        out.append(item)
    return out


def _identity(witness: str, comb, labels) -> str:
    """``D*witness = Σ (D c_i) r_i`` with integer coefficients when over Q."""
    scale = 1
    dens = [getattr(c, "denominator", 1) for c in comb if c]
    if dens and all(isinstance(d, int) for d in dens):
        scale = lcm(*dens)
    lhs = witness if scale == 1 else f"{scale}*({witness})" if " " in witness else f"{scale}*{witness}"
    terms = [(lab or f"r{i + 1}", c * scale) for i, (lab, c) in enumerate(zip(labels, comb)) if c]
    return f"{lhs} = {format_combination(terms)}"


def relations_report(pres: BoundQuiverPresentation, max_degree=None) -> dict:
    alg = QuotientAlgebra(pres, max_degree=max_degree)
    q = alg.quiver
    rs = minimal_relation_system(alg)
    return {
        "given": _relations_entries(alg, pres.relations, pres.relation_names),
        "generator_counts": [{"pair": _pair(q, x, y), "count": m}
                             for (x, y), m in sorted(minimal_generator_counts(alg).items())],
        "minimal_system": [r.format(q) for r in rs.relations],
    }


def _derivative_label(q, arrow) -> str:
    return f"∂{arrow.label} W"


def extension_summary(ext: ExtensionResult) -> dict:
    qb = ext.B.quiver
    derivs = ext.derivatives()
    rels = [d for _, d in derivs]
    labels = [_derivative_label(qb, a) for a, _ in derivs]
    return {
        "origin": ext.origin,
        "trivial": ext.is_trivial,
        "dim_C": ext.C_alg.dim,
        "dim_B": ext.B_alg.dim,
        "dim_E": ext.dim_E,
        "relation_system": [r.format(ext.C.quiver) for r in ext.relation_system.relations],
        "new_arrows": [f"{qb.arrows[g].label}: {qb.vertices[qb.arrows[g].source].label} -> "
                       f"{qb.vertices[qb.arrows[g].target].label}" for g in ext.new_arrows],
        "potential": ext.potential.format_grouped() if ext.potential else "0",
        "potential_expanded": ext.potential.format() if ext.potential else "0",
        "derivatives": [{"arrow": a.label, "value": d.format(qb)} for a, d in derivs],
        "derivative_minimality": _relations_entries(ext.B_alg, rels, labels) if rels else [],
        "classes": ext.class_labels(),
        "n": ext.n,
        "summands": [{"arrows": [qb.arrows[a].label for a in s.arrows], "dim": s.dim, "basis": list(s.labels)}
                     for s in ext.summands],
        "checks": {k: bool(v) for k, v in sorted(ext.checks.items())},
    }


def extend_report(pres: BoundQuiverPresentation, max_degree=None) -> dict:
    ext = extension_for(pres, max_degree)
    return extension_summary(ext)


def _complex_for(pres, algebra: str, coeff: str, max_degree=None):
    if coeff == "self":
        coeff = algebra
    if algebra == "C" and not pres.has_new_arrows:
        A = QuotientAlgebra(pres, max_degree=max_degree)
        if coeff != "C":
            raise ValueError("coefficients E and C need --algebra B")
        return CochainComplex(A, CoefficientBimodule.regular(A), "C")
    ext = extension_for(pres, max_degree)
    return ExtensionComplexes(ext).complex(algebra, coeff)


def hh_report(pres: BoundQuiverPresentation, algebra="C", coeff="self", degree=1, max_degree=None) -> dict:
    cx = _complex_for(pres, algebra, coeff, max_degree)
    rep = cx.cohomology(degree)
    out = rep.as_dict()
    out["coefficients"] = coeff
    out["cochain_dim"] = rep.slice.dim
    if degree == 0 and coeff in ("self", algebra):
        out["center_dim"] = cx.A.center().dim
    return out


def bricks_summary(ext: ExtensionResult, cx=None) -> dict:
    return brick_report(ext, cx).as_dict()


def ses_summary(ext: ExtensionResult) -> dict:
    cx = ExtensionComplexes(ext)
    rep = verify_ses(ext, cx)
    return {
        "field": rep.field_name,
        "passed": rep.passed,
        "dims": rep.dims,
        "assertions": [{"name": a.name, "passed": a.passed, "detail": a.detail} for a in rep.assertions],
        "failed": rep.failed(),
        "phi": rep.phi,
        "iota": rep.iota,
        "pbar": rep.pbar,
        "witnesses": rep.witnesses,
        "HH1_C_representatives": cx.CC.cohomology(1).format_representatives(),
        "bricks": bricks_summary(ext, cx),
    }


def verify_ses_report(pres: BoundQuiverPresentation, max_degree=None) -> dict:
    return ses_summary(extension_for(pres, max_degree))


def bricks_report(pres: BoundQuiverPresentation, max_degree=None) -> dict:
    return bricks_summary(extension_for(pres, max_degree))


# -- text rendering ----------------------------------------------------------


def _lines_structure(r: dict) -> list:
    out = [f"field {r['field']}", "vertices " + " ".join(r["vertices"])]
    out += ["arrow " + a for a in r["arrows"]]
    if r["relations"]:
        out.append("relations")
        out += ["  " + x for x in r["relations"]]
    out.append(f"connected: {'yes' if r['connected'] else 'no'}")
    out.append("triangular: " + ("yes" if r["triangular"] else f"no (cycle {r['cycle']})"))
    return out


def render(command: str, r: dict) -> str:
    fn = _RENDER[command]
    return "\n".join(fn(r)) + "\n"


def _render_check(r):
    out = _lines_structure(r)
    out.append(f"nilpotency bound L = {r['nilpotency_bound']}")
    out.append(f"dim = {r['dim']}")
    out.append("basis: " + ", ".join(r["basis"]))
    return out


def _render_basis(r):
    out = [f"dim = {r['dim']}"]
    out += [f"  e {p['pair']}: " + ", ".join(p["words"]) for p in r["by_pair"]]
    out.append("Gröbner basis:")
    out += ["  " + g for g in r["groebner_basis"]]
    return out


def _render_dims(r):
    out = [f"dim = {r['dim']}  (paths up to length {r['truncation']}; oracle "
           + ("checked" if r["oracle_checked"] else "skipped: relations not homogeneous") + ")"]
    for p in r["pairs"]:
        out.append(f"  {p['pair']}: paths {p['paths']}, ideal {p['ideal']}, algebra {p['algebra']}")
    return out


def _render_minimality(entries, indent="  "):
    out = []
    for e in entries:
        name = f"{e['name']} = " if e.get("name") else ""
        verdict = "strongly minimal" if e["strongly_minimal"] else f"NOT strongly minimal (witness {e['witness']})"
        out.append(f"{indent}{name}{e['relation']}: {verdict}")
        if e.get("witness_identity"):
            out.append(f"{indent}  {e['witness_identity']}")
    return out


def _render_relations(r):
    out = ["given relations:"] + _render_minimality(r["given"])
    out.append("minimal generators per pair: " + ", ".join(f"{g['pair']}: {g['count']}" for g in r["generator_counts"]))
    out.append("a strongly minimal system:")
    out += ["  " + x for x in r["minimal_system"]]
    return out


def _render_extend(r):
    if r["trivial"]:
        return [f"no relations: B = C (dim {r['dim_C']})"]
    out = [f"dim C = {r['dim_C']}, dim B = {r['dim_B']}, dim E = {r['dim_E']}"]
    out.append("system of relations:")
    out += ["  " + x for x in r["relation_system"]]
    out.append("new arrows: " + ", ".join(r["new_arrows"]))
    out.append(f"W = {r['potential']}")
    for d in r["derivatives"]:
        out.append(f"  ∂{d['arrow']} W = {d['value']}")
    bad = [e for e in r["derivative_minimality"] if not e["strongly_minimal"]]
    if bad:
        out.append("the cyclic derivatives are not all strongly minimal:")
        out += _render_minimality(bad, "  ")
    out.append(f"classes of new arrows: {r['classes']}  (n = {r['n']})")
    for s in r["summands"]:
        out.append(f"  E[{','.join(s['arrows'])}] dim {s['dim']}: " + ", ".join(s["basis"]))
    out.append("checks: " + ", ".join(f"{k} {'ok' if v else 'FAILED'}" for k, v in r["checks"].items()))
    return out


def _render_hh(r):
    out = [f"H^{r['degree']}({r['algebra']}, {r['coefficients']}) : dim {r['dim']}  "
           f"(cochains {r['cochain_dim']}, cocycles {r['cocycle_dim']}, coboundaries {r['coboundary_dim']})"]
    if "center_dim" in r:
        out.append(f"centre: dim {r['center_dim']}")
    for k, rep in enumerate(r["representatives"]):
        out.append(f"  [{k}] {rep}")
    return out


def _render_bricks(r):
    out = ["summands: " + (", ".join(r["summands"]) or "none")]
    for lab, row in zip(r["summands"], r["hom_dims"]):
        out.append(f"  Hom({lab}, -): {row}")
    out.append(f"orthogonal bricks: {'yes' if r['orthogonal_bricks'] else 'no'}")
    out.append(f"n = {r['n']}, dim End(E) = {r['dim_End_E']}, dim H1(B,E) = {r['dim_H1_B_E']}")
    if r["H1_exceeds_n"]:
        out.append("note: dim H1(B,E) > n")
    return out


def _render_ses(r):
    out = [f"field {r['field']}"]
    out.append(", ".join(f"{k} = {v}" for k, v in r["dims"].items()))
    for a in r["assertions"]:
        out.append(f"  [{'PASS' if a['passed'] else 'FAIL'}] {a['name']}" + (f": {a['detail']}" if a["detail"] else ""))
    for w in r["witnesses"]:
        if "extended" in w:
            out.append(f"  δ = {w['delta']}  ~>  δ̃ = {w['extended']}")
    out += _render_bricks(r["bricks"])
    out.append("verify-ses: " + ("PASS" if r["passed"] else "FAIL (" + ", ".join(r["failed"]) + ")"))
    return out


_RENDER = {
    "check": _render_check,
    "basis": _render_basis,
    "dims": _render_dims,
    "relations": _render_relations,
    "extend": _render_extend,
    "hh": _render_hh,
    "verify-ses": _render_ses,
    "bricks": _render_bricks,
}

"""Turn parsed ``.hyp`` declarations into verified objects and back."""
from __future__ import annotations

from .convolution import FiniteSupportMap
from .core import AxiomError, FiniteCanonicalHypergroup, check_marty, diagnose_canonical, mask_of, members, verify_canonical
from .dsl import FunctionsDecl, StructureDecl, StructureDocument, ValuationDecl
from .hyperrings import FiniteHyperfield, diagnose_hyperfield, diagnose_hyperring, verify_hyperfield, verify_hyperring
from .order import (
    OrderRelation,
    OrderedCanonicalHypergroup,
    check_compatibility,
    check_fvk_properties,
    relation_from_cone,
    verify_positive_cone,
)
from .report import Report, check, from_diagnostic
from .valuations import INF, FiniteHypervaluation, check_hypervaluation, check_prop, check_valpro


def tables(d: StructureDecl):
    idx = {x: i for i, x in enumerate(d.elements)}
    add = [[mask_of(idx[z] for z in d.table[a, b]) for b in d.elements] for a in d.elements]
    mul = [[idx[d.mul[a, b]] for b in d.elements] for a in d.elements] if d.mul else None
    return idx, add, mul


def build_structure(d: StructureDecl):
    """Verified hypergroup, hyperring or hyperfield; raises AxiomError."""
    idx, add, mul = tables(d)
    e = idx[d.identity]
    if d.kind == "hypergroup":
        return verify_canonical(add, e, d.elements)
    if d.kind == "hyperring":
        return verify_hyperring(add, e, mul, idx[d.one], d.elements)
    return verify_hyperfield(add, e, mul, idx[d.one], d.elements)


def additive_of(s) -> FiniteCanonicalHypergroup:
    return s if isinstance(s, FiniteCanonicalHypergroup) else s.additive


def build_order(d: StructureDecl) -> OrderRelation | None:
    """Order generated by the declared chains; ValueError if they clash."""
    if not d.orders:
        return None
    idx = {x: i for i, x in enumerate(d.elements)}
    return OrderRelation.from_chains([[idx[x] for x in c] for c in d.orders], len(d.elements))


def build_ordered(d: StructureDecl) -> OrderedCanonicalHypergroup:
    o = build_order(d)
    if o is None:
        raise ValueError(f"{d.name!r} declares no order")
    return OrderedCanonicalHypergroup(additive_of(build_structure(d)), o)


def build_valuation(doc: StructureDocument, d: ValuationDecl) -> FiniteHypervaluation:
    f = build_structure(doc.get(d.domain))
    h = build_ordered(doc.get(d.codomain))
    labs = h.hypergroup.labels
    vals = tuple(INF if d.mapping[x] == "inf" else labs.index(d.mapping[x]) for x in f.labels)
    return FiniteHypervaluation(f, h, vals)


def build_functions(doc: StructureDocument, d: FunctionsDecl) -> dict[str, FiniteSupportMap]:
    h = additive_of(build_structure(doc.get(d.domain)))
    return {name: FiniteSupportMap.from_labels(h, vals) for name, vals in d.functions.items()}


def diagnose_structure(d: StructureDecl) -> Report:
    """Every applicable check on one declaration, failures included."""
    rep = Report(f"{d.kind} {d.name}")
    idx, add, mul = tables(d)
    labels = d.elements
    e = idx[d.identity]
    if d.kind == "hypergroup":
        inverse, diags = diagnose_canonical(add, e)
    elif d.kind == "hyperring":
        inverse, diags = diagnose_hyperring(add, e, mul, idx[d.one])
    else:
        diags = diagnose_hyperfield(add, e, mul, idx[d.one])
        inverse = diagnose_canonical(add, e)[0]
    for g in diags:
        rep.add(from_diagnostic(g, labels))
    if inverse is None or not rep.ok:
        return rep
    hg = additive_of(build_structure(d))
    rep.add(from_diagnostic(check_marty(hg), labels))
    if d.orders:
        try:
            o = build_order(d)
        except ValueError as exc:
            rep.add(check("order is a partial order", False, None, message=str(exc)))
            o = None
        if o is not None:
            rep.add(check("order is a partial order", True, None, total=o.total))
            comp = check_compatibility(hg, o)
            rep.add(from_diagnostic(comp, labels))
            if comp:
                for g in check_fvk_properties(OrderedCanonicalHypergroup(hg, o)):
                    rep.add(from_diagnostic(g, labels))
    if d.cone is not None:
        p = mask_of(idx[x] for x in d.cone)
        for g in verify_positive_cone(hg, p):
            rep.add(from_diagnostic(g, labels))
        rel = relation_from_cone(hg, p)
        wit = next(iter(rel.witnesses.values()), None)
        rep.add(check("cone relation is an order", rel.is_order,
                      None if wit is None else [labels[i] for i in wit],
                      reflexive=rel.reflexive, antisymmetric=rel.antisymmetric,
                      transitive=rel.transitive, total=rel.total))
    return rep


ELEMENT_WITNESS = {"valuation hyperring", "G linear order"}


def diagnose_valuation(doc: StructureDocument, d: ValuationDecl) -> Report:
    rep = Report(f"valuation {d.name}")
    try:
        w = build_valuation(doc, d)
    except (AxiomError, ValueError) as exc:
        rep.add(check("domain and codomain verified", False, None, message=str(exc)))
        return rep
    labels = w.domain.labels
    diags = check_hypervaluation(w)
    for g in diags:
        rep.add(from_diagnostic(g, labels))
    for g in check_valpro(w):
        rep.add(from_diagnostic(g, labels))
    if all(diags):
        for g in check_prop(w):
            # only these witnesses are field elements
            rep.add(from_diagnostic(g, labels if g.name in ELEMENT_WITNESS else None))
    return rep


def check_document(doc: StructureDocument) -> Report:
    rep = Report("check")
    for d in doc.decls:
        if isinstance(d, StructureDecl):
            rep.extend(diagnose_structure(d), f"{d.name}: ")
        elif isinstance(d, ValuationDecl):
            rep.extend(diagnose_valuation(doc, d), f"{d.name}: ")
        else:
            try:
                build_functions(doc, d)
                rep.add(check(f"{d.name}: maps well formed", True, None, maps=list(d.functions)))
            except (AxiomError, ValueError) as exc:
                rep.add(check(f"{d.name}: maps well formed", False, None, message=str(exc)))
    return rep


# ---------------------------------------------------------------- export

def _decl_from(kind, name, hg: FiniteCanonicalHypergroup, mul=None, one=None, order=None, cone=None):
    labs = list(hg.labels)
    table = {(labs[a], labs[b]): frozenset(labs[z] for z in members(hg.op(a, b)))
             for a in range(hg.n) for b in range(hg.n)}
    muld = {}
    if mul is not None:
        muld = {(labs[a], labs[b]): labs[mul[a][b]] for a in range(hg.n) for b in range(hg.n)}
    orders = []
    if order is not None:
        if not order.total:
            raise ValueError("only total orders are exported")
        orders = [tuple(labs[a] for a in order.chain())]
    cone_t = None if cone is None else tuple(labs[a] for a in members(cone))
    return StructureDecl(kind, name, labs, labs[hg.identity], table,
                         None if one is None else labs[one], muld, orders, cone_t)


def hypergroup_decl(h: FiniteCanonicalHypergroup, name: str, order=None, cone=None) -> StructureDecl:
    return _decl_from("hypergroup", name, h, order=order, cone=cone)


def ring_decl(r, name: str, order=None) -> StructureDecl:
    kind = "hyperfield" if isinstance(r, FiniteHyperfield) else "hyperring"
    ring = r.ring if isinstance(r, FiniteHyperfield) else r
    return _decl_from(kind, name, ring.additive, ring.mul, ring.one, order)


def valuation_decl(w: FiniteHypervaluation, name: str, domain: str, codomain: str) -> ValuationDecl:
    return ValuationDecl(name, domain, codomain, w.show())


__all__ = [
    "tables", "build_structure", "build_order", "build_ordered", "build_valuation", "build_functions",
    "diagnose_structure", "diagnose_valuation", "check_document", "hypergroup_decl", "ring_decl",
    "valuation_decl",
]

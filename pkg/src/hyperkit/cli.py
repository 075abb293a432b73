"""Command-line front end.

Exit codes: 0 every check passed, 1 a check failed (a counterexample where a
pass was expected), 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import sys
import time
from itertools import combinations

from . import build
from .convolution import associativity_probe, convolve, paper_maps
from .core import AxiomError, members
from .dsl import DSLError, FunctionsDecl, StructureDocument, ValuationDecl, parse, serialize
from .enumeration import (
    enumerate_canonical_hypergroups,
    enumerate_hyperfields,
    enumerate_hypervaluations,
    enumerate_ordered_hypergroups,
    mine_cone_order_counterexample,
)
from .padic import decompose_sampled, o_equal_without_isomorphism_report, sign_hypervaluation_padic
from .quotients import FiniteCommutativeRing, demonstrate_ZN_failure, quotient_hyperfield, quotient_hyperring
from .report import Report, check, digest_text
from .squareclass import reproduce_cone_counterexample
from .valuations import DecompositionError, decompose

KINDS = ("hypergroup", "ordered", "hyperfield", "cones", "valuations")


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="accepted; work runs sequentially")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=10000)

    p = argparse.ArgumentParser(prog="hyperkit", description="verify and construct finite hyperstructures")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="verify every structure in a .hyp file")
    c.add_argument("file")
    q = sub.add_parser("quotient", parents=[common], help="print the Krasner quotient R/G as .hyp text")
    q.add_argument("--ring", required=True, help="zmod:<m>")
    q.add_argument("--subgroup", required=True, help="comma separated units, e.g. 1,4")
    q.add_argument("--name", default=None)
    d = sub.add_parser("decompose", parents=[common], help="decompose hypervaluations w = h∘v")
    src = d.add_mutually_exclusive_group(required=True)
    src.add_argument("file", nargs="?")
    src.add_argument("--padic", type=int, metavar="P", help="sampled check of the p-adic sign hypervaluation")
    v = sub.add_parser("convolve", parents=[common], help="convolution products and associativity probe")
    v.add_argument("file")
    e = sub.add_parser("enumerate", parents=[common], help="catalog small structures up to isomorphism")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--kind", choices=KINDS, default="hypergroup")
    e.add_argument("--emit", action="store_true", help="print the catalog as .hyp text")
    sub.add_parser("counterexamples", parents=[common], help="reproduce the known counterexamples")
    return p


def _load(path: str) -> tuple[str, StructureDocument]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    return text, parse(text)


def cmd_check(args) -> Report:
    text, doc = _load(args.file)
    rep = build.check_document(doc)
    rep.title = f"check {args.file}"
    rep.input_digest = digest_text(text)
    return rep


def _parse_ring(spec: str) -> FiniteCommutativeRing:
    kind, _, arg = spec.partition(":")
    if kind != "zmod" or not arg.isdigit() or int(arg) < 2:
        raise UsageError(f"unsupported ring {spec!r}; expected zmod:<m> with m >= 2")
    return FiniteCommutativeRing.zmod(int(arg))


def cmd_quotient(args) -> tuple[Report, str]:
    r = _parse_ring(args.ring)
    try:
        g = [int(x) for x in args.subgroup.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad subgroup list {args.subgroup!r}") from exc
    m = r.modulus
    name = args.name or f"Z{m}_mod_" + "_".join(str(x) for x in sorted(set(g)))
    try:
        s = quotient_hyperfield(r, g) if r.is_field() else quotient_hyperring(r, g)
    except ValueError as exc:
        if isinstance(exc, AxiomError):
            raise
        raise UsageError(str(exc)) from exc
    text = serialize(StructureDocument([build.ring_decl(s, name)]))
    rep = build.check_document(parse(text))
    rep.title = f"quotient Z/{m} by {sorted(set(g))}"
    rep.input_digest = digest_text(f"{args.ring} {args.subgroup}")
    return rep, text


def cmd_decompose(args) -> Report:
    if args.padic is not None:
        try:
            cw = sign_hypervaluation_padic(args.padic)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        rep = decompose_sampled(cw, args.samples, args.seed)
        rep.extend(o_equal_without_isomorphism_report(args.padic, args.samples, args.seed), "O_v = O_w: ")
        rep.input_digest = digest_text(f"padic {args.padic} seed {args.seed} samples {args.samples}")
        return rep
    text, doc = _load(args.file)
    rep = Report(f"decompose {args.file}", input_digest=digest_text(text))
    vals = [d for d in doc.decls if isinstance(d, ValuationDecl)]
    if not vals:
        raise UsageError("no valuation declarations to decompose")
    for d in vals:
        try:
            w = build.build_valuation(doc, d)
            dec = decompose(w)
            rep.extend(dec.report, f"{d.name}: ")
            rep.summary[d.name] = dec.report.summary
        except DecompositionError as exc:
            rep.extend(exc.report, f"{d.name}: ")
            rep.add(check(f"{d.name}: decomposition", False, None, message=str(exc)))
        except (AxiomError, ValueError) as exc:
            rep.add(check(f"{d.name}: domain and codomain verified", False, None, message=str(exc)))
    return rep


def cmd_convolve(args) -> Report:
    text, doc = _load(args.file)
    rep = Report(f"convolve {args.file}", input_digest=digest_text(text))
    blocks = [d for d in doc.decls if isinstance(d, FunctionsDecl)]
    if not blocks:
        raise UsageError("no functions declarations to convolve")
    for d in blocks:
        try:
            maps = build.build_functions(doc, d)
        except (AxiomError, ValueError) as exc:
            rep.add(check(f"{d.name}: domain verified", False, None, message=str(exc)))
            continue
        products = {f"{a}{b}": convolve(maps[a], maps[b]).by_label() for a in maps for b in maps}
        rep.summary[d.name] = {"products": products}
        for a, b, c in combinations(maps, 3):
            res = associativity_probe(maps[a], maps[b], maps[c])
            name = f"{d.name}: (({a}{b}){c}) = ({a}({b}{c}))"
            if res is None:
                rep.add(check(name, True))
            else:
                x, left, right = res
                lab = maps[a].domain.labels[x]
                rep.add(check(name, False, {"x": lab, "left": left, "right": right}))
    return rep


def cmd_enumerate(args) -> tuple[Report, str | None]:
    n = args.order
    if not 1 <= n <= 16:
        raise UsageError("--order must lie in 1..16")
    rep = Report(f"enumerate {args.kind} of order {n}", input_digest=digest_text(f"{args.kind} {n}"))
    docs = []
    if args.kind == "hypergroup":
        cat = enumerate_canonical_hypergroups(n)
        docs = [build.hypergroup_decl(h, f"H{n}_{i}") for i, h in enumerate(cat)]
    elif args.kind == "ordered":
        cat = enumerate_ordered_hypergroups(n)
        docs = [build.hypergroup_decl(oh.hypergroup, f"O{n}_{i}", order=oh.order) for i, oh in enumerate(cat)]
    elif args.kind == "hyperfield":
        cat = enumerate_hyperfields(n)
        docs = [build.ring_decl(f, f"F{n}_{i}") for i, f in enumerate(cat)]
    elif args.kind == "cones":
        res = mine_cone_order_counterexample(n)
        rep.add(check("search exhaustive", res.exhaustive))
        wit = None
        if res.found:
            h, p, rel = res.witness
            wit = {"elements": list(h.labels), "cone": [h.labels[a] for a in members(p)],
                   "failures": {k: [h.labels[a] for a in v] for k, v in rel.witnesses.items()}}
        rep.add(check("no finite cone whose relation fails to be a linear order", not res.found, wit))
        rep.summary = {"searched": res.searched}
        return rep, None
    else:
        fields = [f for m in range(2, n + 1) for f in enumerate_hyperfields(m)]
        codomains = [oh for m in range(1, n + 1) for oh in enumerate_ordered_hypergroups(m)]
        counts = {}
        for i, f in enumerate(fields):
            for j, oh in enumerate(codomains):
                c = enumerate_hypervaluations(f, oh)
                if len(c):
                    counts[f"F{f.n}_{i} -> O{oh.n}_{j}"] = len(c)
        rep.add(check("search exhaustive", True))
        rep.summary = {"hyperfields": len(fields), "codomains": len(codomains), "nonempty": counts}
        return rep, None
    rep.add(check("search exhaustive", cat.exhaustive))
    rep.summary = {"count": len(cat), "nodes": cat.nodes}
    return rep, serialize(StructureDocument(docs)) if docs else ""


def cmd_counterexamples(args) -> Report:
    rep = Report("counterexamples", input_digest=digest_text(f"seed {args.seed} samples {args.samples}"))
    rep.extend(reproduce_cone_counterexample(), "cone: ")
    rep.extend(demonstrate_ZN_failure(5, 10), "Z/N: ")
    f, g, h = paper_maps()
    res = associativity_probe(f, g, h)
    found = res is not None and (res[1], res[2]) == (-8, -6)
    wit = None if res is None else {"x": f.domain.labels[res[0]], "left": res[1], "right": res[2]}
    rep.add(check("convolution: ((fg)h)(1) = -8, (f(gh))(1) = -6", found, wit))
    rep.extend(o_equal_without_isomorphism_report(2, args.samples, args.seed), "O_v = O_w: ")
    rep.summary = {"convolution_probe": wit}
    return rep


def run(argv=None, out=None, err=None) -> tuple[int, Report | None]:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), None
    t0 = time.perf_counter()
    extra = None
    try:
        if args.command == "check":
            rep = cmd_check(args)
        elif args.command == "quotient":
            rep, extra = cmd_quotient(args)
            if args.format == "json":
                rep.summary["dsl"], extra = extra, None
        elif args.command == "decompose":
            rep = cmd_decompose(args)
        elif args.command == "convolve":
            rep = cmd_convolve(args)
        elif args.command == "enumerate":
            rep, extra = cmd_enumerate(args)
            if not args.emit:
                extra = None
        else:
            rep = cmd_counterexamples(args)
    except DSLError as exc:
        print(f"{getattr(args, 'file', '')}:{exc}", file=err)
        return 2, None
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2, None
    rep.timings["total_s"] = round(time.perf_counter() - t0, 6)
    if extra is not None:
        out.write(extra)
    elif args.format == "json":
        out.write(rep.to_json() + "\n")
    else:
        out.write(rep.to_text() + "\n")
    return (0 if rep.ok else 1), rep


def main(argv=None) -> None:
    sys.exit(run(argv)[0])


if __name__ == "__main__":
    main()

"""``freesem`` command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 capacity exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Optional

import jsonschema

from . import schemas
from .consequence import SatisfactionRelation, check_extension_compatibility, closure, consequence, kleisli
from .dayconv import (MonoidalCat, Promonoidal, check_closedness, check_unit_laws,
                      check_yoneda_monoidality, day_left_exponent, day_right_exponent, day_tensor,
                      indexed_convolution_check, promonoidal_from_monoidal)
from .errors import (CapacityExceeded, Caps, DialectError, FormulaSyntaxError,
                     InternalLawViolation, InvalidFrame, MalformedTable, Report, UnknownName,
                     ValuationNotUpClosed)
from .fincat import (Bifunctor, FinCat, Functor, NatTransformation, Presheaf, coend, end,
                     identity_functor, compose_functors, opposite, product, representable,
                     validate_category)
from .frames import (KripkeFrame, TernaryFrame, check_kripke_equivalence, check_residuation,
                     eval_lambek, kripke_force)
from .kan import AdjunctionData, YonedaTriangleData, adjoint_oracle, check_adjunction, check_yoneda_triangle
from .syntax import Binary, Bot, Dialect, Formula, Top, Var, parse, to_text

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


class InputError(Exception):
    pass


# ---------------------------------------------------------------- loading

def load_json(path: str, schema: dict) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    try:
        jsonschema.validate(data, schema, cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise InputError(f"{path}: {where}: {e.message}") from None
    return data


def fincat_from_json(d: dict, caps: Caps, label: str = "category") -> FinCat:
    C = FinCat.from_lists(d["objects"], [(m["dom"], m["cod"]) for m in d["morphisms"]],
                          d["identities"], d["compose"])
    if C.n_morphisms > caps.max_morphisms:
        raise CapacityExceeded(
            f"{label} has {C.n_morphisms} morphisms, cap is {caps.max_morphisms}")
    rep = validate_category(C)
    if not rep.ok:
        raise InputError(f"{label} is not a category: {json.dumps(rep.violations[0])}")
    return C


def functor_from_json(d: dict, S: FinCat, T: FinCat, label: str) -> Functor:
    F = Functor(S, T, tuple(d["objects"]), tuple(d["morphisms"]))
    bad = F.violations()
    if bad:
        raise InputError(f"{label} is not a functor: {json.dumps(bad[0])}")
    return F


def presheaf_from_json(d: dict, C: FinCat, label: str) -> Presheaf:
    P = Presheaf.from_lists(C, d["sizes"], d["maps"])
    bad = P.violations()
    if bad:
        raise InputError(f"{label} is not a presheaf: {json.dumps(bad[0])}")
    return P


def fincat_to_json(C: FinCat) -> dict:
    return {"objects": C.n_objects,
            "morphisms": [{"dom": d, "cod": c} for d, c in zip(C.dom, C.cod)],
            "identities": list(C.identities), "compose": [list(r) for r in C.table]}


def presheaf_to_json(P: Presheaf) -> dict:
    return {"sizes": list(P.sizes), "maps": [list(fn) for fn in P.maps]}


def functor_to_json(F: Functor) -> dict:
    return {"objects": list(F.object_map), "morphisms": list(F.morphism_map)}


def monoidal_from_json(d: dict, A: FinCat, caps: Caps) -> MonoidalCat:
    n, m = A.n_objects, A.n_morphisms
    objs, mors = d["tensor"]["objects"], d["tensor"]["morphisms"]
    if len(objs) != n or any(len(r) != n for r in objs):
        raise InputError(f"tensor objects must be a {n}x{n} matrix")
    if len(mors) != m or any(len(r) != m for r in mors):
        raise InputError(f"tensor morphisms must be a {m}x{m} matrix")
    AA = product(A, A, max_morphisms=caps.max_morphisms ** 2)
    T = functor_from_json({"objects": [x for r in objs for x in r],
                           "morphisms": [x for r in mors for x in r]}, AA, A, "tensor")
    return MonoidalCat(A, T, d["unit"])


def promonoidal_from_json(d: dict, A: FinCat, caps: Caps) -> Promonoidal:
    m = A.n_morphisms
    if m ** 3 > caps.max_morphisms ** 3:
        raise CapacityExceeded("promonoidal table is too large")
    Aop = opposite(A)
    big = product(product(A, Aop, max_morphisms=m ** 2), Aop, max_morphisms=m ** 3)
    M = presheaf_from_json({"sizes": d["sizes"], "maps": d["maps"]}, big, "promonoidal")
    unit = presheaf_from_json(d["unit"], A, "unit") if "unit" in d else None
    return Promonoidal.from_presheaf(A, M, unit)


def load_kripke(path: str, close: bool) -> KripkeFrame:
    d = load_json(path, schemas.KRIPKE_FRAME)
    return KripkeFrame(d["size"], d["leq"], close=close)


def load_ternary(path: str) -> TernaryFrame:
    d = load_json(path, schemas.TERNARY_FRAME)
    return TernaryFrame(d["size"], d["triples"])


def load_valuation(path: str) -> dict:
    return load_json(path, schemas.VALUATION)


def load_relation(path: str) -> SatisfactionRelation:
    d = load_json(path, schemas.RELATION)
    return SatisfactionRelation(d["models"], d["sentences"], d["matrix"])


# ---------------------------------------------------------------- output

def fmt_set(items) -> str:
    return "{" + ", ".join(str(x) for x in sorted(items)) + "}"


def formula_tree(f: Formula) -> dict:
    if isinstance(f, Var):
        return {"var": f.name}
    if isinstance(f, (Top, Bot)):
        return {"const": "top" if isinstance(f, Top) else "bot"}
    assert isinstance(f, Binary)
    return {"op": type(f).__name__, "left": formula_tree(f.left), "right": formula_tree(f.right)}


class Outcome:
    """What a command produced: an optional value plus zero or more check reports."""

    def __init__(self, value: Any = None, text: Optional[str] = None,
                 checks: Optional[list[Report]] = None, status: Optional[bool] = None):
        self.value = value
        self.text = text
        self.checks = checks or []
        self.status = status

    @property
    def ok(self) -> bool:
        if self.status is not None:
            return self.status
        return all(r.ok for r in self.checks)


def render(argv: list[str], out: Outcome, as_json: bool, elapsed: Optional[float]) -> str:
    if as_json:
        doc: dict[str, Any] = {
            "command": argv,
            "status": "pass" if out.ok else "fail",
            "checks": [r.to_dict() for r in out.checks],
        }
        if out.value is not None:
            doc["result"] = out.value
        if elapsed is not None:
            doc["timing_s"] = round(elapsed, 6)
        return json.dumps(doc, sort_keys=True)
    lines = []
    if out.text is not None:
        lines.append(out.text)
    for r in out.checks:
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.check}")
        for v in r.violations:
            lines.append("  counterexample: " + json.dumps(v, sort_keys=True))
    if out.checks and elapsed is not None:
        lines.append(f"time: {elapsed:.3f}s")
    return "\n".join(lines)


# ---------------------------------------------------------------- commands

def cmd_parse(args, caps):
    f = parse(args.formula, args.dialect)
    return Outcome({"text": to_text(f), "tree": formula_tree(f)}, to_text(f))


def cmd_eval_kripke(args, caps):
    fr = load_kripke(args.frame, args.close)
    v = load_valuation(args.valuation)
    s = kripke_force(fr, v, parse(args.formula, Dialect.PROP))
    return Outcome(sorted(s), fmt_set(s))


def cmd_eval_ternary(args, caps):
    fr = load_ternary(args.frame)
    v = load_valuation(args.valuation)
    s = eval_lambek(fr, v, parse(args.formula, Dialect.FULL))
    return Outcome(sorted(s), fmt_set(s))


def cmd_check_frame(args, caps):
    d = load_json(args.frame, schemas.FRAME)
    rep = Report("frame")
    try:
        if "leq" in d:
            jsonschema.validate(d, schemas.KRIPKE_FRAME)
            fr = KripkeFrame(d["size"], d["leq"], close=args.close)
            rep.details = {"kind": "kripke", "size": fr.size, "pairs": len(fr.leq)}
        else:
            jsonschema.validate(d, schemas.TERNARY_FRAME)
            fr = TernaryFrame(d["size"], d["triples"])
            rep.details = {"kind": "ternary", "size": fr.size, "triples": len(fr.triples)}
    except jsonschema.ValidationError as e:
        raise InputError(f"{args.frame}: {e.message}") from None
    except InvalidFrame as e:
        rep.add("invalid_frame", reason=str(e))
    return Outcome(checks=[rep])


def cmd_residuation(args, caps):
    fr = load_ternary(args.frame)
    return Outcome(checks=[check_residuation(fr, args.max_size)])


def cmd_kripke_equivalence(args, caps):
    fr = load_kripke(args.frame, args.close)
    v = load_valuation(args.valuation)
    return Outcome(checks=[check_kripke_equivalence(fr, v, parse(args.formula, Dialect.PROP))])


def cmd_consequence(args, caps):
    rel = load_relation(args.relation)
    gamma = args.premise or []
    if args.conclusion is None:
        cn = closure(rel, gamma)
        return Outcome(sorted(cn), fmt_set(cn))
    holds = consequence(rel, gamma, args.conclusion)
    return Outcome(holds, "true" if holds else "false")


def cmd_kleisli(args, caps):
    rel = load_relation(args.relation)
    order = kleisli(rel)
    lines = [f"{phi} |= {fmt_set(psi for psi in rel.sentences if order.holds(phi, psi))}"
             for phi in rel.sentences]
    value = {phi: [psi for psi in rel.sentences if order.holds(phi, psi)] for phi in rel.sentences}
    return Outcome(value, "\n".join(lines), [check_extension_compatibility(rel)])


def _day_input(args, caps):
    d = load_json(args.input, schemas.DAY)
    A = fincat_from_json(d["category"], caps)
    mc = None
    if "monoidal" in d:
        mc = monoidal_from_json(d["monoidal"], A, caps)
        P = promonoidal_from_monoidal(mc)
    else:
        P = promonoidal_from_json(d["promonoidal"], A, caps)
    return d, A, mc, P


def _need(d, key, A):
    if key not in d:
        raise InputError(f"input needs a presheaf {key!r}")
    return presheaf_from_json(d[key], A, key)


def cmd_day_tensor(args, caps):
    d, A, _, P = _day_input(args, caps)
    T = day_tensor(P, _need(d, "F", A), _need(d, "G", A), caps)
    return Outcome(presheaf_to_json(T), json.dumps(presheaf_to_json(T), sort_keys=True))


def cmd_day_exponent(args, caps):
    d, A, _, P = _day_input(args, caps)
    op = day_left_exponent if args.side == "left" else day_right_exponent
    E = op(P, _need(d, "F", A), _need(d, "G", A), caps)
    return Outcome(presheaf_to_json(E), json.dumps(presheaf_to_json(E), sort_keys=True))


def cmd_day_units(args, caps):
    d, A, _, P = _day_input(args, caps)
    if P.unit is None:
        raise InputError("promonoidal structure has no unit")
    if "presheaves" in d:
        Fs = [presheaf_from_json(x, A, f"presheaves[{i}]") for i, x in enumerate(d["presheaves"])]
    else:
        Fs = [representable(A, X) for X in A.objects]
    checks = []
    for i, F in enumerate(Fs):
        rep = check_unit_laws(P, F, caps)
        rep.check = f"unit_laws[{i}]"
        checks.append(rep)
    return Outcome(checks=checks)


def cmd_day_yoneda(args, caps):
    d, A, mc, P = _day_input(args, caps)
    if mc is None:
        raise InputError("Yoneda monoidality needs a monoidal structure")
    return Outcome(checks=[check_yoneda_monoidality(mc, caps)])


def cmd_day_closed(args, caps):
    d, A, _, P = _day_input(args, caps)
    H, F, G = (_need(d, k, A) for k in ("H", "F", "G"))
    return Outcome(checks=[check_closedness(P, H, F, G, caps)])


def cmd_day_indexed(args, caps):
    d, A, mc, P = _day_input(args, caps)
    if mc is None:
        raise InputError("indexed convolution needs a monoidal structure")
    K = d.get("K", 0)
    Fs = [presheaf_from_json(x, A, f"Fs[{i}]") for i, x in enumerate(d.get("Fs", []))]
    Gs = [presheaf_from_json(x, A, f"Gs[{i}]") for i, x in enumerate(d.get("Gs", []))]
    if len(Fs) != K or len(Gs) != K:
        raise InputError(f"need {K} presheaves in both Fs and Gs")
    return Outcome(checks=[indexed_convolution_check(mc, K, Fs, Gs, caps)])


def cmd_kan_triangle(args, caps):
    d = load_json(args.input, schemas.KAN_TRIANGLE)
    A = fincat_from_json(d["A"], caps, "A")
    Abar = fincat_from_json(d["Abar"], caps, "Abar")
    B = fincat_from_json(d["B"], caps, "B")
    Y = functor_from_json(d["Y"], A, Abar, "Y")
    F = functor_from_json(d["F"], A, B, "F")
    G = functor_from_json(d["G"], B, Abar, "G")
    if len(d["eta"]) != A.n_objects:
        raise InputError(f"eta needs {A.n_objects} components")
    t = YonedaTriangleData(Y, F, G, tuple(d["eta"]))
    return Outcome(checks=[check_yoneda_triangle(t, caps)])


def cmd_kan_adjunction(args, caps):
    d = load_json(args.input, schemas.KAN_ADJUNCTION)
    A = fincat_from_json(d["A"], caps, "A")
    B = fincat_from_json(d["B"], caps, "B")
    f = functor_from_json(d["f"], A, B, "f")
    g = functor_from_json(d["g"], B, A, "g")
    if len(d["unit"]) != A.n_objects or len(d["counit"]) != B.n_objects:
        raise InputError("unit needs one component per object of A, counit per object of B")
    unit = NatTransformation(identity_functor(A), compose_functors(g, f), tuple(d["unit"]))
    counit = NatTransformation(compose_functors(f, g), identity_functor(B), tuple(d["counit"]))
    return Outcome(checks=[check_adjunction(AdjunctionData(f, g, unit, counit))])


def cmd_kan_find(args, caps):
    d = load_json(args.input, schemas.KAN_FUNCTOR)
    A = fincat_from_json(d["A"], caps, "A")
    B = fincat_from_json(d["B"], caps, "B")
    f = functor_from_json(d["f"], A, B, "f")
    adj = adjoint_oracle(f, caps)
    if adj is None:
        return Outcome(None, "no right adjoint", status=False)
    value = {"g": functor_to_json(adj.g), "unit": list(adj.unit.components),
             "counit": list(adj.counit.components)}
    return Outcome(value, json.dumps(value, sort_keys=True), status=True)


def cmd_cat_validate(args, caps):
    d = load_json(args.category, schemas.FINCAT)
    try:
        C = FinCat.from_lists(d["objects"], [(m["dom"], m["cod"]) for m in d["morphisms"]],
                              d["identities"], d["compose"])
    except MalformedTable as e:
        rep = Report("category")
        rep.add("malformed", reason=str(e))
        return Outcome(checks=[rep])
    if C.n_morphisms > caps.max_morphisms:
        raise CapacityExceeded(f"category has {C.n_morphisms} morphisms, cap is {caps.max_morphisms}")
    return Outcome(checks=[validate_category(C)])


def _bifunctor_input(args, caps):
    d = load_json(args.input, schemas.BIFUNCTOR)
    D = fincat_from_json(d["category"], caps)
    m = D.n_morphisms
    DD = product(D, opposite(D), max_morphisms=max(caps.max_morphisms, m * m))
    P = presheaf_from_json(d["bifunctor"], DD, "bifunctor")
    return Bifunctor.from_presheaf(D, P)


def cmd_cat_coend(args, caps):
    c = coend(_bifunctor_input(args, caps), caps)
    value = {"size": len(c), "classes": [[list(x) for x in cls] for cls in c.classes]}
    return Outcome(value, json.dumps(value, sort_keys=True))


def cmd_cat_end(args, caps):
    e = end(_bifunctor_input(args, caps), caps)
    value = {"size": len(e), "families": [list(f) for f in e.families]}
    return Outcome(value, json.dumps(value, sort_keys=True))


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a structured JSON report")
    common.add_argument("--no-timing", action="store_true", help="omit timing from the report")
    common.add_argument("--max-morphisms", type=int, default=Caps.max_morphisms)
    common.add_argument("--max-enum", type=int, default=Caps.max_enum)

    parser = argparse.ArgumentParser(prog="freesem",
                                     description="Finite-model checks for convolution semantics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(subparsers, name, fn, help_text):
        # flags live on the leaf commands only, so nested defaults cannot clobber them
        p = subparsers.add_parser(name, parents=[common] if fn else [], help=help_text)
        if fn:
            p.set_defaults(handler=fn)
        return p

    p = add(sub, "parse", cmd_parse, "parse and pretty-print a formula")
    p.add_argument("formula")
    p.add_argument("--dialect", choices=[d.value for d in Dialect], default="full")

    p = add(sub, "eval-kripke", cmd_eval_kripke, "worlds forcing a formula")
    p.add_argument("--frame", required=True)
    p.add_argument("--valuation", required=True)
    p.add_argument("--close", action="store_true", help="close leq reflexively and transitively")
    p.add_argument("formula")

    p = add(sub, "eval-ternary", cmd_eval_ternary, "powerset value of a formula on a ternary frame")
    p.add_argument("--frame", required=True)
    p.add_argument("--valuation", required=True)
    p.add_argument("formula")

    p = add(sub, "check-frame", cmd_check_frame, "validate a Kripke or ternary frame")
    p.add_argument("--frame", required=True)
    p.add_argument("--close", action="store_true")

    laws = add(sub, "laws", None, "algebraic law checks")
    lsub = laws.add_subparsers(dest="law", required=True)
    p = add(lsub, "residuation", cmd_residuation, "residuation over all subset triples")
    p.add_argument("--frame", required=True)
    p.add_argument("--max-size", type=int, default=4)

    p = add(sub, "kripke-equivalence", cmd_kripke_equivalence,
            "compare Kripke forcing with the derived ternary semantics")
    p.add_argument("--frame", required=True)
    p.add_argument("--valuation", required=True)
    p.add_argument("--close", action="store_true")
    p.add_argument("formula")

    p = add(sub, "consequence", cmd_consequence, "semantic consequence, or the closure of the premises")
    p.add_argument("--relation", required=True)
    p.add_argument("--premise", action="append")
    p.add_argument("conclusion", nargs="?")

    p = add(sub, "kleisli", cmd_kleisli, "consequence preorder and compatibility")
    p.add_argument("--relation", required=True)

    day = add(sub, "day", None, "Day convolution")
    dsub = day.add_subparsers(dest="day_command", required=True)
    for name, fn, text in (("tensor", cmd_day_tensor, "convolution F ⊗ G"),
                           ("exponent", cmd_day_exponent, "exponent F ⊸ G"),
                           ("check-units", cmd_day_units, "unit laws"),
                           ("check-yoneda", cmd_day_yoneda, "Yoneda embedding is monoidal"),
                           ("check-closed", cmd_day_closed, "closedness with verified transposition"),
                           ("indexed-check", cmd_day_indexed, "indexed against pointwise convolution")):
        p = add(dsub, name, fn, text)
        p.add_argument("--input", required=True)
        if name == "exponent":
            p.add_argument("--side", choices=["left", "right"], default="left")

    kan = add(sub, "kan", None, "Yoneda triangles and adjunctions")
    ksub = kan.add_subparsers(dest="kan_command", required=True)
    for name, fn, text in (("check-triangle", cmd_kan_triangle, "check a Yoneda triangle"),
                           ("check-adjunction", cmd_kan_adjunction, "check an adjunction"),
                           ("find-adjoint", cmd_kan_find, "search for a right adjoint")):
        p = add(ksub, name, fn, text)
        p.add_argument("--input", required=True)

    cat = add(sub, "cat", None, "finite categories")
    csub = cat.add_subparsers(dest="cat_command", required=True)
    p = add(csub, "validate", cmd_cat_validate, "check the category laws")
    p.add_argument("--category", required=True)
    for name, fn, text in (("coend", cmd_cat_coend, "coend of a bifunctor"),
                           ("end", cmd_cat_end, "end of a bifunctor")):
        p = add(csub, name, fn, text)
        p.add_argument("--input", required=True)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    caps = Caps(args.max_morphisms, args.max_enum)
    start = time.perf_counter()
    try:
        out = args.handler(args, caps)
    except CapacityExceeded as e:
        print(f"freesem: capacity exceeded: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except FormulaSyntaxError as e:
        print(f"freesem: syntax error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, DialectError, MalformedTable, InvalidFrame, ValuationNotUpClosed,
            UnknownName, ValueError) as e:
        print(f"freesem: invalid input: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InternalLawViolation as e:
        print(f"freesem: internal law violated: {e}", file=sys.stderr)
        return EXIT_FAIL
    elapsed = None if args.no_timing else time.perf_counter() - start
    print(render(argv, out, args.json, elapsed))
    return EXIT_PASS if out.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``python3 -m arrmod <verb> [inputs] [flags]``.

Every verb reads JSON documents (file paths, ``-`` or standard input) and
writes one JSON document to standard output.  Exit codes: 0 success, 1 a
"none"/"unknown" verdict, 2 bad input, 3 internal contradiction.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import families
from .combinatorics import (
    Arrangement,
    Combinatorics,
    LineOrder,
    are_equivalent,
    classify_pencil,
    combinatorics_of,
    naive_dimension,
    type_of,
    validate,
)
from .errors import (
    ArrmodError,
    CapExceeded,
    ConvergenceFailure,
    InternalContradiction,
    NotARealization,
    UnsafeSeparation,
    Unsupported,
)
from .order_search import find_ic_order, find_rigid_order, valence_reduction
from .parametrization import (
    best_tower,
    build,
    count_components,
    realization_check,
    upper_bound,
)
from .perturbation import find_m_perturbation, iter_minimal_perturbations, kappa
from .structure import c3_simple_type, c_class, is_nice, rigid_pencil_form

OK, NONE, INPUT, CONTRADICTION = 0, 1, 2, 3

# verdicts that mean "we could not decide" rather than "the input is wrong"
UNKNOWN_ERRORS = (CapExceeded, Unsupported, ConvergenceFailure, UnsafeSeparation)


class InputError(Exception):
    pass


class Verdict(Exception):
    """Raised by a verb to emit ``payload`` with exit code 1."""

    def __init__(self, payload: dict):
        super().__init__(payload)
        self.payload = payload


# ---------------------------------------------------------------------------
# input


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def load_document(path: str | None) -> dict:
    text = _read(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        where = path or "<stdin>"
        raise InputError(f"{where}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InputError("expected a JSON object")
    return doc


def arrangement_of(doc: dict) -> Arrangement | None:
    if "lines" not in doc:
        return None
    try:
        return Arrangement.from_json(doc)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad arrangement: {exc}") from exc


def combinatorics_from(doc: dict) -> Combinatorics:
    """Use the stored points when present, else compute them from the lines."""
    if "points" in doc:
        if "n" in doc:
            n = doc["n"]
        elif "lines" in doc:
            n = len(doc["lines"])
        else:
            raise InputError("a point list needs the line count 'n'")
        try:
            return Combinatorics.from_points(int(n), doc["points"])
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad point list: {exc}") from exc
    A = arrangement_of(doc)
    if A is None:
        raise InputError("document has neither 'points' nor 'lines'")
    return combinatorics_of(A)


def parse_order(text: str | None, n: int) -> LineOrder:
    if text is None:
        return LineOrder.identity(n)
    try:
        seq = tuple(int(x) for x in text.split(","))
        order = LineOrder(seq)
    except ValueError as exc:
        raise InputError(f"bad --order {text!r}: {exc}") from exc
    if len(seq) != n:
        raise InputError(f"--order has {len(seq)} entries, expected {n}")
    return order


def parse_values(text: str) -> list:
    out = []
    for item in text.split(","):
        item = item.strip()
        try:
            out.append(Fraction(item))
        except ValueError:
            try:
                out.append(complex(item.replace("i", "j")))
            except ValueError as exc:
                raise InputError(f"bad parameter value {item!r}") from exc
    return out


def _none(result: str = "none", **extra) -> Verdict:
    return Verdict({"result": result, **extra})


# ---------------------------------------------------------------------------
# verbs


def _one(args) -> Combinatorics:
    if len(args.inputs) > 1:
        raise InputError(f"'{args.verb}' takes one input")
    return combinatorics_from(load_document(args.inputs[0] if args.inputs else None))


def cmd_validate(args):
    doc = load_document(args.inputs[0] if args.inputs else None)
    if "points" in doc and "n" in doc:
        try:
            problems = validate(int(doc["n"]), doc["points"])
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad point list: {exc}") from exc
    else:
        combinatorics_from(doc)
        problems = []
    if problems:
        raise Verdict({"ok": False, "violations": problems})
    return {"ok": True}


def cmd_type(args):
    C = _one(args)
    order = parse_order(args.order, C.n)
    return {"order": list(order.sequence), "tau": list(type_of(C, order))}


def cmd_naive(args):
    return {"naive_dimension": naive_dimension(_one(args))}


def cmd_classify(args):
    return {"class": classify_pencil(_one(args))}


def _certificate(cert):
    if cert is None:
        raise _none()
    return cert.to_json()


def cmd_ic(args):
    return _certificate(find_ic_order(_one(args)))


def cmd_rigid(args):
    return _certificate(find_rigid_order(_one(args)))


def cmd_reduce(args):
    return _certificate(valence_reduction(_one(args)))


def cmd_cclass(args):
    k, witness = c_class(_one(args))
    return {"k": k, "witness": list(witness)}


def cmd_c3simple(args):
    found = c3_simple_type(_one(args))
    if found is None:
        raise _none()
    case, witness = found
    return {"case": case, "witness": list(witness)}


def cmd_rigidpencil(args):
    found = rigid_pencil_form(_one(args), args.max_sub)
    if found is None:
        raise _none("unknown", semi_decision=True, max_sub=args.max_sub)
    return found.to_json()


def cmd_nice(args):
    centres = is_nice(_one(args), args.cap)
    if centres is None:
        raise _none()
    return {"centres": [list(p) for p in centres]}


def cmd_perturb(args):
    C = _one(args)
    if args.all:
        towers = list(iter_minimal_perturbations(C, args.max_m))
        if not towers:
            raise _none(max_m=args.max_m)
        return {"towers": [t.to_json() for t in towers]}
    tower = find_m_perturbation(C, args.max_m)
    if tower is None:
        raise _none(max_m=args.max_m)
    return tower.to_json()


def cmd_kappa(args):
    return {"kappa": kappa(_one(args), args.cap)}


def _tower(C: Combinatorics, args):
    tower = find_m_perturbation(C, args.max_m) if args.first else best_tower(C, args.max_m)
    if tower is None:
        raise _none(max_m=args.max_m)
    return tower


def cmd_parametrize(args):
    param = build(_tower(_one(args), args))
    return {"m": param.m, **param.to_json()}


def cmd_bound(args):
    tower = _tower(_one(args), args)
    return {"upper_bound": upper_bound(tower), "m": tower.m}


def cmd_components(args):
    param = build(_tower(_one(args), args))
    return {"count": count_components(param)}


def cmd_check(args):
    """Realization check at ``--values``, or arrangement-vs-points consistency."""
    doc = load_document(args.inputs[0] if args.inputs else None)
    C = combinatorics_from(doc)
    if args.values is not None:
        param = build(_tower(C, args))
        try:
            A = realization_check(param, parse_values(args.values))
        except NotARealization as exc:
            raise Verdict({"ok": False, "reason": str(exc)}) from exc
        return {"ok": True, **A.to_json()}
    A = arrangement_of(doc)
    if A is None or "points" not in doc:
        raise InputError("check needs --values, or a document with both 'lines' and 'points'")
    actual = combinatorics_of(A)
    if actual != C:
        raise Verdict({"ok": False, "actual": actual.to_json()})
    return {"ok": True}


def cmd_equiv(args):
    if len(args.inputs) != 2:
        raise InputError("equiv takes two inputs")
    C, D = (combinatorics_from(load_document(p)) for p in args.inputs)
    mapping = are_equivalent(C, D)
    if mapping is None:
        raise _none()
    return {"bijection": {str(k): v for k, v in sorted(mapping.items())}}


def cmd_gen(args):
    if args.inputs:
        raise InputError("gen takes no inputs")
    family = args.family
    if family in ("pencil", "near-pencil"):
        n = args.n if args.n is not None else 4
        C = families.pencil(n) if family == "pencil" else families.near_pencil(n)
        return C.to_json()
    if family not in families.GENERATORS:
        raise InputError(f"unknown family {family!r}")
    kwargs = {}
    if args.p is not None:
        kwargs["p"] = args.p
    if args.zeta is not None:
        kwargs["zeta"] = args.zeta
    if args.n is not None:
        kwargs["n"] = args.n
    A, C = families.GENERATORS[family](**kwargs)
    return {**C.to_json(), **A.to_json()}


VERBS = {
    "validate": cmd_validate,
    "type": cmd_type,
    "naive": cmd_naive,
    "classify": cmd_classify,
    "ic": cmd_ic,
    "rigid": cmd_rigid,
    "reduce": cmd_reduce,
    "cclass": cmd_cclass,
    "c3simple": cmd_c3simple,
    "rigidpencil": cmd_rigidpencil,
    "nice": cmd_nice,
    "perturb": cmd_perturb,
    "kappa": cmd_kappa,
    "parametrize": cmd_parametrize,
    "bound": cmd_bound,
    "components": cmd_components,
    "check": cmd_check,
    "gen": cmd_gen,
    "equiv": cmd_equiv,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arrmod", description=__doc__.splitlines()[0])
    parser.add_argument("verb", choices=sorted(VERBS))
    parser.add_argument("family", nargs="?", help="family name for 'gen'")
    parser.add_argument("inputs", nargs="*", help="JSON files; '-' or nothing reads stdin")
    parser.add_argument("--emit", choices=("pretty", "compact"), default="compact")
    parser.add_argument("--order", help="comma-separated line order (default: index order)")
    parser.add_argument("--p", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--zeta", type=int)
    parser.add_argument("--max-m", type=int, default=3)
    parser.add_argument("--cap", type=int, default=None)
    parser.add_argument("--max-sub", type=int, default=8)
    parser.add_argument("--all", action="store_true", help="perturb: every minimal tower")
    parser.add_argument("--first", action="store_true", help="use the first BFS tower as is")
    parser.add_argument("--values", help="check: comma-separated parameter values")
    return parser


def _emit(payload: dict, style: str) -> None:
    if style == "pretty":
        text = json.dumps(payload, indent=2)
    else:
        text = json.dumps(payload)
    sys.stdout.write(text + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    # the optional family slot swallows the first input of every other verb
    if args.verb != "gen" and args.family is not None:
        args.inputs = [args.family, *args.inputs]
        args.family = None
    if args.verb == "gen" and args.family is None:
        _emit({"error": "gen needs a family name"}, args.emit)
        return INPUT
    if args.cap is None:
        args.cap = {"kappa": 3, "nice": 16}.get(args.verb, 3)
    try:
        payload = VERBS[args.verb](args)
        code = OK
    except Verdict as v:
        payload, code = v.payload, NONE
    except InputError as exc:
        payload, code = {"error": str(exc), "kind": "input"}, INPUT
    except InternalContradiction as exc:
        payload, code = {"error": str(exc), "kind": "InternalContradiction"}, CONTRADICTION
    except UNKNOWN_ERRORS as exc:
        payload, code = {"result": "unknown", "reason": str(exc), "kind": type(exc).__name__}, NONE
    except ArrmodError as exc:
        payload, code = {"error": str(exc), "kind": type(exc).__name__}, INPUT
    _emit(payload, args.emit)
    return code


if __name__ == "__main__":
    sys.exit(main())

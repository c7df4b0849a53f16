"""Command line front end: validate, gen, functor, check, unify.

Exit codes are uniform across subcommands: 0 success, 1 the requested check
found failures (or an inconclusive search), 2 usage or input errors.  All
files are the canonical JSON documents from the serialize module, so every
output is byte-stable and replayable.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .algebra import FiniteAlgebra, Signature, validate
from .frames import (
    enumerate_posets,
    enumerate_preorders,
    heyting_dual,
    interior_dual,
)
from .functors import boolean_extension, open_algebra, star_algebra
from .harness import ALL_SUITES
from .serialize import (
    DocumentError,
    algebra_from_document,
    algebra_to_document,
    dumps,
    loads,
    preorder_to_document,
)
from .unify import SearchBound, algebra_type
from .varieties import BudgetExceeded, variety_of

OK, FOUND, USAGE = 0, 1, 2


def _read_doc(path: str) -> dict:
    try:
        return loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, DocumentError) as e:
        raise SystemExit(_usage_error(f"cannot read {path}: {e}"))


def _read_algebra(path: str) -> FiniteAlgebra:
    try:
        return algebra_from_document(_read_doc(path))
    except DocumentError as e:
        raise SystemExit(_usage_error(f"{path}: {e}"))


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return USAGE


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


# --- validate -----------------------------------------------------------------


def cmd_validate(args) -> int:
    doc = _read_doc(args.path)
    try:
        a = algebra_from_document(doc)
    except DocumentError as e:
        return _usage_error(f"{args.path}: {e}")
    bad = validate(a)
    for msg in bad:
        print(msg)
    if not bad:
        print(f"ok: {a.signature.value} algebra with {a.size} elements")
    return FOUND if bad else OK


# --- gen ----------------------------------------------------------------------


def _gen_documents(kind: str, max_size: int):
    """Yield (size, index_within_size, document) in enumeration order."""
    if kind in ("posets", "heyting"):
        frames = enumerate_posets(max_size)
    elif kind in ("preorders", "interior"):
        frames = enumerate_preorders(max_size)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    counters: dict[int, int] = {}
    for p in frames:
        i = counters.get(p.size, 0)
        counters[p.size] = i + 1
        if kind == "posets" or kind == "preorders":
            doc = preorder_to_document(p)
        elif kind == "heyting":
            doc = algebra_to_document(heyting_dual(p))
        else:
            doc = algebra_to_document(interior_dual(p))
        yield p.size, i, doc


def cmd_gen(args) -> int:
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        n = 0
        for size, i, doc in _gen_documents(args.kind, args.max_size):
            _write(out / f"{args.kind}_{size}_{i}.json", dumps(doc))
            n += 1
    except ValueError as e:
        return _usage_error(str(e))
    except OSError as e:
        return _usage_error(f"cannot write under {args.out}: {e}")
    print(f"wrote {n} files to {out}")
    return OK


# --- functor ------------------------------------------------------------------


def _sidecar_path(out: Path) -> Path:
    if out.suffix == ".json":
        return out.with_suffix(".map.json")
    return out.with_name(out.name + ".map.json")


def cmd_functor(args) -> int:
    a = _read_algebra(args.input)
    which = args.which
    if which == "O":
        if a.signature is not Signature.INTERIOR:
            return _usage_error("O needs an interior algebra document")
        oa = open_algebra(a)
        result = oa.heyting
        mapping_doc = {
            "kind": "mapping",
            "functor": "O",
            "open_indices": list(oa.open_indices),
        }
    elif which == "B":
        if a.signature is not Signature.HEYTING:
            return _usage_error("B needs a heyting algebra document")
        ext = boolean_extension(a)
        result = ext.extension
        mapping_doc = {
            "kind": "mapping",
            "functor": "B",
            "eta": list(ext.eta),
            "irreducibles": list(ext.irreducibles),
        }
    else:
        if a.signature is not Signature.INTERIOR:
            return _usage_error("star needs an interior algebra document")
        sa = star_algebra(a)
        result = sa.star
        mapping_doc = {
            "kind": "mapping",
            "functor": "star",
            "embedding": list(sa.embedding.mapping),
        }
    out = Path(args.out)
    try:
        _write(out, dumps(algebra_to_document(result)))
        _write(_sidecar_path(out), dumps(mapping_doc))
    except OSError as e:
        return _usage_error(f"cannot write {args.out}: {e}")
    print(f"{which}: {a.size} -> {result.size} elements; map in {_sidecar_path(out)}")
    return OK


# --- check ---------------------------------------------------------------------


_SUITE_FLAGS = {
    "roundtrips": ("max_poset", "max_preorder", "jobs"),
    "star": ("max_preorder", "hom_max_preorder", "jobs"),
    "grz": ("max_preorder", "literal_oracle", "jobs"),
    "fullness": ("max_poset", "jobs"),
    "unification": ("bound", "max_poset", "jobs"),
    "projectivity": ("max_poset", "max_instance_preorder", "jobs"),
}


def cmd_check(args) -> int:
    if args.suite not in ALL_SUITES:
        return _usage_error(
            f"unknown suite {args.suite!r}; choose from {', '.join(ALL_SUITES)}"
        )
    kwargs = {}
    for flag in _SUITE_FLAGS[args.suite]:
        if flag == "bound":
            kwargs["bound"] = SearchBound(args.max_generators, args.max_target_size)
        else:
            v = getattr(args, flag)
            if v is not None:
                kwargs[flag] = v
    report = ALL_SUITES[args.suite](**kwargs)

    doc = report.to_document()
    if args.report:
        rp = Path(args.report)
        stem = rp.name[: -len(".json")] if rp.name.endswith(".json") else rp.name
        slim_failures = []
        counter = 0
        try:
            for f in doc["failures"]:
                files = []
                for w in f["witnesses"]:
                    wp = rp.with_name(f"{stem}.witness-{counter}.json")
                    _write(wp, dumps(w))
                    files.append(wp.name)
                    counter += 1
                slim_failures.append({"case": f["case"], "witness_files": files})
            doc["failures"] = slim_failures
            _write(rp, dumps(doc))
        except OSError as e:
            return _usage_error(f"cannot write {args.report}: {e}")
    print(
        f"suite={report.suite} cases={report.cases} "
        f"failures={len(report.failures)} skips={len(report.skips)}"
    )
    for f in report.failures:
        print(f"FAIL {f.case}")
    for s in report.skips:
        print(f"SKIP {s.case}: {s.reason}")
    return FOUND if report.failures else OK


# --- unify --------------------------------------------------------------------


def cmd_unify(args) -> int:
    a = _read_algebra(args.algebra)
    gens = [_read_algebra(p) for p in args.variety]
    try:
        v = variety_of(*gens)
        bound = SearchBound(args.max_generators, args.max_target_size)
        out = algebra_type(a, v, bound)
    except (ValueError, BudgetExceeded) as e:
        return _usage_error(str(e))

    us = out.unifier_set
    doc: dict[str, object] = {
        "algebra": algebra_to_document(a),
        "variety": [algebra_to_document(g) for g in gens],
        "bound": {
            "max_generators": bound.max_generators,
            "max_target_size": bound.max_target_size,
        },
        "unifiers": [],
        "ge": [],
        "mu": [],
        "verdict": out.label(),
        "complete": bool(us.complete) if us is not None else True,
        "note": out.note,
    }
    if us is not None:
        mu = set(us.mu_indices()) if us.unifiers else set()
        doc["unifiers"] = [
            {
                "mapping": list(un.u.mapping),
                "target": algebra_to_document(un.target),
                "presentation": un.presentation_of_target.describe(),
                "in_mu": i in mu,
            }
            for i, un in enumerate(us.unifiers)
        ]
        doc["ge"] = [[1 if v2 else 0 for v2 in row] for row in us.order.ge]
        doc["mu"] = sorted(mu)
        if us.skipped:
            doc["note"] = "; ".join(us.skipped)
    if args.report:
        try:
            _write(Path(args.report), dumps(doc))
        except OSError as e:
            return _usage_error(f"cannot write {args.report}: {e}")
    print(f"verdict: {out.label()}; unifiers: {len(doc['unifiers'])}; mu: {doc['mu']}")
    return FOUND if out.kind == "inconclusive-at-bound" else OK


# --- entry ----------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="finalg",
        description="Finite Heyting/interior algebra workbench",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a single algebra document")
    p.add_argument("path")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("gen", help="write a canonical corpus of documents")
    p.add_argument("kind", choices=["posets", "preorders", "heyting", "interior"])
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("functor", help="apply O, B, or star to a document")
    p.add_argument("which", choices=["O", "B", "star"])
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_functor)

    p = sub.add_parser("check", help="run a verification suite")
    p.add_argument("suite")
    p.add_argument("--max-poset", type=int, default=None)
    p.add_argument("--max-preorder", type=int, default=None)
    p.add_argument("--hom-max-preorder", type=int, default=None)
    p.add_argument("--max-instance-preorder", type=int, default=None)
    p.add_argument("--literal-oracle", action="store_true", default=None)
    p.add_argument("--max-generators", type=int, default=2)
    p.add_argument("--max-target-size", type=int, default=4)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--report", default=None)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("unify", help="bounded unifier search for one algebra")
    p.add_argument("--algebra", required=True)
    p.add_argument("--variety", required=True, nargs="+")
    p.add_argument("--max-generators", "--bound", dest="max_generators",
                   type=int, default=2)
    p.add_argument("--max-target-size", type=int, default=4)
    p.add_argument("--report", default=None)
    p.set_defaults(fn=cmd_unify)

    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else OK
    try:
        return args.fn(args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE


if __name__ == "__main__":
    sys.exit(main())

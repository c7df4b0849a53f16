"""Bit-exact JSON documents for algebras, frames, and homomorphisms.

Documents use fixed key order, two-space indentation, UTF-8, and a trailing
newline, so serializing a deserialized canonical file reproduces it byte for
byte.  Tables are dense row-major integer arrays; the interior operator is
stored under the key "g".
"""

from __future__ import annotations

import json
from typing import Optional

import numpy as np

from .algebra import FiniteAlgebra, Homomorphism, Signature
from .frames import Preorder, preorder_from_matrix

__all__ = [
    "DocumentError",
    "dumps",
    "loads",
    "algebra_to_document",
    "algebra_from_document",
    "preorder_to_document",
    "preorder_from_document",
    "hom_to_document",
    "hom_from_document",
]


class DocumentError(ValueError):
    """The file is not a well-formed document of the expected shape."""


def dumps(doc: dict) -> str:
    """Canonical text: 2-space indent, no ASCII escaping, trailing newline."""
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise DocumentError("top level of a document must be an object")
    return doc


_SIGNATURE_OF_KIND = {s.value: s for s in Signature}


def algebra_to_document(a: FiniteAlgebra) -> dict:
    ops: dict[str, object] = {
        "join": a.join.tolist(),
        "meet": a.meet.tolist(),
    }
    if a.signature.has_imp:
        ops["imp"] = a.imp.tolist()
    if a.signature.has_compl:
        ops["compl"] = a.compl.tolist()
    if a.signature.has_interior:
        ops["g"] = a.interior.tolist()
    doc: dict[str, object] = {
        "kind": a.signature.value,
        "size": a.size,
        "bot": a.bot,
        "top": a.top,
        "ops": ops,
    }
    if a.names is not None:
        doc["names"] = list(a.names)
    return doc


def _int_matrix(obj, n: int, what: str) -> np.ndarray:
    if (
        not isinstance(obj, list)
        or len(obj) != n
        or any(not isinstance(r, list) or len(r) != n for r in obj)
    ):
        raise DocumentError(f"{what} must be a {n}x{n} array")
    arr = np.asarray(obj, dtype=np.int16)
    if arr.min(initial=0) < 0 or arr.max(initial=0) >= n:
        raise DocumentError(f"{what} entries must be element indices")
    return arr


def _int_vector(obj, n: int, what: str) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != n:
        raise DocumentError(f"{what} must be an array of length {n}")
    arr = np.asarray(obj, dtype=np.int16)
    if arr.min(initial=0) < 0 or arr.max(initial=0) >= n:
        raise DocumentError(f"{what} entries must be element indices")
    return arr


def algebra_from_document(doc: dict) -> FiniteAlgebra:
    kind = doc.get("kind")
    if kind not in _SIGNATURE_OF_KIND:
        raise DocumentError(f"unknown algebra kind {kind!r}")
    sig = _SIGNATURE_OF_KIND[kind]
    n = doc.get("size")
    if not isinstance(n, int) or n < 1:
        raise DocumentError("size must be a positive integer")
    for key in ("bot", "top"):
        v = doc.get(key)
        if not isinstance(v, int) or not 0 <= v < n:
            raise DocumentError(f"{key} must be an element index")
    ops = doc.get("ops")
    if not isinstance(ops, dict):
        raise DocumentError("ops must be an object")
    expected = {"join", "meet"}
    if sig.has_imp:
        expected.add("imp")
    if sig.has_compl:
        expected.add("compl")
    if sig.has_interior:
        expected.add("g")
    if set(ops) != expected:
        raise DocumentError(
            f"a {kind} document needs exactly the ops {sorted(expected)}, "
            f"got {sorted(ops)}"
        )
    names: Optional[tuple[str, ...]] = None
    if "names" in doc:
        raw = doc["names"]
        if (
            not isinstance(raw, list)
            or len(raw) != n
            or any(not isinstance(s, str) for s in raw)
        ):
            raise DocumentError(f"names must be {n} strings")
        names = tuple(raw)
    return FiniteAlgebra(
        signature=sig,
        size=n,
        join=_int_matrix(ops["join"], n, "join"),
        meet=_int_matrix(ops["meet"], n, "meet"),
        imp=_int_matrix(ops["imp"], n, "imp") if sig.has_imp else None,
        compl=_int_vector(ops["compl"], n, "compl") if sig.has_compl else None,
        interior=_int_vector(ops["g"], n, "g") if sig.has_interior else None,
        bot=doc["bot"],
        top=doc["top"],
        names=names,
    )


def preorder_to_document(p: Preorder) -> dict:
    return {
        "kind": "poset" if p.is_poset else "preorder",
        "size": p.size,
        "le": [[1 if v else 0 for v in row] for row in p.le],
    }


def preorder_from_document(doc: dict) -> Preorder:
    kind = doc.get("kind")
    if kind not in ("poset", "preorder"):
        raise DocumentError(f"unknown frame kind {kind!r}")
    n = doc.get("size")
    if not isinstance(n, int) or n < 1:
        raise DocumentError("size must be a positive integer")
    le = doc.get("le")
    if (
        not isinstance(le, list)
        or len(le) != n
        or any(not isinstance(r, list) or len(r) != n for r in le)
        or any(v not in (0, 1) for r in le for v in r)
    ):
        raise DocumentError(f"le must be a {n}x{n} 0/1 matrix")
    p = preorder_from_matrix([[bool(v) for v in row] for row in le])
    if kind == "poset" and not p.is_poset:
        raise DocumentError("kind says poset but le is not antisymmetric")
    return p


def hom_to_document(h: Homomorphism) -> dict:
    return {
        "kind": "hom",
        "mapping": list(h.mapping),
        "dom": algebra_to_document(h.dom),
        "cod": algebra_to_document(h.cod),
    }


def hom_from_document(doc: dict) -> Homomorphism:
    if doc.get("kind") != "hom":
        raise DocumentError(f"unknown document kind {doc.get('kind')!r}")
    dom = algebra_from_document(doc.get("dom", {}))
    cod = algebra_from_document(doc.get("cod", {}))
    mapping = doc.get("mapping")
    if (
        not isinstance(mapping, list)
        or len(mapping) != dom.size
        or any(not isinstance(v, int) or not 0 <= v < cod.size for v in mapping)
    ):
        raise DocumentError("mapping must list a codomain index per domain element")
    return Homomorphism(dom, cod, tuple(mapping))

import pytest

from finalg.algebra import enumerate_homs, two_element, Signature, validate
from finalg.frames import (
    chain_poset,
    cluster,
    enumerate_posets,
    enumerate_preorders,
    heyting_dual,
    interior_dual,
)
from finalg.serialize import (
    DocumentError,
    algebra_from_document,
    algebra_to_document,
    dumps,
    hom_from_document,
    hom_to_document,
    loads,
    preorder_from_document,
    preorder_to_document,
)


def roundtrip_bytes(doc):
    text = dumps(doc)
    return text, dumps(loads(text))


@pytest.mark.parametrize("p", enumerate_preorders(3), ids=lambda p: str(p.encoding()))
def test_interior_documents_roundtrip_bytes(p):
    a = interior_dual(p)
    doc = algebra_to_document(a)
    text, again = roundtrip_bytes(doc)
    assert text == again
    b = algebra_from_document(loads(text))
    assert b == a
    assert not validate(b)
    assert dumps(algebra_to_document(b)) == text


@pytest.mark.parametrize("p", enumerate_posets(4), ids=lambda p: str(p.encoding()))
def test_heyting_documents_roundtrip_bytes(p):
    a = heyting_dual(p)
    text = dumps(algebra_to_document(a))
    assert algebra_from_document(loads(text)) == a
    assert dumps(algebra_to_document(algebra_from_document(loads(text)))) == text


def test_preorder_document_kinds():
    assert preorder_to_document(chain_poset(2))["kind"] == "poset"
    assert preorder_to_document(cluster(2))["kind"] == "preorder"
    for p in enumerate_preorders(3):
        doc = preorder_to_document(p)
        q = preorder_from_document(loads(dumps(doc)))
        assert q.le == p.le


def test_hom_document_roundtrip():
    a = interior_dual(cluster(2))
    for h in enumerate_homs(a, a):
        text = dumps(hom_to_document(h))
        h2 = hom_from_document(loads(text))
        assert h2.mapping == h.mapping
        assert h2.dom == a and h2.cod == a
        assert dumps(hom_to_document(h2)) == text


def test_document_trailing_newline_and_indent():
    text = dumps(algebra_to_document(two_element(Signature.HEYTING)))
    assert text.endswith("\n") and not text.endswith("\n\n")
    assert text.startswith('{\n  "kind": "heyting",\n  "size": 2,')


def test_names_survive_roundtrip():
    a = two_element(Signature.BOOLEAN)
    doc = algebra_to_document(a)
    if "names" not in doc:
        doc["names"] = ["zero", "one"]
    b = algebra_from_document(doc)
    assert b.names == tuple(doc["names"])
    assert algebra_to_document(b)["names"] == doc["names"]


@pytest.mark.parametrize(
    "doc",
    [
        {"kind": "nope", "size": 2},
        {"kind": "heyting", "size": 0},
        {"kind": "heyting", "size": 2, "bot": 0, "top": 5, "ops": {}},
        # a heyting document must carry imp and must not carry compl
        {
            "kind": "heyting",
            "size": 1,
            "bot": 0,
            "top": 0,
            "ops": {"join": [[0]], "meet": [[0]], "compl": [0]},
        },
        # table entry out of range
        {
            "kind": "bounded-lattice",
            "size": 2,
            "bot": 0,
            "top": 1,
            "ops": {"join": [[0, 1], [1, 7]], "meet": [[0, 0], [0, 1]]},
        },
        # wrong shape
        {
            "kind": "bounded-lattice",
            "size": 2,
            "bot": 0,
            "top": 1,
            "ops": {"join": [[0, 1]], "meet": [[0, 0], [0, 1]]},
        },
    ],
)
def test_malformed_algebra_documents_rejected(doc):
    with pytest.raises(DocumentError):
        algebra_from_document(doc)


def test_malformed_frame_documents_rejected():
    with pytest.raises(DocumentError):
        preorder_from_document({"kind": "poset", "size": 2, "le": [[1, 1], [1, 1]]})
    with pytest.raises(DocumentError):
        preorder_from_document({"kind": "preorder", "size": 2, "le": [[1, 2], [0, 1]]})


def test_malformed_hom_documents_rejected():
    a = algebra_to_document(two_element(Signature.HEYTING))
    with pytest.raises(DocumentError):
        hom_from_document({"kind": "hom", "mapping": [0, 9], "dom": a, "cod": a})
    with pytest.raises(DocumentError):
        hom_from_document({"kind": "hom", "mapping": [0], "dom": a, "cod": a})


def test_loads_rejects_non_json_and_non_objects():
    with pytest.raises(DocumentError):
        loads("not json at all {")
    with pytest.raises(DocumentError):
        loads("[1, 2, 3]")

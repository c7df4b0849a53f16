import pytest

from finalg.algebra import (
    Signature,
    enumerate_homs,
    identity_hom,
    is_isomorphic,
    validate,
)
from finalg.frames import (
    chain_poset,
    cluster,
    enumerate_posets,
    enumerate_preorders,
    heyting_dual,
    interior_dual,
)
from finalg.functors import (
    SignatureMismatchError,
    boolean_extension,
    extension_hom,
    heyting_comparison_iso,
    interior_from_implications,
    open_algebra,
    open_restriction,
    star_algebra,
    star_comparison_iso,
    star_restriction,
)


def test_open_algebra_of_poset_dual_is_the_heyting_dual():
    for p in enumerate_posets(3):
        oa = open_algebra(interior_dual(p))
        assert validate(oa.heyting) == []
        assert is_isomorphic(oa.heyting, heyting_dual(p)) is not None


def test_open_algebra_rejects_wrong_signature():
    with pytest.raises(SignatureMismatchError):
        open_algebra(heyting_dual(chain_poset(2)))
    with pytest.raises(SignatureMismatchError):
        boolean_extension(interior_dual(cluster(2)))


def test_star_whole_exactly_on_poset_duals():
    for q in enumerate_preorders(3):
        sa = star_algebra(interior_dual(q))
        assert sa.is_whole == q.is_poset
        assert not sa.embedding.defects()
        assert sa.embedding.is_injective


def test_extension_carrier_and_opens():
    for p in enumerate_posets(3):
        l = heyting_dual(p)
        ext = boolean_extension(l)
        assert ext.extension.size == 1 << len(l.join_irreducibles)
        assert set(ext.extension.open_elements) == set(ext.eta)
        assert validate(ext.extension) == []


def test_extension_golden_tables_for_three_chain():
    ext = boolean_extension(heyting_dual(chain_poset(2)))
    e = ext.extension
    assert e.size == 4
    assert tuple(int(v) for v in e.interior) == (0, 1, 0, 3)
    assert tuple(int(v) for v in e.compl) == (3, 2, 1, 0)
    assert ext.eta == (0, 1, 3)


def test_interior_table_agrees_with_implication_form():
    for p in enumerate_posets(4):
        ext = boolean_extension(heyting_dual(p))
        assert interior_from_implications(ext) == tuple(
            int(v) for v in ext.extension.interior
        )


def test_extension_hom_is_functorial():
    duals = [heyting_dual(p) for p in enumerate_posets(2)]
    for a in duals:
        ia = extension_hom(identity_hom(a))
        assert ia.mapping == identity_hom(ia.dom).mapping
        for b in duals:
            for h in enumerate_homs(a, b):
                bh = extension_hom(h)
                for g in enumerate_homs(b, b):
                    lhs = extension_hom(h.then(g))
                    rhs = bh.then(extension_hom(g))
                    assert lhs.mapping == rhs.mapping


def test_open_restriction_is_functorial():
    duals = [interior_dual(q) for q in enumerate_preorders(2)]
    for a in duals:
        for b in duals:
            for h in enumerate_homs(a, b):
                oh = open_restriction(h)
                assert not oh.defects()
                for g in enumerate_homs(b, b):
                    assert (
                        open_restriction(h.then(g)).mapping
                        == oh.then(open_restriction(g)).mapping
                    )


def test_star_restriction_lands_in_star_part():
    duals = [interior_dual(q) for q in enumerate_preorders(3)]
    for a in duals:
        for b in duals:
            for h in enumerate_homs(a, b):
                hs = star_restriction(h)
                assert not hs.defects()
                if h.is_injective:
                    assert hs.is_injective
                if h.is_onto:
                    assert hs.is_onto


def test_heyting_comparison_iso_roundtrip():
    for p in enumerate_posets(4):
        l = heyting_dual(p)
        iso, oa, ext = heyting_comparison_iso(l)
        assert iso.dom == l and iso.is_onto and iso.is_injective
        assert not iso.defects()


def test_star_comparison_iso_roundtrip():
    for q in enumerate_preorders(3):
        a = interior_dual(q)
        psi, ext, sa = star_comparison_iso(a)
        assert psi.is_onto and psi.is_injective and not psi.defects()
        assert psi.dom == ext.extension and psi.cod == sa.star


def test_comparison_isos_commute_with_homs():
    duals = [interior_dual(q) for q in enumerate_preorders(2)]
    ctx = {a: star_comparison_iso(a) for a in duals}
    for a in duals:
        for b in duals:
            psi1, ext1, sa1 = ctx[a]
            psi2, ext2, sa2 = ctx[b]
            for h in enumerate_homs(a, b):
                boh = extension_hom(open_restriction(h), ext1, ext2)
                lhs = boh.then(psi2).then(sa2.embedding)
                rhs = psi1.then(sa1.embedding).then(h)
                assert lhs.mapping == rhs.mapping

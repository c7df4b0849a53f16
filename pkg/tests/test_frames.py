import pytest

from finalg.algebra import Signature, chain_algebra, is_isomorphic, validate
from finalg.frames import (
    POSET_CEILING,
    PREORDER_CEILING,
    Preorder,
    antichain,
    chain_poset,
    cluster,
    enumerate_posets,
    enumerate_preorders,
    enumerate_preorders_bruteforce,
    heyting_dual,
    interior_dual,
    preorder_from_matrix,
    simple_monadic_4,
)


def test_enumeration_counts():
    # up to isomorphism: 1, 2, 5, 16, 63 posets and 1, 3, 9, 33 preorders
    assert len(enumerate_posets(5)) == 87
    assert len(enumerate_preorders(4)) == 46
    assert len(enumerate_posets(3)) == 8
    assert len(enumerate_preorders(3)) == 13


def test_generator_agrees_with_bruteforce():
    fast = {p.canonical().encoding() for p in enumerate_preorders(3)}
    slow = {p.canonical().encoding() for p in enumerate_preorders_bruteforce(3)}
    assert fast == slow


def test_no_two_enumerated_frames_isomorphic():
    seen = set()
    for p in enumerate_preorders(4):
        key = (p.size, p.canonical().encoding())
        assert key not in seen
        seen.add(key)


def test_ceilings_enforced():
    with pytest.raises(ValueError):
        enumerate_posets(POSET_CEILING + 1)
    with pytest.raises(ValueError):
        enumerate_preorders(PREORDER_CEILING + 1)


def test_preorder_check_rejects_broken_relations():
    bad = Preorder(2, ((True, True), (False, False)))  # not reflexive
    assert bad.check()
    with pytest.raises(ValueError):
        preorder_from_matrix([[1, 1, 0], [0, 1, 1], [0, 0, 1]])  # not transitive


def test_poset_flag():
    assert chain_poset(3).is_poset
    assert antichain(3).is_poset
    assert not cluster(2).is_poset


def test_heyting_dual_of_chain_is_chain():
    for n in (1, 2, 3, 4):
        d = heyting_dual(chain_poset(n))
        assert d.size == n + 1
        assert is_isomorphic(d, chain_algebra(n + 1, Signature.HEYTING)) is not None


def test_heyting_dual_requires_antisymmetry():
    with pytest.raises(ValueError):
        heyting_dual(cluster(2))


def test_interior_dual_size_is_powerset():
    for q in enumerate_preorders(3):
        a = interior_dual(q)
        assert a.size == 1 << q.size
        assert validate(a) == []
        # open elements of the dual = upward closed point sets
        ups = sum(
            1
            for mask in range(1 << q.size)
            if all(
                not (mask >> i & 1) or (mask >> j & 1)
                for i in range(q.size)
                for j in range(q.size)
                if q.le[i][j]
            )
        )
        assert len(a.open_elements) == ups


def test_all_duals_validate_at_ceilings():
    for p in enumerate_posets(POSET_CEILING):
        assert validate(heyting_dual(p)) == []
    for q in enumerate_preorders(PREORDER_CEILING):
        assert validate(interior_dual(q)) == []


def test_simple_monadic_4_is_the_cluster_dual():
    m4 = simple_monadic_4()
    assert m4.size == 4
    assert validate(m4) == []
    assert is_isomorphic(m4, interior_dual(cluster(2))) is not None
    # only two open elements: bottom and top
    assert len(m4.open_elements) == 2


def test_permuted_frames_share_canonical_form():
    p = chain_poset(3)
    q = p.permuted((2, 0, 1))
    assert q.canonical().encoding() == p.canonical().encoding()

import pytest

from finalg.algebra import Signature, chain_algebra, is_isomorphic, two_element
from finalg.frames import (
    antichain,
    chain_poset,
    enumerate_posets,
    heyting_dual,
    simple_monadic_4,
)
from finalg.functors import boolean_extension
from finalg.unify import (
    QuasiOrderedSet,
    SearchBound,
    _discover_targets,
    _ge_witness,
    algebra_type,
    all_mu_choices,
    classify_type,
    mu_set,
    tau,
    theta_classes,
    unifiable,
    unifier_search,
)
from finalg.varieties import variety_of


def qos(*rows):
    n = len(rows)
    return QuasiOrderedSet(
        tuple(f"u{i}" for i in range(n)),
        tuple(tuple(bool(v) for v in r) for r in rows),
    )


def test_quasiorder_check_rejects_broken_matrices():
    with pytest.raises(ValueError):
        qos((1, 1), (0, 0)).check()  # not reflexive
    with pytest.raises(ValueError):
        qos((1, 1, 0), (0, 1, 1), (0, 0, 1)).check()  # not transitive


def test_theta_classes_partition_by_mutual_ge():
    q = qos((1, 1, 0), (1, 1, 0), (1, 1, 1))  # u0 ~ u1 below u2
    th = theta_classes(q)
    assert sorted(map(sorted, th.classes)) == [[0, 1], [2]]


def test_mu_set_is_a_dense_antichain():
    # ge[i][j] reads "i is at least as general as j"
    # two maximal elements over a common lower one
    q = qos((1, 0, 1), (0, 1, 1), (0, 0, 1))
    assert mu_set(q) == (0, 1)
    # a single top element dominates
    q2 = qos((1, 0, 0), (1, 1, 0), (1, 1, 1))
    assert mu_set(q2) == (2,)


def test_all_mu_choices_have_equal_size():
    # one two-element maximal class next to a singleton maximal class
    q = qos((1, 1, 0, 1), (1, 1, 0, 1), (0, 0, 1, 1), (0, 0, 0, 1))
    choices = all_mu_choices(q)
    assert len(choices) == 2
    assert {len(c) for c in choices} == {2}
    assert mu_set(q) in choices


def test_classify_type_labels():
    assert classify_type(qos((1,),)).label() == "1"
    assert classify_type(qos((1, 0), (0, 1))).label() == "omega(2)"
    with pytest.raises(ValueError):
        classify_type(QuasiOrderedSet((), ()))


def test_type_invariant_under_relabeling():
    rows = ((1, 0, 0), (0, 1, 0), (1, 1, 1))
    q = qos(*rows)
    perm = (2, 0, 1)
    rel = qos(*[[rows[perm[i]][perm[j]] for j in range(3)] for i in range(3)])
    assert classify_type(q).label() == classify_type(rel).label()
    assert len(mu_set(q)) == len(mu_set(rel))


def test_unifiable_via_onto_to_two_element():
    ch = chain_algebra(3, Signature.HEYTING)
    assert unifiable(ch, variety_of(ch))
    m4 = simple_monadic_4()
    assert not unifiable(m4, variety_of(m4))


# frozen counts at the default bound, one per corpus variety
UNIFIER_COUNTS = {
    (1, 1): (2, 1),
    (2, 9): (5, 1),
    (2, 11): (4, 1),
    (3, 273): (9, 3),
    (3, 275): (8, 2),
    (3, 279): (4, 2),
    (3, 309): (5, 2),
    (3, 311): (4, 1),
}


@pytest.mark.parametrize("key", sorted(UNIFIER_COUNTS))
def test_unifier_counts_frozen(key):
    size, enc = key
    p = next(
        q for q in enumerate_posets(3) if q.size == size and q.encoding() == enc
    )
    l = heyting_dual(p)
    us = unifier_search(l, variety_of(l))
    count, mu = UNIFIER_COUNTS[key]
    assert us.complete
    assert len(us.unifiers) == count
    assert len(us.mu_indices()) == mu


def test_unifier_set_invariants():
    l = heyting_dual(chain_poset(2))
    us = unifier_search(l, variety_of(l))
    us.order.check()
    for un in us.unifiers:
        assert not un.u.defects()
        assert un.u.dom == l
        # projectivity witness: a section of an onto map from the target
        w = un.target_projectivity_witness
        assert w.dom == un.target
    # several unifiers may land in one target, but never with the same
    # mapping, and distinct target objects are pairwise non-isomorphic
    seen = {(id(un.target), un.u.mapping) for un in us.unifiers}
    assert len(seen) == len(us.unifiers)
    by_id = {id(un.target): un.target for un in us.unifiers}
    targets = list(by_id.values())
    for i, a in enumerate(targets):
        for b in targets[i + 1 :]:
            assert is_isomorphic(a, b) is None


def test_chain3_has_an_isomorphism_unifier_on_top():
    l = heyting_dual(chain_poset(2))
    us = unifier_search(l, variety_of(l))
    tops = [
        i
        for i, un in enumerate(us.unifiers)
        if un.u.is_onto and un.u.is_injective
    ]
    assert len(tops) == 1
    top = tops[0]
    assert all(us.order.ge[top][j] for j in range(len(us.unifiers)))
    assert us.mu_indices() == (top,)
    out = algebra_type(l, variety_of(l))
    assert out.label() == "1"


def test_monadic_4_has_empty_unifier_set():
    m4 = simple_monadic_4()
    us = unifier_search(m4, variety_of(m4))
    assert us.complete and us.unifiers == ()
    assert algebra_type(m4, variety_of(m4)).kind == "not-unifiable"


def test_ge_witness_composes():
    l = heyting_dual(antichain(2))
    us = unifier_search(l, variety_of(l))
    n = len(us.unifiers)
    for i in range(n):
        for j in range(n):
            w = _ge_witness(us.unifiers[i], us.unifiers[j])
            assert (w is not None) == us.order.ge[i][j]
            if w is not None:
                assert us.unifiers[i].u.then(w).mapping == us.unifiers[j].u.mapping


def test_discovery_routes_agree():
    # with the free algebra in budget the targets come from its quotients;
    # starving the budget forces the dual-frame catalog; same targets up to
    # isomorphism either way
    l = heyting_dual(chain_poset(2))
    v = variety_of(l)
    bound = SearchBound()
    free_route, skipped1, complete1 = _discover_targets(v, bound, None)
    catalog_route, skipped2, complete2 = _discover_targets(v, bound, 120)
    assert complete1 and complete2
    assert len(free_route) == len(catalog_route)
    for t in free_route:
        assert any(
            is_isomorphic(t.algebra, c.algebra) is not None for c in catalog_route
        )


def test_tau_transfers_chain3():
    l = heyting_dual(chain_poset(2))
    us = unifier_search(l, variety_of(l))
    image = tau(us)
    assert image.complete
    assert len(image.unifiers) == len(us.unifiers)
    ext = boolean_extension(l)
    assert image.algebra == ext.extension
    # order preserved under the index bijection
    n = len(us.unifiers)
    for i in range(n):
        for j in range(n):
            if us.order.ge[i][j]:
                assert image.order.ge[i][j]
    assert len(image.mu_indices()) == len(us.mu_indices())


def test_tau_agrees_with_independent_search():
    for p in enumerate_posets(2):
        l = heyting_dual(p)
        us = unifier_search(l, variety_of(l))
        image = tau(us)
        ext = boolean_extension(l)
        other = unifier_search(ext.extension, variety_of(ext.extension))
        assert other.complete
        assert len(other.unifiers) == len(image.unifiers)
        for x in image.unifiers:
            assert any(
                _ge_witness(x, y) is not None and _ge_witness(y, x) is not None
                for y in other.unifiers
            )


def test_tau_requires_matching_signature():
    m4 = simple_monadic_4()
    us = unifier_search(m4, variety_of(m4))
    with pytest.raises(ValueError):
        tau(us)


def test_bound_caps_respected():
    l = heyting_dual(chain_poset(2))
    big = SearchBound(max_generators=2, max_target_size=8)
    us = unifier_search(l, variety_of(l), big)
    assert all(un.target.size <= 8 for un in us.unifiers)
    small = SearchBound(max_generators=2, max_target_size=2)
    us2 = unifier_search(l, variety_of(l), small)
    assert all(un.target.size <= 2 for un in us2.unifiers)
    with pytest.raises(ValueError):
        SearchBound(max_generators=-1)
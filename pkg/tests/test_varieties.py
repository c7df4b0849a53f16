import pytest

from finalg.algebra import (
    Signature,
    chain_algebra,
    is_isomorphic,
    two_element,
    validate,
)
from finalg.frames import (
    antichain,
    chain_poset,
    cluster,
    enumerate_posets,
    enumerate_preorders,
    heyting_dual,
    interior_dual,
    simple_monadic_4,
)
from finalg.varieties import (
    BudgetExceeded,
    Presentation,
    Term,
    eval_term,
    free_algebra,
    grz_check,
    grz_check_literal,
    is_projective,
    member,
    member_hs,
    present,
    presentation_of,
    satisfies,
    variety_of,
)


x, y = Term.var(0), Term.var(1)


def test_eval_term_on_chain():
    a = chain_algebra(3, Signature.HEYTING)
    assert eval_term(x.imp(y), a, [2, 1]) == 1
    assert eval_term(x.imp(y), a, [1, 2]) == 2  # top
    assert eval_term(x.join(y).meet(x), a, [1, 2]) == 1


def test_satisfies_finds_counterexamples():
    a = chain_algebra(3, Signature.HEYTING)
    ok, _ = satisfies(a, (x.join(y), y.join(x)))
    assert ok
    ok, witness = satisfies(a, (x.imp(y), y.imp(x)))
    assert not ok and witness is not None
    l, r = x.imp(y), y.imp(x)
    assert eval_term(l, a, witness) != eval_term(r, a, witness)


def test_grz_holds_exactly_on_poset_duals():
    for q in enumerate_preorders(4):
        assert grz_check(interior_dual(q)) == q.is_poset


def test_grz_literal_form_differs_on_clusters():
    # the verbatim transcription is satisfied by the two-point cluster dual
    a = interior_dual(cluster(2))
    assert grz_check(a) is False
    assert grz_check_literal(a) is True
    # on poset duals the two forms agree
    for p in enumerate_posets(3):
        b = interior_dual(p)
        assert grz_check(b) == grz_check_literal(b) is True


# frozen sizes, first computed by running the closure and double-checked
# against the hom-count universal property below
FREE_SIZES = {
    (1, 1): (4, 16),
    (2, 9): (4, 16),
    (2, 11): (6, 162),
    (3, 311): (6, 342),
}


@pytest.mark.parametrize("key,sizes", sorted(FREE_SIZES.items()))
def test_free_algebra_sizes_frozen(key, sizes):
    size, enc = key
    p = next(
        q for q in enumerate_posets(3) if q.size == size and q.encoding() == enc
    )
    v = variety_of(heyting_dual(p))
    f1, f2 = sizes
    assert free_algebra(v, 1).algebra.size == f1
    assert free_algebra(v, 2).algebra.size == f2


def test_free_algebra_universal_property():
    # maps out of the free algebra on k names = k-tuples of target elements
    from finalg.algebra import enumerate_homs

    l = heyting_dual(chain_poset(2))
    v = variety_of(l)
    for k in (0, 1, 2):
        fr = free_algebra(v, k)
        homs = enumerate_homs(fr.algebra, l)
        assert len(homs) == l.size**k
        for assignment in {tuple(h.mapping[g] for g in fr.gens) for h in homs}:
            hh = fr.hom_at(l, assignment)
            assert not hh.defects()


def test_free_algebra_budget_raises():
    v = variety_of(heyting_dual(chain_poset(2)))
    with pytest.raises(BudgetExceeded):
        free_algebra(v, 2, budget=10)


def test_interior_free_algebra_on_one_name():
    assert free_algebra(variety_of(simple_monadic_4()), 1).algebra.size == 16


def test_member_on_godel_chains():
    v4 = variety_of(chain_algebra(4, Signature.HEYTING))
    assert member(chain_algebra(3, Signature.HEYTING), v4)
    assert member(chain_algebra(4, Signature.HEYTING), v4)
    # the square is a product of two-chains, hence inside
    assert member(heyting_dual(antichain(2)), v4)
    # a longer chain is not: taller than any subdirect factor
    v3 = variety_of(chain_algebra(3, Signature.HEYTING))
    assert not member(chain_algebra(4, Signature.HEYTING), v3)


def test_member_hs_decides_where_free_route_cannot():
    # the five-chain needs three generators and the free algebra on three
    # names is over budget, but the quotient route settles membership
    v4 = variety_of(chain_algebra(4, Signature.HEYTING))
    five = chain_algebra(5, Signature.HEYTING)
    with pytest.raises(BudgetExceeded):
        member(five, v4, budget=2000)
    assert member_hs(five, v4) is False


def test_member_hs_agrees_with_free_route():
    duals = [interior_dual(q) for q in enumerate_preorders(2)]
    varieties = [variety_of(d) for d in duals]
    for a in duals:
        for v in varieties:
            assert member_hs(a, v) == member(a, v)
    chains = [chain_algebra(n, Signature.HEYTING) for n in (2, 3, 4)]
    for a in chains:
        for b in chains:
            v = variety_of(b)
            assert member_hs(a, v) == member(a, v)


def test_membership_closed_under_quotients_and_subs():
    from finalg.algebra import all_congruences, quotient

    a = interior_dual(antichain(2))
    v = variety_of(a)
    for c in all_congruences(a):
        q, _ = quotient(a, c)
        assert member(q, v)


def test_presentation_roundtrip():
    l = heyting_dual(chain_poset(2))
    v = variety_of(l)
    pres, onto = presentation_of(l, v)
    assert onto.is_onto and not onto.defects()
    replay = present(v, pres)
    assert is_isomorphic(replay.algebra, l) is not None


def test_presented_algebra_respects_relations():
    v = variety_of(heyting_dual(chain_poset(2)))
    # one name forced to be complemented: x + (x => bot) = top
    rel = (Term.var(0).join(Term.var(0).imp(Term.bot())), Term.top())
    pa = present(v, Presentation(1, (rel,)))
    a = pa.algebra
    assert validate(a) == []
    g = pa.from_free.mapping[pa.free.gens[0]]
    assert eval_term(rel[0], a, [g]) == eval_term(rel[1], a, [g])
    # the free algebra on one complemented name is the square: the name can
    # land on either coordinate of a product of two-chains
    assert a.size == 4
    assert is_isomorphic(a, heyting_dual(antichain(2))) is not None


def test_projectivity_of_two_element():
    for sig in (Signature.HEYTING, Signature.INTERIOR):
        t = two_element(sig)
        gens = [
            heyting_dual(chain_poset(2))
            if sig is Signature.HEYTING
            else interior_dual(cluster(2))
        ]
        r = is_projective(t, variety_of(*gens))
        assert r.verdict is True
        assert r.section is not None and r.onto is not None
        assert r.section.then(r.onto).mapping == tuple(range(t.size))


def test_chain_projective_in_own_variety():
    l = chain_algebra(3, Signature.HEYTING)
    r = is_projective(l, variety_of(l))
    assert r.verdict is True


def test_simple_monadic_not_projective():
    m4 = simple_monadic_4()
    r = is_projective(m4, variety_of(m4))
    assert r.verdict is False


def test_free_algebras_are_projective():
    v = variety_of(heyting_dual(chain_poset(2)))
    fr = free_algebra(v, 1)
    r = is_projective(fr.algebra, v, generators=fr.gens)
    assert r.verdict is True

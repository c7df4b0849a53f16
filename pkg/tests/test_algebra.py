import numpy as np
import pytest

from finalg.algebra import (
    FiniteAlgebra,
    Homomorphism,
    Signature,
    all_congruences,
    automorphisms,
    chain_algebra,
    congruence_generated,
    enumerate_homs,
    enumerate_homs_naive,
    generated_subalgebra,
    identity_hom,
    is_isomorphic,
    kernel_congruence,
    minimal_generating_seq,
    product,
    quotient,
    two_element,
    validate,
)
from finalg.frames import antichain, cluster, enumerate_preorders, interior_dual


def retabled(a: FiniteAlgebra, **changes) -> FiniteAlgebra:
    """Copy with one table swapped out; used to build broken algebras."""
    fields = dict(
        signature=a.signature, size=a.size, join=a.join.copy(), meet=a.meet.copy(),
        bot=a.bot, top=a.top,
        imp=None if a.imp is None else a.imp.copy(),
        compl=None if a.compl is None else a.compl.copy(),
        interior=None if a.interior is None else a.interior.copy(),
    )
    fields.update(changes)
    return FiniteAlgebra(**fields)


def test_validate_passes_on_chains_and_duals():
    for n in (1, 2, 3, 5):
        for sig in (Signature.BOUNDED_LATTICE, Signature.HEYTING):
            assert validate(chain_algebra(n, sig)) == []
    for q in enumerate_preorders(3):
        assert validate(interior_dual(q)) == []


def test_validate_catches_single_bad_entries():
    a = chain_algebra(3, Signature.HEYTING)
    j = a.join.copy()
    j[1, 2] = 0  # join no longer an upper bound
    assert validate(retabled(a, join=j))
    i = a.imp.copy()
    i[2, 1] = 2  # residuation broken
    assert validate(retabled(a, imp=i))

    b = interior_dual(cluster(2))
    g = b.interior.copy()
    g[1] = b.top  # interior no longer below its argument
    assert validate(retabled(b, interior=g))
    c = b.compl.copy()
    c[0] = 0
    assert validate(retabled(b, compl=c))


def test_validate_catches_wrong_bounds():
    a = chain_algebra(3, Signature.BOUNDED_LATTICE)
    assert validate(retabled(a, bot=1))
    assert validate(retabled(a, top=1))


def test_two_element_shapes():
    for sig in Signature:
        t = two_element(sig)
        assert t.size == 2 and t.bot == 0 and t.top == 1
        assert validate(t) == []


def test_hom_search_matches_naive_enumeration():
    algs = [interior_dual(q) for q in enumerate_preorders(2)]
    for a in algs:
        for b in algs:
            fast = {h.mapping for h in enumerate_homs(a, b)}
            slow = {h.mapping for h in enumerate_homs_naive(a, b)}
            assert fast == slow


def test_homs_compose_and_identity():
    a = interior_dual(cluster(2))
    ident = identity_hom(a)
    for h in enumerate_homs(a, a):
        assert h.then(ident).mapping == h.mapping
        assert ident.then(h).mapping == h.mapping
        assert not h.defects()


def test_automorphism_counts():
    # the 4-element Boolean algebra with identity interior: atoms may swap
    assert len(automorphisms(interior_dual(antichain(2)))) == 2
    # a chain is rigid
    assert len(automorphisms(chain_algebra(4, Signature.HEYTING))) == 1
    # the two-point cluster dual: swapping the atoms fixes the opens
    assert len(automorphisms(interior_dual(cluster(2)))) == 2


def test_isomorphism_found_under_relabeling():
    a = interior_dual(antichain(2))
    perm = (0, 2, 1, 3)
    inv = tuple(perm.index(i) for i in range(4))
    b = FiniteAlgebra(
        signature=a.signature,
        size=a.size,
        join=np.array([[perm[a.join[inv[x], inv[y]]] for y in range(4)] for x in range(4)], dtype=np.int16),
        meet=np.array([[perm[a.meet[inv[x], inv[y]]] for y in range(4)] for x in range(4)], dtype=np.int16),
        compl=np.array([perm[a.compl[inv[x]]] for x in range(4)], dtype=np.int16),
        interior=np.array([perm[a.interior[inv[x]]] for x in range(4)], dtype=np.int16),
        bot=perm[a.bot],
        top=perm[a.top],
    )
    assert validate(b) == []
    assert is_isomorphic(a, b) is not None
    assert is_isomorphic(a, chain_algebra(4, Signature.HEYTING)) is None


def test_product_projections_are_onto_homs():
    a = chain_algebra(2, Signature.HEYTING)
    b = chain_algebra(3, Signature.HEYTING)
    prod, projs = product([a, b])
    assert prod.size == 6
    assert validate(prod) == []
    assert all(not p.defects() and p.is_onto for p in projs)


def test_generated_subalgebra_closure():
    a = interior_dual(antichain(2))
    sub, inc = generated_subalgebra(a, [1])
    assert not inc.defects() and inc.is_injective
    # one atom of the identity-interior square generates everything via compl
    assert sub.size == 4
    sub2, _ = generated_subalgebra(a, [])
    assert sub2.size == 2  # bounds only


def test_minimal_generating_seq_is_minimal_on_small_algebras():
    from itertools import combinations

    for q in enumerate_preorders(2):
        a = interior_dual(q)
        seq = minimal_generating_seq(a)
        sub, _ = generated_subalgebra(a, seq)
        assert sub.size == a.size
        if seq:
            for shorter in combinations(range(a.size), len(seq) - 1):
                s, _ = generated_subalgebra(a, shorter)
                assert s.size < a.size


# congruence counts: a bounded-lattice chain splits into intervals, a Heyting
# chain only along principal filters
@pytest.mark.parametrize(
    "n,sig,count",
    [
        (2, Signature.BOUNDED_LATTICE, 2),
        (3, Signature.BOUNDED_LATTICE, 4),
        (4, Signature.BOUNDED_LATTICE, 8),
        (2, Signature.HEYTING, 2),
        (3, Signature.HEYTING, 3),
        (4, Signature.HEYTING, 4),
    ],
)
def test_congruence_counts_on_chains(n, sig, count):
    assert len(all_congruences(chain_algebra(n, sig))) == count


def test_simple_interior_algebra_has_two_congruences():
    assert len(all_congruences(interior_dual(cluster(2)))) == 2
    assert len(all_congruences(interior_dual(antichain(2)))) == 4


def test_congruences_close_under_generation():
    a = chain_algebra(4, Signature.HEYTING)
    congs = all_congruences(a)
    reps = {c.classes for c in congs}
    for c in congs:
        pairs = [
            (x, y)
            for x in range(a.size)
            for y in range(x + 1, a.size)
            if c.classes[x] == c.classes[y]
        ]
        assert congruence_generated(a, pairs).classes in reps


def test_quotient_kernel_roundtrip():
    for q in enumerate_preorders(2):
        a = interior_dual(q)
        for c in all_congruences(a):
            img, onto = quotient(a, c)
            assert validate(img) == []
            assert onto.is_onto and not onto.defects()
            assert kernel_congruence(onto).classes == c.classes


def test_quotients_by_distinct_congruences_shrink():
    a = chain_algebra(4, Signature.HEYTING)
    sizes = sorted(quotient(a, c)[0].size for c in all_congruences(a))
    assert sizes == [1, 2, 3, 4]

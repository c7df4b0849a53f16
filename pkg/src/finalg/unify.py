"""Algebraic unification: unifier sets, the generality quasiorder, and transfer.

A unifier of a finite algebra ``a`` inside a variety is a homomorphism from
``a`` into a finitely presented projective member.  This module finds all of
them up to a search bound, organises them under the "more general" quasiorder
(u is above v when v factors through u), extracts mu-sets, classifies the
unification type, and transports whole unifier sets along the free Boolean
extension functor.

Target discovery runs one of two interchangeable routes:

* quotients of the free algebra on ``max_generators`` names, which carries
  finite presentations by construction; used whenever the free algebra fits
  the element budget;
* a complete catalogue of frame duals with at most ``log2(max_target_size)``
  points, used when the free algebra is out of budget.  Every finite Heyting
  algebra is the up-set algebra of its join-irreducible poset and every
  finite interior algebra is the powerset algebra of a preorder on its atoms,
  so the catalogue covers every possible target within the size bound.

Both routes filter candidates through membership, minimal generator count and
a projectivity verdict; a candidate whose verdict cannot be decided within
budget is recorded as skipped and the result is flagged incomplete rather
than silently dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    Signature,
    SignatureMismatchError,
    _search_homs,
    automorphisms,
    chain_algebra,
    enumerate_homs,
    is_isomorphic,
    all_congruences,
    minimal_generating_seq,
    product,
    quotient,
    two_element,
)
from .frames import (
    POSET_CEILING,
    PREORDER_CEILING,
    enumerate_posets,
    enumerate_preorders,
    heyting_dual,
    interior_dual,
)
from .functors import boolean_extension, extension_hom
from .varieties import (
    BudgetExceeded,
    Presentation,
    VarietySpec,
    free_algebra,
    is_projective,
    member,
    member_hs,
    presentation_of,
    variety_of,
)

__all__ = [
    "QuasiOrderedSet",
    "ThetaPartition",
    "theta_classes",
    "mu_set",
    "all_mu_choices",
    "UnificationType",
    "classify_type",
    "SearchBound",
    "Unifier",
    "UnifierSet",
    "unifiable",
    "unifier_search",
    "TypeOutcome",
    "algebra_type",
    "TransferError",
    "UnknownVerdict",
    "tau",
]


# --- quasiordered sets ------------------------------------------------------------


@dataclass(frozen=True)
class QuasiOrderedSet:
    """Finitely many elements under a reflexive transitive ge relation.

    ge[i][j] holds when element i is greater-or-equivalent to element j.
    """

    elements: tuple[str, ...]
    ge: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        n = len(self.elements)
        if len(self.ge) != n or any(len(row) != n for row in self.ge):
            raise ValueError("ge matrix shape does not match the element count")

    @property
    def size(self) -> int:
        return len(self.elements)

    def check(self) -> None:
        n = self.size
        for i in range(n):
            if not self.ge[i][i]:
                raise ValueError(f"ge not reflexive at {self.elements[i]}")
        for i in range(n):
            for j in range(n):
                if not self.ge[i][j]:
                    continue
                for k in range(n):
                    if self.ge[j][k] and not self.ge[i][k]:
                        raise ValueError(
                            f"ge not transitive at "
                            f"{self.elements[i]},{self.elements[j]},{self.elements[k]}"
                        )


@dataclass(frozen=True)
class ThetaPartition:
    """Mutual-comparability classes of a quasiorder with the induced order.

    classes are listed by least member index; leq is over class indices.
    """

    classes: tuple[tuple[int, ...], ...]
    leq: tuple[tuple[bool, ...], ...]


def theta_classes(q: QuasiOrderedSet) -> ThetaPartition:
    """Partition by mutual ge; the induced order on classes is antisymmetric."""
    q.check()
    n = q.size
    assigned = [-1] * n
    classes: list[tuple[int, ...]] = []
    for i in range(n):
        if assigned[i] >= 0:
            continue
        cls = [j for j in range(n) if q.ge[i][j] and q.ge[j][i]]
        for j in cls:
            assigned[j] = len(classes)
        classes.append(tuple(cls))
    k = len(classes)
    leq = [[False] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            leq[a][b] = bool(q.ge[classes[b][0]][classes[a][0]])
    for a in range(k):
        for b in range(k):
            if a != b and leq[a][b] and leq[b][a]:
                raise ValueError("induced class order failed antisymmetry")
    return ThetaPartition(tuple(classes), tuple(tuple(r) for r in leq))


def mu_set(q: QuasiOrderedSet) -> Optional[tuple[int, ...]]:
    """Least representatives of the maximal theta classes, verified mu.

    For a finite quasiorder the maximal classes always exist, so the result
    is never None; the Optional mirrors the general contract where infinite
    quasiorders may lack a mu-set.  The antichain and density properties are
    re-checked against the matrix on every call.
    """
    part = theta_classes(q)
    k = len(part.classes)
    maximal = [
        a
        for a in range(k)
        if not any(b != a and part.leq[a][b] for b in range(k))
    ]
    reps = tuple(sorted(min(part.classes[a]) for a in maximal))
    _assert_mu(q, reps)
    return reps


def _assert_mu(q: QuasiOrderedSet, reps: tuple[int, ...]) -> None:
    for i in reps:
        for j in reps:
            if i != j and q.ge[i][j]:
                raise ValueError(f"mu candidate not an antichain at {i},{j}")
    for x in range(q.size):
        if not any(q.ge[m][x] for m in reps):
            raise ValueError(f"mu candidate not dense at {x}")


def all_mu_choices(q: QuasiOrderedSet) -> list[tuple[int, ...]]:
    """Every choice of one representative per maximal class.

    Each choice is a mu-set; enumerating them witnesses that all mu-sets of
    the same finite quasiorder share a cardinality.
    """
    part = theta_classes(q)
    k = len(part.classes)
    maximal = [
        a
        for a in range(k)
        if not any(b != a and part.leq[a][b] for b in range(k))
    ]
    out = []
    for combo in itertools.product(*(part.classes[a] for a in maximal)):
        reps = tuple(sorted(combo))
        _assert_mu(q, reps)
        out.append(reps)
    return out


@dataclass(frozen=True)
class UnificationType:
    """Type verdict: kind "1" when a single most general unifier exists,
    otherwise "omega" with the mu-set size."""

    kind: str
    mu_size: int

    def label(self) -> str:
        return "1" if self.kind == "1" else f"omega({self.mu_size})"


def classify_type(q: QuasiOrderedSet) -> UnificationType:
    """Type of a finite nonempty quasiorder: 1 or omega(n), never 0 or infinity."""
    if q.size == 0:
        raise ValueError("cannot classify an empty quasiorder")
    m = mu_set(q)
    assert m is not None
    if len(m) == 1:
        return UnificationType("1", 1)
    return UnificationType("omega", len(m))


# --- unifier sets -----------------------------------------------------------------


@dataclass(frozen=True)
class SearchBound:
    """Caps on the target search: generator count of the presentations tried
    and carrier size of the targets.

    For signatures with a free Boolean extension (bounded-lattice, Heyting)
    the size cap also bounds the extension: targets may have at most
    log2(max_target_size) join-irreducibles, so a transferred target stays
    within the same cap.  Interior and Boolean targets have power-of-two
    carriers, where the two readings agree.
    """

    max_generators: int = 2
    max_target_size: int = 4

    def __post_init__(self):
        if self.max_generators < 0 or self.max_target_size < 1:
            raise ValueError("bound out of range")

    @property
    def max_frame_points(self) -> int:
        return max(self.max_target_size.bit_length() - 1, 0)


@dataclass(frozen=True)
class Unifier:
    """A homomorphism into a finitely presented projective target.

    The witness section and the presentation are carried along so a report
    can replay both the projectivity verdict and the construction of the
    target.
    """

    u: Homomorphism
    target_projectivity_witness: Homomorphism
    presentation_of_target: Presentation

    @property
    def target(self) -> FiniteAlgebra:
        return self.u.cod


@dataclass(frozen=True)
class UnifierSet:
    algebra: FiniteAlgebra
    variety: VarietySpec
    unifiers: tuple[Unifier, ...]
    order: QuasiOrderedSet
    bound: SearchBound
    complete: bool = True
    skipped: tuple[str, ...] = ()

    def mu_indices(self) -> tuple[int, ...]:
        m = mu_set(self.order)
        assert m is not None
        return m


def unifiable(
    a: FiniteAlgebra,
    v: VarietySpec,
    minimal_target: Optional[FiniteAlgebra] = None,
) -> bool:
    """Whether a maps onto the minimal projective member (default: the
    two-element algebra of the signature)."""
    target = two_element(a.signature) if minimal_target is None else minimal_target
    if target.signature is not a.signature:
        raise SignatureMismatchError("minimal target is in a different signature")
    return bool(_search_homs(a, target, onto=True, limit=1))


# --- target discovery -------------------------------------------------------------


@dataclass(frozen=True)
class _Target:
    algebra: FiniteAlgebra
    presentation: Presentation
    section: Homomorphism
    label: str


def _within_caps(c: FiniteAlgebra, bound: SearchBound) -> bool:
    if c.size > bound.max_target_size:
        return False
    if c.signature in (Signature.BOUNDED_LATTICE, Signature.HEYTING):
        return len(c.join_irreducibles) <= bound.max_frame_points
    return True


def _catalog_candidates(sig: Signature, points: int) -> list[tuple[str, FiniteAlgebra]]:
    """Every algebra of the signature whose dual frame has at most the given
    number of points, up to isomorphism, deterministically ordered."""
    out: list[tuple[str, FiniteAlgebra]] = []
    if sig in (Signature.BOUNDED_LATTICE, Signature.HEYTING):
        for p in enumerate_posets(points):
            c = heyting_dual(p)
            if sig is Signature.BOUNDED_LATTICE:
                c = FiniteAlgebra(
                    signature=sig, join=c.join.copy(), meet=c.meet.copy(),
                    bot=c.bot, top=c.top, names=c.names,
                )
            out.append((f"dual(poset:{p.size}:{p.encoding()})", c))
    elif sig is Signature.INTERIOR:
        for q in enumerate_preorders(points):
            out.append((f"dual(preorder:{q.size}:{q.encoding()})", interior_dual(q)))
    elif sig is Signature.BOOLEAN:
        pt = two_element(Signature.BOOLEAN)
        for n in range(points + 1):
            if n == 0:
                c = chain_algebra(1, Signature.BOOLEAN)
            else:
                c, _ = product([pt] * n)
            out.append((f"dual(atoms:{n})", c))
    else:  # pragma: no cover - exhaustive over Signature
        raise ValueError(f"no catalogue for signature {sig.value}")
    return out


def _decide_target(
    c: FiniteAlgebra,
    label: str,
    v: VarietySpec,
    bound: SearchBound,
    budget: Optional[int],
    check_member: bool,
) -> tuple[Optional[_Target], Optional[str]]:
    """(target, None) to include, (None, None) to exclude, (None, why) to skip."""
    gens = minimal_generating_seq(c)
    if len(gens) > bound.max_generators:
        return None, None
    if check_member:
        try:
            ok = member(c, v, budget, generators=gens)
        except BudgetExceeded:
            ok = member_hs(c, v)
        if not ok:
            return None, None
    pr = is_projective(c, v, budget, generators=gens)
    if pr.verdict is False:
        return None, None
    if pr.verdict is None:
        if _disprove_projective(c, v):
            return None, None
        return None, f"{label}: projectivity undecided within budget"
    try:
        pres, _ = presentation_of(c, v, budget, generators=gens)
    except BudgetExceeded:
        return None, f"{label}: presentation out of budget"
    assert pr.section is not None
    return _Target(c, pres, pr.section, label), None


def _disprove_projective(c: FiniteAlgebra, v: VarietySpec) -> bool:
    """True when some onto map from a small member admits no section, which
    certifies that c is not projective.  False means no certificate found."""
    pool: list[FiniteAlgebra] = list(v.generators)
    for m1, m2 in itertools.combinations_with_replacement(v.generators, 2):
        if m1.size * m2.size <= 256:
            pool.append(product([m1, m2])[0])
    for d in pool:
        for hm in _search_homs(d, c, onto=True):
            if not _search_homs(
                c, d, candidate_filter=lambda x, e: hm[e] == x, limit=1
            ):
                return True
    return False


def _discover_targets(
    v: VarietySpec, bound: SearchBound, budget: Optional[int]
) -> tuple[list[_Target], list[str], bool]:
    targets: list[_Target] = []
    skipped: list[str] = []
    complete = True
    try:
        fr = free_algebra(v, bound.max_generators, budget)
    except BudgetExceeded:
        fr = None

    if fr is not None:
        # Spec route: targets as quotients of the free algebra.  Every
        # congruence of the finite lattice-based free algebra is induced by a
        # principal (open) filter, so this is exhaustive.
        kept: list[FiniteAlgebra] = []
        for cong in all_congruences(fr.algebra):
            if len(set(cong.classes)) > bound.max_target_size:
                continue
            c, _ = quotient(fr.algebra, cong)
            if not _within_caps(c, bound):
                continue
            if any(is_isomorphic(c, k) is not None for k in kept):
                continue
            kept.append(c)
            tgt, why = _decide_target(
                c, f"free({bound.max_generators})-quotient(|C|={c.size})",
                v, bound, budget, check_member=False,
            )
            if tgt is not None:
                targets.append(tgt)
            elif why is not None:
                skipped.append(why)
                complete = False
    else:
        # Catalogue route: all frame duals within the size cap.
        points = bound.max_frame_points
        ceiling = (
            PREORDER_CEILING
            if v.signature is Signature.INTERIOR
            else POSET_CEILING
        )
        if points > ceiling:
            skipped.append(
                f"catalogue limited to frames with {ceiling} points "
                f"(bound asked for {points})"
            )
            complete = False
            points = ceiling
        if v.signature is Signature.BOUNDED_LATTICE and bound.max_target_size > 4:
            # Non-distributive lattices start at five elements and have no
            # poset dual; the catalogue only covers the distributive ones.
            skipped.append("catalogue incomplete above size 4 for bare lattices")
            complete = False
        for label, c in _catalog_candidates(v.signature, points):
            if not _within_caps(c, bound):
                continue
            tgt, why = _decide_target(
                c, label, v, bound, budget, check_member=True
            )
            if tgt is not None:
                targets.append(tgt)
            elif why is not None:
                skipped.append(why)
                complete = False
    return targets, skipped, complete


# --- the search -------------------------------------------------------------------


def _ge_witness(ui: Unifier, uj: Unifier) -> Optional[Homomorphism]:
    """A homomorphism h with uj.u = h . ui.u, if one exists."""
    partial: dict[int, int] = {}
    for x in range(ui.u.dom.size):
        img, want = ui.u.mapping[x], uj.u.mapping[x]
        if partial.setdefault(img, want) != want:
            return None
    maps = _search_homs(ui.target, uj.target, partial=partial, limit=1)
    if not maps:
        return None
    return Homomorphism(ui.target, uj.target, maps[0])


def _order_of(unifiers: list[Unifier]) -> QuasiOrderedSet:
    n = len(unifiers)
    ge = [
        [(_ge_witness(unifiers[i], unifiers[j]) is not None) for j in range(n)]
        for i in range(n)
    ]
    q = QuasiOrderedSet(
        tuple(f"u{i}" for i in range(n)), tuple(tuple(r) for r in ge)
    )
    q.check()
    return q


def unifier_search(
    a: FiniteAlgebra,
    v: VarietySpec,
    bound: Optional[SearchBound] = None,
    budget: Optional[int] = None,
) -> UnifierSet:
    """All unifiers of a in v whose targets fit the bound.

    Unifiers into the same target are deduplicated up to automorphisms of the
    target composed after the map; distinct targets are pairwise
    non-isomorphic, so that exhausts "isomorphism commuting with u".  The
    result is flagged incomplete when any candidate target had to be skipped
    on budget grounds.
    """
    if a.signature is not v.signature:
        raise SignatureMismatchError("algebra and variety are in different signatures")
    bound = SearchBound() if bound is None else bound
    targets, skipped, complete = _discover_targets(v, bound, budget)

    unifiers: list[Unifier] = []
    for tgt in targets:
        auts = automorphisms(tgt.algebra)
        seen: set[tuple[int, ...]] = set()
        for h in enumerate_homs(a, tgt.algebra):
            orbit = min(
                tuple(phi.mapping[x] for x in h.mapping) for phi in auts
            )
            if orbit in seen:
                continue
            seen.add(orbit)
            rep = Homomorphism(a, tgt.algebra, orbit)
            unifiers.append(Unifier(rep, tgt.section, tgt.presentation))

    return UnifierSet(
        algebra=a,
        variety=v,
        unifiers=tuple(unifiers),
        order=_order_of(unifiers),
        bound=bound,
        complete=complete,
        skipped=tuple(skipped),
    )


@dataclass(frozen=True)
class TypeOutcome:
    """Unification type verdict for an algebra at a bound.

    kind is one of "1", "omega", "inconclusive-at-bound", "not-unifiable";
    the unifier set underlying the verdict is attached for reporting.
    """

    kind: str
    mu_size: Optional[int]
    unifier_set: Optional[UnifierSet]
    note: str = ""

    def label(self) -> str:
        if self.kind == "omega":
            return f"omega({self.mu_size})"
        return self.kind


def algebra_type(
    a: FiniteAlgebra,
    v: VarietySpec,
    bound: Optional[SearchBound] = None,
    budget: Optional[int] = None,
) -> TypeOutcome:
    """Classify the unifier quasiorder, requiring stability one bound higher.

    The verdict is only final when the search is complete at the bound and
    raising max_generators by one leaves the mu-set unchanged up to mutual
    generality; types infinity and 0 cannot be witnessed by a bounded search,
    so they are never claimed.
    """
    bound = SearchBound() if bound is None else bound
    if not unifiable(a, v):
        return TypeOutcome("not-unifiable", None, None, "no map onto the minimal target")
    us = unifier_search(a, v, bound, budget)
    if not us.complete:
        return TypeOutcome(
            "inconclusive-at-bound", None, us, "; ".join(us.skipped)
        )
    wider = SearchBound(bound.max_generators + 1, bound.max_target_size)
    us2 = unifier_search(a, v, wider, budget)
    if not us2.complete:
        return TypeOutcome(
            "inconclusive-at-bound", None, us,
            "stability probe incomplete: " + "; ".join(us2.skipped),
        )
    mu1 = [us.unifiers[i] for i in us.mu_indices()]
    mu2 = [us2.unifiers[i] for i in us2.mu_indices()]
    if not _mu_equivalent(mu1, mu2):
        return TypeOutcome(
            "inconclusive-at-bound", None, us,
            "mu-set changed when max_generators increased by one",
        )
    t = classify_type(us.order)
    return TypeOutcome(t.kind, t.mu_size, us)


def _mu_equivalent(mu1: list[Unifier], mu2: list[Unifier]) -> bool:
    def equiv(x: Unifier, y: Unifier) -> bool:
        return _ge_witness(x, y) is not None and _ge_witness(y, x) is not None

    return all(any(equiv(x, y) for x in mu1) for y in mu2) and all(
        any(equiv(x, y) for y in mu2) for x in mu1
    )


# --- transfer along the free Boolean extension ------------------------------------


class TransferError(Exception):
    """A verified postcondition of the transfer map failed; carries a witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class UnknownVerdict(Exception):
    """A projectivity or presentation verdict could not be decided in budget."""


def tau(us: UnifierSet, budget: Optional[int] = None) -> UnifierSet:
    """Transport a complete unifier set along the free Boolean extension.

    Each unifier (u, M) maps to (B(u), B(M)) inside the variety generated by
    the extensions of the source variety's generators.  The image order is
    recomputed from scratch by homomorphism search and checked to contain the
    input order under the index bijection; injectivity is checked by
    verifying that mutual generality in the image reflects back.  Images
    whose projectivity cannot be decided raise UnknownVerdict rather than
    passing silently.
    """
    if not us.complete:
        raise ValueError("transfer requires a complete unifier set")
    if us.algebra.signature not in (Signature.BOUNDED_LATTICE, Signature.HEYTING):
        raise SignatureMismatchError(
            "transfer starts from a bounded-lattice or Heyting unifier set"
        )
    ext_a = boolean_extension(us.algebra)
    v2 = variety_of(*[boolean_extension(g).extension for g in us.variety.generators])

    out: list[Unifier] = []
    for i, un in enumerate(us.unifiers):
        ext_m = boolean_extension(un.target)
        bu = extension_hom(un.u, ext_a, ext_m)
        bm = ext_m.extension
        pr = is_projective(bm, v2, budget)
        if pr.verdict is None:
            raise UnknownVerdict(
                f"projectivity of the image of target {i} undecided: {pr.note}"
            )
        if pr.verdict is False:
            raise TransferError(
                f"image of target {i} is not projective in the extension variety",
                witness=un,
            )
        try:
            pres, _ = presentation_of(bm, v2, budget)
        except BudgetExceeded as e:
            raise UnknownVerdict(f"presentation of image target {i}: {e}")
        assert pr.section is not None
        out.append(Unifier(bu, pr.section, pres))

    order = _order_of(out)
    n = len(out)
    for i in range(n):
        for j in range(n):
            if us.order.ge[i][j] and not order.ge[i][j]:
                raise TransferError(
                    f"generality {us.order.elements[i]} >= {us.order.elements[j]} "
                    "lost in the image",
                    witness=(us.unifiers[i], us.unifiers[j]),
                )
            if (
                order.ge[i][j]
                and order.ge[j][i]
                and not (us.order.ge[i][j] and us.order.ge[j][i])
            ):
                raise TransferError(
                    f"distinct classes {us.order.elements[i]}, "
                    f"{us.order.elements[j]} collapsed in the image",
                    witness=(us.unifiers[i], us.unifiers[j]),
                )

    return UnifierSet(
        algebra=ext_a.extension,
        variety=v2,
        unifiers=tuple(out),
        order=order,
        bound=us.bound,
        complete=True,
        skipped=(),
    )

"""Named verification suites over generated frame corpora.

Each suite sweeps one family of structural facts exhaustively at desk scale
and returns a SuiteReport.  A failing case carries serialized witness
documents (algebras and homomorphisms in the file format) so it can be
replayed standalone; a verdict that the budget cannot decide is recorded as
a skip, never as a pass.  For fixed inputs every field of a report except
the wall-time one is deterministic.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    Signature,
    _search_homs,
    enumerate_homs,
    identity_hom,
    is_isomorphic,
    two_element,
    validate,
)
from .frames import (
    Preorder,
    chain_poset,
    cluster,
    enumerate_posets,
    enumerate_preorders,
    heyting_dual,
    interior_dual,
    simple_monadic_4,
)
from .functors import (
    boolean_extension,
    extension_hom,
    heyting_comparison_iso,
    open_algebra,
    open_restriction,
    star_algebra,
    star_comparison_iso,
    star_restriction,
)
from .serialize import algebra_to_document, hom_to_document, preorder_to_document
from .unify import (
    SearchBound,
    TransferError,
    UnknownVerdict,
    _ge_witness,
    algebra_type,
    tau,
    unifiable,
    unifier_search,
)
from .varieties import (
    BudgetExceeded,
    VarietySpec,
    free_algebra,
    grz_check,
    grz_check_literal,
    is_projective,
    member,
    present,
    variety_of,
)

__all__ = [
    "CaseFailure",
    "CaseSkip",
    "SuiteReport",
    "suite_roundtrips",
    "suite_star",
    "suite_grz",
    "suite_fullness",
    "suite_unification",
    "suite_projectivity",
    "ALL_SUITES",
]


@dataclass(frozen=True)
class CaseFailure:
    case: str
    witnesses: tuple[dict, ...]


@dataclass(frozen=True)
class CaseSkip:
    case: str
    reason: str


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    params: tuple[tuple[str, object], ...]
    cases: int
    failures: tuple[CaseFailure, ...]
    skips: tuple[CaseSkip, ...]
    notes: tuple[tuple[str, object], ...]
    ms: int

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_document(self) -> dict:
        return {
            "suite": self.suite,
            "params": dict(self.params),
            "cases": self.cases,
            "failures": [
                {"case": f.case, "witnesses": list(f.witnesses)} for f in self.failures
            ],
            "skips": [{"case": s.case, "reason": s.reason} for s in self.skips],
            "notes": [[k, v] for k, v in self.notes],
            "ms": self.ms,
        }


@dataclass
class _Part:
    """One corpus item's contribution, merged in corpus order."""

    cases: int = 0
    failures: list[CaseFailure] = field(default_factory=list)
    skips: list[CaseSkip] = field(default_factory=list)
    notes: list[tuple[str, object]] = field(default_factory=list)

    def fail(self, case: str, *witnesses: dict) -> None:
        self.failures.append(CaseFailure(case, tuple(witnesses)))

    def run(self, case: str, check: Callable[[], list[dict]]) -> None:
        """One case: check() returns witness documents, empty meaning pass."""
        self.cases += 1
        try:
            wits = check()
        except BudgetExceeded as e:
            self.skips.append(CaseSkip(case, str(e)))
            return
        except Exception as e:  # a crash is a failure, not a silent pass
            self.fail(case, {"kind": "error", "message": f"{type(e).__name__}: {e}"})
            return
        if wits:
            self.fail(case, *wits)


def _fan(items: Sequence, worker: Callable, jobs: int) -> list[_Part]:
    if jobs <= 1:
        return [worker(it) for it in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(worker, items))


def _assemble(
    suite: str,
    params: list[tuple[str, object]],
    parts: Sequence[_Part],
    t0: float,
) -> SuiteReport:
    return SuiteReport(
        suite=suite,
        params=tuple(params),
        cases=sum(p.cases for p in parts),
        failures=tuple(f for p in parts for f in p.failures),
        skips=tuple(s for p in parts for s in p.skips),
        notes=tuple(n for p in parts for n in p.notes),
        ms=int((time.monotonic() - t0) * 1000),
    )


def _flab(p: Preorder) -> str:
    kind = "poset" if p.is_poset else "preorder"
    return f"{kind}:{p.size}:{p.encoding()}"


def _err_doc(msg: str) -> dict:
    return {"kind": "error", "message": msg}


def _table_case(part: _Part, label: str, a: FiniteAlgebra) -> None:
    """Corpus hygiene: one corrupted table entry must surface here even when
    the structural checks downstream happen not to exercise it."""

    def go() -> list[dict]:
        bad = validate(a)
        if bad:
            return [_err_doc("; ".join(str(v) for v in bad)), algebra_to_document(a)]
        return []

    part.run(f"tables/{label}", go)


# --- round trips --------------------------------------------------------------


def check_roundtrip_heyting(l: FiniteAlgebra) -> list[dict]:
    """The open part of the extension of l is isomorphic to l, canonically."""
    bad = validate(l)
    if bad:
        return [_err_doc("; ".join(str(v) for v in bad)), algebra_to_document(l)]
    try:
        heyting_comparison_iso(l)
    except (AssertionError, ValueError) as e:
        return [_err_doc(str(e)), algebra_to_document(l)]
    return []


def check_roundtrip_interior(a: FiniteAlgebra) -> list[dict]:
    """The extension of the open part of a is isomorphic to the star part."""
    bad = validate(a)
    if bad:
        return [_err_doc("; ".join(str(v) for v in bad)), algebra_to_document(a)]
    try:
        star_comparison_iso(a)
    except (AssertionError, ValueError) as e:
        return [_err_doc(str(e)), algebra_to_document(a)]
    return []


_star_ctx = lru_cache(maxsize=None)(star_comparison_iso)


def check_roundtrip_hom(h: Homomorphism) -> list[dict]:
    """Extending the open restriction of h agrees with h on the star parts.

    With psi the canonical comparison isomorphisms and emb the star
    inclusions, emb . psi . ext(open(h)) must equal h . emb . psi.
    """
    psi1, ext1, sa1 = _star_ctx(h.dom)
    psi2, ext2, sa2 = _star_ctx(h.cod)
    oh = open_restriction(h)
    boh = extension_hom(oh, ext1, ext2)
    lhs = boh.then(psi2).then(sa2.embedding)
    rhs = psi1.then(sa1.embedding).then(h)
    if lhs.mapping != rhs.mapping:
        return [hom_to_document(h), hom_to_document(boh)]
    return []


def suite_roundtrips(
    max_poset: int = 5, max_preorder: int = 3, jobs: int = 1
) -> SuiteReport:
    """Both object-level round trips, plus the hom-level identity on all
    homomorphisms between interior duals."""
    t0 = time.monotonic()
    posets = enumerate_posets(max_poset)
    preorders = enumerate_preorders(max_preorder)

    def on_poset(p: Preorder) -> _Part:
        part = _Part()
        part.run(f"roundtrip-heyting/{_flab(p)}", lambda: check_roundtrip_heyting(heyting_dual(p)))
        return part

    duals = [(q, interior_dual(q)) for q in preorders]

    def on_preorder(item) -> _Part:
        q, a = item
        part = _Part()
        part.run(f"roundtrip-interior/{_flab(q)}", lambda: check_roundtrip_interior(a))
        return part

    def on_pair(pair) -> _Part:
        (q1, a1), (q2, a2) = pair
        part = _Part()

        def go() -> list[dict]:
            for h in enumerate_homs(a1, a2):
                wits = check_roundtrip_hom(h)
                if wits:
                    return wits
            return []

        part.run(f"roundtrip-hom/{_flab(q1)}->{_flab(q2)}", go)
        return part

    parts = _fan(posets, on_poset, jobs)
    parts += _fan(duals, on_preorder, jobs)
    parts += _fan([(d1, d2) for d1 in duals for d2 in duals], on_pair, jobs)
    return _assemble(
        "roundtrips",
        [("max_poset", max_poset), ("max_preorder", max_preorder)],
        parts,
        t0,
    )


# --- star lemmas ----------------------------------------------------------------


def check_no_retraction(a: FiniteAlgebra) -> list[dict]:
    """When the star part is proper, no homomorphism a -> star(a) fixes it."""
    sa = star_algebra(a)
    if sa.is_whole:
        return []
    fixing = {sa.embedding.mapping[i]: i for i in range(sa.star.size)}
    found = _search_homs(a, sa.star, partial=fixing, limit=1)
    if found:
        return [hom_to_document(Homomorphism(a, sa.star, found[0])), algebra_to_document(a)]
    return []


def check_star_restriction_hom(h: Homomorphism) -> list[dict]:
    """The restriction of h to the star parts is a homomorphism and inherits
    onto / one-one from h."""
    hs = star_restriction(h)
    bad = hs.defects()
    if bad:
        return [_err_doc("; ".join(str(v) for v in bad)), hom_to_document(h)]
    if h.is_onto and not hs.is_onto:
        return [_err_doc("restriction of an onto map is not onto"), hom_to_document(h)]
    if h.is_injective and not hs.is_injective:
        return [_err_doc("restriction of a one-one map is not one-one"), hom_to_document(h)]
    return []


def check_retraction_pair(p: Homomorphism, q: Homomorphism) -> list[dict]:
    """A retraction pair restricts to a retraction pair of the star parts."""
    ps, qs = star_restriction(p), star_restriction(q)
    if qs.then(ps).mapping != identity_hom(qs.dom).mapping:
        return [hom_to_document(p), hom_to_document(q)]
    return []


def check_star_idempotent(a: FiniteAlgebra) -> list[dict]:
    """The star part is itself a *-algebra."""
    if not star_algebra(star_algebra(a).star).is_whole:
        return [algebra_to_document(a)]
    return []


def suite_star(
    max_preorder: int = 4, hom_max_preorder: int = 3, jobs: int = 1
) -> SuiteReport:
    """No retraction onto a proper star part; restriction to star parts is a
    homomorphism preserving onto and one-one; retraction pairs restrict;
    star parts are *-algebras."""
    t0 = time.monotonic()
    preorders = enumerate_preorders(max_preorder)
    duals = [(q, interior_dual(q)) for q in preorders]

    def on_alg(item) -> _Part:
        q, a = item
        part = _Part()
        _table_case(part, _flab(q), a)
        part.run(f"retract/{_flab(q)}", lambda: check_no_retraction(a))
        part.run(f"star-of-star/{_flab(q)}", lambda: check_star_idempotent(a))
        return part

    small = [(q, a) for q, a in duals if q.size <= hom_max_preorder]

    def on_pair(pair) -> _Part:
        (q1, a1), (q2, a2) = pair
        part = _Part()
        homs = enumerate_homs(a1, a2)

        def restr() -> list[dict]:
            for h in homs:
                wits = check_star_restriction_hom(h)
                if wits:
                    return wits
            return []

        def pairs() -> list[dict]:
            for p in homs:
                if not p.is_onto:
                    continue
                sec = _search_homs(
                    a2, a1, candidate_filter=lambda x, v: p.mapping[v] == x, limit=1
                )
                if not sec:
                    continue
                wits = check_retraction_pair(p, Homomorphism(a2, a1, sec[0]))
                if wits:
                    return wits
            return []

        part.run(f"star-restrict/{_flab(q1)}->{_flab(q2)}", restr)
        part.run(f"retract-pair/{_flab(q1)}->{_flab(q2)}", pairs)
        return part

    parts = _fan(duals, on_alg, jobs)
    parts += _fan([(d1, d2) for d1 in small for d2 in small], on_pair, jobs)
    return _assemble(
        "star",
        [("max_preorder", max_preorder), ("hom_max_preorder", hom_max_preorder)],
        parts,
        t0,
    )


# --- the Grzegorczyk dichotomy ----------------------------------------------------


def check_grz_frame(q: Preorder, literal_oracle: bool = False) -> list[dict]:
    """The implemented identity holds exactly on duals of antisymmetric frames.

    With literal_oracle the verbatim transcribed form is held to the same
    standard, which is known to fail on the two-point cluster.
    """
    a = interior_dual(q)
    verdict = grz_check_literal(a) if literal_oracle else grz_check(a)
    if verdict != q.is_poset:
        return [preorder_to_document(q), algebra_to_document(a)]
    return []


def check_grz_implies_star(a: FiniteAlgebra) -> list[dict]:
    if grz_check(a) and not star_algebra(a).is_whole:
        return [algebra_to_document(a)]
    return []


def suite_grz(
    max_preorder: int = 4, literal_oracle: bool = False, jobs: int = 1
) -> SuiteReport:
    """Dichotomy against frame antisymmetry, side-by-side verdicts for the
    verbatim form, and the implication to star-wholeness."""
    t0 = time.monotonic()
    preorders = enumerate_preorders(max_preorder)

    def on_frame(q: Preorder) -> _Part:
        part = _Part()
        a = interior_dual(q)
        _table_case(part, _flab(q), a)
        part.run(f"grz/{_flab(q)}", lambda: check_grz_frame(q, literal_oracle))
        part.run(f"grz-star/{_flab(q)}", lambda: check_grz_implies_star(a))
        literal = grz_check_literal(a)
        if literal != q.is_poset:
            part.notes.append(
                (
                    f"literal-form-disagrees/{_flab(q)}",
                    {"literal": literal, "antisymmetric": q.is_poset},
                )
            )
        return part

    parts = _fan(preorders, on_frame, jobs)

    reproduced = _Part()
    if max_preorder >= 2:
        reproduced.run(
            "grz/literal-discrepancy-on-2-cluster",
            lambda: []
            if grz_check_literal(interior_dual(cluster(2)))
            != cluster(2).is_poset
            else [_err_doc("expected the verbatim form to disagree on the 2-point cluster")],
        )
    parts.append(reproduced)
    return _assemble(
        "grz",
        [("max_preorder", max_preorder), ("literal_oracle", literal_oracle)],
        parts,
        t0,
    )


# --- fullness of the open functor ----------------------------------------------


def check_fullness_pair(a1: FiniteAlgebra, a2: FiniteAlgebra) -> list[dict]:
    """On a pair of *-algebras the open functor is bijective on hom-sets."""
    oa1, oa2 = open_algebra(a1), open_algebra(a2)
    homs = enumerate_homs(a1, a2)
    image = {open_restriction(h, oa1, oa2).mapping: h for h in homs}
    if len(image) != len(homs):
        seen: dict[tuple, Homomorphism] = {}
        for h in homs:
            k = open_restriction(h, oa1, oa2).mapping
            if k in seen:
                return [hom_to_document(seen[k]), hom_to_document(h)]
            seen[k] = h
    for g in enumerate_homs(oa1.heyting, oa2.heyting):
        if g.mapping not in image:
            return [hom_to_document(g)]
    return []


def check_extension_dichotomy(a1: FiniteAlgebra, a2: FiniteAlgebra) -> list[dict]:
    """Opens-level homs all lift iff every hom between the star parts extends."""
    oa1, oa2 = open_algebra(a1), open_algebra(a2)
    image = {open_restriction(h, oa1, oa2).mapping for h in enumerate_homs(a1, a2)}
    lifts_all = all(
        g.mapping in image for g in enumerate_homs(oa1.heyting, oa2.heyting)
    )
    sa1, sa2 = star_algebra(a1), star_algebra(a2)
    extends_all = True
    witness: Optional[Homomorphism] = None
    for s in enumerate_homs(sa1.star, sa2.star):
        wanted = {
            sa1.embedding.mapping[x]: sa2.embedding.mapping[s.mapping[x]]
            for x in range(sa1.star.size)
        }
        if not _search_homs(a1, a2, partial=wanted, limit=1):
            extends_all = False
            witness = s
            break
    if lifts_all != extends_all:
        wits = [
            _err_doc(
                f"open-level homs all lift: {lifts_all}; "
                f"star-level homs all extend: {extends_all}"
            )
        ]
        if witness is not None:
            wits.append(hom_to_document(witness))
        return wits
    return []


def check_cluster_counterexample() -> tuple[list[dict], Optional[dict]]:
    """On the two-point-cluster algebra the identity between open parts has no
    preimage under the open functor; returns (failure witnesses, note payload)."""
    a = interior_dual(cluster(2))
    sa = star_algebra(a)
    oa, ost = open_algebra(a), open_algebra(sa.star)
    back = {v: i for i, v in enumerate(sa.embedding.mapping)}
    e_mapping = tuple(ost.from_source(back[x]) for x in oa.open_indices)
    e = Homomorphism(oa.heyting, ost.heyting, e_mapping)
    if e.defects():
        return [_err_doc("canonical opens map is not a homomorphism")], None
    for h in enumerate_homs(a, sa.star):
        if open_restriction(h, oa, ost).mapping == e.mapping:
            return [hom_to_document(h)], None
    return [], hom_to_document(e)


def suite_fullness(max_poset: int = 3, jobs: int = 1) -> SuiteReport:
    """Bijectivity of the open functor on hom-sets of *-algebra pairs, the
    extension dichotomy, the cluster counterexample, and preservation of
    projectivity through the open functor."""
    t0 = time.monotonic()
    posets = enumerate_posets(max_poset)
    duals = [(p, interior_dual(p)) for p in posets]

    def on_pair(pair) -> _Part:
        (p1, a1), (p2, a2) = pair
        part = _Part()
        part.run(
            f"full/{_flab(p1)}->{_flab(p2)}", lambda: check_fullness_pair(a1, a2)
        )
        part.run(
            f"extends/{_flab(p1)}->{_flab(p2)}",
            lambda: check_extension_dichotomy(a1, a2),
        )
        return part

    parts = _fan([(d1, d2) for d1 in duals for d2 in duals], on_pair, jobs)

    tail = _Part()
    tail.cases += 1
    try:
        wits, note = check_cluster_counterexample()
    except Exception as e:
        wits, note = [_err_doc(f"{type(e).__name__}: {e}")], None
    if wits:
        tail.failures.append(CaseFailure("full/cluster2-no-preimage", tuple(wits)))
    elif note is not None:
        tail.notes.append(("full/cluster2-unliftable-opens-map", note))
    tail.run(
        "extends/cluster2-dichotomy",
        lambda: check_extension_dichotomy(
            interior_dual(cluster(2)), star_algebra(interior_dual(cluster(2))).star
        ),
    )

    def proj_restrict(part: _Part, p: Preorder, a: FiniteAlgebra) -> None:
        try:
            va = variety_of(a)
            gv = variety_of(open_algebra(a).heyting)
        except Exception as e:
            part.cases += 1
            part.fail(f"proj-open/{_flab(p)}", _err_doc(f"{type(e).__name__}: {e}"))
            return
        for name, b in (("2", two_element(Signature.INTERIOR)), ("gen", a)):
            case = f"proj-open/{_flab(p)}/{name}"
            counted = False
            try:
                if not member(b, va):
                    continue
                part.cases += 1
                counted = True
                pb = is_projective(b, va)
                if pb.verdict is None:
                    part.skips.append(CaseSkip(case, pb.note or "projectivity undecided"))
                    continue
                if not pb.verdict:
                    continue
                po = is_projective(open_algebra(b).heyting, gv)
                if po.verdict is None:
                    part.skips.append(CaseSkip(case, po.note or "projectivity undecided"))
                elif not po.verdict:
                    part.fail(case, algebra_to_document(b))
            except BudgetExceeded as e:
                if not counted:
                    part.cases += 1
                part.skips.append(CaseSkip(case, str(e)))
            except Exception as e:
                if not counted:
                    part.cases += 1
                part.fail(case, _err_doc(f"{type(e).__name__}: {e}"))

    for p, a in duals:
        pr = _Part()
        _table_case(pr, _flab(p), a)
        proj_restrict(pr, p, a)
        parts.append(pr)
    parts.append(tail)
    return _assemble("fullness", [("max_poset", max_poset)], parts, t0)


# --- unification and transfer ---------------------------------------------------


def _match_unifiers(left, right) -> bool:
    """Mutual-interpretability matching: every unifier on each side has an
    equivalent partner on the other."""
    for x in left:
        if not any(_ge_witness(x, y) and _ge_witness(y, x) for y in right):
            return False
    for y in right:
        if not any(_ge_witness(x, y) and _ge_witness(y, x) for x in left):
            return False
    return True


def suite_unification(
    bound: Optional[SearchBound] = None, max_poset: int = 3, jobs: int = 1
) -> SuiteReport:
    """Transfer of bounded unifier sets across the extension functor, for the
    variety of each Heyting dual in the poset corpus."""
    t0 = time.monotonic()
    bd = SearchBound() if bound is None else bound
    posets = enumerate_posets(max_poset)

    def on_poset(p: Preorder) -> _Part:
        part = _Part()
        lbl = _flab(p)
        l = heyting_dual(p)
        v = variety_of(l)
        _table_case(part, lbl, l)
        part.run(
            f"unifiable/{lbl}",
            lambda: [] if unifiable(l, v) else [algebra_to_document(l)],
        )
        part.cases += 1
        try:
            us = unifier_search(l, v, bd)
        except BudgetExceeded as e:
            part.skips.append(CaseSkip(f"search/{lbl}", str(e)))
            return part
        except Exception as e:
            part.fail(f"search/{lbl}", _err_doc(f"{type(e).__name__}: {e}"))
            return part
        if not us.complete:
            part.skips.append(
                CaseSkip(f"search/{lbl}", "incomplete: " + "; ".join(us.skipped))
            )
            return part

        part.cases += 1
        try:
            image = tau(us)
        except (UnknownVerdict, BudgetExceeded) as e:
            part.skips.append(CaseSkip(f"tau/{lbl}", str(e)))
            return part
        except Exception as e:
            part.fail(f"tau/{lbl}", _err_doc(f"{type(e).__name__}: {e}"),
                      algebra_to_document(l))
            return part

        def presentations() -> list[dict]:
            for un in image.unifiers:
                replay = present(image.variety, un.presentation_of_target)
                if not is_isomorphic(replay.algebra, un.target):
                    return [algebra_to_document(un.target)]
            return []

        part.run(f"tau-presentations/{lbl}", presentations)

        n = len(us.unifiers)
        src, img = us.order.ge, image.order.ge

        def injective() -> list[dict]:
            for i in range(n):
                for j in range(n):
                    if i != j and img[i][j] and img[j][i]:
                        if not (src[i][j] and src[j][i]):
                            return [
                                hom_to_document(us.unifiers[i].u),
                                hom_to_document(us.unifiers[j].u),
                            ]
            return []

        def monotone() -> list[dict]:
            for i in range(n):
                for j in range(n):
                    if src[i][j] and not img[i][j]:
                        return [
                            hom_to_document(us.unifiers[i].u),
                            hom_to_document(us.unifiers[j].u),
                        ]
            return []

        part.run(f"tau-injective/{lbl}", injective)
        part.run(f"tau-monotone/{lbl}", monotone)

        part.cases += 1
        try:
            ext = boolean_extension(l)
            other = unifier_search(ext.extension, variety_of(ext.extension), bd)
        except BudgetExceeded as e:
            part.skips.append(CaseSkip(f"tau-surjective/{lbl}", str(e)))
            return part
        except Exception as e:
            part.fail(f"tau-surjective/{lbl}", _err_doc(f"{type(e).__name__}: {e}"))
            return part
        if not other.complete:
            part.skips.append(
                CaseSkip(
                    f"tau-surjective/{lbl}", "incomplete: " + "; ".join(other.skipped)
                )
            )
            return part
        part.run(
            f"tau-surjective/{lbl}",
            lambda: []
            if _match_unifiers(image.unifiers, other.unifiers)
            else [algebra_to_document(ext.extension)],
        )
        part.run(
            f"mu-cardinality/{lbl}",
            lambda: []
            if len(us.mu_indices()) == len(other.mu_indices())
            else [
                _err_doc(
                    f"mu sizes differ: {len(us.mu_indices())} vs "
                    f"{len(other.mu_indices())}"
                )
            ],
        )
        return part

    parts = _fan(posets, on_poset, jobs)

    tail = _Part()
    m4 = simple_monadic_4()
    vm = variety_of(m4)
    tail.run(
        "not-unifiable/simple-monadic-4",
        lambda: [] if not unifiable(m4, vm) else [algebra_to_document(m4)],
    )
    tail.run(
        "empty-set/simple-monadic-4",
        lambda: []
        if not unifier_search(m4, vm, bd).unifiers
        else [algebra_to_document(m4)],
    )
    if max_poset >= 2:
        ch = heyting_dual(chain_poset(2))

        def chain3_type() -> list[dict]:
            out = algebra_type(ch, variety_of(ch), bd)
            if out.kind != "1":
                return [_err_doc(f"expected type 1, got {out.label()}")]
            return []

        tail.run("type-1/chain3", chain3_type)
    parts.append(tail)
    return _assemble(
        "unification",
        [
            ("max_poset", max_poset),
            ("max_generators", bd.max_generators),
            ("max_target_size", bd.max_target_size),
        ],
        parts,
        t0,
    )


# --- projectivity equivalences ----------------------------------------------------


def check_projectivity_equivalences(
    b: FiniteAlgebra, va: VarietySpec
) -> tuple[int, list[tuple[str, list[dict]]], list[tuple[str, str]]]:
    """The three projectivity equivalences on one instance.

    Returns (cases, failures, skips) where failures pair a sub-case name with
    witnesses and skips pair it with a reason.  Sub-cases whose hypothesis
    does not apply (instance not a *-algebra) are not counted.
    """
    cases = 0
    fails: list[tuple[str, list[dict]]] = []
    skips: list[tuple[str, str]] = []

    gv = variety_of(*[open_algebra(g).heyting for g in va.generators])
    sv = variety_of(*[star_algebra(g).star for g in va.generators])
    sb = star_algebra(b)

    verdicts: dict[str, Optional[bool]] = {}

    def get(name: str, alg: FiniteAlgebra, vs: VarietySpec) -> Optional[bool]:
        if name not in verdicts:
            try:
                verdicts[name] = is_projective(alg, vs).verdict
            except BudgetExceeded:
                verdicts[name] = None
        return verdicts[name]

    def bicond(case: str, lhs_name, lhs_alg, lhs_vs, rhs_name, rhs_alg, rhs_vs):
        nonlocal cases
        cases += 1
        lv = get(lhs_name, lhs_alg, lhs_vs)
        rv = get(rhs_name, rhs_alg, rhs_vs)
        if lv is None or rv is None:
            skips.append((case, f"undecided: {lhs_name}={lv} {rhs_name}={rv}"))
        elif lv != rv:
            fails.append(
                (case, [_err_doc(f"{lhs_name}={lv} but {rhs_name}={rv}"),
                        algebra_to_document(b)])
            )

    ob = open_algebra(b).heyting
    if sb.is_whole:
        bicond("star-vs-open", "b-in-va", b, va, "open-in-gamma", ob, gv)
    bicond("open-vs-starpart", "open-in-gamma", ob, gv, "starpart-in-star", sb.star, sv)
    bicond("starpart-two-varieties", "starpart-in-star", sb.star, sv,
           "starpart-in-va", sb.star, va)
    return cases, fails, skips


def suite_projectivity(
    max_poset: int = 3, max_instance_preorder: int = 2, jobs: int = 1
) -> SuiteReport:
    """Projectivity equivalences across the open and star constructions, on
    every corpus instance inside every corpus variety where both sides of a
    biconditional are decided."""
    t0 = time.monotonic()
    varieties: list[tuple[str, VarietySpec]] = [
        (f"Eq({_flab(p)})", variety_of(interior_dual(p)))
        for p in enumerate_posets(max_poset)
    ]
    varieties.append(
        (f"Eq({_flab(cluster(2))})", variety_of(interior_dual(cluster(2))))
    )
    instances: list[tuple[str, FiniteAlgebra]] = [
        (_flab(q), interior_dual(q))
        for q in enumerate_preorders(max_instance_preorder)
    ]

    def on_variety(item) -> _Part:
        vlabel, va = item
        part = _Part()
        for ilabel, b in instances:
            case = f"proj/{vlabel}/{ilabel}"
            try:
                if not member(b, va):
                    continue
            except BudgetExceeded as e:
                part.skips.append(CaseSkip(case, str(e)))
                continue
            try:
                cases, fails, skips = check_projectivity_equivalences(b, va)
            except BudgetExceeded as e:
                part.cases += 1
                part.skips.append(CaseSkip(case, str(e)))
                continue
            except Exception as e:
                part.cases += 1
                part.fail(case, _err_doc(f"{type(e).__name__}: {e}"))
                continue
            part.cases += cases
            for sub, wits in fails:
                part.fail(f"{case}/{sub}", *wits)
            for sub, reason in skips:
                part.skips.append(CaseSkip(f"{case}/{sub}", reason))

        def two_elem() -> list[dict]:
            t = two_element(Signature.INTERIOR)
            r = is_projective(t, va)
            if r.verdict is None:
                raise BudgetExceeded(r.note or "projectivity undecided")
            return [] if r.verdict else [algebra_to_document(t)]

        part.run(f"proj/{vlabel}/two-element-projective", two_elem)

        def free_projective() -> list[dict]:
            fr = free_algebra(va, 1)
            r = is_projective(fr.algebra, va, generators=fr.gens)
            if r.verdict is None:
                raise BudgetExceeded(r.note or "projectivity undecided")
            if not r.verdict:
                return [_err_doc("free algebra on one name judged non-projective")]
            return []

        part.run(f"proj/{vlabel}/free-on-one-projective", free_projective)
        return part

    parts = _fan(varieties, on_variety, jobs)

    corpus = _Part()
    for ilabel, b in instances:
        _table_case(corpus, ilabel, b)
    for vlabel, va in varieties:
        for k, g in enumerate(va.generators):
            _table_case(corpus, f"{vlabel}[{k}]", g)
    parts.append(corpus)

    tail = _Part()
    m4 = simple_monadic_4()

    def monadic4_case() -> list[dict]:
        r = is_projective(m4, variety_of(m4))
        if r.verdict is None:
            raise BudgetExceeded(r.note or "projectivity undecided")
        return [] if r.verdict is False else [algebra_to_document(m4)]

    tail.run(f"proj/Eq({_flab(cluster(2))})/monadic4-not-projective", monadic4_case)
    parts.append(tail)
    return _assemble(
        "projectivity",
        [("max_poset", max_poset), ("max_instance_preorder", max_instance_preorder)],
        parts,
        t0,
    )


ALL_SUITES: dict[str, Callable[..., SuiteReport]] = {
    "roundtrips": suite_roundtrips,
    "star": suite_star,
    "grz": suite_grz,
    "fullness": suite_fullness,
    "unification": suite_unification,
    "projectivity": suite_projectivity,
}

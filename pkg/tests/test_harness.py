"""Suite behavior: green at desk scale, mutation sensitivity, determinism,
and skip semantics under a starved budget."""

import dataclasses
import json

import pytest

import finalg.harness as harness
from finalg import (
    FiniteAlgebra,
    chain_poset,
    cluster,
    heyting_dual,
    interior_dual,
    suite_fullness,
    suite_grz,
    suite_roundtrips,
    suite_star,
)
from finalg.harness import (
    ALL_SUITES,
    check_roundtrip_heyting,
    check_roundtrip_interior,
)


def broken_interior(a: FiniteAlgebra) -> FiniteAlgebra:
    """One corrupted g-table entry: g(bot) = top violates g(x) <= x."""
    g = a.interior.copy()
    g[a.bot] = a.top
    return FiniteAlgebra(
        signature=a.signature, size=a.size, join=a.join, meet=a.meet,
        bot=a.bot, top=a.top, imp=a.imp, compl=a.compl, interior=g,
    )


def broken_heyting(l: FiniteAlgebra) -> FiniteAlgebra:
    """One corrupted imp-table entry: bot -> bot must be top."""
    i = l.imp.copy()
    i[l.bot, l.bot] = l.bot
    return FiniteAlgebra(
        signature=l.signature, size=l.size, join=l.join, meet=l.meet,
        bot=l.bot, top=l.top, imp=i, compl=l.compl, interior=l.interior,
    )


SMALL = [
    ("roundtrips", dict(max_poset=3, max_preorder=2)),
    ("star", dict(max_preorder=3, hom_max_preorder=2)),
    ("grz", dict(max_preorder=3)),
    ("fullness", dict(max_poset=2)),
    ("unification", dict(max_poset=2)),
    ("projectivity", dict(max_poset=2, max_instance_preorder=2)),
]


@pytest.mark.parametrize("name,kw", SMALL, ids=[s[0] for s in SMALL])
def test_suites_green_at_desk_scale(name, kw):
    r = ALL_SUITES[name](**kw)
    assert r.suite == name
    assert r.cases > 0
    assert r.ok and not r.failures
    json.dumps(r.to_document())  # reports must serialize as-is


def test_registry_lists_exactly_the_six_suites():
    assert sorted(ALL_SUITES) == [
        "fullness", "grz", "projectivity", "roundtrips", "star", "unification",
    ]
    assert all(callable(fn) for fn in ALL_SUITES.values())


def test_report_document_shape():
    r = suite_grz(max_preorder=2)
    d = r.to_document()
    assert list(d) == ["suite", "params", "cases", "failures", "skips", "notes", "ms"]
    assert d["suite"] == "grz"
    assert d["params"] == {"max_preorder": 2, "literal_oracle": False}
    assert d["cases"] == r.cases
    assert isinstance(d["ms"], int)
    # side-by-side verdicts for the verbatim identity land in notes
    assert any(k.startswith("literal-form-disagrees/") for k, _ in r.notes)


def test_grz_literal_oracle_records_the_cluster_failure():
    r = suite_grz(max_preorder=2, literal_oracle=True)
    assert not r.ok
    assert any(f.case.startswith("grz/preorder:2:") for f in r.failures)
    # the meta-case asserting the discrepancy itself still passes
    assert all(f.case != "grz/literal-discrepancy-on-2-cluster" for f in r.failures)


def test_fullness_emits_the_unliftable_opens_map_note():
    r = suite_fullness(max_poset=1)
    note = dict(r.notes).get("full/cluster2-unliftable-opens-map")
    assert note is not None
    assert note["kind"] == "hom"


def test_reports_deterministic_modulo_wall_time():
    a = suite_star(max_preorder=2, hom_max_preorder=2)
    b = suite_star(max_preorder=2, hom_max_preorder=2)
    assert dataclasses.replace(a, ms=0) == dataclasses.replace(b, ms=0)
    da, db = a.to_document(), b.to_document()
    da.pop("ms"), db.pop("ms")
    assert json.dumps(da) == json.dumps(db)


def test_parallel_jobs_do_not_change_the_report():
    a = suite_roundtrips(max_poset=2, max_preorder=2, jobs=1)
    b = suite_roundtrips(max_poset=2, max_preorder=2, jobs=3)
    assert dataclasses.replace(a, ms=0) == dataclasses.replace(b, ms=0)


# one injected single-entry mutation per suite, each caught as a failure
MUTATIONS = [
    ("roundtrips", dict(max_poset=1, max_preorder=2), "interior_dual", chain_poset(2)),
    ("star", dict(max_preorder=2, hom_max_preorder=2), "interior_dual", cluster(2)),
    ("grz", dict(max_preorder=2), "interior_dual", cluster(2)),
    ("fullness", dict(max_poset=2), "interior_dual", chain_poset(2)),
    ("unification", dict(max_poset=2), "heyting_dual", chain_poset(2)),
    (
        "projectivity",
        dict(max_poset=2, max_instance_preorder=2),
        "interior_dual",
        chain_poset(2),
    ),
]


@pytest.mark.parametrize("name,kw,ctor,frame", MUTATIONS, ids=[m[0] for m in MUTATIONS])
def test_single_mutated_table_entry_is_caught(name, kw, ctor, frame, monkeypatch):
    real = getattr(harness, ctor)
    breaker = broken_interior if ctor == "interior_dual" else broken_heyting
    mark = (frame.size, frame.encoding())

    def fake(q):
        a = real(q)
        return breaker(a) if (q.size, q.encoding()) == mark else a

    monkeypatch.setattr(harness, ctor, fake)
    r = ALL_SUITES[name](**kw)
    assert r.failures
    for f in r.failures:
        # every failure carries replayable witness documents
        assert f.witnesses
        assert all(isinstance(w, dict) and "kind" in w for w in f.witnesses)


def test_roundtrip_checks_reject_corrupted_algebras_directly():
    l = heyting_dual(chain_poset(2))
    a = interior_dual(cluster(2))
    assert check_roundtrip_heyting(l) == []
    assert check_roundtrip_interior(a) == []
    assert check_roundtrip_heyting(broken_heyting(l))
    assert check_roundtrip_interior(broken_interior(a))


def test_budget_starvation_yields_skips_not_passes(monkeypatch):
    monkeypatch.setenv("WB_BUDGET", "3")
    r = ALL_SUITES["projectivity"](max_poset=2, max_instance_preorder=2)
    assert not r.failures
    assert r.skips
    assert all(s.reason for s in r.skips)

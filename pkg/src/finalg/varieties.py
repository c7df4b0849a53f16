"""Terms, equational classes, free algebras, presentations, projectivity.

A variety is handled through a finite generating set of algebras: its free
algebra on k names is the subalgebra of the product of all generator-to-the-
assignments powers generated by the k evaluation tuples.  Elements carry
recipes (how they were built from the generators), which is what makes the
universal property executable: a homomorphism out of a free algebra is just
recipe evaluation at the images of the names.

Budgets: free-algebra closure aborts above WB_BUDGET elements (default
20000); full multiplication tables are materialized only up to
WB_TABLE_CAP elements (default 6000) since they are quadratic in size.
Callers treat BudgetExceeded as an explicit "unknown", never as false.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .algebra import (
    Congruence,
    FiniteAlgebra,
    Homomorphism,
    Signature,
    SignatureMismatchError,
    _closure_indices,
    _search_homs,
    _subalgebra_on,
    all_congruences,
    congruence_generated,
    kernel_congruence,
    minimal_generating_seq,
    quotient,
)

DEFAULT_BUDGET = 20000
DEFAULT_TABLE_CAP = 6000


def element_budget() -> int:
    return int(os.environ.get("WB_BUDGET", DEFAULT_BUDGET))


def table_cap() -> int:
    return int(os.environ.get("WB_TABLE_CAP", DEFAULT_TABLE_CAP))


class BudgetExceeded(Exception):
    """Free-algebra construction went past the element or table budget."""

    def __init__(self, message: str, needed: Optional[int] = None):
        super().__init__(message)
        self.needed = needed


# --- terms -------------------------------------------------------------------

_HEADS = ("var", "bot", "top", "join", "meet", "imp", "compl", "interior")
_ARITY = {"var": 0, "bot": 0, "top": 0, "join": 2, "meet": 2, "imp": 2,
          "compl": 1, "interior": 1}
_SYMBOL = {"join": "+", "meet": "·", "imp": "=>"}


@dataclass(frozen=True)
class Term:
    head: str
    args: tuple["Term", ...] = ()
    index: int = 0

    def __post_init__(self):
        if self.head not in _HEADS:
            raise ValueError(f"unknown operation {self.head!r}")
        if len(self.args) != _ARITY[self.head]:
            raise ValueError(f"{self.head} expects {_ARITY[self.head]} arguments")

    @staticmethod
    def var(i: int) -> "Term":
        return Term("var", (), i)

    @staticmethod
    def bot() -> "Term":
        return Term("bot")

    @staticmethod
    def top() -> "Term":
        return Term("top")

    def join(self, other: "Term") -> "Term":
        return Term("join", (self, other))

    def meet(self, other: "Term") -> "Term":
        return Term("meet", (self, other))

    def imp(self, other: "Term") -> "Term":
        return Term("imp", (self, other))

    def compl(self) -> "Term":
        return Term("compl", (self,))

    def interior(self) -> "Term":
        return Term("interior", (self,))

    def closure(self) -> "Term":
        """-g(-x), the dual of the interior operator."""
        return self.compl().interior().compl()

    @property
    def nvars(self) -> int:
        if self.head == "var":
            return self.index + 1
        return max((t.nvars for t in self.args), default=0)

    def __str__(self) -> str:
        if self.head == "var":
            return f"x{self.index}"
        if self.head in ("bot", "top"):
            return self.head
        if self.head == "compl":
            return f"-{self.args[0]}"
        if self.head == "interior":
            return f"g({self.args[0]})"
        return f"({self.args[0]} {_SYMBOL[self.head]} {self.args[1]})"


def eval_term(t: Term, a: FiniteAlgebra, env: Sequence[int]) -> int:
    if t.head == "var":
        return int(env[t.index])
    if t.head == "bot":
        return a.bot
    if t.head == "top":
        return a.top
    if t.head == "compl":
        return int(a.compl[eval_term(t.args[0], a, env)])
    if t.head == "interior":
        return int(a.interior[eval_term(t.args[0], a, env)])
    tab = getattr(a, t.head)
    return int(tab[eval_term(t.args[0], a, env), eval_term(t.args[1], a, env)])


def _eval_term_batch(t: Term, a: FiniteAlgebra, env: Sequence[np.ndarray]) -> np.ndarray:
    if t.head == "var":
        return env[t.index]
    n = env[0].shape[0] if env else 1
    if t.head == "bot":
        return np.full(n, a.bot, dtype=np.intp)
    if t.head == "top":
        return np.full(n, a.top, dtype=np.intp)
    if t.head == "compl":
        return a.compl.astype(np.intp)[_eval_term_batch(t.args[0], a, env)]
    if t.head == "interior":
        return a.interior.astype(np.intp)[_eval_term_batch(t.args[0], a, env)]
    tab = getattr(a, t.head).astype(np.intp)
    return tab[
        _eval_term_batch(t.args[0], a, env), _eval_term_batch(t.args[1], a, env)
    ]


Identity = tuple[Term, Term]


def leq_identity(lhs: Term, rhs: Term) -> Identity:
    """lhs <= rhs, encoded equationally as lhs·rhs = lhs."""
    return (lhs.meet(rhs), lhs)


def satisfies(a: FiniteAlgebra, identity: Identity) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Check an identity over all assignments; witness is the least failing one.

    Assignments are ordered lexicographically as tuples (x0, x1, ...), each
    coordinate ascending.
    """
    lhs, rhs = identity
    nv = max(lhs.nvars, rhs.nvars)
    if nv == 0:
        ok = eval_term(lhs, a, ()) == eval_term(rhs, a, ())
        return (ok, None if ok else ())
    total = a.size ** nv
    if total > 4_000_000:
        raise ValueError("identity has too many assignments to check exhaustively")
    idx = np.arange(total, dtype=np.intp)
    env = []
    for v in range(nv):
        env.append(idx // (a.size ** (nv - 1 - v)) % a.size)
    lv = _eval_term_batch(lhs, a, env)
    rv = _eval_term_batch(rhs, a, env)
    bad = np.nonzero(lv != rv)[0]
    if not len(bad):
        return (True, None)
    w = int(bad[0])
    witness = tuple(int(w // (a.size ** (nv - 1 - v)) % a.size) for v in range(nv))
    return (False, witness)


def grz_identity() -> Identity:
    """g(x + c(x·-g(x))) <= x with c the closure operator -g(-).

    This is the form whose finite models are exactly the algebras whose dual
    preorder is a poset; see grz_identity_literal for the weaker variant.
    """
    x = Term.var(0)
    inner = x.meet(x.interior().compl()).closure()
    return leq_identity(x.join(inner).interior(), x)


def grz_identity_literal() -> Identity:
    """g(x + g(x·-g(x))) <= x, with an interior (not closure) inner operator.

    Strictly weaker on finite algebras: the 4-element simple monadic algebra
    satisfies this but not grz_identity.
    """
    x = Term.var(0)
    inner = x.meet(x.interior().compl()).interior()
    return leq_identity(x.join(inner).interior(), x)


def grz_check(a: FiniteAlgebra) -> bool:
    if a.signature is not Signature.INTERIOR:
        raise SignatureMismatchError("the Grzegorczyk check needs an interior algebra")
    return satisfies(a, grz_identity())[0]


def grz_check_literal(a: FiniteAlgebra) -> bool:
    if a.signature is not Signature.INTERIOR:
        raise SignatureMismatchError("the Grzegorczyk check needs an interior algebra")
    return satisfies(a, grz_identity_literal())[0]


# --- varieties and free algebras ----------------------------------------------


@dataclass(frozen=True)
class VarietySpec:
    """Equational class given by a finite list of generating algebras."""

    generators: tuple[FiniteAlgebra, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a variety spec needs at least one generator")
        sig = self.generators[0].signature
        if any(g.signature is not sig for g in self.generators):
            raise SignatureMismatchError("variety generators must share a signature")
        if all(g.size == 1 for g in self.generators):
            raise ValueError("trivial varieties are out of scope")

    @property
    def signature(self) -> Signature:
        return self.generators[0].signature


def variety_of(*algebras: FiniteAlgebra) -> VarietySpec:
    return VarietySpec(tuple(algebras))


Recipe = tuple  # ("bot",) | ("top",) | ("var", i) | (op, i) | (op, i, j)


@dataclass(frozen=True, eq=False)
class FreeAlgebra:
    """Free algebra of a variety on k names, with recipes for every element."""

    variety: VarietySpec
    arity: int
    algebra: FiniteAlgebra
    gens: tuple[int, ...]
    recipes: tuple[Recipe, ...]

    def eval_at(self, target: FiniteAlgebra, assignment: Sequence[int]) -> tuple[int, ...]:
        """Image of every element under names -> assignment, by recipe replay.

        This is the universal property made concrete; whether the result is a
        homomorphism still depends on target belonging to the variety.
        """
        if target.signature is not self.variety.signature:
            raise SignatureMismatchError("target is in the wrong signature")
        if len(assignment) != self.arity:
            raise ValueError("assignment length differs from the arity")
        vals: list[int] = []
        bin_tabs = dict(target._py_binary)
        un_tabs = dict(target._py_unary)
        for r in self.recipes:
            op = r[0]
            if op == "bot":
                vals.append(target.bot)
            elif op == "top":
                vals.append(target.top)
            elif op == "var":
                vals.append(int(assignment[r[1]]))
            elif len(r) == 2:
                vals.append(un_tabs[op][vals[r[1]]])
            else:
                vals.append(bin_tabs[op][vals[r[1]]][vals[r[2]]])
        return tuple(vals)

    def hom_at(self, target: FiniteAlgebra, assignment: Sequence[int]) -> Homomorphism:
        """eval_at packaged as a homomorphism, verified."""
        h = Homomorphism(self.algebra, target, self.eval_at(target, assignment))
        bad = h.defects()
        if bad:
            raise ValueError("evaluation is not a homomorphism: " + "; ".join(bad))
        return h

    def term_of(self, i: int) -> Term:
        """A term over the names that evaluates to element i."""
        memo: dict[int, Term] = {}

        def build(j: int) -> Term:
            if j in memo:
                return memo[j]
            todo = [j]
            while todo:
                x = todo[-1]
                if x in memo:
                    todo.pop()
                    continue
                r = self.recipes[x]
                deps = [d for d in r[1:] if isinstance(d, int) and r[0] != "var"]
                missing = [d for d in deps if d not in memo]
                if missing:
                    todo.extend(missing)
                    continue
                todo.pop()
                if r[0] == "bot":
                    memo[x] = Term.bot()
                elif r[0] == "top":
                    memo[x] = Term.top()
                elif r[0] == "var":
                    memo[x] = Term.var(r[1])
                else:
                    memo[x] = Term(r[0], tuple(memo[d] for d in r[1:]))
            return memo[j]

        return build(i)


def _void_view(arr: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(arr)
    return a.view(np.dtype((np.void, a.dtype.itemsize * a.shape[1]))).ravel()


@lru_cache(maxsize=64)
def _free_algebra_cached(vs: VarietySpec, k: int, budget: int, cap: int) -> FreeAlgebra:
    sig = vs.signature
    gens = [m for m in vs.generators]
    # positions: every assignment of the k names into every generator
    blocks: list[tuple[int, tuple[int, ...]]] = []
    for gi, m in enumerate(gens):
        for env in itertools.product(range(m.size), repeat=k):
            blocks.append((gi, env))
    P = len(blocks)
    if P == 0:
        raise ValueError("no positions; is the variety spec empty?")
    smax = max(m.size for m in gens)
    pidx = np.arange(P, dtype=np.intp)

    bin_names = ["join", "meet"] + (["imp"] if sig.has_imp else [])
    un_names = (["compl"] if sig.has_compl else []) + (
        ["interior"] if sig.has_interior else []
    )
    commutative = {"join": True, "meet": True, "imp": False}
    stacked2: dict[str, np.ndarray] = {}
    for name in bin_names:
        t3 = np.zeros((P, smax, smax), dtype=np.int16)
        for p, (gi, _) in enumerate(blocks):
            t = getattr(gens[gi], name)
            t3[p, : t.shape[0], : t.shape[1]] = t
        stacked2[name] = t3
    stacked1: dict[str, np.ndarray] = {}
    for name in un_names:
        t2 = np.zeros((P, smax), dtype=np.int16)
        for p, (gi, _) in enumerate(blocks):
            t = getattr(gens[gi], name)
            t2[p, : t.shape[0]] = t
        stacked1[name] = t2

    bot_row = np.array([gens[gi].bot for gi, _ in blocks], dtype=np.int16)
    top_row = np.array([gens[gi].top for gi, _ in blocks], dtype=np.int16)
    gen_rows = [
        np.array([env[i] for _, env in blocks], dtype=np.int16) for i in range(k)
    ]

    capacity = 1024
    buf = np.zeros((capacity, P), dtype=np.int16)
    count = 0
    index: dict[bytes, int] = {}
    recipes: list[Recipe] = []

    def add(row: np.ndarray, recipe: Recipe) -> int:
        nonlocal count, capacity, buf
        key = row.tobytes()
        got = index.get(key)
        if got is not None:
            return got
        if count == capacity:
            capacity *= 2
            grown = np.zeros((capacity, P), dtype=np.int16)
            grown[:count] = buf[:count]
            buf = grown
        buf[count] = row
        index[key] = count
        recipes.append(recipe)
        count += 1
        if count > budget:
            raise BudgetExceeded(
                f"free algebra on {k} names exceeds {budget} elements", needed=count
            )
        return count - 1

    add(bot_row, ("bot",))
    add(top_row, ("top",))
    gen_idx = tuple(add(gen_rows[i], ("var", i)) for i in range(k))

    i = 0
    width = P * buf.dtype.itemsize
    while i < count:
        x = buf[i].astype(np.intp)
        for name in un_names:
            add(stacked1[name][pidx, x].astype(np.int16), (name, i))
        upto = i + 1
        for name in bin_names:
            t3 = stacked2[name]
            ys = buf[:upto].astype(np.intp)
            res = t3[pidx[None, :], x[None, :], ys]
            raw = np.ascontiguousarray(res, dtype=np.int16).tobytes()
            for j in range(upto):
                row_key = raw[j * width : (j + 1) * width]
                if row_key not in index:
                    add(res[j].astype(np.int16), (name, i, j))
            if not commutative[name]:
                res = t3[pidx[None, :], ys, x[None, :]]
                raw = np.ascontiguousarray(res, dtype=np.int16).tobytes()
                for j in range(upto):
                    row_key = raw[j * width : (j + 1) * width]
                    if row_key not in index:
                        add(res[j].astype(np.int16), (name, j, i))
        i += 1

    n = count
    if n > cap:
        raise BudgetExceeded(
            f"free algebra has {n} elements, past the {cap}-element table cap",
            needed=n,
        )
    elems = np.ascontiguousarray(buf[:n])

    # vectorized index recovery: sort rows as opaque byte keys once
    keys = _void_view(elems)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]

    def lookup_rows(rows: np.ndarray) -> np.ndarray:
        qv = _void_view(np.ascontiguousarray(rows, dtype=np.int16))
        pos = np.searchsorted(sorted_keys, qv)
        if np.any(pos >= n) or bool(np.any(sorted_keys[pos] != qv)):
            raise AssertionError("closure produced a row it cannot find back")
        return order[pos]

    tables2: dict[str, np.ndarray] = {}
    for name in bin_names:
        t3 = stacked2[name]
        out = np.zeros((n, n), dtype=np.int16)
        ys = elems.astype(np.intp)
        for i in range(n):
            res = t3[pidx[None, :], elems[i].astype(np.intp)[None, :], ys]
            out[i] = lookup_rows(res).astype(np.int16)
        tables2[name] = out
    tables1: dict[str, np.ndarray] = {}
    for name in un_names:
        res = stacked1[name][pidx[None, :], elems.astype(np.intp)]
        tables1[name] = lookup_rows(res).astype(np.int16)

    alg = FiniteAlgebra(
        signature=sig,
        size=n,
        join=tables2["join"],
        meet=tables2["meet"],
        bot=0,
        top=1,
        imp=tables2.get("imp"),
        compl=tables1.get("compl"),
        interior=tables1.get("interior"),
    )
    return FreeAlgebra(vs, k, alg, gen_idx, tuple(recipes))


# Failed constructions are remembered too: lru_cache does not cache raises,
# and re-running a closure to its budget just to fail again is expensive.
_OVER_BUDGET: dict[tuple, tuple[str, Optional[int]]] = {}


def free_algebra(vs: VarietySpec, k: int, budget: Optional[int] = None) -> FreeAlgebra:
    """The free algebra of the variety on k names.

    Raises BudgetExceeded when the closure grows past the element budget or
    the multiplication tables would be too large to materialize.
    """
    if k < 0:
        raise ValueError("arity must be nonnegative")
    b = element_budget() if budget is None else budget
    key = (vs, k, b, table_cap())
    hit = _OVER_BUDGET.get(key)
    if hit is not None:
        raise BudgetExceeded(hit[0], hit[1])
    try:
        return _free_algebra_cached(vs, k, b, table_cap())
    except BudgetExceeded as e:
        _OVER_BUDGET[key] = (str(e), e.needed)
        raise


# --- membership ----------------------------------------------------------------


def member(
    a: FiniteAlgebra,
    vs: VarietySpec,
    budget: Optional[int] = None,
    generators: Optional[tuple[int, ...]] = None,
) -> bool:
    """Whether a lies in the variety, via the free-algebra evaluation test.

    Evaluating the free algebra on m names at a generating tuple of a is a
    homomorphism onto a exactly when a belongs to the variety.  Raises
    BudgetExceeded (not False) when the free algebra is out of reach.
    """
    if a.signature is not vs.signature:
        raise SignatureMismatchError("algebra and variety are in different signatures")
    gens = minimal_generating_seq(a) if generators is None else tuple(generators)
    fr = free_algebra(vs, len(gens), budget)
    mapping = np.asarray(fr.eval_at(a, gens), dtype=np.intp)
    f = fr.algebra
    if mapping[f.bot] != a.bot or mapping[f.top] != a.top:
        return False
    for name, t in f.binary_tables():
        ta = dict(a.binary_tables())[name].astype(np.intp)
        if not np.array_equal(mapping[t.astype(np.intp)], ta[mapping[:, None], mapping[None, :]]):
            return False
    for name, t in f.unary_tables():
        ta = dict(a.unary_tables())[name].astype(np.intp)
        if not np.array_equal(mapping[t.astype(np.intp)], ta[mapping]):
            return False
    assert len(set(mapping.tolist())) == a.size, "generating tuple failed to generate"
    return True


def member_hs(a: FiniteAlgebra, vs: VarietySpec) -> bool:
    """Membership via subdirect decomposition; no free algebra required.

    The algebra lies in the variety iff each of its subdirectly irreducible
    quotients is a homomorphic image of a subalgebra of some generator.
    Jonsson's lemma applies because every signature here carries lattice
    operations, making the variety congruence-distributive, and then the
    subdirectly irreducible members of the variety of a finite generator set
    lie among images of its subalgebras.  Decides every finite instance; the
    independent counterpart to the free-algebra membership test.
    """
    if a.signature is not vs.signature:
        raise SignatureMismatchError("algebra and variety are in different signatures")
    if a.size == 1:
        return True
    subs = [s for g in vs.generators for s in _all_subalgebras(g)]
    for q in _si_quotients(a):
        if not any(
            s.size >= q.size and _search_homs(s, q, onto=True, limit=1)
            for s in subs
        ):
            return False
    return True


def _si_quotients(a: FiniteAlgebra) -> list[FiniteAlgebra]:
    """Quotients by the meet-irreducible congruences (= the subdirectly
    irreducible images a decomposes into)."""
    congs = all_congruences(a)

    def leq(ci: Congruence, cj: Congruence) -> bool:
        rep: dict[int, int] = {}
        for x in range(a.size):
            if rep.setdefault(ci.classes[x], cj.classes[x]) != cj.classes[x]:
                return False
        return True

    out = []
    for c in congs:
        ups = [d for d in congs if d.classes != c.classes and leq(c, d)]
        covers = [
            d
            for d in ups
            if not any(
                e.classes != d.classes and leq(e, d) for e in ups
            )
        ]
        if len(covers) == 1:
            out.append(quotient(a, c)[0])
    return out


def _all_subalgebras(m: FiniteAlgebra) -> list[FiniteAlgebra]:
    """Every subalgebra of m, as standalone algebras, smallest first.

    Grown by closing one extra element into an already closed set, which
    reaches every subuniverse; sizes here stay small (dual algebras of the
    frame corpus), so the subalgebra count is modest.
    """
    if m.size > 64:
        raise BudgetExceeded("subalgebra enumeration capped at 64 elements", m.size)
    base = tuple(_closure_indices(m, ()))
    seen = {base}
    frontier = [base]
    carriers = []
    while frontier:
        s = frontier.pop()
        carriers.append(s)
        inside = set(s)
        for x in range(m.size):
            if x in inside:
                continue
            t = tuple(_closure_indices(m, s + (x,)))
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    carriers.sort(key=lambda c: (len(c), c))
    return [_subalgebra_on(m, c)[0] for c in carriers]


# --- presentations ---------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """Finitely many names and equations between terms over them."""

    arity: int
    relations: tuple[tuple[Term, Term], ...]

    def __post_init__(self):
        for l, r in self.relations:
            if max(l.nvars, r.nvars) > self.arity:
                raise ValueError("relation mentions a name past the arity")

    def describe(self) -> list[str]:
        return [f"{l} = {r}" for l, r in self.relations]


@dataclass(frozen=True)
class PresentedAlgebra:
    presentation: Presentation
    variety: VarietySpec
    algebra: FiniteAlgebra
    from_free: Homomorphism
    free: FreeAlgebra


def present(vs: VarietySpec, p: Presentation, budget: Optional[int] = None) -> PresentedAlgebra:
    """The algebra presented by names and relations inside the variety."""
    fr = free_algebra(vs, p.arity, budget)
    env = fr.gens
    pairs = [
        (eval_term(l, fr.algebra, env), eval_term(r, fr.algebra, env))
        for l, r in p.relations
    ]
    cong = congruence_generated(fr.algebra, pairs)
    alg, onto = quotient(fr.algebra, cong)
    return PresentedAlgebra(p, vs, alg, onto, fr)


def presentation_of(
    a: FiniteAlgebra,
    vs: VarietySpec,
    budget: Optional[int] = None,
    generators: Optional[tuple[int, ...]] = None,
) -> tuple[Presentation, Homomorphism]:
    """A finite presentation of a member algebra, with the onto evaluation map.

    Greedy: add the lexicographically first kernel pair not yet implied until
    the generated congruence equals the kernel of the evaluation.
    """
    gens = minimal_generating_seq(a) if generators is None else tuple(generators)
    fr = free_algebra(vs, len(gens), budget)
    f0 = fr.hom_at(a, gens)
    ker = kernel_congruence(f0)
    chosen: list[tuple[int, int]] = []
    kc = np.asarray(ker.classes)
    while True:
        cong = congruence_generated(fr.algebra, chosen)
        cc = np.asarray(cong.classes)
        if np.array_equal(cc, kc):
            break
        # first (i, j), i < j, identified by the kernel but not yet by cong
        found = None
        for i in range(fr.algebra.size):
            same_ker = np.nonzero((kc == kc[i]) & (cc != cc[i]))[0]
            same_ker = same_ker[same_ker > i]
            if len(same_ker):
                found = (i, int(same_ker[0]))
                break
        assert found is not None
        chosen.append(found)
    rels = tuple((fr.term_of(i), fr.term_of(j)) for i, j in chosen)
    return Presentation(len(gens), rels), f0


# --- projectivity -----------------------------------------------------------------


@dataclass(frozen=True)
class ProjectivityResult:
    verdict: Optional[bool]  # None = unknown (budget)
    section: Optional[Homomorphism]
    onto: Optional[Homomorphism]
    note: str = ""


def _construction_trace(a: FiniteAlgebra, seeds: Sequence[int]) -> list[tuple[int, Recipe]]:
    """How to build every element of a from seeds, bot and top, in closure order."""
    trace: list[tuple[int, Recipe]] = []
    known: dict[int, int] = {}
    order: list[int] = []

    def add(x: int, recipe: Recipe):
        if x not in known:
            known[x] = len(order)
            order.append(x)
            trace.append((x, recipe))

    add(a.bot, ("bot",))
    add(a.top, ("top",))
    for i, s in enumerate(seeds):
        add(int(s), ("var", i))
    bin_ops = a._py_binary
    un_ops = a._py_unary
    i = 0
    while i < len(order):
        x = order[i]
        for name, t in un_ops:
            add(t[x], (name, x))
        for name, t in bin_ops:
            for y in order[: i + 1]:
                add(t[x][y], (name, x, y))
                add(t[y][x], (name, y, x))
        i += 1
    if len(order) != a.size:
        raise ValueError("seeds do not generate the algebra")
    return trace


def is_projective(
    a: FiniteAlgebra,
    vs: VarietySpec,
    budget: Optional[int] = None,
    generators: Optional[tuple[int, ...]] = None,
    node_budget: int = 500_000,
) -> ProjectivityResult:
    """Three-valued projectivity test inside the variety.

    True comes with a section of the canonical onto evaluation from the free
    algebra on a generating set of a (a section through one onto map from a
    free algebra is equivalent to projectivity); False means the exhaustive
    fiber search ran dry; None means a budget stopped the construction or
    the search.
    """
    gens = minimal_generating_seq(a) if generators is None else tuple(generators)
    try:
        fr = free_algebra(vs, len(gens), budget)
    except BudgetExceeded as e:
        return ProjectivityResult(None, None, None, f"free algebra out of budget: {e}")
    try:
        f0 = fr.hom_at(a, gens)
    except ValueError:
        raise ValueError("the algebra is not in the variety")

    F = fr.algebra
    fibers: dict[int, list[int]] = {x: [] for x in range(a.size)}
    for i, v in enumerate(f0.mapping):
        fibers[v].append(i)

    trace = _construction_trace(a, gens)
    a_bin = dict(a._py_binary)
    a_un = dict(a._py_unary)
    f_bin = {n: t for n, t in F.binary_tables()}
    f_un = {n: t for n, t in F.unary_tables()}
    f0m = f0.mapping

    smap = [-1] * a.size
    assigned: list[int] = []
    nodes = 0

    def assign(x: int, v: int, trail: list[int]) -> bool:
        nonlocal nodes
        queue = [(x, v)]
        while queue:
            x, v = queue.pop()
            if f0m[v] != x:
                return False
            cur = smap[x]
            if cur != -1:
                if cur != v:
                    return False
                continue
            nodes += 1
            smap[x] = v
            assigned.append(x)
            trail.append(x)
            for name, t in a_un.items():
                queue.append((t[x], int(f_un[name][v])))
            for name, t in a_bin.items():
                ft = f_bin[name]
                for y in assigned:
                    w = smap[y]
                    queue.append((t[x][y], int(ft[v, w])))
                    queue.append((t[y][x], int(ft[w, v])))
        return True

    def undo(trail: list[int]):
        for x in reversed(trail):
            smap[x] = -1
            assigned.pop()

    base: list[int] = []
    if not assign(a.bot, F.bot, base) or not assign(a.top, F.top, base):
        undo(base)
        return ProjectivityResult(False, None, f0, "bounds admit no section")

    order = [x for x, _ in trace if x not in (a.bot, a.top)]
    gen_positions = [x for x in order if smap[x] == -1]

    exhausted = False

    def search(i: int) -> bool:
        nonlocal exhausted
        if nodes > node_budget:
            exhausted = True
            return False
        while i < len(gen_positions) and smap[gen_positions[i]] != -1:
            i += 1
        if i == len(gen_positions):
            return all(v != -1 for v in smap)
        x = gen_positions[i]
        for v in fibers[x]:
            trail: list[int] = []
            if assign(x, v, trail):
                if search(i + 1):
                    return True
            undo(trail)
            if exhausted:
                return False
        return False

    if search(0):
        section = Homomorphism(a, F, tuple(smap))
        assert not section.defects(), "propagation must yield a homomorphism"
        composed = section.then(f0)
        assert composed.mapping == tuple(range(a.size))
        return ProjectivityResult(True, section, f0, "")
    if exhausted:
        return ProjectivityResult(None, None, f0, "section search budget exhausted")
    return ProjectivityResult(False, None, f0, "no section exists")

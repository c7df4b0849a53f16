"""Finite bounded lattices, Heyting algebras, Boolean algebras, interior algebras.

Carriers are 0..size-1.  Operation tables are numpy int16 arrays, write-locked
so algebras can be hashed and shared.  Everything here is exhaustive and
deterministic: enumeration results come back sorted, searches try candidates
in ascending order.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Optional, Sequence

import numpy as np


class Signature(Enum):
    BOUNDED_LATTICE = "bounded-lattice"
    HEYTING = "heyting"
    BOOLEAN = "boolean"
    INTERIOR = "interior"

    @property
    def has_imp(self) -> bool:
        return self is Signature.HEYTING

    @property
    def has_compl(self) -> bool:
        return self in (Signature.BOOLEAN, Signature.INTERIOR)

    @property
    def has_interior(self) -> bool:
        return self is Signature.INTERIOR


class SignatureMismatchError(ValueError):
    pass


def _locked(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=np.int16)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """A finite algebra in one of the four signatures.

    join/meet are (size, size) tables; imp only for Heyting; compl and
    interior (the interior operator) as 1-d tables for Boolean/interior.
    """

    signature: Signature
    size: int
    join: np.ndarray
    meet: np.ndarray
    bot: int
    top: int
    imp: Optional[np.ndarray] = None
    compl: Optional[np.ndarray] = None
    interior: Optional[np.ndarray] = None
    names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "join", _locked(self.join))
        object.__setattr__(self, "meet", _locked(self.meet))
        for f in ("imp", "compl", "interior"):
            v = getattr(self, f)
            if v is not None:
                object.__setattr__(self, f, _locked(v))

    # --- identity ---------------------------------------------------------

    @cached_property
    def _digest(self) -> bytes:
        h = hashlib.sha256()
        h.update(self.signature.value.encode())
        h.update(self.size.to_bytes(4, "little"))
        h.update(bytes([self.bot, 0xFE, self.top & 0xFF]))
        for name, tab in self.tables():
            h.update(name.encode())
            h.update(np.ascontiguousarray(tab).tobytes())
        return h.digest()

    def __hash__(self) -> int:
        return int.from_bytes(self._digest[:8], "little")

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (
            self.signature is other.signature
            and self.size == other.size
            and self.bot == other.bot
            and self.top == other.top
            and self._digest == other._digest
        )

    def __repr__(self) -> str:
        return f"<{self.signature.value} algebra, {self.size} elements>"

    # --- table access -----------------------------------------------------

    def tables(self) -> list[tuple[str, np.ndarray]]:
        out = [("join", self.join), ("meet", self.meet)]
        if self.imp is not None:
            out.append(("imp", self.imp))
        if self.compl is not None:
            out.append(("compl", self.compl))
        if self.interior is not None:
            out.append(("interior", self.interior))
        return out

    def binary_tables(self) -> list[tuple[str, np.ndarray]]:
        return [(n, t) for n, t in self.tables() if t.ndim == 2]

    def unary_tables(self) -> list[tuple[str, np.ndarray]]:
        return [(n, t) for n, t in self.tables() if t.ndim == 1]

    @cached_property
    def _py_binary(self) -> list[tuple[str, list[list[int]]]]:
        # plain nested lists: fastest scalar lookup in the search loops
        return [(n, t.tolist()) for n, t in self.binary_tables()]

    @cached_property
    def _py_unary(self) -> list[tuple[str, list[int]]]:
        return [(n, t.tolist()) for n, t in self.unary_tables()]

    # --- order ------------------------------------------------------------

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        m = self.meet == np.arange(self.size, dtype=np.int16)[:, None]
        m.setflags(write=False)
        return m

    def leq(self, x: int, y: int) -> bool:
        return bool(self.meet[x, y] == x)

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        lm = self.leq_matrix
        out = []
        for x in range(self.size):
            if x == self.bot:
                continue
            below = [y for y in range(self.size) if lm[y, x] and y != x and y != self.bot]
            if not below:
                out.append(x)
        return tuple(out)

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        """Elements j != bot that are not the join of two strictly smaller ones."""
        lm = self.leq_matrix
        out = []
        for j in range(self.size):
            if j == self.bot:
                continue
            strictly_below = [x for x in range(self.size) if lm[x, j] and x != j]
            ok = True
            for x in strictly_below:
                for y in strictly_below:
                    if self.join[x, y] == j:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(j)
        return tuple(out)

    def lower_covers(self, x: int) -> tuple[int, ...]:
        lm = self.leq_matrix
        below = [y for y in range(self.size) if lm[y, x] and y != x]
        covers = []
        for y in below:
            if not any(lm[y, z] and lm[z, x] and z != y and z != x for z in below):
                covers.append(y)
        return tuple(covers)

    @cached_property
    def open_elements(self) -> tuple[int, ...]:
        """Fixed points of the interior operator, ascending."""
        if self.interior is None:
            raise SignatureMismatchError("no interior operator in this signature")
        g = self.interior
        return tuple(int(x) for x in range(self.size) if g[x] == x)

    # --- invariants for search pruning -------------------------------------

    @cached_property
    def element_invariants(self) -> tuple[tuple[int, ...], ...]:
        """Per-element fingerprint preserved by every isomorphism."""
        lm = self.leq_matrix
        down = lm.sum(axis=0)
        up = lm.sum(axis=1)
        ji = set(self.join_irreducibles)
        inv = []
        for x in range(self.size):
            row = [
                int(x == self.bot),
                int(x == self.top),
                int(down[x]),
                int(up[x]),
                int(x in ji),
            ]
            if self.compl is not None:
                row.append(int(down[self.compl[x]]))
            if self.interior is not None:
                row.append(int(self.interior[x] == x))
                row.append(int(down[self.interior[x]]))
            inv.append(tuple(row))
        return tuple(inv)


# --- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str  # "structure" or "axiom"
    law: str
    witness: tuple[int, ...] = ()

    def __str__(self) -> str:
        w = f" at {self.witness}" if self.witness else ""
        return f"[{self.kind}] {self.law}{w}"


def _structure_errors(a: FiniteAlgebra) -> list[Violation]:
    errs = []
    n = a.size

    def bad(law, *w):
        errs.append(Violation("structure", law, tuple(int(x) for x in w)))

    if n <= 0:
        bad("size must be positive")
        return errs
    if not (0 <= a.bot < n):
        bad("bot out of range", a.bot)
    if not (0 <= a.top < n):
        bad("top out of range", a.top)
    want_binary = ["join", "meet"] + (["imp"] if a.signature.has_imp else [])
    want_unary = (["compl"] if a.signature.has_compl else []) + (
        ["interior"] if a.signature.has_interior else []
    )
    present = dict(a.tables())
    for name in want_binary:
        t = present.pop(name, None)
        if t is None:
            bad(f"missing table {name}")
        elif t.shape != (n, n):
            bad(f"table {name} has wrong shape")
        elif t.min() < 0 or t.max() >= n:
            bad(f"table {name} has out-of-range entries")
    for name in want_unary:
        t = present.pop(name, None)
        if t is None:
            bad(f"missing table {name}")
        elif t.shape != (n,):
            bad(f"table {name} has wrong shape")
        elif t.min() < 0 or t.max() >= n:
            bad(f"table {name} has out-of-range entries")
    for name in present:
        bad(f"table {name} does not belong to signature {a.signature.value}")
    return errs


def validate(a: FiniteAlgebra, assoc_limit: int = 1024) -> list[Violation]:
    """All axiom violations of a's signature, with witnesses; [] iff valid.

    Structural problems (shapes, ranges, missing tables) are reported with
    kind "structure" and short-circuit the axiom checks.  Associativity and
    residuation are cubic; above assoc_limit elements they are checked in
    the vectorized form only (same semantics, chunked per element).
    """
    errs = _structure_errors(a)
    if errs:
        return errs
    n = a.size
    J, M = a.join.astype(np.intp), a.meet.astype(np.intp)
    idx = np.arange(n, dtype=np.intp)
    out: list[Violation] = []

    def first_bad(mask2d, law, tables=()):
        ws = np.argwhere(mask2d)
        if len(ws):
            x, y = (int(v) for v in ws[0])
            out.append(Violation("axiom", law, (x, y)))

    first_bad(J != J.T, "join commutative")
    first_bad(M != M.T, "meet commutative")
    if J[idx, idx].tolist() != idx.tolist():
        x = int(np.nonzero(J[idx, idx] != idx)[0][0])
        out.append(Violation("axiom", "join idempotent", (x,)))
    if M[idx, idx].tolist() != idx.tolist():
        x = int(np.nonzero(M[idx, idx] != idx)[0][0])
        out.append(Violation("axiom", "meet idempotent", (x,)))
    first_bad(J[idx[:, None], M] != idx[:, None], "absorption x+(x·y)=x")
    first_bad(M[idx[:, None], J] != idx[:, None], "absorption x·(x+y)=x")
    if not np.array_equal(J[:, a.bot], idx):
        x = int(np.nonzero(J[:, a.bot] != idx)[0][0])
        out.append(Violation("axiom", "bot is join identity", (x,)))
    if not np.array_equal(M[:, a.top], idx):
        x = int(np.nonzero(M[:, a.top] != idx)[0][0])
        out.append(Violation("axiom", "top is meet identity", (x,)))

    # associativity, chunked: x+(y+z) vs (x+y)+z
    if n <= assoc_limit:
        for name, T in (("join", J), ("meet", M)):
            for x in range(n):
                left = T[T[x, :], :]          # (y, z) -> (x op y) op z
                right = T[x, T]               # (y, z) -> x op (y op z)
                if not np.array_equal(left, right):
                    y, z = (int(v) for v in np.argwhere(left != right)[0])
                    out.append(Violation("axiom", f"{name} associative", (x, y, z)))
                    break

    if a.signature.has_imp:
        I = a.imp.astype(np.intp)
        # residuation: c·a <= b  iff  c <= a=>b, for all a,b,c
        leq = M == idx[:, None]  # leq[c, d] : c <= d
        for x in range(n):
            lhs = leq[M[:, x], :]            # (c, b) : c·x <= b
            rhs = leq[:, I[x, :]]            # (c, b) : c <= x=>b
            if not np.array_equal(lhs, rhs):
                c, b = (int(v) for v in np.argwhere(lhs != rhs)[0])
                out.append(Violation("axiom", "residuation for imp", (x, b, c)))
                break

    if a.signature.has_compl:
        C = a.compl.astype(np.intp)
        bad = np.nonzero(M[idx, C] != a.bot)[0]
        if len(bad):
            out.append(Violation("axiom", "x·-x = bot", (int(bad[0]),)))
        bad = np.nonzero(J[idx, C] != a.top)[0]
        if len(bad):
            out.append(Violation("axiom", "x+-x = top", (int(bad[0]),)))
        # distributivity (checked where complementation promises a Boolean lattice)
        for x in range(n):
            left = M[x, J]                   # x·(y+z)
            right = J[M[x, :][:, None], M[x, :][None, :]]
            if not np.array_equal(left, right):
                y, z = (int(v) for v in np.argwhere(left != right)[0])
                out.append(Violation("axiom", "meet distributes over join", (x, y, z)))
                break

    if a.signature.has_interior:
        g = a.interior.astype(np.intp)
        if g[a.top] != a.top:
            out.append(Violation("axiom", "g(top)=top", (int(a.top),)))
        bad = np.nonzero(M[idx, g] != g)[0]
        if len(bad):
            out.append(Violation("axiom", "g(x) <= x", (int(bad[0]),)))
        bad = np.nonzero(g[g] != g)[0]
        if len(bad):
            out.append(Violation("axiom", "g idempotent", (int(bad[0]),)))
        gm = g[M]
        gg = M[g[:, None], g[None, :]]
        ws = np.argwhere(gm != gg)
        if len(ws):
            x, y = (int(v) for v in ws[0])
            out.append(Violation("axiom", "g(x·y) = g(x)·g(y)", (x, y)))
    return out


def assert_valid(a: FiniteAlgebra, context: str = "") -> FiniteAlgebra:
    errs = validate(a)
    if errs:
        where = f" ({context})" if context else ""
        raise ValueError(f"invalid algebra{where}: " + "; ".join(map(str, errs[:4])))
    return a


# --- homomorphisms ----------------------------------------------------------


@dataclass(frozen=True)
class Homomorphism:
    dom: FiniteAlgebra
    cod: FiniteAlgebra
    mapping: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    @property
    def is_onto(self) -> bool:
        return len(set(self.mapping)) == self.cod.size

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == self.dom.size

    def defects(self) -> list[str]:
        """Empty iff this map preserves bounds and all operations."""
        a, b, m = self.dom, self.cod, self.mapping
        if a.signature is not b.signature:
            return ["signature mismatch"]
        if len(m) != a.size or any(not 0 <= v < b.size for v in m):
            return ["mapping malformed"]
        out = []
        arr = np.asarray(m, dtype=np.intp)
        if m[a.bot] != b.bot:
            out.append("bot not preserved")
        if m[a.top] != b.top:
            out.append("top not preserved")
        for name, t in a.binary_tables():
            tb = dict(b.binary_tables())[name].astype(np.intp)
            if not np.array_equal(arr[t.astype(np.intp)], tb[arr[:, None], arr[None, :]]):
                out.append(f"{name} not preserved")
        for name, t in a.unary_tables():
            tb = dict(b.unary_tables())[name].astype(np.intp)
            if not np.array_equal(arr[t.astype(np.intp)], tb[arr]):
                out.append(f"{name} not preserved")
        return out

    def is_valid(self) -> bool:
        return not self.defects()

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """Composition self;other : dom -> other.cod."""
        if other.dom is not self.cod and other.dom != self.cod:
            raise ValueError("composition domains do not match")
        return Homomorphism(self.dom, other.cod, tuple(other.mapping[v] for v in self.mapping))

    def __repr__(self) -> str:
        return f"<hom {self.dom.size}->{self.cod.size} {list(self.mapping)}>"


def identity_hom(a: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(a, a, tuple(range(a.size)))


def _closure_indices(a: FiniteAlgebra, seeds: Iterable[int]) -> list[int]:
    """Subuniverse generated by seeds together with bot and top, ascending."""
    inside = bytearray(a.size)
    order: list[int] = []

    def add(x: int):
        if not inside[x]:
            inside[x] = 1
            order.append(x)

    add(a.bot)
    add(a.top)
    for s in seeds:
        add(int(s))
    bin_ops = a._py_binary
    un_ops = a._py_unary
    i = 0
    while i < len(order):
        x = order[i]
        for _, t in un_ops:
            add(t[x])
        for _, t in bin_ops:
            row = t[x]
            for y in order[: i + 1]:
                add(row[y])
                add(t[y][x])
        i += 1
    return sorted(order)


def minimal_generating_seq(a: FiniteAlgebra) -> tuple[int, ...]:
    """Lexicographically least generating tuple of minimum size (bounds are free)."""
    n = a.size
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            if len(_closure_indices(a, combo)) == n:
                return combo
    raise AssertionError("unreachable: the whole carrier generates itself")


class _SearchPlan:
    """Generator order for backtracking hom search from dom, given fixed elements."""

    def __init__(self, dom: FiniteAlgebra, fixed: Sequence[int]):
        self.dom = dom
        covered = set(_closure_indices(dom, fixed))
        gens: list[int] = []
        while len(covered) < dom.size:
            # greedy: the element whose addition covers the most, least index on ties
            best, best_cov = -1, None
            for x in range(dom.size):
                if x in covered:
                    continue
                cov = set(_closure_indices(dom, list(fixed) + gens + [x]))
                if best_cov is None or len(cov) > len(best_cov) or (
                    len(cov) == len(best_cov) and x < best
                ):
                    best, best_cov = x, cov
            gens.append(best)
            covered = best_cov
        self.gens = tuple(gens)


def _search_homs(
    dom: FiniteAlgebra,
    cod: FiniteAlgebra,
    *,
    onto: bool = False,
    injective: bool = False,
    partial: Optional[dict[int, int]] = None,
    candidate_filter: Optional[Callable[[int, int], bool]] = None,
    limit: Optional[int] = None,
) -> list[tuple[int, ...]]:
    """Backtracking enumeration of homomorphisms dom -> cod as mapping tuples.

    partial pre-assigns images (inconsistent partial -> no results).  The
    closure propagation checks every operation pair among assigned elements,
    so every returned tuple is a verified homomorphism.
    """
    if dom.signature is not cod.signature:
        raise SignatureMismatchError(
            f"{dom.signature.value} vs {cod.signature.value}"
        )
    n = dom.size
    m = cod.size
    mapping = [-1] * n
    assigned: list[int] = []
    used = [0] * m  # for injective search
    dom_bin = dom._py_binary
    cod_bin = cod._py_binary
    dom_un = dom._py_unary
    cod_un = cod._py_unary
    results: list[tuple[int, ...]] = []

    def assign(x: int, v: int, trail: list[int]) -> bool:
        # returns False on conflict; records new assignments in trail
        queue = [(x, v)]
        while queue:
            x, v = queue.pop()
            cur = mapping[x]
            if cur != -1:
                if cur != v:
                    return False
                continue
            if injective and used[v]:
                return False
            mapping[x] = v
            if injective:
                used[v] = 1
            assigned.append(x)
            trail.append(x)
            for (_, td), (_, tc) in zip(dom_un, cod_un):
                queue.append((td[x], tc[v]))
            for (_, td), (_, tc) in zip(dom_bin, cod_bin):
                rd, rc = td[x], tc[v]
                for y in assigned:
                    w = mapping[y]
                    queue.append((rd[y], rc[w]))
                    queue.append((td[y][x], tc[w][v]))
        return True

    def undo(trail: list[int]):
        for x in reversed(trail):
            if injective:
                used[mapping[x]] = 0
            mapping[x] = -1
            assigned.pop()

    base_trail: list[int] = []
    seeds = {dom.bot: cod.bot, dom.top: cod.top}
    if partial:
        for k, v in partial.items():
            if k in seeds and seeds[k] != v:
                return []
            seeds[int(k)] = int(v)
    for k in sorted(seeds):
        if not assign(k, seeds[k], base_trail):
            return []

    plan = _SearchPlan(dom, sorted(seeds))
    gens = plan.gens

    def backtrack(i: int) -> bool:
        # returns True when the search should stop (limit reached)
        if limit is not None and len(results) >= limit:
            return True
        if i == len(gens):
            if all(v != -1 for v in mapping):
                if not onto or len(set(mapping)) == m:
                    results.append(tuple(mapping))
                    return limit is not None and len(results) >= limit
            return False
        g = gens[i]
        if mapping[g] != -1:
            return backtrack(i + 1)
        for v in range(m):
            if candidate_filter is not None and not candidate_filter(g, v):
                continue
            trail: list[int] = []
            if assign(g, v, trail):
                if backtrack(i + 1):
                    undo(trail)
                    return True
            undo(trail)
        return False

    backtrack(0)
    results.sort()
    return results


def enumerate_homs(
    dom: FiniteAlgebra, cod: FiniteAlgebra, onto_only: bool = False
) -> list[Homomorphism]:
    """All homomorphisms dom -> cod, sorted lexicographically by mapping."""
    maps = _search_homs(dom, cod, onto=onto_only)
    return [Homomorphism(dom, cod, m) for m in maps]


def enumerate_homs_naive(
    dom: FiniteAlgebra, cod: FiniteAlgebra, onto_only: bool = False
) -> list[Homomorphism]:
    """All maps, filtered; cross-check oracle for enumerate_homs on tiny dom."""
    out = []
    for m in itertools.product(range(cod.size), repeat=dom.size):
        h = Homomorphism(dom, cod, m)
        if h.is_valid() and (not onto_only or h.is_onto):
            out.append(h)
    return out


def enumerate_homs_extending(
    dom: FiniteAlgebra,
    cod: FiniteAlgebra,
    partial: dict[int, int],
    limit: Optional[int] = None,
) -> list[Homomorphism]:
    maps = _search_homs(dom, cod, partial=partial, limit=limit)
    return [Homomorphism(dom, cod, m) for m in maps]


def is_isomorphic(a: FiniteAlgebra, b: FiniteAlgebra) -> Optional[Homomorphism]:
    """A bijective homomorphism a -> b with homomorphic inverse, or None."""
    if a.signature is not b.signature or a.size != b.size:
        return None
    ia, ib = a.element_invariants, b.element_invariants
    if sorted(ia) != sorted(ib):
        return None
    flt = lambda x, v: ia[x] == ib[v]
    maps = _search_homs(a, b, onto=True, injective=True, candidate_filter=flt, limit=1)
    if not maps:
        return None
    h = Homomorphism(a, b, maps[0])
    inv = [0] * a.size
    for x, v in enumerate(maps[0]):
        inv[v] = x
    hinv = Homomorphism(b, a, tuple(inv))
    assert hinv.is_valid(), "inverse of a bijective homomorphism must be one"
    return h


def automorphisms(a: FiniteAlgebra) -> list[Homomorphism]:
    inv = a.element_invariants
    flt = lambda x, v: inv[x] == inv[v]
    maps = _search_homs(a, a, onto=True, injective=True, candidate_filter=flt)
    return [Homomorphism(a, a, m) for m in maps]


# --- constructions ----------------------------------------------------------


def _subalgebra_on(a: FiniteAlgebra, carrier: Sequence[int]) -> tuple[FiniteAlgebra, Homomorphism]:
    """Re-index a closed subset as an algebra; returns it with the inclusion."""
    carrier = sorted(int(x) for x in carrier)
    pos = {x: i for i, x in enumerate(carrier)}
    k = len(carrier)
    sub = np.asarray(carrier, dtype=np.intp)

    def reindex2(t):
        return np.array([[pos[int(t[x, y])] for y in carrier] for x in carrier], dtype=np.int16)

    def reindex1(t):
        return np.array([pos[int(t[x])] for x in carrier], dtype=np.int16)

    alg = FiniteAlgebra(
        signature=a.signature,
        size=k,
        join=reindex2(a.join),
        meet=reindex2(a.meet),
        bot=pos[a.bot],
        top=pos[a.top],
        imp=reindex2(a.imp) if a.imp is not None else None,
        compl=reindex1(a.compl) if a.compl is not None else None,
        interior=reindex1(a.interior) if a.interior is not None else None,
        names=tuple(a.names[x] for x in carrier) if a.names else None,
    )
    incl = Homomorphism(alg, a, tuple(carrier))
    return alg, incl


def generated_subalgebra(
    a: FiniteAlgebra, seeds: Iterable[int]
) -> tuple[FiniteAlgebra, Homomorphism]:
    """Smallest subalgebra containing seeds (bounds always included)."""
    return _subalgebra_on(a, _closure_indices(a, seeds))


def image(h: Homomorphism) -> tuple[FiniteAlgebra, Homomorphism]:
    """The image of h as a subalgebra of h.cod, with its inclusion."""
    return _subalgebra_on(h.cod, sorted(set(h.mapping)))


def product(factors: Sequence[FiniteAlgebra]) -> tuple[FiniteAlgebra, list[Homomorphism]]:
    """Direct product with componentwise tables; also returns the projections.

    Element i encodes the tuple of mixed-radix digits of i, most significant
    digit = factor 0, so enumeration order is lexicographic in the factors.
    """
    if not factors:
        raise ValueError("empty product not supported")
    sig = factors[0].signature
    if any(f.signature is not sig for f in factors):
        raise SignatureMismatchError("product factors must share a signature")
    sizes = [f.size for f in factors]
    n = 1
    for s in sizes:
        n *= s
    if n > 1 << 20:
        raise ValueError(f"product too large ({n} elements)")
    digits = np.zeros((n, len(factors)), dtype=np.intp)
    idx = np.arange(n)
    rem = idx.copy()
    for j in range(len(factors) - 1, -1, -1):
        digits[:, j] = rem % sizes[j]
        rem //= sizes[j]

    def combine2(tabs):
        out = np.zeros((n, n), dtype=np.int64)
        mult = 1
        for j in range(len(factors) - 1, -1, -1):
            t = tabs[j].astype(np.int64)
            out += mult * t[digits[:, j][:, None], digits[:, j][None, :]]
            mult *= sizes[j]
        return out.astype(np.int16)

    def combine1(tabs):
        out = np.zeros(n, dtype=np.int64)
        mult = 1
        for j in range(len(factors) - 1, -1, -1):
            out += mult * tabs[j].astype(np.int64)[digits[:, j]]
            mult *= sizes[j]
        return out.astype(np.int16)

    def enc(vals):
        v = 0
        for j, x in enumerate(vals):
            v = v * sizes[j] + int(x)
        return v

    alg = FiniteAlgebra(
        signature=sig,
        size=n,
        join=combine2([f.join for f in factors]),
        meet=combine2([f.meet for f in factors]),
        bot=enc([f.bot for f in factors]),
        top=enc([f.top for f in factors]),
        imp=combine2([f.imp for f in factors]) if sig.has_imp else None,
        compl=combine1([f.compl for f in factors]) if sig.has_compl else None,
        interior=combine1([f.interior for f in factors]) if sig.has_interior else None,
    )
    projections = [
        Homomorphism(alg, factors[j], tuple(int(x) for x in digits[:, j]))
        for j in range(len(factors))
    ]
    return alg, projections


# --- congruences ------------------------------------------------------------


@dataclass(frozen=True)
class Congruence:
    """Partition of the carrier compatible with all operations.

    classes[x] is the block index of x; blocks are numbered by first
    occurrence, so the representation is canonical.
    """

    algebra: FiniteAlgebra
    classes: tuple[int, ...]

    @property
    def block_count(self) -> int:
        return max(self.classes) + 1

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for x, c in enumerate(self.classes):
            out[c].append(x)
        return out

    def related(self, x: int, y: int) -> bool:
        return self.classes[x] == self.classes[y]

    def is_compatible(self) -> bool:
        cls = np.asarray(self.classes, dtype=np.intp)
        for _, t in self.algebra.binary_tables():
            t = t.astype(np.intp)
            for b in set(self.classes):
                members = np.nonzero(cls == b)[0]
                ref = cls[t[members[0], :]]
                for x in members[1:]:
                    if not np.array_equal(cls[t[x, :]], ref):
                        return False
                refc = cls[t[:, members[0]]]
                for x in members[1:]:
                    if not np.array_equal(cls[t[:, x]], refc):
                        return False
        for _, t in self.algebra.unary_tables():
            t = t.astype(np.intp)
            for b in set(self.classes):
                members = np.nonzero(cls == b)[0]
                vals = set(cls[t[members]].tolist())
                if len(vals) > 1:
                    return False
        return True


def _canonical_classes(parent: list[int], n: int) -> tuple[int, ...]:
    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    label: dict[int, int] = {}
    out = []
    for x in range(n):
        r = find(x)
        if r not in label:
            label[r] = len(label)
        out.append(label[r])
    return tuple(out)


def congruence_generated(a: FiniteAlgebra, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence identifying the given pairs (worklist closure)."""
    n = a.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue: list[tuple[int, int]] = [(int(x), int(y)) for x, y in pairs]
    bin_tabs = [t.astype(np.intp) for _, t in a.binary_tables()]
    un_tabs = [t.astype(np.intp) for _, t in a.unary_tables()]
    while queue:
        x, y = queue.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        if ry < rx:
            rx, ry = ry, rx
        parent[ry] = rx
        for t in un_tabs:
            queue.append((int(t[rx]), int(t[ry])))
        for t in bin_tabs:
            ra, rb = t[rx, :], t[ry, :]
            for z in np.nonzero(ra != rb)[0]:
                queue.append((int(ra[z]), int(rb[z])))
            ca, cb = t[:, rx], t[:, ry]
            for z in np.nonzero(ca != cb)[0]:
                queue.append((int(ca[z]), int(cb[z])))
    return Congruence(a, _canonical_classes(parent, n))


def all_congruences(a: FiniteAlgebra) -> list[Congruence]:
    """Every congruence of a, deterministically ordered by class vector.

    For Heyting, Boolean and interior signatures congruences correspond to
    filters (open filters in the interior case); in a finite lattice every
    filter is principal, so x ~ y iff x·c = y·c with c ranging over the
    (open) elements.  The generic signature falls back to closing the
    principal congruences under join.  Cross-checked against the generic
    route in the test suite.
    """
    n = a.size
    out: dict[tuple[int, ...], Congruence] = {}
    if a.signature in (Signature.HEYTING, Signature.BOOLEAN, Signature.INTERIOR):
        if a.signature is Signature.INTERIOR:
            anchors = list(a.open_elements)
        else:
            anchors = list(range(n))
        for c in anchors:
            col = a.meet[:, c]
            label: dict[int, int] = {}
            cls = []
            for x in range(n):
                v = int(col[x])
                if v not in label:
                    label[v] = len(label)
                cls.append(label[v])
            cong = Congruence(a, tuple(cls))
            out.setdefault(cong.classes, cong)
    else:
        principal: dict[tuple[int, ...], Congruence] = {}
        for x in range(n):
            for y in range(x + 1, n):
                c = congruence_generated(a, [(x, y)])
                principal.setdefault(c.classes, c)
        idc = Congruence(a, tuple(range(n)))
        out[idc.classes] = idc
        frontier = list(principal.values())
        for c in frontier:
            out.setdefault(c.classes, c)
        while frontier:
            nxt = []
            for c in frontier:
                for p in principal.values():
                    pairs = _partition_pairs(c.classes) + _partition_pairs(p.classes)
                    joined = congruence_generated(a, pairs)
                    if joined.classes not in out:
                        out[joined.classes] = joined
                        nxt.append(joined)
            frontier = nxt
    return [out[k] for k in sorted(out)]


def _partition_pairs(classes: Sequence[int]) -> list[tuple[int, int]]:
    first: dict[int, int] = {}
    pairs = []
    for x, c in enumerate(classes):
        if c in first:
            pairs.append((first[c], x))
        else:
            first[c] = x
    return pairs


def kernel_congruence(h: Homomorphism) -> Congruence:
    label: dict[int, int] = {}
    out = []
    for v in h.mapping:
        if v not in label:
            label[v] = len(label)
        out.append(label[v])
    return Congruence(h.dom, tuple(out))


def quotient(a: FiniteAlgebra, c: Congruence) -> tuple[FiniteAlgebra, Homomorphism]:
    """a modulo c, with the canonical onto map."""
    if c.algebra is not a and c.algebra != a:
        raise ValueError("congruence belongs to a different algebra")
    cls = np.asarray(c.classes, dtype=np.intp)
    k = c.block_count
    reps = np.zeros(k, dtype=np.intp)
    seen = set()
    for x in range(a.size):
        b = int(cls[x])
        if b not in seen:
            reps[b] = x
            seen.add(b)

    def q2(t):
        t = t.astype(np.intp)
        return cls[t[reps[:, None], reps[None, :]]].astype(np.int16)

    def q1(t):
        return cls[t.astype(np.intp)[reps]].astype(np.int16)

    alg = FiniteAlgebra(
        signature=a.signature,
        size=k,
        join=q2(a.join),
        meet=q2(a.meet),
        bot=int(cls[a.bot]),
        top=int(cls[a.top]),
        imp=q2(a.imp) if a.imp is not None else None,
        compl=q1(a.compl) if a.compl is not None else None,
        interior=q1(a.interior) if a.interior is not None else None,
    )
    onto = Homomorphism(a, alg, tuple(int(x) for x in cls))
    if onto.defects():
        raise ValueError("partition is not a congruence: quotient maps are ill-defined")
    return alg, onto


# --- small stock algebras ----------------------------------------------------


@lru_cache(maxsize=None)
def chain_algebra(n: int, signature: Signature = Signature.HEYTING) -> FiniteAlgebra:
    """The n-element chain 0 < 1 < ... < n-1 in a chain-compatible signature."""
    if n < 1:
        raise ValueError("chain needs at least one element")
    idx = np.arange(n, dtype=np.int16)
    join = np.maximum(idx[:, None], idx[None, :])
    meet = np.minimum(idx[:, None], idx[None, :])
    imp = compl = interior = None
    if signature is Signature.HEYTING:
        imp = np.where(idx[:, None] <= idx[None, :], n - 1, idx[None, :]).astype(np.int16)
    elif signature in (Signature.BOOLEAN, Signature.INTERIOR):
        if n > 2:
            raise ValueError("chains beyond 2 elements are not complemented")
        compl = (n - 1 - idx).astype(np.int16)
        if signature is Signature.INTERIOR:
            interior = idx.copy()
    return FiniteAlgebra(
        signature=signature, size=n, join=join, meet=meet,
        bot=0, top=n - 1, imp=imp, compl=compl, interior=interior,
    )


def two_element(signature: Signature) -> FiniteAlgebra:
    if signature is Signature.BOUNDED_LATTICE:
        idx = np.arange(2, dtype=np.int16)
        return FiniteAlgebra(
            signature=signature, size=2,
            join=np.maximum(idx[:, None], idx[None, :]),
            meet=np.minimum(idx[:, None], idx[None, :]),
            bot=0, top=1,
        )
    return chain_algebra(2, signature)

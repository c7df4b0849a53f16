"""Finite posets and preorders with their dual algebras.

A preorder on n points is a reflexive transitive relation; a poset adds
antisymmetry.  Duality at this scale is concrete: up-set lattices of posets
are the finite Heyting algebras, powerset algebras of preorders (with the
up-set-interior operator) are the finite interior algebras.

Enumeration is up to isomorphism with a canonical representative per class
(minimum relation encoding over all point permutations), so repeated runs
produce identical corpora in identical order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import FiniteAlgebra, Signature

POSET_CEILING = 5
PREORDER_CEILING = 4


@dataclass(frozen=True)
class Preorder:
    """Reflexive transitive le; le[i][j] means i <= j."""

    size: int
    le: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "le", tuple(tuple(bool(v) for v in row) for row in self.le)
        )

    def check(self) -> list[str]:
        errs = []
        if len(self.le) != self.size or any(len(r) != self.size for r in self.le):
            return ["relation matrix has wrong shape"]
        for i in range(self.size):
            if not self.le[i][i]:
                errs.append(f"not reflexive at {i}")
        for i, j, k in itertools.product(range(self.size), repeat=3):
            if self.le[i][j] and self.le[j][k] and not self.le[i][k]:
                errs.append(f"not transitive at ({i},{j},{k})")
                break
        return errs

    @property
    def is_poset(self) -> bool:
        return all(
            not (self.le[i][j] and self.le[j][i])
            for i in range(self.size)
            for j in range(self.size)
            if i != j
        )

    def upset_masks(self) -> tuple[int, ...]:
        """Bitmask of {j : i <= j} per point i."""
        return tuple(
            sum(1 << j for j in range(self.size) if self.le[i][j])
            for i in range(self.size)
        )

    def encoding(self) -> int:
        bits = 0
        k = 0
        for i in range(self.size):
            for j in range(self.size):
                if self.le[i][j]:
                    bits |= 1 << k
                k += 1
        return bits

    def permuted(self, perm: tuple[int, ...]) -> "Preorder":
        """Relabel points: new point perm[i] is old point i."""
        n = self.size
        le = [[False] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if self.le[i][j]:
                    le[perm[i]][perm[j]] = True
        return Preorder(n, tuple(tuple(r) for r in le))

    def canonical(self) -> "Preorder":
        best = None
        for perm in itertools.permutations(range(self.size)):
            cand = self.permuted(perm)
            code = cand.encoding()
            if best is None or code < best[0]:
                best = (code, cand)
        return best[1]


def preorder_from_matrix(rows) -> Preorder:
    n = len(rows)
    p = Preorder(n, tuple(tuple(bool(v) for v in row) for row in rows))
    errs = p.check()
    if errs:
        raise ValueError("not a preorder: " + "; ".join(errs))
    return p


def _downsets(le_strict: list[set[int]], k: int) -> list[int]:
    """Bitmask down-sets of the poset on points 0..k-1 (le_strict[i] = below i)."""
    out = [0]
    for mask in range(1, 1 << k):
        ok = True
        for i in range(k):
            if mask >> i & 1:
                if le_strict[i] & ~_mask_to_set_cache(mask):
                    ok = False
                    break
        if ok:
            out.append(mask)
    return out


def _mask_to_set_cache(mask: int) -> set[int]:
    # tiny helper, sets are cheaper to intersect than loops here
    s = set()
    i = 0
    while mask:
        if mask & 1:
            s.add(i)
        mask >>= 1
        i += 1
    return s


@lru_cache(maxsize=None)
def enumerate_posets(max_size: int) -> tuple[Preorder, ...]:
    """All posets with 1..max_size points, one canonical member per iso class.

    Grown by repeatedly adding a new maximal point whose strict down-set is a
    down-set of the part built so far; duplicates removed via the canonical
    encoding.  Sorted by (size, encoding).
    """
    if max_size > POSET_CEILING:
        raise ValueError(f"poset enumeration is capped at {POSET_CEILING} points")
    found: dict[tuple[int, int], Preorder] = {}

    def grow(le: list[list[bool]], n: int):
        p = Preorder(n, tuple(tuple(r[:n]) for r in le[:n])).canonical()
        key = (n, p.encoding())
        if key in found:
            return
        found[key] = p
        if n == max_size:
            return
        # candidate strict down-sets for the new maximal point n
        strict_below = [set() for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i != j and le[j][i]:
                    strict_below[i].add(j)
        for mask in range(1 << n):
            # must be downward closed
            members = _mask_to_set_cache(mask)
            if any(not strict_below[i] <= members for i in members):
                continue
            for row in le:
                row.append(False)
            le.append([False] * (n + 1))
            le[n][n] = True
            for i in members:
                le[i][n] = True
            grow(le, n + 1)
            le.pop()
            for row in le:
                row.pop()

    grow([[True]], 1)
    return tuple(p for _, p in sorted(found.items()))


@lru_cache(maxsize=None)
def enumerate_preorders(max_size: int) -> tuple[Preorder, ...]:
    """All preorders with 1..max_size points up to isomorphism.

    A preorder is a poset of clusters: take each poset on m points and each
    assignment of cluster sizes summing to n; canonicalize to deduplicate
    assignments that differ by a poset automorphism.  Sorted by
    (size, encoding); posets appear with all-singleton clusters.
    """
    if max_size > PREORDER_CEILING:
        raise ValueError(f"preorder enumeration is capped at {PREORDER_CEILING} points")
    found: dict[tuple[int, int], Preorder] = {}
    for skeleton in enumerate_posets(max_size):
        m = skeleton.size
        for sizes in itertools.product(range(1, max_size + 1), repeat=m):
            n = sum(sizes)
            if n > max_size:
                continue
            # blow up poset point c into a cluster of sizes[c] points
            offsets = [0]
            for s in sizes:
                offsets.append(offsets[-1] + s)
            le = [[False] * n for _ in range(n)]
            for c1 in range(m):
                for c2 in range(m):
                    if skeleton.le[c1][c2] or c1 == c2:
                        for i in range(offsets[c1], offsets[c1 + 1]):
                            for j in range(offsets[c2], offsets[c2 + 1]):
                                le[i][j] = True
            p = Preorder(n, tuple(tuple(r) for r in le)).canonical()
            found.setdefault((n, p.encoding()), p)
    return tuple(p for _, p in sorted(found.items()))


def enumerate_preorders_bruteforce(max_size: int) -> tuple[Preorder, ...]:
    """Independent route: filter every reflexive relation matrix (tiny n only)."""
    if max_size > 4:
        raise ValueError("brute force enumeration is for cross-checks, n <= 4")
    found: dict[tuple[int, int], Preorder] = {}
    for n in range(1, max_size + 1):
        offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
        for bits in range(1 << len(offdiag)):
            le = [[i == j for j in range(n)] for i in range(n)]
            for k, (i, j) in enumerate(offdiag):
                if bits >> k & 1:
                    le[i][j] = True
            p = Preorder(n, tuple(tuple(r) for r in le))
            if p.check():
                continue
            c = p.canonical()
            found.setdefault((n, c.encoding()), c)
    return tuple(p for _, p in sorted(found.items()))


# --- dual algebras -----------------------------------------------------------


def _upsets(p: Preorder) -> list[int]:
    """All up-set bitmasks of p, ascending."""
    n = p.size
    pt = p.upset_masks()
    out = []
    for mask in range(1 << n):
        ok = True
        for i in range(n):
            if mask >> i & 1 and pt[i] & ~mask:
                ok = False
                break
        if ok:
            out.append(mask)
    return out


def heyting_dual(p: Preorder) -> FiniteAlgebra:
    """The Heyting algebra of up-sets of a poset.

    Carrier index = rank of the up-set bitmask in ascending order, so bot
    (empty set) is 0 and top (all points) is last.  U => V is the largest
    up-set inside -U or V, concretely {x : up(x) & U subset of V}.
    """
    if not p.is_poset:
        raise ValueError("heyting_dual needs a poset")
    ups = _upsets(p)
    pos = {u: i for i, u in enumerate(ups)}
    k = len(ups)
    full = (1 << p.size) - 1
    pt = p.upset_masks()
    join = np.array([[pos[u | v] for v in ups] for u in ups], dtype=np.int16)
    meet = np.array([[pos[u & v] for v in ups] for u in ups], dtype=np.int16)
    imp = np.zeros((k, k), dtype=np.int16)
    for a, u in enumerate(ups):
        for b, v in enumerate(ups):
            w = 0
            for x in range(p.size):
                if pt[x] & u & ~v == 0:
                    w |= 1 << x
            imp[a, b] = pos[w]
    return FiniteAlgebra(
        signature=Signature.HEYTING, size=k, join=join, meet=meet,
        bot=pos[0], top=pos[full], imp=imp,
        names=tuple(format(u, "b").zfill(p.size)[::-1] for u in ups),
    )


def interior_dual(p: Preorder) -> FiniteAlgebra:
    """The interior algebra of all subsets of a preorder.

    Carrier index = subset bitmask (bot 0, top 2^n - 1); the interior of S is
    the set of points whose entire up-set lies in S, so the open elements are
    exactly the up-sets.
    """
    n = p.size
    size = 1 << n
    full = size - 1
    pt = p.upset_masks()
    masks = np.arange(size, dtype=np.int64)
    join = (masks[:, None] | masks[None, :]).astype(np.int16)
    meet = (masks[:, None] & masks[None, :]).astype(np.int16)
    compl = (full ^ masks).astype(np.int16)
    interior = np.zeros(size, dtype=np.int16)
    for s in range(size):
        w = 0
        for x in range(n):
            if pt[x] & ~s == 0:
                w |= 1 << x
        interior[s] = w
    return FiniteAlgebra(
        signature=Signature.INTERIOR, size=size, join=join, meet=meet,
        bot=0, top=full, compl=compl, interior=interior,
        names=tuple(format(s, "b").zfill(n)[::-1] for s in range(size)),
    )


# --- stock frames ------------------------------------------------------------


def chain_poset(n: int) -> Preorder:
    return Preorder(n, tuple(tuple(i <= j for j in range(n)) for i in range(n)))


def antichain(n: int) -> Preorder:
    return Preorder(n, tuple(tuple(i == j for j in range(n)) for i in range(n)))


def cluster(n: int) -> Preorder:
    """One cluster: all points equivalent (not a poset for n >= 2)."""
    return Preorder(n, tuple(tuple(True for _ in range(n)) for _ in range(n)))


def simple_monadic_4() -> FiniteAlgebra:
    """Dual of the 2-point cluster: 4-element Boolean with g = 0 except g(1) = 1."""
    return interior_dual(cluster(2))

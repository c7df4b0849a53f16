"""The two constructions connecting interior algebras and Heyting algebras.

From interior to Heyting: the open elements of an interior algebra form a
Heyting algebra (joins and meets inherited, u => v = g(-u + v)), and interior
homomorphisms restrict to Heyting homomorphisms of the open parts.

Within interior algebras: the star part is the subalgebra generated by the
open elements.  Algebras equal to their star part are the ones this direction
can reconstruct.

From Heyting to interior: the free Boolean extension of a finite distributive
lattice L is the powerset of its join-irreducibles, L embeds via
eta(a) = {j irreducible : j <= a}, and there is exactly one interior operator
on the extension whose opens are the embedded copy of L: the interior of S is
the largest embedded element below S.  A Heyting homomorphism h extends to
the unique interior homomorphism determined by h on the embedded copies.

Every construction here re-validates what the theory promises (the extension
is generated by the embedding, the extension hom is a homomorphism, the
canonical comparison maps are isomorphisms) and raises on violation, so a
suite failure points at real trouble rather than a silently wrong table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    Signature,
    SignatureMismatchError,
    assert_valid,
    generated_subalgebra,
)


@dataclass(frozen=True)
class OpenAlgebra:
    """Heyting algebra of the open elements of an interior algebra.

    open_indices[i] is the source element carried by heyting element i;
    the indices are ascending, so the carrier order is inherited.
    """

    source: FiniteAlgebra
    heyting: FiniteAlgebra
    open_indices: tuple[int, ...]

    def to_source(self, x: int) -> int:
        return self.open_indices[x]

    def from_source(self, v: int) -> int:
        return self.open_indices.index(v)


def open_algebra(a: FiniteAlgebra) -> OpenAlgebra:
    if a.signature is not Signature.INTERIOR:
        raise SignatureMismatchError("open_algebra needs an interior algebra")
    opens = a.open_elements
    pos = {v: i for i, v in enumerate(opens)}
    k = len(opens)
    join = np.array([[pos[int(a.join[u, v])] for v in opens] for u in opens], dtype=np.int16)
    meet = np.array([[pos[int(a.meet[u, v])] for v in opens] for u in opens], dtype=np.int16)
    imp = np.array(
        [
            [pos[int(a.interior[a.join[a.compl[u], v]])] for v in opens]
            for u in opens
        ],
        dtype=np.int16,
    )
    hey = FiniteAlgebra(
        signature=Signature.HEYTING, size=k, join=join, meet=meet,
        bot=pos[a.bot], top=pos[a.top], imp=imp,
        names=tuple(a.names[v] for v in opens) if a.names else None,
    )
    assert_valid(hey, "open part")
    return OpenAlgebra(a, hey, opens)


def open_restriction(
    h: Homomorphism,
    dom_open: Optional[OpenAlgebra] = None,
    cod_open: Optional[OpenAlgebra] = None,
) -> Homomorphism:
    """Restrict an interior homomorphism to the open parts."""
    dom_open = dom_open or open_algebra(h.dom)
    cod_open = cod_open or open_algebra(h.cod)
    mapping = []
    for o in dom_open.open_indices:
        v = h.mapping[o]
        if h.cod.interior[v] != v:
            raise ValueError("interior homomorphism sent an open element to a non-open one")
        mapping.append(cod_open.from_source(v))
    out = Homomorphism(dom_open.heyting, cod_open.heyting, tuple(mapping))
    if out.defects():
        raise ValueError("restriction to opens is not a Heyting homomorphism")
    return out


@dataclass(frozen=True)
class StarAlgebra:
    """Subalgebra of an interior algebra generated by its open elements."""

    source: FiniteAlgebra
    star: FiniteAlgebra
    embedding: Homomorphism  # star -> source, an inclusion

    @property
    def is_whole(self) -> bool:
        return self.star.size == self.source.size


def star_algebra(a: FiniteAlgebra) -> StarAlgebra:
    if a.signature is not Signature.INTERIOR:
        raise SignatureMismatchError("star_algebra needs an interior algebra")
    sub, incl = generated_subalgebra(a, a.open_elements)
    return StarAlgebra(a, sub, incl)


def star_restriction(
    h: Homomorphism,
    dom_star: Optional[StarAlgebra] = None,
    cod_star: Optional[StarAlgebra] = None,
) -> Homomorphism:
    """Restrict an interior homomorphism to the star parts.

    Opens land on opens, so the generated subalgebra lands in the generated
    subalgebra; membership is still checked element by element.
    """
    dom_star = dom_star or star_algebra(h.dom)
    cod_star = cod_star or star_algebra(h.cod)
    back = {v: i for i, v in enumerate(cod_star.embedding.mapping)}
    mapping = []
    for s in dom_star.embedding.mapping:
        v = h.mapping[s]
        if v not in back:
            raise ValueError("image of a star element left the star part")
        mapping.append(back[v])
    out = Homomorphism(dom_star.star, cod_star.star, tuple(mapping))
    if out.defects():
        raise ValueError("restriction to star parts is not a homomorphism")
    return out


@dataclass(frozen=True)
class BooleanExtension:
    """Free Boolean extension of a finite Heyting algebra, with its interior.

    extension's carrier is the powerset of base's join-irreducibles as
    bitmasks (bit k = k-th irreducible in carrier order); eta embeds the base.
    """

    base: FiniteAlgebra
    extension: FiniteAlgebra
    eta: tuple[int, ...]
    irreducibles: tuple[int, ...]

    def embed(self, a: int) -> int:
        return self.eta[a]


def boolean_extension(l: FiniteAlgebra) -> BooleanExtension:
    if l.signature is not Signature.HEYTING:
        raise SignatureMismatchError("boolean_extension needs a Heyting algebra")
    ji = l.join_irreducibles
    m = len(ji)
    if m > 14:
        raise ValueError(f"extension would have 2^{m} elements; refusing past 2^14")
    size = 1 << m
    full = size - 1
    lm = l.leq_matrix
    eta = tuple(
        sum(1 << k for k, j in enumerate(ji) if lm[j, a]) for a in range(l.size)
    )
    masks = np.arange(size, dtype=np.int64)
    join = (masks[:, None] | masks[None, :]).astype(np.int16)
    meet = (masks[:, None] & masks[None, :]).astype(np.int16)
    compl = (full ^ masks).astype(np.int16)
    # interior of S = the largest embedded element below S; the embedded
    # elements below S are closed under join, so scanning once suffices
    interior = np.zeros(size, dtype=np.int16)
    eta_sorted = sorted(set(eta))
    for s in range(size):
        g = 0
        for e in eta_sorted:
            if e & ~s == 0:
                g |= e
        interior[s] = g
    ext = FiniteAlgebra(
        signature=Signature.INTERIOR, size=size, join=join, meet=meet,
        bot=0, top=full, compl=compl, interior=interior,
    )
    assert_valid(ext, "free Boolean extension")
    out = BooleanExtension(l, ext, eta, ji)
    _check_extension(out)
    return out


def _check_extension(ext: BooleanExtension) -> None:
    l, e = ext.base, ext.extension
    # eta is a bounded lattice embedding whose image is exactly the opens
    if len(set(ext.eta)) != l.size:
        raise AssertionError("embedding into the extension is not injective")
    if ext.eta[l.bot] != e.bot or ext.eta[l.top] != e.top:
        raise AssertionError("embedding does not preserve the bounds")
    for a in range(l.size):
        for b in range(l.size):
            if ext.eta[l.join[a, b]] != e.join[ext.eta[a], ext.eta[b]]:
                raise AssertionError("embedding does not preserve joins")
            if ext.eta[l.meet[a, b]] != e.meet[ext.eta[a], ext.eta[b]]:
                raise AssertionError("embedding does not preserve meets")
    if set(e.open_elements) != set(ext.eta):
        raise AssertionError("opens of the extension differ from the embedded base")
    # the embedded base generates the extension as a Boolean algebra
    reduct = FiniteAlgebra(
        signature=Signature.BOOLEAN, size=e.size, join=e.join, meet=e.meet,
        bot=e.bot, top=e.top, compl=e.compl,
    )
    sub, _ = generated_subalgebra(reduct, ext.eta)
    if sub.size != e.size:
        raise AssertionError("embedded base does not generate the extension")


def interior_from_implications(ext: BooleanExtension) -> tuple[int, ...]:
    """The extension's interior table recomputed from implication form.

    Every carrier element S is the meet, over irreducibles j outside S, of
    -eta(j) + eta(j-), where j- is the unique lower cover of j in the base;
    the interior of such a meet is the meet of the embedded relative
    pseudocomplements eta(j => j-).  This route goes through the base's
    implication table and never consults the largest-embedded-element-below
    closed form, so comparing the two tables is a real cross-check.
    """
    l, e = ext.base, ext.extension
    covers = []
    for j in ext.irreducibles:
        cs = l.lower_covers(j)
        assert len(cs) == 1, "a join-irreducible has exactly one lower cover"
        covers.append(cs[0])
    out = []
    for s in range(e.size):
        acc = e.top
        for k, j in enumerate(ext.irreducibles):
            if not s >> k & 1:
                acc = int(e.meet[acc, ext.eta[l.imp[j, covers[k]]]])
        out.append(acc)
    return tuple(out)


def open_iso_of_extension(ext: BooleanExtension) -> Homomorphism:
    """The canonical isomorphism base -> open part of the extension."""
    oa = open_algebra(ext.extension)
    mapping = tuple(oa.from_source(ext.eta[a]) for a in range(ext.base.size))
    h = Homomorphism(ext.base, oa.heyting, mapping)
    if h.defects() or not (h.is_onto and h.is_injective):
        raise AssertionError("embedding does not give an isomorphism onto the opens")
    return h


def extension_hom(
    h: Homomorphism,
    dom_ext: Optional[BooleanExtension] = None,
    cod_ext: Optional[BooleanExtension] = None,
) -> Homomorphism:
    """The unique interior homomorphism between extensions restricting to h.

    The atom {j} of the domain extension equals eta(j) · -eta(j-), where j-
    is the unique lower cover of the irreducible j, so its image is forced;
    general elements are joins of atoms.  The result is checked to be an
    interior homomorphism agreeing with h on the embedded copies.
    """
    dom_ext = dom_ext or boolean_extension(h.dom)
    cod_ext = cod_ext or boolean_extension(h.cod)
    if h.dom != dom_ext.base or h.cod != cod_ext.base:
        raise ValueError("extension does not match the homomorphism's end")
    e2 = cod_ext.extension
    atom_img = []
    for j in dom_ext.irreducibles:
        covers = h.dom.lower_covers(j)
        assert len(covers) == 1, "a join-irreducible has exactly one lower cover"
        u = cod_ext.eta[h.mapping[j]]
        v = cod_ext.eta[h.mapping[covers[0]]]
        atom_img.append(int(e2.meet[u, e2.compl[v]]))
    m = len(dom_ext.irreducibles)
    mapping = []
    for s in range(1 << m):
        img = 0
        for k in range(m):
            if s >> k & 1:
                img = int(e2.join[img, atom_img[k]])
        mapping.append(img)
    out = Homomorphism(dom_ext.extension, e2, tuple(mapping))
    if out.defects():
        raise AssertionError("forced extension of the homomorphism fails to be one")
    for a in range(h.dom.size):
        if out.mapping[dom_ext.eta[a]] != cod_ext.eta[h.mapping[a]]:
            raise AssertionError("extension homomorphism does not restrict to h")
    return out


def star_comparison_iso(a: FiniteAlgebra) -> tuple[Homomorphism, BooleanExtension, StarAlgebra]:
    """Canonical isomorphism from the extension of the open part onto the star part.

    Sends the atom {j} to the source element j^ · -j^- (meet of the openj
    with the complement of its unique open lower cover), re-indexed into the
    star carrier.  Raises if the forced map is not an isomorphism.
    """
    oa = open_algebra(a)
    ext = boolean_extension(oa.heyting)
    sa = star_algebra(a)
    back = {v: i for i, v in enumerate(sa.embedding.mapping)}
    atom_img = []
    for j in ext.irreducibles:
        covers = oa.heyting.lower_covers(j)
        assert len(covers) == 1
        u = oa.to_source(j)
        v = oa.to_source(covers[0])
        atom_img.append(int(a.meet[u, a.compl[v]]))
    mapping = []
    for s in range(ext.extension.size):
        img = a.bot
        k = 0
        t = s
        while t:
            if t & 1:
                img = int(a.join[img, atom_img[k]])
            t >>= 1
            k += 1
        if img not in back:
            raise AssertionError("comparison image left the star part")
        mapping.append(back[img])
    h = Homomorphism(ext.extension, sa.star, tuple(mapping))
    if h.defects() or not (h.is_onto and h.is_injective):
        raise AssertionError("comparison map is not an isomorphism onto the star part")
    return h, ext, sa


def heyting_comparison_iso(a: FiniteAlgebra) -> tuple[Homomorphism, OpenAlgebra, BooleanExtension]:
    """Canonical isomorphism from a Heyting algebra onto the opens of its extension.

    This is the object half of the round trip starting on the Heyting side.
    """
    ext = boolean_extension(a)
    iso = open_iso_of_extension(ext)
    return iso, open_algebra(ext.extension), ext

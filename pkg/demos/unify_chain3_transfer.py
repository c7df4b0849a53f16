"""End to end unification on the three element chain: bounded search, the
generality order, the mu set, and the transfer to the Boolean extension.

Run as: python demos/unify_chain3_transfer.py
"""

from finalg import (
    algebra_type,
    boolean_extension,
    chain_poset,
    heyting_dual,
    tau,
    unifier_search,
    variety_of,
)

l = heyting_dual(chain_poset(2))
v = variety_of(l)
us = unifier_search(l, v)

print(f"algebra: {l.size} element chain; search complete: {us.complete}")
for i, un in enumerate(us.unifiers):
    mark = "*" if i in us.mu_indices() else " "
    rels = "; ".join(un.presentation_of_target.describe()) or "free"
    print(f" {mark} u{i}: {list(un.u.mapping)} -> {un.target.size} elements  [{rels}]")
print("rows of the generality order (1 = row unifier is at least as general):")
for i, row in enumerate(us.order.ge):
    print(f"   u{i}: {[1 if x else 0 for x in row]}")

out = algebra_type(l, v)
print(f"unification type: {out.label()}")

image = tau(us)
print()
print(f"transferred to the extension ({image.algebra.size} elements):")
for i, un in enumerate(image.unifiers):
    mark = "*" if i in image.mu_indices() else " "
    print(f" {mark} tau(u{i}): {list(un.u.mapping)} -> {un.target.size} elements")

independent = unifier_search(image.algebra, image.variety)
ext = boolean_extension(l)
assert image.algebra.size == ext.extension.size
print(
    f"independent search on the extension finds {len(independent.unifiers)} "
    f"unifiers; mu sizes {len(us.mu_indices())} (chain) vs "
    f"{len(independent.mu_indices())} (extension)"
)

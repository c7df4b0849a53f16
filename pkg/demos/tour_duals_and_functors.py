"""A short tour: frames to algebras and back through O, B and star.

Run as: python demos/tour_duals_and_functors.py
"""

from finalg import (
    boolean_extension,
    chain_poset,
    cluster,
    heyting_comparison_iso,
    heyting_dual,
    interior_dual,
    open_algebra,
    star_algebra,
    star_comparison_iso,
)


def show(title, a):
    names = a.names or tuple(str(i) for i in range(a.size))
    print(f"{title}: {a.size} elements, bot={names[a.bot]} top={names[a.top]}")
    if a.interior is not None:
        pairs = ", ".join(f"g({names[i]})={names[int(v)]}" for i, v in enumerate(a.interior))
        print(f"  interior  {pairs}")


print("== the three element chain, as the dual of a two point chain ==")
p = chain_poset(2)
l = heyting_dual(p)
show("L", l)

ext = boolean_extension(l)
show("B(L)", ext.extension)
print(f"  eta embeds L at positions {list(ext.eta)}")

iso, opens_of_ext, _ = heyting_comparison_iso(l)
print(f"  O(B(L)) ~ L via {list(iso.mapping)} (round trip closes)")

print()
print("== the two point cluster: the dual is not generated by its opens ==")
a = interior_dual(cluster(2))
show("A", a)
oa = open_algebra(a)
print(f"  opens of A sit at {list(oa.open_indices)} ({oa.heyting.size} of {a.size})")
sa = star_algebra(a)
print(f"  star part has {sa.star.size} elements; whole algebra: {sa.is_whole}")

psi, _, _ = star_comparison_iso(a)
print(f"  B(O(A)) ~ A* via {list(psi.mapping)}")

print()
print("== a poset dual, where star changes nothing ==")
b = interior_dual(chain_poset(2))
sb = star_algebra(b)
show("B", b)
print(f"  star part is the whole algebra: {sb.is_whole}")

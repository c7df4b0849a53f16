"""Sweep small frames: the implemented identity tracks antisymmetry exactly,
the verbatim transcription does not, and identity holders are star-whole.

Run as: python demos/grz_star_dichotomy.py
"""

from finalg import (
    enumerate_preorders,
    grz_check,
    grz_check_literal,
    interior_dual,
    star_algebra,
)

print(f"{'frame':<14} {'poset':<6} {'identity':<9} {'verbatim':<9} {'star=A':<7}")
for q in enumerate_preorders(3):
    a = interior_dual(q)
    kind = "poset" if q.is_poset else "preorder"
    label = f"{kind}:{q.size}:{q.encoding()}"
    implemented = grz_check(a)
    literal = grz_check_literal(a)
    whole = star_algebra(a).is_whole
    flag = "   <- verbatim form disagrees" if literal != implemented else ""
    print(
        f"{label:<14} {str(q.is_poset):<6} {str(implemented):<9} "
        f"{str(literal):<9} {str(whole):<7}{flag}"
    )

print()
print("The identity column equals the poset column on every row: the dual of")
print("a frame satisfies the identity exactly when the frame is antisymmetric.")
print("Rows with identity=True always have star=A.  On clusters the verbatim")
print("transcription evaluates to True anyway; the workbench keeps both")
print("verdicts side by side instead of silently picking one.")

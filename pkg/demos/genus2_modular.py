"""A genus-2 example: two Jacobians with isomorphic 3-torsion.

Needs the matrix cache; build it once with ``fixed3torsion g2 build-matrices``
(about half an hour). Then ``python demos/genus2_modular.py``.
"""
import time

from fixed3torsion.exact import QQ, cube_class, qstr
from fixed3torsion.genus2 import CurveG2W, findisos, new_coeffs_g2

X = CurveG2W(QQ(12) / 5, QQ(12) / 25, QQ(292) / 125, QQ(-3672) / 3125)
stuv = (QQ(129) / 125, QQ(11) / 25, QQ(3) / 100, QQ(1) / 20)

start = time.perf_counter()
Y = new_coeffs_g2(X, stuv)
print("X(s,t,u,v) =", tuple(qstr(c) for c in Y), f"[{time.perf_counter() - start:.1f}s]")
print("identity check:", tuple(new_coeffs_g2(X, (1, 0, 0, 0))) == X.coeffs)
print("Delta_Y / Delta_X is a cube:", cube_class(CurveG2W(*Y).disc / X.disc)[0])

print("\nSearching for (s,t,u,v) from the pair alone (a few minutes)...")
start = time.perf_counter()
for sol in findisos(X, CurveG2W(*Y), precision=100, cases=("main",)):
    print(sol.case, tuple(qstr(x) for x in sol.stuv), "verified" if sol.verified else "",
          f"[{time.perf_counter() - start:.1f}s]")

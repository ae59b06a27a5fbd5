"""Elliptic curves with the same 3-torsion.

Walks through the genus-1 family: the closed forms for X(s, t), the cube
relation between discriminants, and recovering (s, t) from a pair of curves.
Run with ``python demos/elliptic_3torsion.py``.
"""
from fixed3torsion.exact import QQ, cube_class, qstr
from fixed3torsion.genus1 import CurveG1, disc_g1, find_st, new_coeffs_g1, symbolic_new_coeffs_g1

A, B = symbolic_new_coeffs_g1()
print("A(a,b,s,t) has", len(A), "terms; B has", len(B))

X = CurveG1(-1, 0)
s, t = QQ(2), QQ(-1)
A1, B1 = new_coeffs_g1(X.a, X.b, s, t)
print(f"X = y^2 = x^3 - x, (s,t) = ({s}, {t}) gives A = {qstr(A1)}, B = {qstr(B1)}")

ok, root = cube_class(disc_g1(A1, B1) / disc_g1(X.a, X.b))
print("Delta_Y / Delta_X is a cube:", ok, "with cube root", qstr(root) if root is not None else None)

sols = find_st(X, CurveG1(A1, B1))
print("find_st recovers:", [tuple(qstr(x) for x in st) for st in sols["main"]])

print("\nA starred pair, where the isomorphism of 3-torsion is antisymplectic:")
sols = find_st(CurveG1(-1, 0), CurveG1(-27, -162))
print("main:", sols["main"], " star:", [tuple(qstr(x) for x in st) for st in sols["star"]])

"""Richelot-isogenous pairs have antisymplectically isomorphic 3-torsion.

For a member X of the three-parameter family and its Richelot partner Y the
product of discriminants is a cube, and a starred tuple maps X onto a model of Y.
Needs the matrix cache (see genus2_modular.py).
"""
import sys

from fixed3torsion.exact import cube_class, qstr
from fixed3torsion.genus2 import RichelotParams, findisos, richelot_family

e, f, g = (int(x) for x in sys.argv[1:4]) if len(sys.argv) == 4 else (1, 2, 3)
X, Y, _ = richelot_family(RichelotParams(e, f, g))
print("X =", tuple(qstr(c) for c in X.coeffs))
print("Delta_X * Delta_Y is a cube:", cube_class(X.disc * Y.disc)[0])
for sol in findisos(X, Y, precision=80, cases=("star",)):
    print("starred tuple", tuple(qstr(x) for x in sol.stuv), "reproduces a model of Y exactly")

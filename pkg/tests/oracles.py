"""Independent reference values computed with sympy."""
from __future__ import annotations

from fractions import Fraction

import sympy

Q = sympy.Symbol("q")

# Cartan matrix rows give the simple roots in fundamental-weight coordinates; alpha1 is short
_CARTAN = sympy.Matrix([[2, -1], [-3, 2]])
_ROOT_FORM = sympy.Matrix([[2, -3], [-3, 6]])
_WEIGHT_FORM = _CARTAN.inv() * _ROOT_FORM * _CARTAN.inv().T
_POSITIVE_ROOTS = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]  # alpha coordinates


def sym_qint(n) -> sympy.Expr:
    return (Q**n - Q**-n) / (Q - 1 / Q)


def quantum_dimension(a: int, b: int) -> sympy.Expr:
    """Weyl's product formula for the irreducible module with highest weight a*w1 + b*w2."""
    lam = sympy.Matrix([[a + 1, b + 1]])
    rho = sympy.Matrix([[1, 1]])
    out = sympy.Integer(1)
    for r in _POSITIVE_ROOTS:
        root = sympy.Matrix([list(r)]) * _CARTAN
        out *= sym_qint((lam * _WEIGHT_FORM * root.T)[0]) / sym_qint((rho * _WEIGHT_FORM * root.T)[0])
    return out


def at(expr: sympy.Expr, q0) -> Fraction:
    v = sympy.Rational(expr.subs(Q, sympy.Rational(q0.numerator, q0.denominator)))
    return Fraction(int(v.p), int(v.q))

"""Scalar expressions over jet coordinates and the formal derivative.

Coordinates live on a fibered chart with n base directions x^i and m fiber
components y^sigma; the jet coordinates y^sigma_J carry sorted multi-indices.
Everything is exact rational arithmetic.
"""
from lepage import (
    ChartContext,
    Convention,
    X,
    Y,
    canonicalize,
    const,
    cut_derivative,
    diff,
    equals_zero,
    eval_numeric,
    expr_to_text,
    sym_partial,
    total_derivative,
)
from lepage.charts import FiberVar, MultiIndex

ctx = ChartContext(n=2, m=1, max_order=2)

# the quadratic-in-y12 Lagrange function 1/2 (y1 y2^2 + y12^2 / y1)
L = const(1, 2) * (Y(1, 1) * Y(1, 2) ** 2 + Y(1, 1, 2) ** 2 / Y(1, 1))
print("L =", expr_to_text(L, 1))

# plain coordinate partial: treats y_12 as an independent variable
dL = diff(L, FiberVar(1, MultiIndex((1, 2))))
print("dL/dy_12 =", expr_to_text(dL, 1))

# the formal (total) derivative chains through every jet layer ...
print("d_1 y_2  =", expr_to_text(total_derivative(Y(1, 2), 1, ctx), 1))
# ... while the cut derivative omits the top-order layer
f = Y(1, 2) * Y(1, 1, 2)
print("d_2  (y_2 y_12) =", expr_to_text(total_derivative(f, 2, ctx), 1))
print("d_2' (y_2 y_12) =", expr_to_text(cut_derivative(f, 2, ctx), 1))

# free-index derivative conventions: the symmetrized partial divides by the
# multiplicity of the sorted index, so that freely summed index formulas
# count off-diagonal pairs once
hess = Y(1, 1, 1) * Y(1, 2, 2) - Y(1, 1, 2) ** 2
plain = sym_partial(hess, 1, (1, 2), Convention.PLAIN)
sym = sym_partial(hess, 1, (1, 2), Convention.SYMMETRIZED)
print("plain  d(hess)/dy_12 =", expr_to_text(plain, 1))
print("sym    d(hess)/dy_12 =", expr_to_text(sym, 1))

# numeric evaluation and zero-testing
point = {
    FiberVar(1, MultiIndex((1,))): 1.0,
    FiberVar(1, MultiIndex((2,))): 2.0,
    FiberVar(1, MultiIndex((1, 2))): 3.0,
}
print("L at (y_1, y_2, y_12) = (1, 2, 3):", eval_numeric(L, point))
print("is y_1 y_2 - y_2 y_1 zero?", equals_zero(Y(1, 1) * Y(1, 2) - Y(1, 2) * Y(1, 1)).kind)
print("is (y_1^2 - 1)/(y_1 - 1) zero?", equals_zero((Y(1, 1) ** 2 - 1) / (Y(1, 1) - 1)).kind)
print(
    "identically zero quotient identity:",
    expr_to_text(canonicalize((Y(1, 1) ** 2 - 1) / (Y(1, 1) - 1) - Y(1, 1) - 1), 1),
)

"""Variational objects attached to a Lagrangian.

Constructors for the Euler-Lagrange expressions and form, the principal
Lepage equivalent (the Poincare-Cartan form and its second-order
generalization), the Caratheodory forms of first and second order, the
first-order fundamental (Krupka-Betounes) form, and the second-order
fundamental form over a 2-dimensional base for order-reducible
Lagrangians.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .charts import ChartContext, ChartError, FiberVar, MultiIndex
from .expr import (
    Add,
    Pow,
    Rat,
    ScalarExpr,
    ZeroPolicy,
    as_expr,
    canonicalize,
    diff,
    equals_zero,
    is_zero_expr,
    max_jet_order,
    variables,
)
from .forms import (
    Dx,
    ExteriorForm,
    Omega,
    levi_civita,
    make_form,
    omega_basis,
    wedge_all,
)
from .jets import (
    Convention,
    DEFAULT_CONVENTION,
    cut_derivative,
    iterated_total_derivative,
    mixed_partial,
    sym_partial,
    total_derivative,
)


class UndefinedFormError(ValueError):
    """A constructor's precondition fails (e.g. a vanishing Lagrange function)."""


class OrderReducibilityError(ValueError):
    """The second-order fundamental form was requested for a non-reducible Lagrangian."""

    def __init__(self, report):
        super().__init__(
            f"Lagrangian is not order-reducible: {report.label} fails "
            f"(witness {report.witness!r})"
        )
        self.report = report


@dataclass(frozen=True)
class Lagrangian:
    """A Lagrange function with its chart and declared order r."""

    ctx: ChartContext
    r: int
    L: ScalarExpr

    def __post_init__(self) -> None:
        if self.r < 0:
            raise ChartError(f"negative order {self.r}")
        object.__setattr__(self, "L", canonicalize(self.L))
        actual = max_jet_order(self.L)
        if actual > self.r:
            raise ChartError(f"Lagrange function has order {actual}, declared {self.r}")
        chart = self.ctx.at_order(self.r)
        for v in variables(self.L):
            chart.check_variable(v)
        object.__setattr__(self, "ctx", chart)


def lagrangian_form(lam: Lagrangian) -> ExteriorForm:
    """The horizontal n-form L omega_0."""
    key = tuple(Dx(i) for i in lam.ctx.base_indices)
    return make_form(lam.ctx, lam.ctx.n, [(key, lam.L)], lam.r)


def euler_lagrange_expressions(lam: Lagrangian) -> list[ScalarExpr]:
    """E_sigma(L) = sum_k (-1)^k d_{i1}...d_{ik} dL/dy^sigma_{i1..ik} (sorted inner sum)."""
    ctx = lam.ctx.at_order(lam.r)
    out = []
    for sigma in ctx.fiber_indices:
        pieces = []
        for k in range(lam.r + 1):
            sign = Fraction((-1) ** k)
            for jj in ctx.multi_indices(k):
                partial = diff(lam.L, FiberVar(sigma, jj))
                if is_zero_expr(partial):
                    continue
                term = iterated_total_derivative(partial, jj, ctx)
                pieces.append(Rat(sign) * term)
        total = canonicalize(Add(tuple(pieces))) if pieces else canonicalize(Rat(Fraction(0)))
        out.append(total)
    return out


def euler_lagrange_form(lam: Lagrangian) -> ExteriorForm:
    """The 1-contact (n+1)-form E_sigma(L) omega^sigma ^ omega_0 at order 2r."""
    ctx = lam.ctx
    order = max(2 * lam.r, 1)
    vol = tuple(Dx(i) for i in ctx.base_indices)
    entries = []
    for sigma, e_sigma in enumerate(euler_lagrange_expressions(lam), start=1):
        if not is_zero_expr(e_sigma):
            entries.append(((Omega(sigma, MultiIndex()),) + vol, e_sigma))
    return make_form(ctx, ctx.n + 1, entries, order)


def principal_lepage(lam: Lagrangian, convention: Convention = DEFAULT_CONVENTION) -> ExteriorForm:
    """The principal Lepage equivalent (generalized Poincare-Cartan form).

    Theta = L omega_0
          + sum_{k=0}^{r-1} ( sum_{l=0}^{r-1-k} (-1)^l d_{p1}..d_{pl}
            dL/dy^sigma_{j1..jk p1..pl i} ) omega^sigma_{j1..jk} ^ omega_i
    with all free derivative indices resolved by sym_partial.
    """
    if lam.r > 3:
        raise UndefinedFormError(f"principal Lepage equivalent implemented for r <= 3, got {lam.r}")
    ctx = lam.ctx
    r = lam.r
    order = max(2 * r - 1, 0)
    _, omegas = omega_basis(ctx)
    vol_key = tuple(Dx(i) for i in ctx.base_indices)
    entries: list = [(vol_key, lam.L)]
    base = list(ctx.base_indices)
    for k in range(r):
        for label in itertools.product(base, repeat=k):
            label_sorted = MultiIndex(label)
            for i in base:
                for sigma in ctx.fiber_indices:
                    pieces = []
                    for l in range(r - k):
                        sign = Fraction((-1) ** l)
                        for ps in itertools.product(base, repeat=l):
                            partial = sym_partial(
                                lam.L, sigma, label + ps + (i,), convention
                            )
                            if is_zero_expr(partial):
                                continue
                            term = iterated_total_derivative(partial, ps, ctx)
                            pieces.append(Rat(sign) * term)
                    if not pieces:
                        continue
                    coeff = canonicalize(Add(tuple(pieces)))
                    if is_zero_expr(coeff):
                        continue
                    contact = Omega(sigma, label_sorted)
                    for key, c in wedge_key_entries(contact, omegas[i - 1], coeff):
                        entries.append((key, c))
    return make_form(ctx, ctx.n, entries, order)


def wedge_key_entries(contact: Omega, omega_j: ExteriorForm, coeff: ScalarExpr):
    """Entries of coeff * (omega-contact wedge omega_j) as raw wedge tuples."""
    for key, c in omega_j.terms.items():
        yield (contact,) + key, coeff * c


def _nonvanishing_guard(lam: Lagrangian, policy: ZeroPolicy | None) -> None:
    verdict = equals_zero(lam.L, policy or ZeroPolicy())
    if verdict.is_zero:
        raise UndefinedFormError("Lagrange function vanishes; the form is undefined")


def caratheodory_first(lam: Lagrangian, policy: ZeroPolicy | None = None) -> ExteriorForm:
    """The Caratheodory form L^{1-n} wedge_j (L dx^j + dL/dy^sigma_j omega^sigma)."""
    if lam.r != 1:
        raise UndefinedFormError(f"first-order constructor got order {lam.r}")
    _nonvanishing_guard(lam, policy)
    ctx = lam.ctx
    factors = []
    for j in ctx.base_indices:
        entries: list = [((Dx(j),), lam.L)]
        for sigma in ctx.fiber_indices:
            partial = diff(lam.L, FiberVar(sigma, MultiIndex((j,))))
            if not is_zero_expr(partial):
                entries.append(((Omega(sigma, MultiIndex()),), partial))
        factors.append(make_form(ctx, 1, entries, 1))
    product = wedge_all(factors)
    if ctx.n == 1:
        return product
    return product.scaled(Pow(lam.L, 1 - ctx.n))


def _second_order_factor_coeffs(
    lam: Lagrangian, convention: Convention
) -> tuple[dict, dict]:
    """A^sigma_j = dL/dy^sigma_j - d_i dL/dy^sigma_{ij} and B^sigma_{ij} = dL/dy^sigma_{ij}."""
    ctx = lam.ctx.at_order(2)
    A: dict = {}
    B: dict = {}
    for sigma in ctx.fiber_indices:
        for j in ctx.base_indices:
            for i in ctx.base_indices:
                B[(sigma, i, j)] = sym_partial(lam.L, sigma, (i, j), convention)
            corr = [
                total_derivative(B[(sigma, i, j)], i, ctx) for i in ctx.base_indices
            ]
            A[(sigma, j)] = canonicalize(
                diff(lam.L, FiberVar(sigma, MultiIndex((j,))))
                - Add(tuple(corr))
            )
    return A, B


def caratheodory_second(
    lam: Lagrangian,
    convention: Convention = DEFAULT_CONVENTION,
    policy: ZeroPolicy | None = None,
) -> ExteriorForm:
    """The second-order Caratheodory form, a wedge product of n corrected 1-forms."""
    if lam.r != 2:
        raise UndefinedFormError(f"second-order constructor got order {lam.r}")
    _nonvanishing_guard(lam, policy)
    ctx = lam.ctx
    A, B = _second_order_factor_coeffs(lam, convention)
    factors = []
    for j in ctx.base_indices:
        entries: list = [((Dx(j),), lam.L)]
        for sigma in ctx.fiber_indices:
            if not is_zero_expr(A[(sigma, j)]):
                entries.append(((Omega(sigma, MultiIndex()),), A[(sigma, j)]))
            for i in ctx.base_indices:
                if not is_zero_expr(B[(sigma, i, j)]):
                    entries.append(((Omega(sigma, MultiIndex((i,))),), B[(sigma, i, j)]))
        factors.append(make_form(ctx.at_order(3), 1, entries, 3))
    product = wedge_all(factors)
    if ctx.n == 1:
        return product
    return product.scaled(Pow(lam.L, 1 - ctx.n))


def caratheodory_second_blocks(
    lam: Lagrangian,
    convention: Convention = DEFAULT_CONVENTION,
    policy: ZeroPolicy | None = None,
) -> ExteriorForm:
    """The explicit n=2 decomposition: Theta plus the three 2-contact blocks."""
    if lam.ctx.n != 2:
        raise UndefinedFormError("explicit decomposition is for a 2-dimensional base")
    if lam.r != 2:
        raise UndefinedFormError(f"second-order constructor got order {lam.r}")
    _nonvanishing_guard(lam, policy)
    ctx = lam.ctx
    inv_l = Pow(lam.L, -1)
    A, B = _second_order_factor_coeffs(lam, convention)
    entries: list = []
    empty = MultiIndex()
    for sigma in ctx.fiber_indices:
        for nu in ctx.fiber_indices:
            entries.append(
                (
                    (Omega(sigma, empty), Omega(nu, empty)),
                    inv_l * A[(sigma, 1)] * A[(nu, 2)],
                )
            )
            for j in ctx.base_indices:
                coeff = B[(nu, j, 2)] * A[(sigma, 1)] - B[(nu, j, 1)] * A[(sigma, 2)]
                entries.append(
                    ((Omega(sigma, empty), Omega(nu, MultiIndex((j,)))), inv_l * coeff)
                )
                for i in ctx.base_indices:
                    entries.append(
                        (
                            (Omega(sigma, MultiIndex((i,))), Omega(nu, MultiIndex((j,)))),
                            inv_l * B[(sigma, i, 1)] * B[(nu, j, 2)],
                        )
                    )
    blocks = make_form(ctx.at_order(3), 2, entries, 3)
    return principal_lepage(lam, convention).at_order(3) + blocks


def fundamental_first_order(lam: Lagrangian) -> ExteriorForm:
    """The first-order fundamental (Krupka-Betounes) form.

    Z = L omega_0 + sum_{k=1}^n 1/((n-k)! (k!)^2)
        d^k L / dy^{s1}_{j1} .. dy^{sk}_{jk} eps_{j1..jk i_{k+1}..i_n}
        omega^{s1} ^ .. ^ omega^{sk} ^ dx^{i_{k+1}} ^ .. ^ dx^{i_n}.
    """
    if lam.r != 1:
        raise UndefinedFormError(f"first-order constructor got order {lam.r}")
    ctx = lam.ctx
    n = ctx.n
    if n > 4:
        raise UndefinedFormError(f"combinatorial guard: n <= 4, got {n}")
    base = list(ctx.base_indices)
    fibers = list(ctx.fiber_indices)
    vol_key = tuple(Dx(i) for i in base)
    entries: list = [(vol_key, lam.L)]
    empty = MultiIndex()
    for k in range(1, n + 1):
        scale = Fraction(1, factorial(n - k) * factorial(k) ** 2)
        for sigmas in itertools.product(fibers, repeat=k):
            for js in itertools.product(base, repeat=k):
                partial = lam.L
                for sigma, j in zip(sigmas, js):
                    partial = diff(partial, FiberVar(sigma, MultiIndex((j,))))
                    if is_zero_expr(partial):
                        break
                if is_zero_expr(partial):
                    continue
                for rest in itertools.product(base, repeat=n - k):
                    eps = levi_civita(js + rest)
                    if eps == 0:
                        continue
                    key = tuple(Omega(s, empty) for s in sigmas) + tuple(Dx(i) for i in rest)
                    entries.append((key, Rat(scale * eps) * partial))
    return make_form(ctx, n, entries, 1)


_KAPPA = {1: 2, 2: 1}


@dataclass(frozen=True)
class FundamentalCoefficients:
    """Contact coefficients of the second-order fundamental form (n = 2).

    P is skew in (sigma, nu); R^{1,2} = -R^{2,1} with R^{1,1} = R^{2,2} = 0.
    """

    P: dict
    Q1: dict
    Q2: dict
    R12: dict

    kappa = _KAPPA

    def Q(self, j: int) -> dict:
        return self.Q1 if j == 1 else self.Q2

    def R(self, i: int, j: int, sigma: int, nu: int) -> ScalarExpr:
        if i == j:
            return Rat(Fraction(0))
        if (i, j) == (1, 2):
            return self.R12[(sigma, nu)]
        return canonicalize(-as_expr(self.R12[(sigma, nu)]))


def fundamental_coefficients(
    lam: Lagrangian, convention: Convention = DEFAULT_CONVENTION
) -> FundamentalCoefficients:
    """The P, Q, R coefficient family of the second-order fundamental form."""
    ctx = lam.ctx.at_order(2)
    L = lam.L

    def pp(slot_a: tuple[int, tuple[int, ...]], slot_b: tuple[int, tuple[int, ...]]) -> ScalarExpr:
        return mixed_partial(L, [slot_a, slot_b], convention)

    P: dict = {}
    Q1: dict = {}
    Q2: dict = {}
    R12: dict = {}
    half = Rat(Fraction(1, 2))
    two = Rat(Fraction(2))
    for sigma in ctx.fiber_indices:
        for nu in ctx.fiber_indices:
            p_term = half * (
                pp((sigma, (1,)), (nu, (2,))) - pp((nu, (1,)), (sigma, (2,)))
            )
            p_d1 = cut_derivative(
                canonicalize(
                    pp((nu, (1,)), (sigma, (1, 2))) - pp((sigma, (1,)), (nu, (1, 2)))
                ),
                1,
                ctx,
            )
            p_d2 = cut_derivative(
                canonicalize(
                    pp((sigma, (2,)), (nu, (1, 2))) - pp((nu, (2,)), (sigma, (1, 2)))
                ),
                2,
                ctx,
            )
            P[(sigma, nu)] = canonicalize(p_term + p_d1 + p_d2)
            r_core = pp((sigma, (1, 2)), (nu, (1, 2)))
            Q1[(sigma, nu)] = canonicalize(
                two * pp((sigma, (1,)), (nu, (1, 2)))
                - pp((nu, (1,)), (sigma, (1, 2)))
                - pp((nu, (2,)), (sigma, (1, 1)))
                - two * cut_derivative(r_core, 2, ctx)
            )
            Q2[(sigma, nu)] = canonicalize(
                Rat(Fraction(-2)) * pp((sigma, (2,)), (nu, (1, 2)))
                + pp((nu, (1,)), (sigma, (2, 2)))
                + pp((nu, (2,)), (sigma, (1, 2)))
                + two * cut_derivative(r_core, 1, ctx)
            )
            R12[(sigma, nu)] = canonicalize(Rat(Fraction(-2)) * r_core)
    return FundamentalCoefficients(P, Q1, Q2, R12)


def fundamental_second_order_n2(
    lam: Lagrangian,
    theta_convention: Convention = DEFAULT_CONVENTION,
    coeff_convention: Convention | None = None,
    policy: ZeroPolicy | None = None,
) -> tuple[ExteriorForm, FundamentalCoefficients]:
    """The second-order fundamental form over a 2-dimensional base.

    Z = Theta + (1/2) P omega^s ^ omega^n + Q^j omega^s ^ omega^n_j
              + (1/2) R^{i,j} omega^s_i ^ omega^n_j,
    defined only for order-reducible Lagrangians; otherwise raises
    OrderReducibilityError carrying the violated condition and witness.
    """
    from .verification import order_reducible

    if coeff_convention is None:
        coeff_convention = theta_convention
    if lam.ctx.n != 2:
        raise UndefinedFormError("second-order fundamental form is for a 2-dimensional base")
    if lam.r != 2:
        raise UndefinedFormError(f"second-order constructor got order {lam.r}")
    report = order_reducible(lam, convention=theta_convention, policy=policy)
    if not report.passed:
        raise OrderReducibilityError(report)
    ctx = lam.ctx
    coeffs = fundamental_coefficients(lam, coeff_convention)
    empty = MultiIndex()
    entries: list = []
    half = Rat(Fraction(1, 2))
    for sigma in ctx.fiber_indices:
        for nu in ctx.fiber_indices:
            p = coeffs.P[(sigma, nu)]
            if not is_zero_expr(p):
                entries.append(((Omega(sigma, empty), Omega(nu, empty)), half * p))
            for j in ctx.base_indices:
                q = coeffs.Q(j)[(sigma, nu)]
                if not is_zero_expr(q):
                    entries.append(
                        ((Omega(sigma, empty), Omega(nu, MultiIndex((j,)))), q)
                    )
                for i in ctx.base_indices:
                    r = coeffs.R(i, j, sigma, nu)
                    if not is_zero_expr(r):
                        entries.append(
                            (
                                (Omega(sigma, MultiIndex((i,))), Omega(nu, MultiIndex((j,)))),
                                half * r,
                            )
                        )
    theta = principal_lepage(lam, theta_convention)
    contact = make_form(ctx.at_order(3), 2, entries, 3)
    return theta.at_order(3) + contact, coeffs

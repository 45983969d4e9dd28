"""Machine checks for the variational characterizations.

Every "if and only if" of the theory is a runnable check here: the Lepage
property of an n-form, variational triviality (directly via the
Euler-Lagrange expressions and via the explicit second-order chart
conditions), order-reducibility of the principal equivalent, the
triviality conditions restricted to order-reducible Lagrangians, and
closure of a form.  The module also houses the test-Lagrangian generators,
the numeric random-section oracle for the formal derivative, and the
calibration oracle that fixes the derivative-index convention.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .charts import BaseVar, ChartContext, FiberVar, MultiIndex, var_key
from .expr import (
    Add,
    EvalDomainError,
    Mul,
    Rat,
    ScalarExpr,
    Var,
    ZeroPolicy,
    ZeroVerdict,
    as_expr,
    canonicalize,
    diff,
    equals_zero,
    eval_pole_guarded,
    is_zero_expr,
    max_jet_order,
    substitute,
)
from .forms import (
    ExteriorForm,
    Omega,
    contact_component,
    exterior_derivative,
    horizontalization,
)
from .jets import (
    Convention,
    DEFAULT_CONVENTION,
    cut_derivative,
    mixed_partial,
    sym_partial,
    total_derivative,
)
from .serialize import coframe_label, expr_to_text
from .variational import (
    Lagrangian,
    OrderReducibilityError,
    euler_lagrange_expressions,
    fundamental_second_order_n2,
    lagrangian_form,
)

DEFAULT_POLICY = ZeroPolicy()


class PreconditionError(ValueError):
    """A check was invoked outside its stated precondition."""


class CalibrationError(RuntimeError):
    """No convention combination passes the closure corpus."""


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a single check; failures carry a witness."""

    passed: bool
    label: str = ""
    witness: ScalarExpr | None = None
    witness_point: dict | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def describe(self, fiber_count: int | None = None) -> str:
        if self.passed:
            return f"PASS {self.label}".strip()
        parts = [f"FAIL {self.label}".strip()]
        if self.witness is not None:
            parts.append(f"witness {expr_to_text(self.witness, fiber_count)}")
        if self.witness_point:
            pt = ", ".join(
                f"{expr_to_text(Var(v))}={value:.6g}"
                for v, value in sorted(self.witness_point.items(), key=lambda kv: var_key(kv[0]))
            )
            parts.append(f"at {pt}")
        if self.message:
            parts.append(self.message)
        return ": ".join(parts)


def _fail(label: str, witness: ScalarExpr, verdict: ZeroVerdict | None = None, message: str = "") -> CheckReport:
    point = verdict.witness if verdict is not None else None
    return CheckReport(False, label, canonicalize(witness), point, message)


def _zero_or_fail(e: ScalarExpr, label: str, policy: ZeroPolicy) -> CheckReport | None:
    verdict = equals_zero(e, policy)
    if verdict.is_zero:
        return None
    return _fail(label, e, verdict)


# ---------------------------------------------------------------------------
# Lepage property
# ---------------------------------------------------------------------------


def is_lepage_form(rho: ExteriorForm, policy: ZeroPolicy = DEFAULT_POLICY) -> CheckReport:
    """Pass iff the 1-contact part of d(rho) is generated by the omega^sigma alone."""
    if rho.degree != rho.ctx.n:
        raise PreconditionError(f"expected an n-form (n = {rho.ctx.n}), got degree {rho.degree}")
    p1 = contact_component(exterior_derivative(rho), 1)
    for key, coeff in p1:
        contact = next(el for el in key if isinstance(el, Omega))
        if len(contact.jj) == 0:
            continue
        verdict = equals_zero(coeff, policy)
        if not verdict.is_zero:
            return _fail(
                "lepage-contact",
                coeff,
                verdict,
                message=f"offending basis term {' ∧ '.join(coframe_label(el) for el in key)}",
            )
    return CheckReport(True, "lepage-contact")


def is_lepage_equivalent(
    rho: ExteriorForm, lam: Lagrangian, policy: ZeroPolicy = DEFAULT_POLICY
) -> CheckReport:
    """Pass iff rho is a Lepage form and h(rho) = L omega_0."""
    lepage = is_lepage_form(rho, policy)
    if not lepage.passed:
        return lepage
    mismatch = horizontalization(rho) - lagrangian_form(lam).at_order(rho.order)
    for key, coeff in mismatch:
        verdict = equals_zero(coeff, policy)
        if not verdict.is_zero:
            return _fail("horizontal-mismatch", coeff, verdict)
    return CheckReport(True, "lepage-equivalent")


# ---------------------------------------------------------------------------
# triviality
# ---------------------------------------------------------------------------


def is_trivial(lam: Lagrangian, policy: ZeroPolicy = DEFAULT_POLICY) -> CheckReport:
    """Pass iff every Euler-Lagrange expression vanishes."""
    for sigma, e_sigma in enumerate(euler_lagrange_expressions(lam), start=1):
        bad = _zero_or_fail(e_sigma, f"euler-lagrange[{sigma}]", policy)
        if bad is not None:
            return bad
    return CheckReport(True, "euler-lagrange")


def _first_partial(L: ScalarExpr, sigma: int, jj: tuple[int, ...] = ()) -> ScalarExpr:
    return diff(L, FiberVar(sigma, MultiIndex(jj)))


def _tc1(lam: Lagrangian, sigma: int, convention: Convention) -> ScalarExpr:
    """dL/dy^s - d_i' dL/dy^s_i + d_i' d_j' dL/dy^s_{ij} with free sums."""
    ctx = lam.ctx.at_order(2)
    total = _first_partial(lam.L, sigma)
    for i in ctx.base_indices:
        total = total - cut_derivative(_first_partial(lam.L, sigma, (i,)), i, ctx)
    for i in ctx.base_indices:
        for j in ctx.base_indices:
            inner = cut_derivative(sym_partial(lam.L, sigma, (i, j), convention), j, ctx)
            total = total + cut_derivative(inner, i, ctx)
    return canonicalize(total)


def _sym_slots(values: tuple[int, ...]) -> list[tuple[int, ...]]:
    return list(itertools.permutations(values))


def trivial_conditions_second_order(
    lam: Lagrangian,
    convention: Convention = DEFAULT_CONVENTION,
    policy: ZeroPolicy = DEFAULT_POLICY,
) -> CheckReport:
    """The four explicit chart conditions equivalent to triviality at order two."""
    if lam.r != 2:
        raise PreconditionError(f"second-order check got order {lam.r}")
    ctx = lam.ctx.at_order(2)
    L = lam.L
    base = list(ctx.base_indices)
    for sigma in ctx.fiber_indices:
        bad = _zero_or_fail(_tc1(lam, sigma, convention), "triviality[1]", policy)
        if bad is not None:
            return bad
    # second family: Sym(pqi) of the y_{pqi}-linear coefficient
    for sigma in ctx.fiber_indices:
        for nu in ctx.fiber_indices:
            for triple in itertools.combinations_with_replacement(base, 3):
                pieces = []
                for p, q, i in _sym_slots(triple):
                    term = mixed_partial(L, [(sigma, (i, q)), (nu, (p,))], convention)
                    term = term - mixed_partial(L, [(sigma, (i,)), (nu, (p, q))], convention)
                    for j in base:
                        dj = cut_derivative(
                            mixed_partial(L, [(sigma, (i, j)), (nu, (p, q))], convention), j, ctx
                        )
                        term = term + Rat(Fraction(2)) * dj
                    pieces.append(term)
                total = canonicalize(Add(tuple(pieces)))
                bad = _zero_or_fail(total, "triviality[2]", policy)
                if bad is not None:
                    return bad
    # third family: symmetrized third derivatives
    for mu in ctx.fiber_indices:
        for nu in ctx.fiber_indices:
            for sigma in ctx.fiber_indices:
                for group_a in itertools.combinations_with_replacement(base, 3):
                    for group_b in itertools.combinations_with_replacement(base, 3):
                        pieces = []
                        for s, t, j in _sym_slots(group_a):
                            for p, q, i in _sym_slots(group_b):
                                pieces.append(
                                    mixed_partial(
                                        L,
                                        [(sigma, (i, j)), (nu, (p, q)), (mu, (s, t))],
                                        convention,
                                    )
                                )
                        total = canonicalize(Add(tuple(pieces)))
                        bad = _zero_or_fail(total, "triviality[3]", policy)
                        if bad is not None:
                            return bad
    # fourth family: Sym(pqij) of the second derivatives
    for sigma in ctx.fiber_indices:
        for nu in ctx.fiber_indices:
            for group in itertools.combinations_with_replacement(base, 4):
                pieces = [
                    mixed_partial(L, [(sigma, (i, j)), (nu, (p, q))], convention)
                    for p, q, i, j in _sym_slots(group)
                ]
                total = canonicalize(Add(tuple(pieces)))
                bad = _zero_or_fail(total, "triviality[4]", policy)
                if bad is not None:
                    return bad
    return CheckReport(True, "triviality")


# ---------------------------------------------------------------------------
# order-reducibility
# ---------------------------------------------------------------------------


def order_reducible(
    lam: Lagrangian,
    convention: Convention = DEFAULT_CONVENTION,
    policy: ZeroPolicy | None = None,
) -> CheckReport:
    """Pass iff the principal Lepage equivalent stays at the Lagrangian's order."""
    if lam.r != 2:
        raise PreconditionError(f"order-reducibility check got order {lam.r}")
    policy = policy or DEFAULT_POLICY
    ctx = lam.ctx.at_order(2)
    L = lam.L

    def pp(sig_a, idx_a, sig_b, idx_b):
        return mixed_partial(L, [(sig_a, idx_a), (sig_b, idx_b)], convention)

    if ctx.n == 2:
        for sigma in ctx.fiber_indices:
            for nu in ctx.fiber_indices:
                conditions = [
                    ("order-reducibility[1]", pp(sigma, (1, 1), nu, (1, 1))),
                    ("order-reducibility[2]", pp(sigma, (1, 2), nu, (1, 1))),
                    ("order-reducibility[3]", pp(sigma, (2, 1), nu, (2, 2))),
                    ("order-reducibility[4]", pp(sigma, (2, 2), nu, (2, 2))),
                    (
                        "order-reducibility[5]",
                        canonicalize(
                            pp(sigma, (2, 2), nu, (1, 1))
                            + Rat(Fraction(2)) * pp(sigma, (1, 2), nu, (1, 2))
                        ),
                    ),
                ]
                for label, expr in conditions:
                    bad = _zero_or_fail(expr, label, policy)
                    if bad is not None:
                        return bad
        return CheckReport(True, "order-reducibility")
    for sigma in ctx.fiber_indices:
        for nu in ctx.fiber_indices:
            for p, q, i, j in itertools.product(ctx.base_indices, repeat=4):
                cyclic = canonicalize(
                    pp(sigma, (i, j), nu, (p, q))
                    + pp(sigma, (q, j), nu, (i, p))
                    + pp(sigma, (p, j), nu, (q, i))
                )
                bad = _zero_or_fail(cyclic, "order-reducibility[cyclic]", policy)
                if bad is not None:
                    return bad
    return CheckReport(True, "order-reducibility")


def combination_conditions(
    lam: Lagrangian,
    convention: Convention = DEFAULT_CONVENTION,
    policy: ZeroPolicy = DEFAULT_POLICY,
) -> CheckReport:
    """Triviality conditions for order-reducible second-order Lagrangians."""
    if lam.r != 2:
        raise PreconditionError(f"second-order check got order {lam.r}")
    reducible = order_reducible(lam, convention, policy)
    if not reducible.passed:
        raise PreconditionError(f"Lagrangian is not order-reducible: {reducible.describe()}")
    ctx = lam.ctx.at_order(2)
    L = lam.L

    def pp(sig_a, idx_a, sig_b, idx_b):
        return mixed_partial(L, [(sig_a, idx_a), (sig_b, idx_b)], convention)

    for sigma in ctx.fiber_indices:
        bad = _zero_or_fail(_tc1(lam, sigma, convention), "combination[1]", policy)
        if bad is not None:
            return bad
    if ctx.n == 2:
        two = Rat(Fraction(2))
        for sigma in ctx.fiber_indices:
            for nu in ctx.fiber_indices:
                displays = [
                    ("combination[2]", pp(sigma, (1, 1), nu, (1,)) - pp(nu, (1, 1), sigma, (1,))),
                    ("combination[2]", pp(sigma, (2, 2), nu, (2,)) - pp(nu, (2, 2), sigma, (2,))),
                    (
                        "combination[3]",
                        two * pp(sigma, (1, 2), nu, (1,))
                        - two * pp(nu, (1, 2), sigma, (1,))
                        + pp(sigma, (1, 1), nu, (2,))
                        - pp(nu, (1, 1), sigma, (2,)),
                    ),
                    (
                        "combination[4]",
                        two * pp(sigma, (1, 2), nu, (2,))
                        - two * pp(nu, (1, 2), sigma, (2,))
                        + pp(sigma, (2, 2), nu, (1,))
                        - pp(nu, (2, 2), sigma, (1,)),
                    ),
                ]
                for label, expr in displays:
                    bad = _zero_or_fail(canonicalize(expr), label, policy)
                    if bad is not None:
                        return bad
        return CheckReport(True, "combination")
    base = list(ctx.base_indices)
    for sigma in ctx.fiber_indices:
        for nu in ctx.fiber_indices:
            for triple in itertools.combinations_with_replacement(base, 3):
                pieces = []
                for p, q, i in _sym_slots(triple):
                    pieces.append(
                        mixed_partial(L, [(sigma, (i, q)), (nu, (p,))], convention)
                        - mixed_partial(L, [(sigma, (i,)), (nu, (p, q))], convention)
                    )
                bad = _zero_or_fail(canonicalize(Add(tuple(pieces))), "combination[sym]", policy)
                if bad is not None:
                    return bad
    return CheckReport(True, "combination")


# ---------------------------------------------------------------------------
# closure
# ---------------------------------------------------------------------------


def closure_check(rho: ExteriorForm, policy: ZeroPolicy = DEFAULT_POLICY) -> CheckReport:
    """Pass iff d(rho) vanishes; failure reports the first nonzero coefficient."""
    d_rho = exterior_derivative(rho)
    for key, coeff in d_rho:
        verdict = equals_zero(coeff, policy)
        if not verdict.is_zero:
            return _fail(
                "closure",
                coeff,
                verdict,
                message=f"nonzero at basis term {' ∧ '.join(coframe_label(el) for el in key)}",
            )
    return CheckReport(True, "closure")


# ---------------------------------------------------------------------------
# divergence Lagrangians
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DivergenceGenerator:
    """Functions g^i whose total divergence d_i g^i defines a trivial Lagrangian.

    For second-order components the cyclic condition
    dg^i/dy^s_{jk} + dg^j/dy^s_{ki} + dg^k/dy^s_{ij} = 0 is checked at
    construction.
    """

    ctx: ChartContext
    g: tuple
    s: int
    convention: Convention = DEFAULT_CONVENTION

    def __post_init__(self) -> None:
        if len(self.g) != self.ctx.n:
            raise PreconditionError(f"need {self.ctx.n} components, got {len(self.g)}")
        if self.s > 2:
            raise PreconditionError(f"generator order {self.s} > 2 is unsupported")
        object.__setattr__(self, "g", tuple(canonicalize(as_expr(gi)) for gi in self.g))
        for gi in self.g:
            if max_jet_order(gi) > self.s:
                raise PreconditionError(
                    f"component of order {max_jet_order(gi)} exceeds declared order {self.s}"
                )
        if self.s == 2:
            ctx = self.ctx.at_order(2)
            for sigma in ctx.fiber_indices:
                for i, j, k in itertools.product(ctx.base_indices, repeat=3):
                    cyclic = canonicalize(
                        sym_partial(self.g[i - 1], sigma, (j, k), self.convention)
                        + sym_partial(self.g[j - 1], sigma, (k, i), self.convention)
                        + sym_partial(self.g[k - 1], sigma, (i, j), self.convention)
                    )
                    if not equals_zero(cyclic).is_zero:
                        raise PreconditionError(
                            "cyclic condition on dg^i/dy_{jk} fails at "
                            f"(i,j,k)=({i},{j},{k}): {expr_to_text(cyclic)}"
                        )


def make_divergence_lagrangian(gen: DivergenceGenerator) -> Lagrangian:
    """The trivial Lagrangian L = d_i g^i of order s + 1."""
    ctx = gen.ctx.at_order(gen.s)
    total = Add(tuple(total_derivative(gi, i, ctx) for i, gi in enumerate(gen.g, start=1)))
    r = gen.s + 1
    return Lagrangian(gen.ctx.at_order(r), r, canonicalize(total))


# ---------------------------------------------------------------------------
# Euler-Lagrange expansion cross-check
# ---------------------------------------------------------------------------


def el_expansion_crosscheck(
    lam: Lagrangian,
    convention: Convention = DEFAULT_CONVENTION,
    policy: ZeroPolicy = DEFAULT_POLICY,
) -> CheckReport:
    """Euler-Lagrange expressions versus their cut-derivative expansion."""
    if lam.r != 2:
        raise PreconditionError(f"second-order check got order {lam.r}")
    ctx = lam.ctx.at_order(2)
    L = lam.L
    base = list(ctx.base_indices)
    direct = euler_lagrange_expressions(lam)
    for sigma in ctx.fiber_indices:
        expansion = _tc1(lam, sigma, convention)
        for nu in ctx.fiber_indices:
            for p, q, i in itertools.product(base, repeat=3):
                coeff = mixed_partial(L, [(sigma, (i, q)), (nu, (p,))], convention)
                coeff = coeff - mixed_partial(L, [(sigma, (i,)), (nu, (p, q))], convention)
                for j in base:
                    coeff = coeff + Rat(Fraction(2)) * cut_derivative(
                        mixed_partial(L, [(sigma, (i, j)), (nu, (p, q))], convention), j, ctx
                    )
                expansion = expansion + coeff * Var(FiberVar(nu, MultiIndex((p, q, i))))
        for mu in ctx.fiber_indices:
            for nu in ctx.fiber_indices:
                for s, t, p, q, i, j in itertools.product(base, repeat=6):
                    third = mixed_partial(
                        L, [(sigma, (i, j)), (nu, (p, q)), (mu, (s, t))], convention
                    )
                    if is_zero_expr(third):
                        continue
                    expansion = expansion + third * Var(
                        FiberVar(mu, MultiIndex((s, t, i)))
                    ) * Var(FiberVar(nu, MultiIndex((p, q, j))))
        for nu in ctx.fiber_indices:
            for p, q, i, j in itertools.product(base, repeat=4):
                second = mixed_partial(L, [(sigma, (i, j)), (nu, (p, q))], convention)
                if is_zero_expr(second):
                    continue
                expansion = expansion + second * Var(FiberVar(nu, MultiIndex((p, q, i, j))))
        gap = canonicalize(direct[sigma - 1] - expansion)
        bad = _zero_or_fail(gap, f"el-expansion[{sigma}]", policy)
        if bad is not None:
            return bad
    return CheckReport(True, "el-expansion")


# ---------------------------------------------------------------------------
# numeric random-section oracle
# ---------------------------------------------------------------------------


def _random_section_polynomial(ctx: ChartContext, rng: random.Random, degree: int = 4) -> ScalarExpr:
    terms = []
    for exponents in itertools.product(range(degree + 1), repeat=ctx.n):
        if sum(exponents) > degree:
            continue
        c = Fraction(rng.randint(-16, 16), 16)
        if c == 0:
            continue
        factors: list[ScalarExpr] = [Rat(c)]
        for i, e in enumerate(exponents, start=1):
            if e:
                factors.append(Var(BaseVar(i)) if e == 1 else Var(BaseVar(i)) ** e)
        terms.append(Mul(tuple(factors)) if len(factors) > 1 else factors[0])
    return canonicalize(Add(tuple(terms))) if terms else canonicalize(Rat(Fraction(0)))


def prolongation_bindings(
    gamma: list[ScalarExpr], ctx: ChartContext, order: int
) -> dict:
    """Jet coordinates of the prolonged section: y^s_J -> D_J gamma^s."""
    bindings: dict = {}
    for sigma, component in enumerate(gamma, start=1):
        for k in range(order + 1):
            for jj in ctx.multi_indices(k):
                value = component
                for j in jj:
                    value = diff(value, BaseVar(j))
                bindings[FiberVar(sigma, jj)] = value
    return bindings


def random_section_oracle(
    f: ScalarExpr,
    ctx: ChartContext,
    trials: int = 10,
    seed: int = 0,
    points: int = 10,
    step: float = 1e-4,
    tol: float = 1e-5,
    pole_guard: float = 0.3,
) -> CheckReport:
    """Compare d_i f along prolonged polynomial sections with finite differences.

    Sample points where a denominator of the pulled-back function comes
    within the guard of a pole are resampled (at most 10 times per point).
    """
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(trials):
        gamma = [_random_section_polynomial(ctx, rng) for _ in ctx.fiber_indices]
        bindings = prolongation_bindings(gamma, ctx, ctx.max_order + 1)
        pulled = substitute(f, bindings)
        for i in ctx.base_indices:
            derived = substitute(total_derivative(f, i, ctx), bindings)
            for _ in range(points):
                for _ in range(10):
                    point = {BaseVar(j): rng.uniform(-1.0, 1.0) for j in ctx.base_indices}
                    try:
                        center = eval_pole_guarded(derived, point, pole_guard)
                        up = dict(point)
                        up[BaseVar(i)] += step
                        down = dict(point)
                        down[BaseVar(i)] -= step
                        fd = (
                            eval_pole_guarded(pulled, up, pole_guard)
                            - eval_pole_guarded(pulled, down, pole_guard)
                        ) / (2 * step)
                    except EvalDomainError:
                        continue
                    break
                else:
                    return CheckReport(
                        False,
                        "section-oracle",
                        witness=canonicalize(f),
                        message="sampling failure: poles at every trial point",
                    )
                # tolerance is relative to the local derivative scale
                scale = max(1.0, abs(center), abs(fd))
                gap = abs(fd - center) / scale
                worst = max(worst, gap)
                if gap >= tol:
                    return CheckReport(
                        False,
                        "section-oracle",
                        witness=canonicalize(f),
                        witness_point=point,
                        message=f"finite-difference gap {gap:.3e} at direction {i}",
                    )
    return CheckReport(True, "section-oracle", message=f"max gap {worst:.3e}")


# ---------------------------------------------------------------------------
# corpus of test Lagrangians
# ---------------------------------------------------------------------------


def _lagrangian(n: int, m: int, r: int, L: ScalarExpr) -> Lagrangian:
    return Lagrangian(ChartContext(n, m, r), r, canonicalize(L))


def camassa_holm() -> Lagrangian:
    """L = (1/2)(y1 y2^2 + y12^2 / y1), the quadratic-in-y12 counterexample."""
    y1 = Var(FiberVar(1, MultiIndex((1,))))
    y2 = Var(FiberVar(1, MultiIndex((2,))))
    y12 = Var(FiberVar(1, MultiIndex((1, 2))))
    L = Rat(Fraction(1, 2)) * (y1 * y2 * y2 + y12 * y12 / y1)
    return _lagrangian(2, 1, 2, L)


def hessian_determinant() -> Lagrangian:
    """L = y11 y22 - y12^2, variationally trivial and nonlinear in second derivatives."""
    y11 = Var(FiberVar(1, MultiIndex((1, 1))))
    y22 = Var(FiberVar(1, MultiIndex((2, 2))))
    y12 = Var(FiberVar(1, MultiIndex((1, 2))))
    return _lagrangian(2, 1, 2, y11 * y22 - y12 * y12)


def dirichlet(r: int = 1) -> Lagrangian:
    y1 = Var(FiberVar(1, MultiIndex((1,))))
    y2 = Var(FiberVar(1, MultiIndex((2,))))
    return _lagrangian(2, 1, r, Rat(Fraction(1, 2)) * (y1 * y1 + y2 * y2))


def null_divergence_m2() -> Lagrangian:
    """L = y^1_1 y^2_2 - y^1_2 y^2_1, the m = 2 first-order null Lagrangian."""
    a1 = Var(FiberVar(1, MultiIndex((1,))))
    a2 = Var(FiberVar(1, MultiIndex((2,))))
    b1 = Var(FiberVar(2, MultiIndex((1,))))
    b2 = Var(FiberVar(2, MultiIndex((2,))))
    return _lagrangian(2, 2, 1, a1 * b2 - a2 * b1)


def random_polynomial(
    rng: random.Random,
    pool: list,
    terms: int = 4,
    degree: int = 2,
) -> ScalarExpr:
    """Random rational-coefficient polynomial in the given coordinates."""
    coeffs = (
        Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(-1, 3),
        Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2),
    )
    parts = []
    for _ in range(terms):
        factors: list[ScalarExpr] = [Rat(rng.choice(coeffs))]
        for _ in range(rng.randint(1, degree)):
            factors.append(Var(rng.choice(pool)))
        parts.append(Mul(tuple(factors)))
    return canonicalize(Add(tuple(parts)))


def _order1_pool(ctx: ChartContext) -> list:
    pool: list = [BaseVar(i) for i in ctx.base_indices]
    for sigma in ctx.fiber_indices:
        pool.append(FiberVar(sigma, MultiIndex()))
        for j in ctx.base_indices:
            pool.append(FiberVar(sigma, MultiIndex((j,))))
    return pool


def random_divergence_lagrangian(
    ctx: ChartContext, rng: random.Random, terms: int = 3
) -> Lagrangian:
    """A seeded trivial second-order Lagrangian d_i g^i with first-order g^i."""
    pool = _order1_pool(ctx)
    g = tuple(random_polynomial(rng, pool, terms=terms, degree=2) for _ in ctx.base_indices)
    gen = DivergenceGenerator(ctx.at_order(1), g, 1)
    return make_divergence_lagrangian(gen)


def builtin_calibration_corpus() -> list[Lagrangian]:
    """Trivial order-reducible candidates, including the Hessian determinant."""
    y = Var(FiberVar(1, MultiIndex()))
    y1 = Var(FiberVar(1, MultiIndex((1,))))
    y2 = Var(FiberVar(1, MultiIndex((2,))))
    ctx21 = ChartContext(2, 1, 1)
    half = Rat(Fraction(1, 2))
    members = [hessian_determinant()]
    # d1( y2^2 / 2 )
    members.append(
        make_divergence_lagrangian(DivergenceGenerator(ctx21, (half * y2 * y2, Rat(Fraction(0))), 1))
    )
    # d1( y1 y2^2 / 2 ): produces y1 y2 y12 cross terms
    members.append(
        make_divergence_lagrangian(
            DivergenceGenerator(ctx21, (half * y1 * y2 * y2, Rat(Fraction(0))), 1)
        )
    )
    # d2( y1^3 / 3 )
    members.append(
        make_divergence_lagrangian(
            DivergenceGenerator(ctx21, (Rat(Fraction(0)), Rat(Fraction(1, 3)) * y1 * y1 * y1), 1)
        )
    )
    # x-dependent generator
    members.append(
        make_divergence_lagrangian(
            DivergenceGenerator(ctx21, (Var(BaseVar(2)) * y1, half * y * y), 1)
        )
    )
    # m = 2 generator with cross-fiber coupling
    u = Var(FiberVar(1, MultiIndex()))
    v = Var(FiberVar(2, MultiIndex()))
    v2 = Var(FiberVar(2, MultiIndex((2,))))
    ctx22 = ChartContext(2, 2, 1)
    members.append(
        make_divergence_lagrangian(DivergenceGenerator(ctx22, (half * v * v + u * v2, u * v), 1))
    )
    # seeded random generator
    members.append(random_divergence_lagrangian(ChartContext(2, 1, 1), random.Random(7)))
    return members


def first_order_corpus() -> list[Lagrangian]:
    """First-order Lagrangians (n = 2, m in {1, 2}) for the equivalence checks."""
    y = Var(FiberVar(1, MultiIndex()))
    y1 = Var(FiberVar(1, MultiIndex((1,))))
    y2 = Var(FiberVar(1, MultiIndex((2,))))
    x1, x2 = Var(BaseVar(1)), Var(BaseVar(2))
    half = Rat(Fraction(1, 2))
    u1 = Var(FiberVar(1, MultiIndex((1,))))
    u2 = Var(FiberVar(1, MultiIndex((2,))))
    v = Var(FiberVar(2, MultiIndex()))
    v1 = Var(FiberVar(2, MultiIndex((1,))))
    v2 = Var(FiberVar(2, MultiIndex((2,))))
    return [
        dirichlet(),
        _lagrangian(2, 1, 1, y1 * y2),
        _lagrangian(2, 1, 1, y * y1),
        _lagrangian(2, 1, 1, half * y * y),
        _lagrangian(2, 1, 1, x1 * y1 + x2 * y2),
        _lagrangian(2, 1, 1, y1 * y1 * y2),
        _lagrangian(2, 1, 1, Rat(Fraction(1)) + y1),
        null_divergence_m2(),
        _lagrangian(2, 2, 1, u1 * v2),
        _lagrangian(2, 2, 1, Var(FiberVar(1, MultiIndex())) * v1),
    ]


def second_order_corpus() -> list[Lagrangian]:
    """Second-order Lagrangians (n = 2), mixed trivial and nontrivial, with the
    quadratic-in-y12 counterexample included."""
    y = Var(FiberVar(1, MultiIndex()))
    y1 = Var(FiberVar(1, MultiIndex((1,))))
    y2 = Var(FiberVar(1, MultiIndex((2,))))
    y11 = Var(FiberVar(1, MultiIndex((1, 1))))
    y12 = Var(FiberVar(1, MultiIndex((1, 2))))
    y22 = Var(FiberVar(1, MultiIndex((2, 2))))
    x1 = Var(BaseVar(1))
    half = Rat(Fraction(1, 2))
    u1 = Var(FiberVar(1, MultiIndex((1,))))
    u2 = Var(FiberVar(1, MultiIndex((2,))))
    v1 = Var(FiberVar(2, MultiIndex((1,))))
    v2 = Var(FiberVar(2, MultiIndex((2,))))
    ctx21 = ChartContext(2, 1, 1)
    corpus = [
        camassa_holm(),
        hessian_determinant(),
        _lagrangian(2, 1, 2, y2 * y12),
        _lagrangian(2, 1, 2, half * y11 * y11),
        _lagrangian(2, 1, 2, y1 * y2),
        dirichlet(r=2),
        make_divergence_lagrangian(
            DivergenceGenerator(ctx21, (half * y1 * y2 * y2, Rat(Fraction(0))), 1)
        ),
        _lagrangian(2, 1, 2, x1 * y11 + y2 * y2),
        _lagrangian(2, 1, 2, y * y12),
        _lagrangian(2, 2, 2, u1 * v2 - u2 * v1),
        make_divergence_lagrangian(
            DivergenceGenerator(
                ChartContext(2, 2, 1),
                (
                    half * Var(FiberVar(2, MultiIndex())) * Var(FiberVar(2, MultiIndex())),
                    Var(FiberVar(1, MultiIndex())) * Var(FiberVar(2, MultiIndex())),
                ),
                1,
            )
        ),
        _lagrangian(2, 1, 2, Rat(Fraction(1))),
    ]
    return corpus


def trivial_order_reducible_corpus(count: int = 6, seed: int = 0) -> list[Lagrangian]:
    """Divergence-generated trivial second-order Lagrangians plus the Hessian determinant."""
    members = [hessian_determinant()]
    y2 = Var(FiberVar(1, MultiIndex((2,))))
    members.append(
        make_divergence_lagrangian(
            DivergenceGenerator(ChartContext(2, 1, 1), (Rat(Fraction(1, 2)) * y2 * y2, Rat(Fraction(0))), 1)
        )
    )
    rng = random.Random(seed)
    while len(members) < count:
        members.append(random_divergence_lagrangian(ChartContext(2, 1, 1), rng))
    return members


def nontrivial_order_reducible_corpus() -> list[Lagrangian]:
    """Nontrivial second-order Lagrangians whose principal equivalent keeps order two."""
    y = Var(FiberVar(1, MultiIndex()))
    y1 = Var(FiberVar(1, MultiIndex((1,))))
    y2 = Var(FiberVar(1, MultiIndex((2,))))
    y11 = Var(FiberVar(1, MultiIndex((1, 1))))
    y12 = Var(FiberVar(1, MultiIndex((1, 2))))
    x1 = Var(BaseVar(1))
    return [
        _lagrangian(2, 1, 2, y1 * y2),
        dirichlet(r=2),
        _lagrangian(2, 1, 2, x1 * y11 + y2 * y2),
        _lagrangian(2, 1, 2, y * y12),
    ]


# ---------------------------------------------------------------------------
# convention calibration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CalibrationOutcome:
    theta_convention: Convention
    coeff_convention: Convention
    passed: bool
    failures: tuple = ()


@dataclass(frozen=True)
class CalibrationReport:
    outcomes: tuple
    passing: tuple
    unique: bool
    winner: tuple | None
    ch_witness: str | None

    def render(self) -> str:
        lines = ["convention calibration (closure of the second-order fundamental form)"]
        for out in self.outcomes:
            status = "PASS" if out.passed else "FAIL"
            lines.append(
                f"  theta={out.theta_convention.value:5s} coeff={out.coeff_convention.value:5s}: {status}"
            )
            for index, reason in out.failures:
                lines.append(f"    corpus[{index}]: {reason}")
        if self.winner is not None:
            lines.append(
                f"unique passing combination: theta={self.winner[0].value}, coeff={self.winner[1].value}"
            )
        else:
            combos = ", ".join(f"({a.value},{b.value})" for a, b in self.passing)
            lines.append(f"ambiguous calibration; passing combinations: [{combos}]")
        if self.ch_witness is not None:
            lines.append(
                "camassa-holm order-reducibility witness (condition 5, shipped convention): "
                + self.ch_witness
            )
        return "\n".join(lines)


def calibrate_convention(
    corpus: list[Lagrangian] | None = None,
    policy: ZeroPolicy = DEFAULT_POLICY,
) -> CalibrationReport:
    """Determine the derivative-index convention from the closure corpus.

    Runs the second-order fundamental-form construction plus closure check
    under each (theta, coefficient) convention combination and reports which
    pass on the whole trivial corpus.
    """
    if corpus is None:
        corpus = builtin_calibration_corpus()
    if not corpus:
        raise PreconditionError("empty calibration corpus")
    for index, lam in enumerate(corpus):
        verdict = is_trivial(lam, policy)
        if not verdict.passed:
            raise PreconditionError(f"corpus[{index}] is not variationally trivial")
    outcomes = []
    passing = []
    for theta_conv in (Convention.PLAIN, Convention.SYMMETRIZED):
        for coeff_conv in (Convention.PLAIN, Convention.SYMMETRIZED):
            failures = []
            for index, lam in enumerate(corpus):
                try:
                    z, _ = fundamental_second_order_n2(lam, theta_conv, coeff_conv, policy)
                except OrderReducibilityError as err:
                    failures.append((index, f"refused: {err.report.describe()}"))
                    continue
                closed = closure_check(z, policy)
                if not closed.passed:
                    failures.append((index, closed.describe()))
            outcome = CalibrationOutcome(theta_conv, coeff_conv, not failures, tuple(failures))
            outcomes.append(outcome)
            if outcome.passed:
                passing.append((theta_conv, coeff_conv))
    if not passing:
        raise CalibrationError(
            "no convention combination passes the closure corpus:\n"
            + CalibrationReport(tuple(outcomes), (), False, None, None).render()
        )
    winner = passing[0] if len(passing) == 1 else None
    ch_witness = None
    if winner is not None:
        ch_report = order_reducible(camassa_holm(), convention=winner[0], policy=policy)
        if not ch_report.passed and ch_report.witness is not None:
            ch_witness = expr_to_text(ch_report.witness)
    return CalibrationReport(tuple(outcomes), tuple(passing), winner is not None, winner, ch_witness)

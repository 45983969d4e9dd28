"""The three classical Lepage equivalents of a first-order Lagrangian.

A Lepage equivalent of lambda = L omega_0 is an n-form rho with
h(rho) = lambda whose exterior derivative has 1-contact part generated by
the omega^sigma alone; that 1-contact part is then exactly the
Euler-Lagrange form.  For first order we build the Poincare-Cartan form,
the Caratheodory form (multiplicative, needs nonvanishing L), and the
fundamental (Krupka-Betounes) form.
"""
from lepage import (
    caratheodory_first,
    contact_component,
    dirichlet,
    euler_lagrange_form,
    exterior_derivative,
    form_to_text,
    forms_equal,
    fundamental_first_order,
    horizontalization,
    is_lepage_equivalent,
    lagrangian_form,
    null_divergence_m2,
    principal_lepage,
)

lam = dirichlet()  # L = 1/2 (y_1^2 + y_2^2)
print("Dirichlet Lagrangian, n = 2, m = 1")

theta = principal_lepage(lam)
print("\nPoincare-Cartan form Theta:")
print(form_to_text(theta, 1))

car = caratheodory_first(lam)
print("\nCaratheodory form (m = 1: coincides with Theta):", forms_equal(car, theta))

z = fundamental_first_order(lam)
print("fundamental form (m = 1: coincides with Theta):", z.terms == theta.terms)

el = euler_lagrange_form(lam)
print("\nEuler-Lagrange form:")
print(form_to_text(el, 1))
p1 = contact_component(exterior_derivative(theta), 1)
print("p1(d Theta) equals it:", forms_equal(p1, el))
print("is_lepage_equivalent(Theta, lambda):", is_lepage_equivalent(theta, lam).passed)

# with two fiber components the three equivalents genuinely differ
null = null_divergence_m2()  # L = y^1_1 y^2_2 - y^1_2 y^2_1, variationally trivial
print("\nnull m = 2 Lagrangian:", form_to_text(lagrangian_form(null)))
z2 = fundamental_first_order(null)
print("\nits fundamental form gains the 2-contact term:")
print(form_to_text(contact_component(z2, 2)))
print("\nh(Z) = lambda:", forms_equal(horizontalization(z2), lagrangian_form(null)))
print("dZ = 0 (closed because the Lagrangian is trivial):",
      exterior_derivative(z2).is_structurally_zero())

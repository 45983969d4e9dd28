"""Exterior calculus in the contact-adapted coframe.

Forms are stored over the basis {dx^i, omega^sigma_J} where
omega^sigma_J = dy^sigma_J - y^sigma_{Ji} dx^i are the contact 1-forms.
Horizontalization and the k-contact projections are term filters;
the exterior derivative raises the jet order by one.
"""
from lepage import (
    ChartContext,
    Y,
    contact_component,
    dx,
    exterior_derivative,
    form_to_text,
    horizontalization,
    omega,
    omega_basis,
    wedge,
)

ctx = ChartContext(n=2, m=1, max_order=1)
omega0, (omega_1, omega_2) = omega_basis(ctx)
print("volume form omega_0:")
print(form_to_text(omega0, 1))
print("contractions omega_1, omega_2:")
print(form_to_text(omega_1, 1))
print(form_to_text(omega_2, 1))

# wedge product is graded-commutative and kills repeated factors
w = omega(ctx, 1)
print("\nw1 ^ dx2:")
print(form_to_text(wedge(w, dx(ctx, 2)), 1))
print("w1 ^ w1:")
print(form_to_text(wedge(w, w), 1))

# d of a Lagrangian-style form: only the contact part of the coefficient
# differential survives against the volume form
lam_form = omega0.scaled(Y(1) ** 2)
print("\nd(y^2 omega_0):")
print(form_to_text(exterior_derivative(lam_form), 1))

# the structural rule d(omega^sigma_J) = dx^i ^ omega^sigma_{J+i}
print("\nd(w1):")
print(form_to_text(exterior_derivative(w), 1))

# projections: horizontal part and contact components sum back to the form
mixed = wedge(w, dx(ctx, 2)) + wedge(dx(ctx, 1), dx(ctx, 2)).scaled(Y(1, 1))
print("\nmixed 2-form:")
print(form_to_text(mixed, 1))
print("horizontal part:")
print(form_to_text(horizontalization(mixed), 1))
print("1-contact part:")
print(form_to_text(contact_component(mixed, 1), 1))

dd = exterior_derivative(exterior_derivative(lam_form))
print("\nd(d(y^2 omega_0)) is structurally zero:", dd.is_structurally_zero())

"""
Exact normal forms in the deformed sphere-torus algebra
=======================================================

Every element reduces to a finite sum  a^r * u^s * coefficient(eps)
with exact rational-in-eps coefficients, so algebraic identities are
decided exactly, not numerically.
"""

from fractions import Fraction

from spheretorus.algebra import AlgebraContext
from spheretorus.parser import parse_expr

# the radius parameter R is exact; 5/8 keeps every coefficient rational
ctx = AlgebraContext(Fraction(5, 8))

x, y, z, w = (ctx.generator(g) for g in "xyzw")
u, ud = ctx.generator("u"), ctx.generator("ud")
ap, am = ctx.generator("ap"), ctx.generator("am")
eps = ctx.generator("eps")

# the defining relations all reduce to the zero normal form
print("[x,y] - i*eps*z        ->", parse_expr("[x,y] - i*eps*z", ctx))
print("z^2 + w^2 - 1          ->", parse_expr("z^2 + w^2 - 1", ctx))
print("x^2 + y^2 - w - 5/8    ->", x * x + y * y - w - ctx.scalar(Fraction(5, 8)))

# the winding element u = w + i*z is a unit: u * u' = 1
print("u*ud                   ->", u * ud)

# ladder operators a+- = x +- i*y contract to winding terms plus R
print("ap*am                  ->", ap * am)
print("ap*am - am*ap          ->", ap * am - am * ap)  # equals 2*eps*z

# moving the winding past a ladder costs an exact phase in eps
lhs = u * ap
rhs = parse_expr("ap*u*(1 + 2*i*eps - eps^2)*(1+eps^2)^-1", ctx)
print("u*ap - ap*u*phase      ->", lhs - rhs)

# the adjoint is an antiautomorphism fixing the coordinates
f = x * y * z
print("(x*y*z)' - z*y*x       ->", f.adjoint() - z * y * x)

# negative powers exist only for units; the parser enforces this
print("u^-3 * u^3             ->", parse_expr("u^-3 * u^3", ctx))

# the commutative limit drops every deformation term
print("pi(ap*am)              ->", (ap * am).pi())
print("poisson(x, y)          ->", x.poisson(y))

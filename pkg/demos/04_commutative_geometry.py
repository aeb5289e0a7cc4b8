"""
The commutative limit: a surface with a Poisson bracket
=======================================================

At eps = 0 the algebra becomes functions on the level set
z^2 + (x^2 + y^2 - R)^2 = 1, whose shape morphs from a point through
spheres and a pinched variety to a torus as R grows.
"""

import math
from fractions import Fraction

from spheretorus.algebra import AlgebraContext
from spheretorus.geometry import (
    DarbouxPoint,
    darboux_point,
    poisson_fd,
    slice_curve,
    topology_of,
    variety_residual,
)

# --- topology as R crosses -1, 0, 1 -----------------------------------
for R in (-1.5, -1.0, -0.5, 0.5, 1.0, 2.0):
    print(f"R={R:+.1f}: {topology_of(R).value}")

# --- the y=0 slice shows the pinch -------------------------------------
print("\nslice samples (x, z) at R = 2 (two ovals):")
pts = slice_curve(2.0, samples=8)
print("  ", " ".join(f"({x:+.3f},{z:+.3f})" for x, z in pts[:8]))

# every sample satisfies the surface equation
worst = max(abs(variety_residual((x, 0.0, z), 2.0)) for x, z in pts)
print(f"  worst surface residual: {worst:.2e}")

# --- the chart parametrizes the surface by canonical (p, q) ------------
pt = darboux_point(0.3, 1.1, 0.5)
print(f"\nchart point (p=0.3, q=1.1, R=0.5) -> {pt}")
print(f"  surface residual: {variety_residual(pt, 0.5):.2e}")

# --- the algebraic bracket equals the finite-difference one ------------
ctx = AlgebraContext(Fraction(1, 2))
x, y, z, w = (ctx.generator(g) for g in "xyzw")

print("\n{x, y} as an exact polynomial:", x.poisson(y))
dp = DarbouxPoint(0.2, 0.9)
for f, g, label in ((x, y, "{x,y}"), (y, z, "{y,z}"), (z, x, "{z,x}")):
    alg = f.poisson(g).eval_chart(dp.p, dp.q, 0.5)
    fd = poisson_fd(f.pi(), g.pi(), dp, 0.5)
    print(f"{label} at (0.2, 0.9): algebraic={alg:.6f}  "
          f"finite-diff={fd:.6f}  gap={abs(alg - fd):.1e}")

# the Casimir z^2 + w^2 brackets to zero with everything
cas = z * z + w * w
print("\n{z^2 + w^2, x} =", cas.poisson(x))

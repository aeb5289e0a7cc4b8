"""
Matrix representations of every family
======================================

Each family is a concrete recipe: a diagonal winding unitary with
angles beta + m*alpha and a one-step ladder whose couplings are square
roots of |C|^2(theta') = sec(alpha/2) * cos(theta') + R.
"""

import math

import numpy as np

from spheretorus.classify import solve_minimal_s2, t2_beta_window
from spheretorus.reps import (
    Family,
    ReprSpec,
    build_fuzzy_sphere,
    build_s2,
    build_t2_finite,
    build_t2_window,
    rep_evaluate,
    split_xyzw,
    verify_relations,
)

# --- a minimal sphere chain: alpha solved from (R, n) ----------------
rec = solve_minimal_s2(0.5, 6)
print(f"minimal chain at (R=0.5, n=6): alpha={rec.alpha:.6f}, "
      f"beta'={rec.beta_prime:.6f}")
spec = ReprSpec(Family.S2MIN, 0.5, 6, rec.alpha, rec.beta_prime)
m = build_s2(spec)
report = verify_relations(m)
print("  worst relation residual:", f"{report.max_residual:.2e}")

# the ladder terminates at both ends: a sphere-type chain
print("  ap^6 vanishes:", np.linalg.norm(np.linalg.matrix_power(m.ap, 6)) == 0)

# --- a finite torus cycle: rational angle alpha = 2*pi*k/n -----------
win = t2_beta_window(1.6, 11, 3)
print(f"\ntorus cycle (R=1.6, n=11, k=3): admissible window kind={win.kind}")
spec = ReprSpec(Family.T2, 1.6, 11, 0.0, math.pi, k=3,
                nu=complex(math.cos(0.7), math.sin(0.7)))
m = build_t2_finite(spec)
print("  worst relation residual:", f"{verify_relations(m).max_residual:.2e}")

# the cycle never terminates: eleven ladder steps reproduce the wrap
power = np.linalg.matrix_power(m.ap, 11)
print("  ap^11 is a nonzero multiple of the identity:",
      abs(power[0, 0]) > 1.0 and np.allclose(power, power[0, 0] * np.eye(11)))

# --- a window into the irrational-angle lattice ----------------------
spec = ReprSpec(Family.T2WINDOW, 1.5, 0, 0.9, math.pi, M=8)
m = build_t2_window(spec)
report = verify_relations(m)
print(f"\nlattice window (M=8): relations exact away from rows "
      f"{report.excluded}, residual {report.max_residual:.2e}")

# --- evaluating symbolic elements as matrices ------------------------
from fractions import Fraction

from spheretorus.algebra import AlgebraContext

ctx = AlgebraContext(Fraction(1, 2))
f = ctx.generator("ap") * ctx.generator("am")  # symbolic product
spec = ReprSpec(Family.S2MIN, 0.5, 6, rec.alpha, rec.beta_prime)
m = build_s2(spec)
gap = np.linalg.norm(rep_evaluate(f, m) - m.ap @ m.am)
print(f"\nsymbolic ap*am vs matrix product: |difference| = {gap:.2e}")

# --- the round-sphere reference model --------------------------------
fs = build_fuzzy_sphere(5)
x, y, z, _ = split_xyzw(fs)
casimir = np.linalg.norm(x @ x + y @ y + z @ z - np.eye(5))
print(f"\nround sphere n=5: eps={fs.spec.eps:.6f}, "
      f"|x^2+y^2+z^2 - 1| = {casimir:.2e}")

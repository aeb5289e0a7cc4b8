"""
Which families exist where: solving the parameter plane
=======================================================

At fixed (R, n) the chain/cycle candidates are roots of explicit
trigonometric equations; each candidate either satisfies the interior
positivity inequality or is rejected with the failing site named.
"""

from spheretorus.classify import (
    classify_region,
    enumerate_s2_nonminimal,
    solve_minimal_s2,
    sweep_regions,
    t2_beta_window,
)
from spheretorus.emit import emit_sweep_csv

# --- the minimal chain exists on -1 < R < sec(pi/n) ------------------
for R in (-1.2, -0.557, 1.003, 1.2):
    rec = solve_minimal_s2(R, 8)
    if rec.exists:
        print(f"R={R:+.3f}: minimal chain alpha={rec.alpha:.5f}")
    else:
        print(f"R={R:+.3f}: {rec.reject_reason}")

# --- non-minimal candidates come in two branches ----------------------
print("\ncandidates at (R=1.50, n=11):")
for rec in enumerate_s2_nonminimal(1.50, 11):
    mark = "ok " if rec.exists else "REJ"
    extra = "" if rec.exists else f"  [{rec.reject_reason}]"
    print(f"  {mark} branch {rec.branch} k={rec.k} "
          f"alpha={rec.alpha:.5f} beta'={rec.beta_prime:+.5f}{extra}")

# --- finite-torus offset windows open as R grows ----------------------
print("\noffset window for the (n=11, k=1) cycle:")
for R in (0.99, 1.02, 1.05):
    win = t2_beta_window(R, 11, 1)
    if win.kind == "none":
        print(f"  R={R}: no admissible offset")
    else:
        print(f"  R={R}: {win.kind} ({win.lo:.4f}, {win.hi:.4f})")

# --- one label per point of the (R, eps) plane ------------------------
print("\nregions at eps = 0.5:")
for R in (-2.0, -1.0, 0.5, 1.0, 1.05, 2.0):
    info = classify_region(R, 0.5)
    live = [name for name, flag in info.flags.items() if flag]
    print(f"  R={R:+.3f}: {info.label.value:<20} {', '.join(live) or '-'}")

# --- the same data as a machine-readable sweep ------------------------
rows = sweep_regions(5, [0.5, 1.5], grid=1024)
print("\nsweep table (n=5):")
print(emit_sweep_csv(rows))

"""Second-order consistency of the first-order evolution.

A solution of the first-order system also solves the second-order wave
equations for the Higgs field, the fermions, the electric and magnetic
fields, and conserves the matter current covariantly.  The oracles below
rebuild each wave equation from a short RK4-evolved stack of states
(time derivatives by fourth-order differences, spatial parts by the
covariant stencils) and measure the residuals, which must shrink at the
combined stencil/integrator order ~ 4 under simultaneous refinement.

Runs the check on an anisotropic (Bianchi-I) su(2) background so every
extrinsic-curvature term of the equations is exercised.
"""

import numpy as np

from ymtorus import algebra, constraints, dynamics, geometry, lattice, oracles

model = algebra.su2_toy()
bg = geometry.bianchi1(geometry.ScaleProfile("desitter"), eps=0.3)
coup = dynamics.Couplings(model, lam=1.0)

names = ("higgs wave", "dirac wave", "electric wave", "magnetic wave", "d* current")
results = {}
for n in (12, 24):
    grid = lattice.Grid(n)
    u = lattice.random_state(grid, model, seed=11, amplitude=0.25, cutoff=1)
    u.tau = 0.4
    constraints.complete_state(u, bg)
    constraints.solve_gauss_initial(u, bg, cg_tol=1e-12)
    stack = oracles.time_stack(u, bg, coup, 0.1 * grid.dx)
    results[n] = np.array([
        oracles.higgs_wave_residual(stack, bg, coup),
        oracles.dirac_wave_residual(stack, bg, coup),
        *oracles.em_wave_residuals(stack, bg, coup),
        oracles.current_divergence_residual(stack, bg, coup),
    ])
    print("n = %2d: " % n + "  ".join("%.3e" % r for r in results[n]))

orders = np.log2(results[12] / results[24])
print("\nobserved convergence orders under (dx, dtau) halving:")
for name, order in zip(names, orders):
    print("  %-14s %.2f" % (name, order))

"""Anomalous diffusion through modal analysis.

Replacing the Laplacian by its fractional power only changes each modal
decay rate from lambda_k to lambda_k^(s/2); the eigenvectors are shared.
Smaller s slows the high modes down relative to classical diffusion, which
is the hallmark of sub-diffusive transport.
"""

import numpy as np

from fraclap.discrete import (assemble_laplacian_1d, modal_diffusion_solve,
                              sym_eigendecompose)

n, L = 60, 1.0
eig = sym_eigendecompose(assemble_laplacian_1d(n, L))

# sharp initial condition: a spike in the middle of the rod
u0 = np.zeros(n)
u0[n // 2] = 1.0
times = [0.0, 1e-5, 1e-4, 1e-3]

print("l2 norm of the solution over time (spike initial condition)")
header = "   t      " + "".join(f"  s={s:<6}" for s in (0.5, 1.0, 1.5, 2.0))
print(header)
solutions = {s: modal_diffusion_solve(eig, s, u0, times)
             for s in (0.5, 1.0, 1.5, 2.0)}
for i, t in enumerate(times):
    row = f"{t:8.0e}  "
    for s in (0.5, 1.0, 1.5, 2.0):
        row += f"{np.linalg.norm(solutions[s][i]):8.4f}  "
    print(row)

print()
print("half-width of the profile at t=1e-4 (nodes above half the peak):")
for s in (0.5, 1.0, 1.5, 2.0):
    u = solutions[s][2]
    width = int(np.sum(u > 0.5 * u.max()))
    print(f"  s={s:3.1f}  peak {u.max():.4f}  half-width {width} nodes")
print()
print("Smaller s keeps the peak sharper: fewer modes have decayed, the")
print("spreading is slower than the classical s=2 limit.")

"""The boundary term separating the two operator families.

On a bounded domain the standard form (outer Laplacian of the potential)
and the potential-of-the-Laplacian form differ by exactly the surface
integral that the second Green identity produces:

    restated - new = -surface_term.

The demo verifies this decomposition on the squared-coordinate field,
where every ingredient is smooth and the traces are exact.
"""

from fraclap import (BoundaryData, Definition, FracLapRequest, TestFunction,
                     boundary_quadrature, make_interval_grid)
from fraclap.operators import fraclap_new, fraclap_restated, surface_integral

grid = make_interval_grid(0.0, 1.0, 21)
phi = TestFunction.quadratic(dim=1)
bd = BoundaryData.from_function(boundary_quadrature(grid), phi)

print("s      x     restated-new     -surface term    residual")
for s in (0.5, 0.75, 1.25, 1.5):
    req = FracLapRequest(grid=grid, phi=phi, s=s, boundary=bd,
                         definition=Definition.AUGMENTED)
    for x in (0.35, 0.5, 0.65):
        lhs = fraclap_restated(req, x) - fraclap_new(req, x)
        rhs = -surface_integral(req, x)
        print(f"{s:4.2f}  {x:4.2f}  {lhs: .8e}  {rhs: .8e}  "
              f"{abs(lhs - rhs):.2e}")
print()
print("Affine fields have zero Laplacian, so the potential-of-the-Laplacian")
print("route annihilates them exactly while the standard route does not:")
aff = TestFunction.affine([2.0], 1.0)
bda = BoundaryData.from_function(boundary_quadrature(grid), aff)
req = FracLapRequest(grid=grid, phi=aff, s=0.5, boundary=bda,
                     definition=Definition.AUGMENTED)
print(f"  new(affine)      = {fraclap_new(req, 0.5): .3e}")
print(f"  restated(affine) = {fraclap_restated(req, 0.5): .3e}")

"""Four routes to the fractional Laplacian of a smooth field, compared.

Two families exist on a bounded domain:

* standard form — outer Laplacian of the potential ("restated") and its
  Hadamard finite-part rewrite ("hyper");
* potential-of-the-Laplacian form ("new") and its boundary-augmented
  rewrite through the second Green identity ("augmented").

Within each family the two routes agree to quadrature accuracy; across
families they differ by a boundary term (see demo 03).
"""

from fraclap import (BoundaryData, Definition, FracLapRequest, TestFunction,
                     boundary_quadrature, evaluate, make_interval_grid)

grid = make_interval_grid(0.0, 1.0, 21)
phi = TestFunction.gaussian_bump([0.5], 0.2)
bd = BoundaryData.from_function(boundary_quadrature(grid), phi)
points = [0.3, 0.45, 0.6]

for s in (0.5, 1.5):
    print(f"s = {s}")
    rows = {}
    for dfn in (Definition.RESTATED, Definition.HYPERSINGULAR,
                Definition.NEW, Definition.AUGMENTED):
        req = FracLapRequest(grid=grid, phi=phi, s=s, eval_points=points,
                             definition=dfn, boundary=bd)
        rows[dfn.value] = [v for _, v in evaluate(req)]
    print(f"  {'x':>6} {'restated':>14} {'hyper':>14} {'new':>14} {'augmented':>14}")
    for i, x in enumerate(points):
        print(f"  {x:6.2f} {rows['restated'][i]:14.6e} {rows['hyper'][i]:14.6e} "
              f"{rows['new'][i]:14.6e} {rows['augmented'][i]:14.6e}")
    gap_std = max(abs(a - b) for a, b in zip(rows["restated"], rows["hyper"]))
    gap_new = max(abs(a - b) for a, b in zip(rows["new"], rows["augmented"]))
    print(f"  max |restated - hyper|  = {gap_std:.2e}")
    print(f"  max |new - augmented|   = {gap_new:.2e}")
    print()

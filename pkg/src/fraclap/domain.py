"""Bounded domains (interval, rectangle), analytic test fields, and boundary data."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import MissingBoundaryData
from .quadrature import DEFAULT_GAUSS_ORDER, gauss_panel

__all__ = [
    "Grid1D",
    "Grid2D",
    "make_interval_grid",
    "make_rectangle_grid",
    "BoundaryQuadrature",
    "boundary_quadrature",
    "TestFunction",
    "BoundaryData",
]


@dataclass(frozen=True)
class Grid1D:
    """Uniform interval grid with boundary markers."""

    a: float
    b: float
    n: int
    nodes: np.ndarray

    @property
    def dim(self):
        return 1

    @property
    def bounds(self):
        return (self.a, self.b)

    @property
    def spacing(self):
        return (self.b - self.a) / (self.n - 1)

    @property
    def diameter(self):
        return self.b - self.a

    @property
    def measure(self):
        return self.b - self.a

    def boundary_points(self):
        return [(self.a, -1.0), (self.b, 1.0)]

    def distance_to_boundary(self, x):
        x = float(np.asarray(x).reshape(()))
        return min(x - self.a, self.b - x)

    def interior_nodes(self, margin_cells=2):
        delta = margin_cells * self.spacing
        mask = (self.nodes - self.a >= delta - 1e-14) & (self.b - self.nodes >= delta - 1e-14)
        return self.nodes[mask]


@dataclass(frozen=True)
class Grid2D:
    """Tensor-product rectangle grid; boundary edges carry unit outward normals."""

    a1: float
    b1: float
    a2: float
    b2: float
    nx: int
    ny: int
    x_nodes: np.ndarray
    y_nodes: np.ndarray

    @property
    def dim(self):
        return 2

    @property
    def bounds(self):
        return (self.a1, self.b1, self.a2, self.b2)

    @property
    def spacing(self):
        return max((self.b1 - self.a1) / (self.nx - 1), (self.b2 - self.a2) / (self.ny - 1))

    @property
    def diameter(self):
        return float(np.hypot(self.b1 - self.a1, self.b2 - self.a2))

    @property
    def measure(self):
        return (self.b1 - self.a1) * (self.b2 - self.a2)

    def edges(self):
        """Boundary edges as (start, end, outward unit normal), counterclockwise."""
        c = [np.array([self.a1, self.a2]), np.array([self.b1, self.a2]),
             np.array([self.b1, self.b2]), np.array([self.a1, self.b2])]
        normals = [np.array([0.0, -1.0]), np.array([1.0, 0.0]),
                   np.array([0.0, 1.0]), np.array([-1.0, 0.0])]
        return [(c[i], c[(i + 1) % 4], normals[i]) for i in range(4)]

    def distance_to_boundary(self, p):
        p = np.asarray(p, float).reshape(2)
        return min(p[0] - self.a1, self.b1 - p[0], p[1] - self.a2, self.b2 - p[1])

    def interior_nodes(self, margin_cells=2):
        delta = margin_cells * self.spacing
        xs = self.x_nodes[(self.x_nodes - self.a1 >= delta - 1e-14)
                          & (self.b1 - self.x_nodes >= delta - 1e-14)]
        ys = self.y_nodes[(self.y_nodes - self.a2 >= delta - 1e-14)
                          & (self.b2 - self.y_nodes >= delta - 1e-14)]
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        return np.column_stack([gx.ravel(), gy.ravel()])


def make_interval_grid(a: float, b: float, n: int) -> Grid1D:
    """Uniform grid of n nodes on [a, b], endpoints included."""
    if not b > a:
        raise ValueError(f"degenerate interval [{a}, {b}]")
    if n < 3:
        raise ValueError(f"need at least 3 nodes, got {n}")
    return Grid1D(a=a, b=b, n=n, nodes=np.linspace(a, b, n))


def make_rectangle_grid(a1, b1, a2, b2, nx, ny) -> Grid2D:
    if not (b1 > a1 and b2 > a2):
        raise ValueError(f"degenerate rectangle [{a1},{b1}]x[{a2},{b2}]")
    if nx < 3 or ny < 3:
        raise ValueError(f"need at least 3 nodes per direction, got {nx}x{ny}")
    return Grid2D(a1=a1, b1=b1, a2=a2, b2=b2, nx=nx, ny=ny,
                  x_nodes=np.linspace(a1, b1, nx), y_nodes=np.linspace(a2, b2, ny))


@dataclass(frozen=True)
class BoundaryQuadrature:
    """Surface rule: points, unit outward normals, weights."""

    points: np.ndarray   # (M,) in 1D, (M, 2) in 2D
    normals: np.ndarray  # (M,) or (M, 2)
    weights: np.ndarray  # (M,)
    dim: int

    def __iter__(self):
        return iter(zip(self.points, self.normals, self.weights))

    def __len__(self):
        return len(self.weights)


def boundary_quadrature(grid, panels_per_edge=None, gauss_order=DEFAULT_GAUSS_ORDER) -> BoundaryQuadrature:
    """Surface quadrature: endpoint rule in 1D, composite Gauss per edge in 2D."""
    if grid.dim == 1:
        return BoundaryQuadrature(points=np.array([grid.a, grid.b]),
                                  normals=np.array([-1.0, 1.0]),
                                  weights=np.array([1.0, 1.0]), dim=1)
    pts, nrm, wts = [], [], []
    for start, end, normal in grid.edges():
        tangent = end - start
        length = float(np.hypot(*tangent))
        npan = panels_per_edge
        if npan is None:
            npan = max(grid.nx, grid.ny) - 1
        for j in range(npan):
            t, w = gauss_panel(j / npan, (j + 1) / npan, gauss_order)
            pts.append(start[None, :] + t[:, None] * tangent[None, :])
            nrm.append(np.broadcast_to(normal, (len(t), 2)))
            wts.append(w * length)
    return BoundaryQuadrature(points=np.vstack(pts), normals=np.vstack(nrm),
                              weights=np.concatenate(wts), dim=2)


def _as_points(x, dim):
    """Normalize input to (N, dim) plus a flag for scalar input."""
    arr = np.asarray(x, float)
    if dim == 1:
        scalar = arr.ndim == 0
        return arr.reshape(-1, 1), scalar
    if arr.ndim == 1:
        return arr.reshape(1, dim), True
    return arr.reshape(-1, dim), False


@dataclass(frozen=True)
class TestFunction:
    """Analytic scalar field with exact gradient, Laplacian, and Hessian.

    All evaluators accept scalars / (N,) arrays in 1D and (2,) / (N, 2)
    arrays in 2D, returning matching shapes.
    """

    kind: str
    dim: int
    _value: object = field(repr=False)
    _gradient: object = field(repr=False)
    _laplacian: object = field(repr=False)
    _hessian: object = field(repr=False)

    def value(self, x):
        pts, scalar = _as_points(x, self.dim)
        out = self._value(pts)
        return float(out[0]) if scalar else out

    def gradient(self, x):
        pts, scalar = _as_points(x, self.dim)
        out = self._gradient(pts)
        if self.dim == 1:
            out = out.reshape(-1)
            return float(out[0]) if scalar else out
        return out[0] if scalar else out

    def laplacian(self, x):
        pts, scalar = _as_points(x, self.dim)
        out = self._laplacian(pts)
        return float(out[0]) if scalar else out

    def hessian(self, x):
        pts, scalar = _as_points(x, self.dim)
        out = self._hessian(pts)
        return out[0] if scalar else out

    def normal_derivative(self, x, normal):
        pts, scalar = _as_points(x, self.dim)
        g = self._gradient(pts)
        n = np.asarray(normal, float)
        if self.dim == 1:
            out = g.reshape(-1) * n.reshape(-1)
        else:
            out = np.einsum("ij,ij->i", g, np.broadcast_to(n.reshape(-1, 2), g.shape))
        return float(out[0]) if scalar else out

    # ---- factories -------------------------------------------------------

    @staticmethod
    def constant(c, dim=1):
        return TestFunction(
            kind=f"const:{c}", dim=dim,
            _value=lambda p: np.full(len(p), float(c)),
            _gradient=lambda p: np.zeros((len(p), dim)),
            _laplacian=lambda p: np.zeros(len(p)),
            _hessian=lambda p: np.zeros((len(p), dim, dim)),
        )

    @staticmethod
    def affine(gradient, offset=0.0, dim=None):
        g = np.atleast_1d(np.asarray(gradient, float))
        if dim is None:
            dim = len(g)
        return TestFunction(
            kind=f"affine:{','.join(map(str, g))},{offset}", dim=dim,
            _value=lambda p: p @ g + float(offset),
            _gradient=lambda p: np.broadcast_to(g, (len(p), dim)).copy(),
            _laplacian=lambda p: np.zeros(len(p)),
            _hessian=lambda p: np.zeros((len(p), dim, dim)),
        )

    @staticmethod
    def quadratic(dim=1):
        """Sum of squared coordinates; Laplacian is 2*dim everywhere."""
        eye = np.eye(dim)
        return TestFunction(
            kind="quad", dim=dim,
            _value=lambda p: np.sum(p * p, axis=1),
            _gradient=lambda p: 2.0 * p,
            _laplacian=lambda p: np.full(len(p), 2.0 * dim),
            _hessian=lambda p: np.broadcast_to(2.0 * eye, (len(p), dim, dim)).copy(),
        )

    @staticmethod
    def gaussian_bump(center, width):
        c = np.atleast_1d(np.asarray(center, float))
        dim = len(c)
        w2 = float(width) ** 2

        def val(p):
            return np.exp(-np.sum((p - c) ** 2, axis=1) / (2.0 * w2))

        def grad(p):
            return -(p - c) / w2 * val(p)[:, None]

        def lap(p):
            r2 = np.sum((p - c) ** 2, axis=1)
            return (r2 / w2 ** 2 - dim / w2) * val(p)

        def hess(p):
            d = p - c
            outer = np.einsum("ij,ik->ijk", d, d) / w2 ** 2
            return (outer - np.eye(dim)[None, :, :] / w2) * val(p)[:, None, None]

        return TestFunction(kind=f"gauss:{','.join(map(str, c))},{width}", dim=dim,
                            _value=val, _gradient=grad, _laplacian=lap, _hessian=hess)

    @staticmethod
    def sine_mode(k, grid):
        """Product of sine modes vanishing on the boundary of ``grid``."""
        k = int(k)
        if grid.dim == 1:
            om = k * np.pi / (grid.b - grid.a)
            a = grid.a
            return TestFunction(
                kind=f"sine:{k}", dim=1,
                _value=lambda p: np.sin(om * (p[:, 0] - a)),
                _gradient=lambda p: om * np.cos(om * (p[:, 0] - a))[:, None],
                _laplacian=lambda p: -om ** 2 * np.sin(om * (p[:, 0] - a)),
                _hessian=lambda p: -om ** 2 * np.sin(om * (p[:, 0] - a))[:, None, None],
            )
        omx = k * np.pi / (grid.b1 - grid.a1)
        omy = k * np.pi / (grid.b2 - grid.a2)
        a1, a2 = grid.a1, grid.a2

        def val(p):
            return np.sin(omx * (p[:, 0] - a1)) * np.sin(omy * (p[:, 1] - a2))

        def grad(p):
            sx, cx = np.sin(omx * (p[:, 0] - a1)), np.cos(omx * (p[:, 0] - a1))
            sy, cy = np.sin(omy * (p[:, 1] - a2)), np.cos(omy * (p[:, 1] - a2))
            return np.column_stack([omx * cx * sy, omy * sx * cy])

        def lap(p):
            return -(omx ** 2 + omy ** 2) * val(p)

        def hess(p):
            sx, cx = np.sin(omx * (p[:, 0] - a1)), np.cos(omx * (p[:, 0] - a1))
            sy, cy = np.sin(omy * (p[:, 1] - a2)), np.cos(omy * (p[:, 1] - a2))
            h = np.empty((len(p), 2, 2))
            h[:, 0, 0] = -omx ** 2 * sx * sy
            h[:, 1, 1] = -omy ** 2 * sx * sy
            h[:, 0, 1] = h[:, 1, 0] = omx * omy * cx * cy
            return h

        return TestFunction(kind=f"sine:{k}", dim=2,
                            _value=val, _gradient=grad, _laplacian=lap, _hessian=hess)


@dataclass(frozen=True)
class BoundaryData:
    """Dirichlet and Neumann traces at the points of a boundary quadrature.

    Missing entries are NaN; the augmented evaluator requires full coverage
    of both traces and rejects anything less at evaluation time.
    """

    quadrature: BoundaryQuadrature
    dirichlet: np.ndarray
    neumann: np.ndarray

    def __post_init__(self):
        m = len(self.quadrature)
        if len(self.dirichlet) != m or len(self.neumann) != m:
            raise ValueError("trace arrays must match the boundary quadrature size")

    @classmethod
    def from_function(cls, bq: BoundaryQuadrature, f: TestFunction) -> "BoundaryData":
        """Exact traces of an analytic field on every quadrature point."""
        d = f.value(bq.points) if bq.dim == 2 else np.asarray(
            [f.value(p) for p in bq.points])
        if bq.dim == 2:
            n = f.normal_derivative(bq.points, bq.normals)
        else:
            n = np.asarray([f.value(p) * 0.0 + f.gradient(p) * nv
                            for p, nv in zip(bq.points, bq.normals)])
        return cls(quadrature=bq, dirichlet=np.asarray(d, float), neumann=np.asarray(n, float))

    @classmethod
    def from_values(cls, bq: BoundaryQuadrature, dirichlet, neumann) -> "BoundaryData":
        d = np.broadcast_to(np.asarray(dirichlet, float), (len(bq),)).copy()
        n = np.broadcast_to(np.asarray(neumann, float), (len(bq),)).copy()
        return cls(quadrature=bq, dirichlet=d, neumann=n)

    def require_full(self):
        if np.isnan(self.dirichlet).any() or np.isnan(self.neumann).any():
            raise MissingBoundaryData(
                "augmented evaluation needs Dirichlet and Neumann traces at "
                "every boundary quadrature point")
        return self

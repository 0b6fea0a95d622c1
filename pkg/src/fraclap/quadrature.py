"""Singularity-aware quadrature: geometrically graded panels with a
double-exponential closure around the singular point.

The weakly singular kernels integrated here behave like r^(-alpha) near an
interior point.  Panels shrink geometrically toward that point so each Gauss
panel sees an analytic integrand; the innermost cell (which touches the
singularity) is covered by tanh-sinh nodes whose distances to the singular
point are tracked exactly, so kernels can be evaluated from the stored
distance instead of a cancellation-prone position difference.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["GradedPanels", "gauss_panel", "graded_quadrature_rule"]

DEFAULT_RATIO = 0.5
DEFAULT_GAUSS_ORDER = 8
DEFAULT_LEVELS_1D = 14
DEFAULT_LEVELS_2D = 10
DEFAULT_ANGULAR_PANELS = 4

_TS_N = 30
_TS_TMAX = 6.0


def gauss_panel(a, b, order):
    """Gauss-Legendre nodes and weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (a + b) + 0.5 * (b - a) * x, 0.5 * (b - a) * w


def _tanh_sinh_unit(n=_TS_N, tmax=_TS_TMAX):
    """Tanh-sinh rule on (0, 1], nodes returned as distances from 0.

    Distances are computed as 1/(1+exp(-2z)) so they stay meaningful far
    below machine epsilon relative to the panel size.
    """
    h = tmax / n
    t = np.arange(-n, n + 1) * h
    z = 0.5 * np.pi * np.sinh(t)
    with np.errstate(over="ignore"):
        delta = 1.0 / (1.0 + np.exp(-2.0 * z))
        w = h * 0.25 * np.pi * np.cosh(t) / np.cosh(z) ** 2
    keep = (delta > 0.0) & np.isfinite(w) & (w > 0.0)
    return delta[keep], w[keep]


def _composite_gauss01(n_panels, order):
    xs, ws = [], []
    for j in range(n_panels):
        x, w = gauss_panel(j / n_panels, (j + 1) / n_panels, order)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def _radial_levels(levels, ratio):
    return [ratio ** k for k in range(levels + 1)]


@dataclass
class _TriangleFan:
    """Duffy data for one corner triangle of a 2D rule."""

    area: float
    chords: np.ndarray        # (nv, 2) chord vectors from the singular point
    chord_len: np.ndarray     # (nv,)
    v_weights: np.ndarray     # (nv,)


@dataclass
class GradedPanels:
    """Quadrature rule graded toward one singular point.

    ``nodes`` are positions (shape (N,) in 1D, (N, 2) in 2D), ``weights``
    the corresponding weights, and ``dist`` the exact distance of each node
    to the singular point.  ``core_*`` fields describe the innermost region
    so that finite-part evaluators can exclude and patch it analytically.
    """

    dim: int
    singular_point: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray
    dist: np.ndarray
    core_slice: slice                  # nodes belonging to the innermost cells
    core_radii_1d: tuple = ()          # per-side innermost radii (1D)
    core_scale_2d: float = 0.0         # innermost radial fraction u0 (2D)
    triangles: list = field(default_factory=list)

    def integrate(self, f) -> float:
        """Integrate a plain (non-singular) callable or value array."""
        vals = f(self.nodes) if callable(f) else np.asarray(f)
        return float(np.sum(self.weights * vals))

    def integrate_kernel(self, power: float, f=1.0, *, skip_core: bool = False) -> float:
        """Integrate f(xi) * r^power with r the distance to the singular point.

        Accumulated in log space so that deep tanh-sinh nodes neither
        overflow nor underflow the kernel factor.
        """
        vals = f(self.nodes) if callable(f) else np.broadcast_to(np.asarray(f, float), self.dist.shape)
        w, r = self.weights, self.dist
        if skip_core:
            keep = np.ones(len(r), bool)
            keep[self.core_slice] = False
            vals, w, r = vals[keep], w[keep], r[keep]
        mag = np.abs(vals)
        term = np.where(mag > 0.0,
                        np.sign(vals) * np.exp(np.log(w) + power * np.log(r)
                                               + np.log(np.where(mag > 0.0, mag, 1.0))),
                        0.0)
        return float(np.sum(term))


def _graded_rule_interval(a, b, xs, levels, ratio, order):
    pos, wts, dist = [], [], []
    core_pos, core_w, core_d, core_radii = [], [], [], []
    for lo, hi, sing_at_hi in ((a, xs, True), (xs, b, False)):
        length = hi - lo
        if length <= 0.0:
            continue
        radii = [length * rk for rk in _radial_levels(levels, ratio)]
        for k in range(levels):
            r, w = gauss_panel(radii[k + 1], radii[k], order)
            pos.append(hi - r if sing_at_hi else lo + r)
            wts.append(w)
            dist.append(r)
        h = radii[-1]
        dl, wl = _tanh_sinh_unit()
        r = h * dl
        core_pos.append(hi - r if sing_at_hi else lo + r)
        core_w.append(h * wl)
        core_d.append(r)
        core_radii.append(h)
    n_outer = sum(len(p) for p in pos)
    nodes = np.concatenate(pos + core_pos)
    weights = np.concatenate(wts + core_w)
    dists = np.concatenate(dist + core_d)
    return GradedPanels(
        dim=1, singular_point=np.asarray([xs], float),
        nodes=nodes, weights=weights, dist=dists,
        core_slice=slice(n_outer, len(nodes)),
        core_radii_1d=tuple(core_radii),
    )


def _graded_rule_rectangle(rect, xs, levels, ratio, order, angular_panels):
    a1, b1, a2, b2 = rect
    xs = np.asarray(xs, float)
    corners = [np.array([a1, a2]), np.array([b1, a2]),
               np.array([b1, b2]), np.array([a1, b2])]
    radii = _radial_levels(levels, ratio)
    u_out, wu_out = [], []
    for k in range(levels):
        u, w = gauss_panel(radii[k + 1], radii[k], order)
        u_out.append(u)
        wu_out.append(w)
    u_outer = np.concatenate(u_out)
    wu_outer = np.concatenate(wu_out)
    u0 = radii[-1]
    dl, wl = _tanh_sinh_unit()
    u_core, wu_core = u0 * dl, u0 * wl
    v, wv = _composite_gauss01(angular_panels, order)

    def fan_blocks(u, wu):
        pts, wts, dist, tris = [], [], [], []
        for i in range(4):
            A, B = corners[i], corners[(i + 1) % 4]
            d1, d2 = A - xs, B - xs
            area = 0.5 * abs(d1[0] * d2[1] - d1[1] * d2[0])
            if area < 1e-30:
                continue
            chords = (1.0 - v)[:, None] * d1 + v[:, None] * d2
            clen = np.hypot(chords[:, 0], chords[:, 1])
            p = (xs[None, None, :] + u[:, None, None] * chords[None, :, :]).reshape(-1, 2)
            w = (2.0 * area * (u * wu)[:, None] * wv[None, :]).ravel()
            r = (u[:, None] * clen[None, :]).ravel()
            keep = w > 0.0  # deepest tanh-sinh products may underflow to zero
            pts.append(p[keep])
            wts.append(w[keep])
            dist.append(r[keep])
            tris.append(_TriangleFan(area, chords, clen, wv))
        return pts, wts, dist, tris

    outer = fan_blocks(u_outer, wu_outer)
    core = fan_blocks(u_core, wu_core)
    n_outer = sum(len(p) for p in outer[0])
    nodes = np.vstack(outer[0] + core[0])
    weights = np.concatenate(outer[1] + core[1])
    dists = np.concatenate(outer[2] + core[2])
    return GradedPanels(
        dim=2, singular_point=xs,
        nodes=nodes, weights=weights, dist=dists,
        core_slice=slice(n_outer, len(weights)),
        core_scale_2d=u0, triangles=outer[3],
    )


def graded_quadrature_rule(domain, singular_point, levels=None,
                           ratio=DEFAULT_RATIO, gauss_order=DEFAULT_GAUSS_ORDER,
                           angular_panels=DEFAULT_ANGULAR_PANELS) -> GradedPanels:
    """Build a graded rule for ``domain`` with singularity at ``singular_point``.

    ``domain`` is a Grid1D/Grid2D or a raw bounds tuple: (a, b) in 1D,
    (a1, b1, a2, b2) in 2D.
    """
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"grading ratio must lie in (0,1), got {ratio!r}")
    bounds = getattr(domain, "bounds", domain)
    if len(bounds) == 2:
        a, b = bounds
        x = float(np.asarray(singular_point).reshape(()))
        if not a <= x <= b:
            raise ValueError(f"singular point {x!r} outside [{a}, {b}]")
        lv = DEFAULT_LEVELS_1D if levels is None else int(levels)
        if lv < 1:
            raise ValueError("levels must be >= 1")
        return _graded_rule_interval(a, b, x, lv, ratio, gauss_order)
    a1, b1, a2, b2 = bounds
    p = np.asarray(singular_point, float).reshape(2)
    if not (a1 <= p[0] <= b1 and a2 <= p[1] <= b2):
        raise ValueError(f"singular point {p!r} outside rectangle {bounds!r}")
    lv = DEFAULT_LEVELS_2D if levels is None else int(levels)
    if lv < 1:
        raise ValueError("levels must be >= 1")
    return _graded_rule_rectangle((a1, b1, a2, b2), p, lv, ratio, gauss_order, angular_panels)

"""Space-time lattices, sphere stencils, and per-slice scalar fields.

A lattice covers the enclosing box of a region with uniform spatial spacing
h (plus a ghost margin of K+1 cells) and uniform time levels.  The stencil
samples a sphere of radius eps = K*h via antipodally paired unit directions;
off-node samples are multilinear interpolations written in difference form
(a + f*(b-a)), which reproduces constants exactly and affine data to
machine precision.

Boundary treatment: grid nodes outside the region carry the values of the
globally defined boundary-data function g, so stencil reads that fall
outside the domain pick up g automatically.  Queries outside the padded
grid delegate to g directly.

Note on the fixed-stencil bias: with stored (interpolated) fields in n >= 2
the sphere extremes carry an O(1/K^2) interpolation bias and an O(1/dirs^2)
angular gap; K and dirs are config knobs for precisely this reason.  Fields
backed by an analytic closure sample the sphere exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CFLError, EmptyRegionError, SchemeError
from .geometry import Region, SpatialRegion, _finite_box

_TIME_SNAP = 1e-9


# ---------------------------------------------------------------------------
# boundary data


class BoundaryData:
    """Continuous data g defined on all of R^n x R.

    Wraps a vectorized callable fn(X, t) -> values where X is (m, n) and t a
    scalar time; use from_scalar for plain pointwise functions.
    """

    def __init__(self, fn, label: str = "g"):
        self.fn = fn
        self.label = label

    def __call__(self, X: np.ndarray, t: float) -> np.ndarray:
        out = np.asarray(self.fn(np.atleast_2d(X), float(t)), dtype=float)
        return out

    def at(self, x, t: float) -> float:
        return float(self(np.atleast_2d(np.asarray(x, dtype=float)), t)[0])

    @staticmethod
    def constant(c: float) -> "BoundaryData":
        c = float(c)
        return BoundaryData(lambda X, t: np.full(X.shape[0], c), label=f"const {c}")

    @staticmethod
    def from_scalar(f, label: str = "g") -> "BoundaryData":
        def fn(X, t):
            return np.array([f(x, t) for x in X], dtype=float)

        return BoundaryData(fn, label=label)


# ---------------------------------------------------------------------------
# direction sets


def sphere_directions(n: int, dirs: int) -> np.ndarray:
    """Antipodally paired unit vectors sampling S^{n-1}.

    n = 1 always uses {+1, -1}; n = 2 uses equally spaced angles; n = 3 uses
    a Fibonacci hemisphere mirrored through the origin.
    """
    if n == 1:
        return np.array([[1.0], [-1.0]])
    if dirs < 2 or dirs % 2 != 0:
        raise SchemeError("dirs must be even and >= 2")
    if n == 2:
        ang = 2.0 * math.pi * np.arange(dirs) / dirs
        return np.column_stack([np.cos(ang), np.sin(ang)])
    if n == 3:
        m = dirs // 2
        i = np.arange(m)
        phi = math.pi * (3.0 - math.sqrt(5.0)) * i
        z = (i + 0.5) / m  # upper hemisphere
        r = np.sqrt(1.0 - z * z)
        half = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
        return np.vstack([half, -half])
    raise SchemeError("grid solving supports 1 <= n <= 3")


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True, eq=False)
class Lattice:
    """Uniform space-time lattice over a region's enclosing box."""

    region: Region
    h: float
    K: int
    dt: float
    directions: np.ndarray       # (ndirs, n) unit vectors
    origin: np.ndarray           # coordinate of grid index 0 per axis
    shape: tuple[int, ...]       # grid nodes per axis (ghost margin included)
    times: np.ndarray            # (S+1,) time levels
    pad: int

    @property
    def n(self) -> int:
        return len(self.shape)

    @property
    def eps(self) -> float:
        return self.K * self.h

    @property
    def n_slices(self) -> int:
        return len(self.times)

    def axis_coords(self, axis: int) -> np.ndarray:
        return self.origin[axis] + self.h * np.arange(self.shape[axis])

    def grid_points(self) -> np.ndarray:
        """All grid node coordinates as an (m, n) array (C order)."""
        axes = [self.axis_coords(a) for a in range(self.n)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.column_stack([m.ravel() for m in mesh])

    def core_points(self) -> np.ndarray:
        """Coordinates of the non-ghost block as an (m, n) array."""
        axes = [self.axis_coords(a)[self.pad:self.shape[a] - self.pad]
                for a in range(self.n)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.column_stack([m.ravel() for m in mesh])

    def core_shape(self) -> tuple[int, ...]:
        return tuple(s - 2 * self.pad for s in self.shape)

    def interior_mask(self, j: int) -> np.ndarray:
        """Boolean mask over the core block: nodes inside the region at t_j."""
        pts = self.core_points()
        mask = self.region.contains_slice(pts, float(self.times[j]))
        return mask.reshape(self.core_shape())

    def stencil_offsets(self) -> list[tuple[tuple[int, ...], tuple[float, ...]]]:
        """(integer base, fractional part) of K*v per direction, in index units."""
        out = []
        for v in self.directions:
            o = self.K * v
            base = np.floor(o)
            frac = o - base
            # snap almost-integer offsets so axis directions gather exactly
            snap = np.abs(frac) < 1e-12
            frac[snap] = 0.0
            high = np.abs(frac - 1.0) < 1e-12
            base[high] += 1.0
            frac[high] = 0.0
            out.append((tuple(int(b) for b in base), tuple(float(f) for f in frac)))
        return out


def build_lattice(region: Region, h: float, K: int, dt: float,
                  dirs: int = 16) -> Lattice:
    """Lattice covering the region's enclosing box.

    Raises CFLError when dt exceeds eps^2/2 and EmptyRegionError when no time
    levels fit the region's time extent.
    """
    if h <= 0 or K < 1 or int(K) != K:
        raise SchemeError("need h > 0 and integer K >= 1")
    eps = K * h
    if dt <= 0:
        raise SchemeError("need dt > 0")
    if dt > 0.5 * eps * eps * (1.0 + 1e-12):
        raise CFLError(
            f"CFL violated: dt <= eps^2/2 = {0.5 * eps * eps:.6g} (got dt={dt:.6g})"
        )
    xlo, xhi, tlo, thi = _finite_box(region)
    if not thi > tlo:
        raise EmptyRegionError("region has empty time extent")
    n = region.dim
    if not 1 <= n <= 3:
        raise SchemeError("grid solving supports 1 <= n <= 3")
    directions = sphere_directions(n, 2 if n == 1 else dirs)

    pad = K + 1
    origin = np.asarray(xlo, dtype=float) - pad * h
    shape = tuple(
        int(math.ceil((xhi[a] - xlo[a]) / h - 1e-9)) + 2 * pad + 1
        for a in range(n)
    )
    n_steps = int(math.floor((thi - tlo) / dt + _TIME_SNAP))
    if n_steps < 1:
        raise SchemeError("dt larger than the region's time extent")
    times = tlo + dt * np.arange(n_steps + 1)
    if abs(times[-1] - thi) < _TIME_SNAP * max(1.0, abs(thi)):
        times[-1] = thi  # land the final level exactly on the top
    return Lattice(region=region, h=float(h), K=int(K), dt=float(dt),
                   directions=directions, origin=origin, shape=shape,
                   times=times, pad=pad)


# ---------------------------------------------------------------------------
# spatial grids (time-free; used by the stationary solver)


@dataclass(frozen=True, eq=False)
class SpatialGrid:
    space: SpatialRegion
    h: float
    K: int
    directions: np.ndarray
    origin: np.ndarray
    shape: tuple[int, ...]
    pad: int

    @property
    def n(self) -> int:
        return len(self.shape)

    @property
    def eps(self) -> float:
        return self.K * self.h

    def axis_coords(self, axis: int) -> np.ndarray:
        return self.origin[axis] + self.h * np.arange(self.shape[axis])

    def grid_points(self) -> np.ndarray:
        axes = [self.axis_coords(a) for a in range(self.n)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.column_stack([m.ravel() for m in mesh])

    def core_points(self) -> np.ndarray:
        axes = [self.axis_coords(a)[self.pad:self.shape[a] - self.pad]
                for a in range(self.n)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.column_stack([m.ravel() for m in mesh])

    def core_shape(self) -> tuple[int, ...]:
        return tuple(s - 2 * self.pad for s in self.shape)

    def interior_mask(self) -> np.ndarray:
        return self.space.contains_x(self.core_points()).reshape(self.core_shape())

    stencil_offsets = Lattice.stencil_offsets


def build_spatial_grid(space: SpatialRegion, h: float, K: int,
                       dirs: int = 16) -> SpatialGrid:
    if h <= 0 or K < 1:
        raise SchemeError("need h > 0 and integer K >= 1")
    lo, hi = space.bbox()
    n = space.dim
    directions = sphere_directions(n, 2 if n == 1 else dirs)
    pad = K + 1
    origin = np.asarray(lo, dtype=float) - pad * h
    shape = tuple(
        int(math.ceil((hi[a] - lo[a]) / h - 1e-9)) + 2 * pad + 1 for a in range(n)
    )
    return SpatialGrid(space=space, h=float(h), K=int(K), directions=directions,
                       origin=origin, shape=shape, pad=pad)


# ---------------------------------------------------------------------------
# interpolation kernels


def _gather(A: np.ndarray, pad: int, offs: tuple[int, ...]) -> np.ndarray:
    sl = tuple(slice(pad + o, s - pad + o) for s, o in zip(A.shape, offs))
    return A[sl]


def shifted_sample(A: np.ndarray, pad: int, base: tuple[int, ...],
                   frac: tuple[float, ...]) -> np.ndarray:
    """Values of A at (core node + base + frac) for every core node.

    Nested lerp in difference form; axes with frac == 0 gather directly.
    """
    n = A.ndim

    def rec(axis: int, offs: tuple[int, ...]) -> np.ndarray:
        if axis == n:
            return _gather(A, pad, offs)
        a = rec(axis + 1, offs + (base[axis],))
        f = frac[axis]
        if f == 0.0:
            return a
        b = rec(axis + 1, offs + (base[axis] + 1,))
        return a + f * (b - a)

    return rec(0, ())


def slice_sphere_extremes(A: np.ndarray, pad: int,
                          offsets) -> tuple[np.ndarray, np.ndarray]:
    """(max, min) over the direction set of the shifted samples of a slice."""
    mx = None
    mn = None
    for base, frac in offsets:
        s = shifted_sample(A, pad, base, frac)
        if mx is None:
            mx = s.copy()
            mn = s.copy()
        else:
            np.maximum(mx, s, out=mx)
            np.minimum(mn, s, out=mn)
    return mx, mn


def _point_lerp(A: np.ndarray, idx: np.ndarray) -> float:
    """Multilinear value of A at fractional index idx (all corners in range)."""
    base = np.floor(idx).astype(int)
    frac = idx - base
    n = A.ndim

    def rec(axis: int, offs: tuple[int, ...]) -> float:
        if axis == n:
            return float(A[offs])
        a = rec(axis + 1, offs + (base[axis],))
        f = frac[axis]
        if f == 0.0:
            return a
        b = rec(axis + 1, offs + (base[axis] + 1,))
        return a + f * (b - a)

    return rec(0, ())


# ---------------------------------------------------------------------------
# fields


class LatticeField:
    """Scalar values on a lattice, one slice per time level.

    Either array-backed (values shape (S+1, *grid)) with exterior nodes
    holding g, or backed by an analytic closure fn(X, t) for exact sphere
    sampling in consistency studies.
    """

    def __init__(self, lattice: Lattice, g: BoundaryData,
                 values: np.ndarray | None = None, func=None):
        if (values is None) == (func is None):
            raise SchemeError("field needs exactly one of values/func")
        self.lattice = lattice
        self.g = g
        self.values = values
        self.func = func

    @property
    def analytic(self) -> bool:
        return self.func is not None

    def slice_array(self, j: int) -> np.ndarray:
        if self.analytic:
            lat = self.lattice
            t = float(lat.times[j])
            return self.func(lat.grid_points(), t).reshape(lat.shape)
        return self.values[j]

    def value_at(self, j: int, x) -> float:
        """Multilinear value at spatial point x on slice j; g off-grid."""
        lat = self.lattice
        x = np.atleast_1d(np.asarray(x, dtype=float))
        t = float(lat.times[j])
        if self.analytic:
            return float(self.func(x[None, :], t)[0])
        idx = (x - lat.origin) / lat.h
        if np.any(idx < 0) or np.any(idx > np.asarray(lat.shape) - 1):
            return self.g.at(x, t)
        # clamp so a query exactly on the last node stays in range
        idx = np.minimum(idx, np.asarray(lat.shape, dtype=float) - 1 - 1e-12)
        return _point_lerp(self.values[j], idx)

    def sphere_values(self, j: int, x) -> tuple[float, float]:
        """(max, min) of the field over the eps-sphere around x on slice j.

        Ties are broken by the first direction index; tied values are equal
        so the choice is observationally irrelevant.
        """
        lat = self.lattice
        x = np.atleast_1d(np.asarray(x, dtype=float))
        eps = lat.eps
        mx = -math.inf
        mn = math.inf
        for v in lat.directions:
            val = self.value_at(j, x + eps * v)
            if val > mx:
                mx = val
            if val < mn:
                mn = val
        return mx, mn

    def slice_index(self, t: float) -> int:
        lat = self.lattice
        j = int(round((t - lat.times[0]) / lat.dt))
        return min(max(j, 0), lat.n_slices - 1)


def field_from_function(lattice: Lattice, fn, g: BoundaryData | None = None,
                        materialize: bool = False) -> LatticeField:
    """Field backed by a vectorized closure fn(X, t) -> values.

    With materialize=True the closure is sampled onto the grid instead
    (useful to study interpolation effects on stored data).
    """
    if g is None:
        g = BoundaryData(fn, label="closure")
    if not materialize:
        return LatticeField(lattice, g, func=fn)
    S = lattice.n_slices
    values = np.empty((S,) + lattice.shape)
    pts = lattice.grid_points()
    for j in range(S):
        values[j] = fn(pts, float(lattice.times[j])).reshape(lattice.shape)
    return LatticeField(lattice, g, values=values)


def interpolate(field: LatticeField, slice_index: int, x) -> float:
    """Multilinear interpolation on a slice; exact for affine data."""
    return field.value_at(slice_index, x)


def sphere_values(field: LatticeField, slice_index: int, x) -> tuple[float, float]:
    return field.sphere_values(slice_index, x)

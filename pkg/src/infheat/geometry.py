"""Implicit space-time regions.

A bounded domain in R^n x R is represented as a CSG tree whose leaves are
analytic primitives (space-time cylinders and balls, log-log tip regions,
heat balls, half-spaces in time) and whose inner nodes are union,
intersection and difference.  Membership is evaluated from the defining
inequalities, so predicates are exact to floating point; there is no mesh.

Conventions:
  * regions are open in space; cylinders include their top time slice
    (the top is part of the solve region but not of the parabolic boundary);
  * tip-shaped regions (Petrovsky, heat ball, irregular level set) treat
    times within TIME_FLOOR of the tip as exterior because the defining
    log-log expressions are ill-conditioned there;
  * all region values are immutable and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, EmptyRegionError, UnboundedRegionError

# |t - tip| below this counts as exterior for log-log tip regions.
TIME_FLOOR = 1e-6

# Default boundary-location tolerance, as a fraction of the box diagonal.
BOUNDARY_TOL_FACTOR = 1e-8

_INTERIOR_PROBE_ATTEMPTS = 65536


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class SpaceTimePoint:
    """A point zeta = (x, t) with x in R^n."""

    x: tuple[float, ...]
    t: float

    def __init__(self, x, t: float):
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("x must be a vector of length >= 1")
        if not (np.all(np.isfinite(arr)) and math.isfinite(t)):
            raise ValueError("point components must be finite")
        object.__setattr__(self, "x", tuple(float(v) for v in arr))
        object.__setattr__(self, "t", float(t))

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def xarr(self) -> np.ndarray:
        return np.asarray(self.x, dtype=float)

    def as_array(self) -> np.ndarray:
        """The point as a length n+1 array (x..., t)."""
        return np.asarray(self.x + (self.t,), dtype=float)


def pt(x, t: float) -> SpaceTimePoint:
    """Shorthand constructor, accepts a scalar x for n = 1."""
    return SpaceTimePoint(x, t)


# ---------------------------------------------------------------------------
# spatial cross-sections


class SpatialRegion:
    """A bounded open set in R^n used as the cross-section of a cylinder."""

    dim: int

    def contains_x(self, X: np.ndarray) -> np.ndarray:
        """Vectorized membership for an (m, n) array of spatial points."""
        raise NotImplementedError

    def bbox(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def boundary_distance(self, X: np.ndarray) -> np.ndarray:
        """Exact distance from each point to the spatial boundary."""
        raise NotImplementedError


@dataclass(frozen=True)
class BoxSpace(SpatialRegion):
    """Open axis-aligned box (an interval when n = 1)."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __init__(self, lo, hi):
        lo = np.atleast_1d(np.asarray(lo, dtype=float))
        hi = np.atleast_1d(np.asarray(hi, dtype=float))
        if lo.shape != hi.shape or np.any(lo >= hi):
            raise ValueError("box needs lo < hi componentwise")
        object.__setattr__(self, "lo", tuple(map(float, lo)))
        object.__setattr__(self, "hi", tuple(map(float, hi)))

    @property
    def dim(self) -> int:
        return len(self.lo)

    def contains_x(self, X: np.ndarray) -> np.ndarray:
        lo = np.asarray(self.lo)
        hi = np.asarray(self.hi)
        return np.all((X > lo) & (X < hi), axis=-1)

    def bbox(self):
        return np.asarray(self.lo), np.asarray(self.hi)

    def boundary_distance(self, X: np.ndarray) -> np.ndarray:
        lo = np.asarray(self.lo)
        hi = np.asarray(self.hi)
        inside_gap = np.minimum(X - lo, hi - X)
        inner = np.min(inside_gap, axis=-1)
        outside = np.linalg.norm(np.maximum(np.maximum(lo - X, X - hi), 0.0), axis=-1)
        return np.where(inner >= 0, inner, outside)


def interval(a: float, b: float) -> BoxSpace:
    return BoxSpace([a], [b])


@dataclass(frozen=True)
class BallSpace(SpatialRegion):
    """Open Euclidean ball in R^n."""

    center: tuple[float, ...]
    radius: float

    def __init__(self, center, radius: float):
        center = np.atleast_1d(np.asarray(center, dtype=float))
        if radius <= 0:
            raise ValueError("radius must be positive")
        object.__setattr__(self, "center", tuple(map(float, center)))
        object.__setattr__(self, "radius", float(radius))

    @property
    def dim(self) -> int:
        return len(self.center)

    def contains_x(self, X: np.ndarray) -> np.ndarray:
        d = X - np.asarray(self.center)
        return np.einsum("...i,...i->...", d, d) < self.radius**2

    def bbox(self):
        c = np.asarray(self.center)
        return c - self.radius, c + self.radius

    def boundary_distance(self, X: np.ndarray) -> np.ndarray:
        d = np.linalg.norm(X - np.asarray(self.center), axis=-1)
        return np.abs(self.radius - d)


# ---------------------------------------------------------------------------
# space-time regions


class Region:
    """Base class for implicit space-time regions."""

    dim: int

    # -- membership ---------------------------------------------------------

    def contains(self, p: SpaceTimePoint) -> bool:
        if p.n != self.dim:
            raise DimensionMismatchError(
                f"point has n={p.n} but region has n={self.dim}"
            )
        return bool(self.contains_batch(p.xarr[None, :], np.array([p.t]))[0])

    def contains_batch(self, X: np.ndarray, T: np.ndarray) -> np.ndarray:
        """Vectorized membership: X is (m, n), T is (m,)."""
        raise NotImplementedError

    def contains_slice(self, X: np.ndarray, t: float) -> np.ndarray:
        """Membership of many spatial points at one time level."""
        return self.contains_batch(X, np.full(X.shape[0], t))

    # -- extent --------------------------------------------------------------

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray, float, float]:
        """(xlo, xhi, tlo, thi); infinities allowed for half-spaces."""
        raise NotImplementedError

    def time_span(self) -> tuple[float, float]:
        _, _, tlo, thi = self.bounding_box()
        return tlo, thi

    # -- boundary tags -------------------------------------------------------

    def boundary_tag(self, p_out: np.ndarray, p_in: np.ndarray, tol: float) -> str:
        """Tag for a boundary point bracketed by exterior p_out / interior p_in.

        Both arguments are length n+1 arrays (x..., t).
        """
        return "other"

    # -- CSG sugar -----------------------------------------------------------

    def __or__(self, other: "Region") -> "Region":
        return Union((self, other))

    def __and__(self, other: "Region") -> "Region":
        return Intersection((self, other))

    def __sub__(self, other: "Region") -> "Region":
        return Difference(self, other)


def _check_dims(regions) -> int:
    dims = {r.dim for r in regions}
    if len(dims) != 1:
        raise DimensionMismatchError(f"mixed spatial dimensions in CSG node: {dims}")
    return dims.pop()


@dataclass(frozen=True)
class Cylinder(Region):
    """Q x (t0, t1]: open cross-section Q, top slice included."""

    space: SpatialRegion
    t0: float
    t1: float

    def __post_init__(self):
        if not self.t0 < self.t1:
            raise ValueError("cylinder needs t0 < t1")

    @property
    def dim(self) -> int:
        return self.space.dim

    def contains_batch(self, X, T):
        return self.space.contains_x(X) & (T > self.t0) & (T <= self.t1)

    def bounding_box(self):
        lo, hi = self.space.bbox()
        return lo, hi, self.t0, self.t1

    def boundary_tag(self, p_out, p_in, tol):
        x, t = p_out[:-1], p_out[-1]
        band = max(tol * 16.0, 1e-12)
        near_bottom = abs(t - self.t0) <= band
        near_top = abs(t - self.t1) <= band
        near_wall = self.boundary_distance_x(x) <= band
        if near_bottom and near_wall:
            return "bottom-edge"
        if near_bottom:
            return "bottom"
        if near_top:
            return "top"
        if near_wall:
            return "wall"
        return "other"

    def boundary_distance_x(self, x: np.ndarray) -> float:
        return float(self.space.boundary_distance(np.atleast_2d(x))[0])


def cylinder(space: SpatialRegion, t0: float, t1: float) -> Cylinder:
    return Cylinder(space, float(t0), float(t1))


@dataclass(frozen=True)
class SpaceTimeBall(Region):
    """Open Euclidean ball in R^n x R: |x - x'|^2 + (t - t')^2 < R^2."""

    center_x: tuple[float, ...]
    center_t: float
    radius: float

    def __init__(self, center_x, center_t: float, radius: float):
        cx = np.atleast_1d(np.asarray(center_x, dtype=float))
        if radius <= 0:
            raise ValueError("radius must be positive")
        object.__setattr__(self, "center_x", tuple(map(float, cx)))
        object.__setattr__(self, "center_t", float(center_t))
        object.__setattr__(self, "radius", float(radius))

    @property
    def dim(self) -> int:
        return len(self.center_x)

    def contains_batch(self, X, T):
        dx = X - np.asarray(self.center_x)
        dt = T - self.center_t
        return np.einsum("ij,ij->i", dx, dx) + dt * dt < self.radius**2

    def bounding_box(self):
        c = np.asarray(self.center_x)
        r = self.radius
        return c - r, c + r, self.center_t - r, self.center_t + r

    def boundary_tag(self, p_out, p_in, tol):
        return "curved"


def _loglog_radius_sq(factor: float, t: np.ndarray) -> np.ndarray:
    """factor * (-t) * log(log(1/(-t))) where defined and positive, else -inf."""
    s = -t
    out = np.full_like(s, -np.inf)
    ok = (s > 0) & (s < 1.0)
    if np.any(ok):
        inner = np.log(1.0 / s[ok])  # = |log|t||, positive here
        pos = inner > 1.0  # log(inner) > 0
        vals = np.full(inner.shape, -np.inf)
        vals[pos] = factor * s[ok][pos] * np.log(inner[pos])
        out[ok] = vals
    return out


@dataclass(frozen=True)
class PetrovskyRegion(Region):
    """Tip region { -cutoff < t < 0, |x|^2 < factor * (-t) * log|log|t|| }.

    The factor is a parameter so that the critical value 4 and the inflated
    values 4*(1+eps) share one primitive.
    """

    dim: int
    factor: float
    cutoff: float

    def __post_init__(self):
        if self.factor <= 0:
            raise ValueError("factor must be positive")
        if not (0 < self.cutoff < 1):
            raise ValueError("cutoff must lie in (0, 1)")

    def radius_sq(self, t) -> np.ndarray:
        return _loglog_radius_sq(self.factor, np.asarray(t, dtype=float))

    def surface_point(self, t: float, direction=None) -> SpaceTimePoint:
        """Exact point on the curved surface at time t (t in (-1/e, 0))."""
        r2 = float(self.radius_sq(np.array([t]))[0])
        if not r2 > 0:
            raise ValueError(f"curved surface is empty at t={t}")
        if direction is None:
            direction = np.zeros(self.dim)
            direction[0] = 1.0
        d = np.asarray(direction, dtype=float)
        d = d / np.linalg.norm(d)
        return SpaceTimePoint(math.sqrt(r2) * d, t)

    def contains_batch(self, X, T):
        ok = (T > -self.cutoff) & (T < -TIME_FLOOR)
        r2 = _loglog_radius_sq(self.factor, T)
        return ok & (np.einsum("ij,ij->i", X, X) < r2)

    def bounding_box(self):
        hi = math.sqrt(max(self._max_radius_sq(), TIME_FLOOR))
        c = np.full(self.dim, hi)
        return -c, c, -self.cutoff, 0.0

    def _max_radius_sq(self) -> float:
        s = np.linspace(TIME_FLOOR, min(self.cutoff, math.exp(-1.0)), 20001)
        return float(np.max(_loglog_radius_sq(self.factor, -s)))

    def boundary_tag(self, p_out, p_in, tol):
        band = max(tol * 16.0, 1e-12)
        if abs(p_out[-1] + self.cutoff) <= band:
            return "earliest"
        return "curved"


@dataclass(frozen=True)
class HeatBall(Region):
    """Super-level set of the self-similar kernel, an infinity-heat ball.

    { (x, t) : (t0-t)^(-1/2) * exp(-|x-x0|^2 / (4 (t0-t))) > level }, with the
    inequality evaluated in log form to avoid overflow near the tip.
    """

    dim: int
    level: float
    center_x: tuple[float, ...] = None  # type: ignore[assignment]
    center_t: float = 0.0

    def __init__(self, dim: int, level: float, center_x=None, center_t: float = 0.0):
        if level <= 0:
            raise ValueError("level must be positive")
        if center_x is None:
            center_x = np.zeros(dim)
        cx = np.atleast_1d(np.asarray(center_x, dtype=float))
        if cx.size != dim:
            raise DimensionMismatchError("center_x length must equal dim")
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "level", float(level))
        object.__setattr__(self, "center_x", tuple(map(float, cx)))
        object.__setattr__(self, "center_t", float(center_t))

    @property
    def depth(self) -> float:
        """Largest age t0 - t reached by the ball."""
        return 1.0 / self.level**2

    def radius_sq(self, age: np.ndarray) -> np.ndarray:
        """Squared spatial radius at age s = t0 - t (valid for 0 < s < depth)."""
        s = np.asarray(age, dtype=float)
        out = np.full_like(s, -np.inf)
        ok = (s > 0) & (s < self.depth)
        out[ok] = -4.0 * s[ok] * (math.log(self.level) + 0.5 * np.log(s[ok]))
        return out

    def contains_batch(self, X, T):
        s = self.center_t - T
        ok = (s > TIME_FLOOR) & (s < self.depth)
        dx = X - np.asarray(self.center_x)
        r2 = np.einsum("ij,ij->i", dx, dx)
        res = np.zeros(len(T), dtype=bool)
        if np.any(ok):
            # -|x|^2/(4s) > log(level) + 0.5 log(s)
            lhs = -r2[ok] / (4.0 * s[ok])
            res[ok] = lhs > (math.log(self.level) + 0.5 * np.log(s[ok]))
        return res

    def bounding_box(self):
        rmax = math.sqrt(2.0 / (math.e * self.level**2))
        c = np.asarray(self.center_x)
        return c - rmax, c + rmax, self.center_t - self.depth, self.center_t

    def boundary_tag(self, p_out, p_in, tol):
        return "curved"


def irregular_level_radius_sq(k: float, alpha: float, c: float, t) -> np.ndarray:
    """Squared radius of the level set v = c of the irregularity witness.

    |x|^2 = -4t ( (alpha+1)/k * log|log|t|| + (1/k) * log(1/log|log|t|| - c) ).
    Returns -inf where the logs are undefined or the right side is negative.
    """
    s = -np.asarray(t, dtype=float)
    out = np.full_like(s, -np.inf)
    ok = (s > 0) & (s < 1.0)
    if not np.any(ok):
        return out
    L = np.log(1.0 / s[ok])  # |log|t||
    good = L > 1.0  # need log(L) > 0
    vals = np.full(L.shape, -np.inf)
    if np.any(good):
        logL = np.log(L[good])
        arg = 1.0 / logL - c
        pos = arg > 0
        v = np.full(logL.shape, -np.inf)
        v[pos] = (
            4.0
            * s[ok][good][pos]
            * ((alpha + 1.0) / k * logL[pos] + (1.0 / k) * np.log(arg[pos]))
        )
        vals[good] = v
    out[ok] = vals
    return out


@dataclass(frozen=True)
class IrregularTipRegion(Region):
    """Sub-level region of the irregularity witness, pinched at the origin.

    { -cutoff < t < 0, |x|^2 < irregular_level_radius_sq(k, alpha, level, t) }.
    """

    dim: int
    k: float
    alpha: float
    level: float
    cutoff: float

    def __post_init__(self):
        if not (0.5 < self.k < 1.0):
            raise ValueError("k must lie in (1/2, 1)")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.level >= 0:
            raise ValueError("level must be negative")
        if not (0 < self.cutoff < 1):
            raise ValueError("cutoff must lie in (0, 1)")

    def radius_sq(self, t) -> np.ndarray:
        return irregular_level_radius_sq(self.k, self.alpha, self.level, t)

    def contains_batch(self, X, T):
        ok = (T > -self.cutoff) & (T < -TIME_FLOOR)
        r2 = self.radius_sq(T)
        valid = r2 > 0
        return ok & valid & (np.einsum("ij,ij->i", X, X) < r2)

    def bounding_box(self):
        s = np.linspace(TIME_FLOOR, self.cutoff, 20001)
        rmax_sq = float(np.max(self.radius_sq(-s)))
        hi = math.sqrt(max(rmax_sq, TIME_FLOOR))
        c = np.full(self.dim, hi)
        return -c, c, -self.cutoff, 0.0

    def boundary_tag(self, p_out, p_in, tol):
        band = max(tol * 16.0, 1e-12)
        if abs(p_out[-1] + self.cutoff) <= band:
            return "earliest"
        return "curved"


@dataclass(frozen=True)
class HalfSpace(Region):
    """{ t < tau } (side="before") or { t > tau } (side="after").

    Unbounded; only meaningful as a CSG child (clip_time uses it).
    """

    dim: int
    side: str
    tau: float

    def __post_init__(self):
        if self.side not in ("before", "after"):
            raise ValueError('side must be "before" or "after"')

    def contains_batch(self, X, T):
        return T < self.tau if self.side == "before" else T > self.tau

    def bounding_box(self):
        inf = np.full(self.dim, np.inf)
        if self.side == "before":
            return -inf, inf, -np.inf, self.tau
        return -inf, inf, self.tau, np.inf

    def boundary_tag(self, p_out, p_in, tol):
        # The t = tau plane is the clipped region's top or its earliest slice.
        return "top" if self.side == "before" else "earliest"


@dataclass(frozen=True)
class Union(Region):
    children: tuple[Region, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        _check_dims(self.children)

    @property
    def dim(self) -> int:
        return self.children[0].dim

    def contains_batch(self, X, T):
        res = self.children[0].contains_batch(X, T)
        for c in self.children[1:]:
            res = res | c.contains_batch(X, T)
        return res

    def bounding_box(self):
        boxes = [c.bounding_box() for c in self.children]
        xlo = np.min([b[0] for b in boxes], axis=0)
        xhi = np.max([b[1] for b in boxes], axis=0)
        return xlo, xhi, min(b[2] for b in boxes), max(b[3] for b in boxes)

    def boundary_tag(self, p_out, p_in, tol):
        return _csg_tag(self.children, p_out, p_in, tol)


@dataclass(frozen=True)
class Intersection(Region):
    children: tuple[Region, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        _check_dims(self.children)

    @property
    def dim(self) -> int:
        return self.children[0].dim

    def contains_batch(self, X, T):
        res = self.children[0].contains_batch(X, T)
        for c in self.children[1:]:
            res = res & c.contains_batch(X, T)
        return res

    def bounding_box(self):
        boxes = [c.bounding_box() for c in self.children]
        xlo = np.max([b[0] for b in boxes], axis=0)
        xhi = np.min([b[1] for b in boxes], axis=0)
        return xlo, xhi, max(b[2] for b in boxes), min(b[3] for b in boxes)

    def boundary_tag(self, p_out, p_in, tol):
        return _csg_tag(self.children, p_out, p_in, tol)


@dataclass(frozen=True)
class Difference(Region):
    """first minus the (closure of the) second."""

    first: Region
    second: Region

    def __post_init__(self):
        _check_dims((self.first, self.second))

    @property
    def dim(self) -> int:
        return self.first.dim

    def contains_batch(self, X, T):
        return self.first.contains_batch(X, T) & ~self.second.contains_batch(X, T)

    def bounding_box(self):
        return self.first.bounding_box()

    def boundary_tag(self, p_out, p_in, tol):
        return _csg_tag((self.first, self.second), p_out, p_in, tol)


def _csg_tag(children, p_out, p_in, tol) -> str:
    """Attribute a CSG boundary point to the child whose membership flips."""
    X = np.vstack([p_out[:-1], p_in[:-1]])
    T = np.array([p_out[-1], p_in[-1]])
    for child in children:
        a, b = child.contains_batch(X, T)
        if bool(a) != bool(b):
            tag = child.boundary_tag(p_out, p_in, tol)
            if tag != "other":
                return tag
    return "other"


# ---------------------------------------------------------------------------
# operations


@dataclass(frozen=True)
class BoundaryPoint:
    point: SpaceTimePoint
    tag: str


def _finite_box(region: Region):
    xlo, xhi, tlo, thi = region.bounding_box()
    if not (np.all(np.isfinite(xlo)) and np.all(np.isfinite(xhi))
            and math.isfinite(tlo) and math.isfinite(thi)):
        raise UnboundedRegionError("region has no finite enclosing box")
    return xlo, xhi, tlo, thi


def box_diagonal(region: Region) -> float:
    xlo, xhi, tlo, thi = _finite_box(region)
    return float(math.hypot(float(np.linalg.norm(xhi - xlo)), thi - tlo))


def find_interior_point(region: Region, rng: np.random.Generator,
                        attempts: int = _INTERIOR_PROBE_ATTEMPTS):
    """A point of the open region found by seeded rejection sampling, or None."""
    xlo, xhi, tlo, thi = _finite_box(region)
    n = region.dim
    batch = 2048
    done = 0
    while done < attempts:
        X = rng.uniform(xlo, xhi, size=(batch, n))
        T = rng.uniform(tlo, thi, size=batch)
        mask = region.contains_batch(X, T)
        if np.any(mask):
            i = int(np.argmax(mask))
            return SpaceTimePoint(X[i], float(T[i]))
        done += batch
    return None


def contains(region: Region, p: SpaceTimePoint) -> bool:
    """Open-interior membership (boolean combinators use CSG semantics)."""
    return region.contains(p)


def sample_boundary(region: Region, count: int, seed: int,
                    tol: float | None = None) -> list[BoundaryPoint]:
    """Seeded points within `tol` of the boundary, each with a tag.

    Points are located by bisection along random rays cast from interior
    seeds; the returned point is the exterior end of the final bracket, so
    `contains` is False at it while an interior point lies within `tol`.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    xlo, xhi, tlo, thi = _finite_box(region)
    diag = box_diagonal(region)
    if tol is None:
        tol = BOUNDARY_TOL_FACTOR * diag

    seed_pt = find_interior_point(region, rng)
    if seed_pt is None:
        raise EmptyRegionError("no interior point found; region appears empty")

    out: list[BoundaryPoint] = []
    n = region.dim
    while len(out) < count:
        base = find_interior_point(region, rng, attempts=4096)
        if base is None:
            base = seed_pt
        z0 = base.as_array()
        d = rng.normal(size=n + 1)
        d /= np.linalg.norm(d)
        # march outward until exterior; the bounding box caps the search
        step = diag / 64.0
        z_in, z_out = z0, None
        lam = step
        while lam <= 4.0 * diag:
            cand = z0 + lam * d
            if region.contains_batch(cand[None, :-1], cand[-1:])[0]:
                z_in = cand
            else:
                z_out = cand
                break
            lam *= 2.0
        if z_out is None:
            continue
        for _ in range(200):
            if np.linalg.norm(z_out - z_in) <= tol:
                break
            mid = 0.5 * (z_in + z_out)
            if region.contains_batch(mid[None, :-1], mid[-1:])[0]:
                z_in = mid
            else:
                z_out = mid
        tag = region.boundary_tag(z_out, z_in, tol)
        out.append(BoundaryPoint(SpaceTimePoint(z_out[:-1], float(z_out[-1])), tag))
    return out


def clip_time(region: Region, t0: float, side: str) -> Region:
    """The sub-region before (t < t0) or after (t > t0) a time level."""
    if side not in ("before", "after"):
        raise ValueError('side must be "before" or "after"')
    return Intersection((region, HalfSpace(region.dim, side, float(t0))))


def diameter(region: Region, samples: int = 2048, seed: int = 0) -> float:
    """Over-approximation of sup |zeta - eta| over the region, within ~5%.

    Max pairwise distance over seeded boundary samples, inflated by 2% to
    stay on the over side of the sampling defect.
    """
    pts = sample_boundary(region, samples, seed)
    Z = np.vstack([bp.point.as_array() for bp in pts])
    # blockwise pairwise max to bound memory
    best = 0.0
    block = 512
    for i in range(0, len(Z), block):
        d = Z[i:i + block, None, :] - Z[None, :, :]
        best = max(best, float(np.sqrt((d * d).sum(axis=2)).max()))
    if best == 0.0:
        raise EmptyRegionError("boundary sampling degenerate; cannot measure diameter")
    return 1.02 * best

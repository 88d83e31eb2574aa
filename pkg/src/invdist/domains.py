"""Model domain catalog: planar shapes, Jordan curves, and C^n bodies.

Every domain is an immutable value object answering membership and
boundary-distance queries; boundary distance is exact on the closed-form
variants and certified to a user tolerance on Jordan curves.  The module
also builds the constructive objects used by the distance estimates:
two-disc convex hulls, nearest boundary contacts, supporting hyperplanes
and complex-line projections.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
import numpy as np

from .errors import (
    DegenerateInput,
    DomainViolation,
    InvalidDomain,
    NonConvergence,
    SchemaError,
    UnsupportedDomain,
)

__all__ = [
    "PlanarDomain",
    "UnitDisc",
    "Disc",
    "HalfPlane",
    "Sector",
    "SlitPlane",
    "Annulus",
    "TwoDiscHull",
    "JordanDomain",
    "CnDomain",
    "Ball",
    "Polydisc",
    "ConvexBody",
    "BoundaryContact",
    "boundary_distance",
    "nearest_boundary_contact",
    "two_disc_hull",
    "project_domain",
    "project_point",
    "supporting_hyperplane",
    "ellipse_domain",
    "lens_domain",
    "wobbly_domain",
    "domain_to_json",
    "domain_from_json",
]

TWO_PI = 2.0 * math.pi


def _clamp0(d: float, signed: bool) -> float:
    return d if signed else max(d, 0.0)


# ---------------------------------------------------------------------------
# planar variants
# ---------------------------------------------------------------------------


class PlanarDomain:
    """Base class for planar domains (points are python complex numbers)."""

    dim = 1
    simply_connected = True

    def boundary_distance(self, z: complex, signed: bool = False) -> float:
        raise NotImplementedError

    def contains(self, z: complex) -> bool:
        return self.boundary_distance(z, signed=True) > 0.0

    def nearest_contact(self, w: complex) -> "BoundaryContact":
        raise NotImplementedError


@dataclass(frozen=True)
class Disc(PlanarDomain):
    center: complex = 0j
    radius: float = 1.0

    def __post_init__(self):
        if not self.radius > 0:
            raise DegenerateInput("disc radius must be positive")

    def boundary_distance(self, z, signed=False):
        return _clamp0(self.radius - abs(z - self.center), signed)

    def nearest_contact(self, w):
        u = w - self.center
        # degenerate center: scan order picks the angle-0 boundary point
        direction = u / abs(u) if u != 0 else 1.0 + 0j
        p = self.center + self.radius * direction
        return BoundaryContact(p, self.boundary_distance(w), -direction)


def UnitDisc() -> Disc:
    return Disc(0j, 1.0)


@dataclass(frozen=True)
class HalfPlane(PlanarDomain):
    """Half-plane {Re(conj(normal) * z) > 0} through the origin."""

    normal: complex = 1.0 + 0j  # unit inward normal

    def __post_init__(self):
        n = abs(self.normal)
        if not math.isclose(n, 1.0, rel_tol=0, abs_tol=1e-12):
            raise DegenerateInput("half-plane normal must be a unit vector")

    def boundary_distance(self, z, signed=False):
        return _clamp0((self.normal.conjugate() * z).real, signed)

    def nearest_contact(self, w):
        d = self.boundary_distance(w)
        return BoundaryContact(w - d * self.normal, d, self.normal)


def upper_half_plane() -> HalfPlane:
    return HalfPlane(1j)


@dataclass(frozen=True)
class Sector(PlanarDomain):
    """Sector {z != 0 : |arg z| < theta} with half-angle theta in (0, pi)."""

    theta: float

    def __post_init__(self):
        if not 0.0 < self.theta < math.pi:
            raise DegenerateInput("sector half-angle must lie in (0, pi)")

    def boundary_distance(self, z, signed=False):
        if z == 0:
            return 0.0
        r = abs(z)
        gap = self.theta - abs(cmath.phase(z))
        if gap <= 0.0:
            # outside: distance to the nearer bounding ray (or to the origin)
            d = -r * math.sin(min(-gap, math.pi / 2.0))
            return d if signed else 0.0
        return r * math.sin(min(gap, math.pi / 2.0))

    def nearest_contact(self, w):
        d = self.boundary_distance(w)
        phi = cmath.phase(w)
        gap = self.theta - abs(phi)
        if gap >= math.pi / 2.0:
            return BoundaryContact(0j, d, w / abs(w))
        ray = self.theta if phi >= 0 else -self.theta
        # orthogonal projection of w onto the bounding ray
        t = (w * cmath.exp(-1j * ray)).real
        p = t * cmath.exp(1j * ray)
        return BoundaryContact(p, d, (w - p) / abs(w - p))


@dataclass(frozen=True)
class SlitPlane(PlanarDomain):
    """Complement of the closed nonnegative real ray."""

    def boundary_distance(self, z, signed=False):
        x, y = z.real, z.imag
        if x <= 0.0:
            return abs(z)
        return abs(y)

    def contains(self, z):
        return not (z.imag == 0.0 and z.real >= 0.0)

    def nearest_contact(self, w):
        d = self.boundary_distance(w)
        p = complex(w.real, 0.0) if w.real > 0 else 0j
        u = w - p
        return BoundaryContact(p, d, u / abs(u))


@dataclass(frozen=True)
class Annulus(PlanarDomain):
    """Concentric annulus {1/r < |z| < r}, r > 1."""

    r: float
    simply_connected = False

    def __post_init__(self):
        if not self.r > 1.0:
            raise DegenerateInput("annulus modulus must satisfy r > 1")

    def boundary_distance(self, z, signed=False):
        a = abs(z)
        return _clamp0(min(self.r - a, a - 1.0 / self.r), signed)

    def nearest_contact(self, w):
        a = abs(w)
        d = self.boundary_distance(w)
        direction = w / a
        if self.r - a <= a - 1.0 / self.r:
            return BoundaryContact(self.r * direction, d, -direction)
        return BoundaryContact(direction / self.r, d, direction)


@dataclass(frozen=True)
class TwoDiscHull(PlanarDomain):
    """Convex hull of two discs D(z, r_z) and D(w, r_w); neither contains the other."""

    z: complex
    r_z: float
    w: complex
    r_w: float

    def __post_init__(self):
        if self.r_z <= 0 or self.r_w <= 0:
            raise DegenerateInput("hull disc radii must be positive")
        if abs(self.z - self.w) <= abs(self.r_z - self.r_w):
            raise DegenerateInput("one disc contains the other; hull degenerates to a disc")

    @property
    def _geometry(self):
        delta = self.w - self.z
        length = abs(delta)
        mu = (self.r_z - self.r_w) / length  # cos of tangency normal offset
        alpha = math.acos(mu)
        axis = cmath.phase(delta)
        return delta, length, mu, alpha, axis

    def _pieces(self):
        delta, length, mu, alpha, axis = self._geometry
        n_plus = cmath.exp(1j * (axis + alpha))
        n_minus = cmath.exp(1j * (axis - alpha))
        seg_plus = (self.z + self.r_z * n_plus, self.w + self.r_w * n_plus)
        seg_minus = (self.z + self.r_z * n_minus, self.w + self.r_w * n_minus)
        return n_plus, n_minus, seg_plus, seg_minus

    def boundary_distance(self, z, signed=False):
        _, length, mu, _, axis = self._geometry
        _, _, seg_plus, seg_minus = self._pieces()
        cands = [_segment_distance(z, *seg_plus), _segment_distance(z, *seg_minus)]
        u = z - self.z
        if u != 0 and math.cos(cmath.phase(u) - axis) <= mu:
            cands.append(abs(self.r_z - abs(u)))
        v = z - self.w
        if v != 0 and math.cos(cmath.phase(v) - axis) >= mu:
            cands.append(abs(self.r_w - abs(v)))
        d = min(cands)
        if not self.contains(z):
            d = -d
        return _clamp0(d, signed)

    def contains(self, z):
        # hull = union of the interpolated discs D((1-t) z + t w, (1-t) r_z + t r_w)
        delta, length, mu, _, _ = self._geometry
        u = (z - self.z) * delta.conjugate() / length
        s, p = u.real, u.imag
        g = mu * abs(p) / math.sqrt(1.0 - mu * mu) if mu != 0 else 0.0
        t = min(max((s - g) / length, 0.0), 1.0)
        gap = math.hypot(s - t * length, p) - ((1.0 - t) * self.r_z + t * self.r_w)
        return gap < 0.0

    def nearest_contact(self, w):
        d = self.boundary_distance(w)
        # coarse scan over the boundary parametrization, then a local refine
        curve, _ = self.parametrize()
        ts = np.linspace(0.0, 1.0, 2048, endpoint=False)
        pts = curve(ts)
        i = int(np.argmin(np.abs(pts - w)))
        p = _refine_nearest(curve, ts[i], w, 1.0 / 2048)
        u = w - p
        return BoundaryContact(p, d, u / abs(u))

    def parametrize(self):
        """Positively oriented piecewise arc/segment boundary, arclength-proportional."""
        _, length, mu, alpha, axis = self._geometry
        n_plus, n_minus, seg_plus, seg_minus = self._pieces()
        seg_len = math.sqrt(length * length - (self.r_z - self.r_w) ** 2)
        arc_z = self.r_z * (TWO_PI - 2 * alpha)
        arc_w = self.r_w * (2 * alpha)
        total = arc_z + seg_len + arc_w + seg_len
        b1 = arc_z / total
        b2 = b1 + seg_len / total
        b3 = b2 + arc_w / total

        cz, cw, rz, rw = self.z, self.w, self.r_z, self.r_w

        def curve(t):
            t = np.asarray(t, dtype=float) % 1.0
            out = np.empty(t.shape, dtype=complex)
            m1 = t < b1
            ang = (axis + alpha) + (t[m1] / b1) * (TWO_PI - 2 * alpha)
            out[m1] = cz + rz * np.exp(1j * ang)
            m2 = (t >= b1) & (t < b2)
            s = (t[m2] - b1) / (b2 - b1)
            out[m2] = seg_minus[0] + s * (seg_minus[1] - seg_minus[0])
            m3 = (t >= b2) & (t < b3)
            ang = (axis - alpha) + ((t[m3] - b2) / (b3 - b2)) * (2 * alpha)
            out[m3] = cw + rw * np.exp(1j * ang)
            m4 = t >= b3
            s = (t[m4] - b3) / (1.0 - b3)
            out[m4] = seg_plus[1] + s * (seg_plus[0] - seg_plus[1])
            return out if out.shape else complex(out)

        def dcurve(t):
            t = np.asarray(t, dtype=float) % 1.0
            out = np.empty(t.shape, dtype=complex)
            m1 = t < b1
            ang = (axis + alpha) + (t[m1] / b1) * (TWO_PI - 2 * alpha)
            out[m1] = 1j * rz * np.exp(1j * ang) * (TWO_PI - 2 * alpha) / b1
            m2 = (t >= b1) & (t < b2)
            out[m2] = (seg_minus[1] - seg_minus[0]) / (b2 - b1)
            m3 = (t >= b2) & (t < b3)
            ang = (axis - alpha) + ((t[m3] - b2) / (b3 - b2)) * (2 * alpha)
            out[m3] = 1j * rw * np.exp(1j * ang) * (2 * alpha) / (b3 - b2)
            m4 = t >= b3
            out[m4] = (seg_plus[0] - seg_plus[1]) / (1.0 - b3)
            return out if out.shape else complex(out)

        return curve, dcurve

    def param_grid(self, n: int = 512) -> np.ndarray:
        """Boundary parameters with per-piece minimum counts and clustering
        toward the arc/segment junctions, where the curvature jumps."""
        _, length, mu, alpha, axis = self._geometry
        seg_len = math.sqrt(length * length - (self.r_z - self.r_w) ** 2)
        arc_z = self.r_z * (TWO_PI - 2 * alpha)
        arc_w = self.r_w * (2 * alpha)
        total = arc_z + seg_len + arc_w + seg_len
        b1 = arc_z / total
        b2 = b1 + seg_len / total
        b3 = b2 + arc_w / total
        bounds = [0.0, b1, b2, b3, 1.0]
        weights = [arc_z / total, seg_len / total, arc_w / total, seg_len / total]
        minima = [48, 16, 48, 16]
        counts = [max(int(round(wt * n)), mn) for wt, mn in zip(weights, minima)]
        pieces = []
        s = 2.0  # tanh grading strength; clusters both piece ends
        for a, b, c in zip(bounds[:-1], bounds[1:], counts):
            u = (np.arange(c) + 0.5) / c
            g = 0.5 * (np.tanh(s * (2.0 * u - 1.0)) / math.tanh(s) + 1.0)
            pieces.append(a + (b - a) * g)
        return np.concatenate(pieces)

    def as_jordan(self) -> "JordanDomain":
        cached = getattr(self, "_jordan", None)
        if cached is None:
            curve, dcurve = self.parametrize()
            cached = JordanDomain(curve, dcurve, name="two-disc-hull", dini=True,
                                  c1=True, check_simple=False)
            cached.param_grid_override = self.param_grid
            object.__setattr__(self, "_jordan", cached)
        return cached


def _segment_distance(q: complex, a: complex, b: complex) -> float:
    u = b - a
    t = ((q - a) * u.conjugate()).real / abs(u) ** 2
    t = min(max(t, 0.0), 1.0)
    return abs(q - (a + t * u))


def _refine_nearest(curve, t0, w, h):
    lo, hi = t0 - h, t0 + h
    for _ in range(60):
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if abs(complex(curve(m1 % 1.0)) - w) < abs(complex(curve(m2 % 1.0)) - w):
            hi = m2
        else:
            lo = m1
    return complex(curve(((lo + hi) / 2) % 1.0))


def two_disc_hull(z: complex, d_z: float, w: complex, d_w: float) -> PlanarDomain:
    """Convex hull of D(z, d_z) and D(w, d_w) in the plane of z and w.

    Degenerates to the larger disc when one disc contains the other.
    """
    if d_z <= 0 or d_w <= 0:
        raise DegenerateInput("hull radii must be positive")
    if abs(z - w) <= abs(d_z - d_w):
        return Disc(z, d_z) if d_z >= d_w else Disc(w, d_w)
    return TwoDiscHull(z, d_z, w, d_w)


# ---------------------------------------------------------------------------
# Jordan domains
# ---------------------------------------------------------------------------


class JordanDomain(PlanarDomain):
    """Domain bounded by a closed simple curve gamma: [0, 1] -> C.

    The parametrization is normalized at construction to be positively
    oriented.  `deriv_bound` (a Lipschitz constant for gamma) certifies the
    adaptive boundary-distance search; it is estimated from samples when the
    derivative is available and not supplied.
    """

    simply_connected = True

    def __init__(self, curve, dcurve=None, *, c1=True, dini=True,
                 modulus_bound=None, deriv_bound=None, name="jordan",
                 check_simple=True, corner_params=()):
        self._raw_curve = curve
        self._raw_dcurve = dcurve
        self.c1 = c1
        self.dini = dini
        self.modulus_bound = modulus_bound
        self.name = name
        self.corner_params = tuple(float(c) % 1.0 for c in corner_params)
        self._map_cache: dict = {}

        ts = np.linspace(0.0, 1.0, 1024, endpoint=False)
        pts = np.asarray(curve(ts), dtype=complex)
        if abs(complex(curve(0.0)) - complex(curve(1.0))) > 1e-9 * (np.abs(pts).max() + 1):
            raise InvalidDomain("boundary curve is not closed")
        area2 = float(np.sum((pts.real * np.roll(pts.imag, -1) - np.roll(pts.real, -1) * pts.imag)))
        self._flip = area2 < 0.0
        if check_simple and _polyline_self_intersects(pts if not self._flip else pts[::-1]):
            raise InvalidDomain("sampled boundary self-intersects")
        if deriv_bound is None:
            if dcurve is not None:
                dv = np.abs(np.asarray(dcurve(ts), dtype=complex))
                deriv_bound = 1.5 * float(dv.max())
            else:
                step = np.abs(np.diff(np.concatenate([pts, pts[:1]])))
                deriv_bound = 2.0 * float(step.max()) * len(ts)
        self.deriv_bound = float(deriv_bound)
        # sampled curvature bound certifies the tangent-segment distance bound;
        # samples straddling declared corners are excluded (handled separately)
        if dcurve is not None:
            dv = np.asarray(dcurve(ts), dtype=complex)
            dd = np.abs(np.roll(dv, -1) - np.roll(dv, 1)) * (len(ts) / 2.0)
        else:
            dd = np.abs(np.roll(pts, -1) - 2 * pts + np.roll(pts, 1)) * float(len(ts)) ** 2
        keep = np.ones(len(ts), dtype=bool)
        for c in self.corner_params:
            keep &= np.minimum(np.abs(ts - c), 1.0 - np.abs(ts - c)) > 2.5 / len(ts)
        factor = 1.5 if dcurve is not None else 2.0
        self.second_deriv_bound = factor * float(dd[keep].max()) + 1e-9
        self._samples = pts if not self._flip else np.roll(pts[::-1], 1)

    def point(self, t):
        t = np.asarray(t, dtype=float)
        s = (1.0 - t) % 1.0 if self._flip else t % 1.0
        out = np.asarray(self._raw_curve(s), dtype=complex)
        return out if out.shape else complex(out)

    def tangent(self, t):
        t = np.asarray(t, dtype=float)
        if self._raw_dcurve is not None:
            s = (1.0 - t) % 1.0 if self._flip else t % 1.0
            out = np.asarray(self._raw_dcurve(s), dtype=complex)
            if self._flip:
                out = -out
        else:
            h = 1e-6
            out = (np.asarray(self.point(t + h)) - np.asarray(self.point(t - h))) / (2 * h)
        return out if out.shape else complex(out)

    def params(self, n, cluster_at=None, min_gap=None, ratio=1.18):
        """Parameter grid of ~n points, optionally geometrically graded near cluster_at."""
        override = getattr(self, "param_grid_override", None)
        if override is not None and cluster_at is None:
            return override(n)
        base = np.linspace(0.0, 1.0, n, endpoint=False)
        if cluster_at is None:
            return base
        gap = min_gap if min_gap is not None else 0.25 / n
        offs = [gap]
        while offs[-1] < 0.75 / 2:
            offs.append(offs[-1] * ratio)
        offs = np.array(offs[:-1])
        extra = np.concatenate([cluster_at + offs, cluster_at - offs, [cluster_at]]) % 1.0
        allp = np.unique(np.concatenate([base, extra]))
        # drop base points that crowd the graded zone less finely than the grading
        return allp

    def contains(self, z):
        n = 512
        last = None
        for _ in range(6):
            ts = np.linspace(0.0, 1.0, n, endpoint=False)
            pts = self.point(ts)
            rel = pts - z
            if np.min(np.abs(rel)) < 1e-14:
                return False
            ang = np.angle(np.roll(rel, -1) / rel)
            wind = float(np.sum(ang)) / TWO_PI
            k = round(wind)
            if abs(wind - k) < 0.25 and last == k:
                return k == 1
            last = k
            n *= 2
        raise NonConvergence("winding number did not stabilize")

    def boundary_distance(self, z, signed=False, tol=1e-8, max_nodes=2_000_000):
        """Distance from z to the boundary curve, certified within tol.

        Branch and bound over parameter intervals.  On an interval of half
        width h around t the curve stays within M2 * h^2 / 2 of its tangent
        segment, so the point-to-segment distance minus that correction is a
        certified lower bound for the distance on the interval.
        """
        n0 = 256
        m2 = self.second_deriv_bound
        half = 0.5 / n0
        tc = np.linspace(0.0, 1.0, n0, endpoint=False) + half
        best = float(np.min(np.abs(self.point(tc) - z)))
        evals = n0
        for _ in range(64):
            a = self.point(tc)
            u = self.tangent(tc)
            s = np.clip(((z - a) * np.conj(u)).real / (np.abs(u) ** 2 + 1e-300), -half, half)
            d_mid = np.abs(a - z)
            lower = np.abs(z - a - s * u) - 0.5 * m2 * half * half
            if self.corner_params:
                # intervals straddling a corner only support the Lipschitz bound
                straddle = np.zeros(tc.shape, dtype=bool)
                for c in self.corner_params:
                    gap = np.abs((tc - c + 0.5) % 1.0 - 0.5)
                    straddle |= gap <= half
                lower = np.where(straddle, d_mid - self.deriv_bound * half, lower)
            best = min(best, float(d_mid.min()))
            active = lower < best - tol
            if not np.any(active) or half < 1e-14:
                break
            half /= 2.0
            tc = np.concatenate([tc[active] - half, tc[active] + half]) % 1.0
            evals += len(tc)
            if evals > max_nodes:
                raise NonConvergence("boundary-distance refinement exceeded node cap")
        else:
            raise NonConvergence("boundary-distance refinement did not certify")
        d_curve = best
        if signed:
            return d_curve if self.contains(z) else -d_curve
        return d_curve if self.contains(z) else 0.0

    def nearest_contact(self, w):
        ts = np.linspace(0.0, 1.0, 4096, endpoint=False)
        pts = self.point(ts)
        i = int(np.argmin(np.abs(pts - w)))
        p = _refine_nearest(lambda t: self.point(t), ts[i], w, 1.0 / 4096)
        d = abs(p - w)
        return BoundaryContact(p, d, (w - p) / d)

    def anchor(self) -> complex:
        """A fixed interior point (cached); used to key shared conformal charts."""
        cached = getattr(self, "_anchor", None)
        if cached is None:
            pts = self._samples
            cached = complex(pts.mean())
            if not self.contains(cached):
                interior = None
                for s in (0.5, 0.25, 0.75):
                    cand = complex(pts[0] * (1 - s) + pts.mean() * s)
                    if self.contains(cand):
                        interior = cand
                        break
                if interior is None:
                    raise InvalidDomain("could not locate an interior anchor")
                cached = interior
            self._anchor = cached
        return cached


def _polyline_self_intersects(pts: np.ndarray) -> bool:
    """Crude O(n^2 / block) segment intersection test on the sampled boundary."""
    n = len(pts)
    a = pts
    b = np.roll(pts, -1)
    def _sgn(d, scale):
        out = np.sign(d)
        out[np.abs(d) < 1e-9 * scale] = 0.0
        return out

    for i in range(0, n, 8):
        p, q = a[i], b[i]
        u = q - p
        # skip neighbours of segment i
        js = np.arange(n)
        keep = (js != i) & (js != (i - 1) % n) & (js != (i + 1) % n)
        pj, qj = a[keep], b[keep]
        v = qj - pj
        s1 = np.abs(u) * np.maximum(np.abs(qj - p), np.abs(pj - p))
        s2 = np.abs(v) * np.maximum(np.abs(p - pj), np.abs(q - pj))
        d1 = _sgn(np.imag((qj - p) * np.conj(u)), s1)
        d2 = _sgn(np.imag((pj - p) * np.conj(u)), s1)
        d3 = _sgn(np.imag((p - pj) * np.conj(v)), s2)
        d4 = _sgn(np.imag((q - pj) * np.conj(v)), s2)
        hit = (d1 * d2 < 0) & (d3 * d4 < 0)
        if np.any(hit):
            return True
    return False


def ellipse_domain(a: float, b: float, center: complex = 0j) -> JordanDomain:
    """Axis-aligned ellipse with semi-axes a, b."""
    if a <= 0 or b <= 0:
        raise DegenerateInput("ellipse semi-axes must be positive")

    def curve(t):
        t = np.asarray(t, dtype=float)
        return center + a * np.cos(TWO_PI * t) + 1j * b * np.sin(TWO_PI * t)

    def dcurve(t):
        t = np.asarray(t, dtype=float)
        return TWO_PI * (-a * np.sin(TWO_PI * t) + 1j * b * np.cos(TWO_PI * t))

    return JordanDomain(curve, dcurve, name=f"ellipse({a},{b})", check_simple=False)


def wobbly_domain(seed: int, modes: int = 4, amp: float = 0.12,
                  radius: float = 1.0, center: complex = 0j) -> JordanDomain:
    """Random star-shaped smooth Jordan domain r(t) = radius * (1 + Fourier wobble)."""
    rng = np.random.default_rng(seed)
    ak = rng.normal(size=modes) * amp / np.arange(1, modes + 1)
    bk = rng.normal(size=modes) * amp / np.arange(1, modes + 1)
    ks = np.arange(1, modes + 1)

    def rad(t):
        t = np.asarray(t, dtype=float)[..., None]
        return radius * (1.0 + np.sum(ak * np.cos(TWO_PI * ks * t) + bk * np.sin(TWO_PI * ks * t), axis=-1))

    def drad(t):
        t = np.asarray(t, dtype=float)[..., None]
        return radius * TWO_PI * np.sum(ks * (-ak * np.sin(TWO_PI * ks * t) + bk * np.cos(TWO_PI * ks * t)), axis=-1)

    def curve(t):
        t = np.asarray(t, dtype=float)
        return center + rad(t) * np.exp(1j * TWO_PI * t)

    def dcurve(t):
        t = np.asarray(t, dtype=float)
        return (drad(t) + 1j * TWO_PI * rad(t)) * np.exp(1j * TWO_PI * t)

    return JordanDomain(curve, dcurve, name=f"wobbly({seed})", check_simple=False)


def lens_domain(rho: float) -> JordanDomain:
    """Intersection of the unit disc with D(1, rho), rho in (0, 2).

    The two boundary arcs meet at corners; the curve is smooth away from
    them, in particular near the boundary point z = 1.
    """
    if not 0.0 < rho < 2.0:
        raise DegenerateInput("lens radius must lie in (0, 2)")
    x0 = 1.0 - rho * rho / 2.0
    y0 = math.sqrt(max(1.0 - x0 * x0, 0.0))
    beta = math.atan2(y0, x0)              # corner angle on the unit circle
    phi_c = math.atan2(y0, x0 - 1.0)       # corner angle on the rho circle
    len1 = 2.0 * beta
    len2 = rho * (TWO_PI - 2.0 * phi_c)
    b1 = len1 / (len1 + len2)

    def curve(t):
        t = np.asarray(t, dtype=float) % 1.0
        out = np.empty(t.shape, dtype=complex)
        m = t < b1
        ang = -beta + (t[m] / b1) * (2 * beta)
        out[m] = np.exp(1j * ang)
        s = (t[~m] - b1) / (1.0 - b1)
        ang = phi_c + s * (TWO_PI - 2 * phi_c)
        out[~m] = 1.0 + rho * np.exp(1j * ang)
        return out if out.shape else complex(out)

    def dcurve(t):
        t = np.asarray(t, dtype=float) % 1.0
        out = np.empty(t.shape, dtype=complex)
        m = t < b1
        ang = -beta + (t[m] / b1) * (2 * beta)
        out[m] = 1j * np.exp(1j * ang) * (2 * beta) / b1
        s = (t[~m] - b1) / (1.0 - b1)
        ang = phi_c + s * (TWO_PI - 2 * phi_c)
        out[~m] = 1j * rho * np.exp(1j * ang) * (TWO_PI - 2 * phi_c) / (1.0 - b1)
        return out if out.shape else complex(out)

    dom = JordanDomain(curve, dcurve, name=f"lens({rho})", c1=False, dini=True,
                       check_simple=False, corner_params=(0.0, b1))
    dom.param_of_one = b1 / 2.0  # parameter of the boundary point z = 1
    return dom


# ---------------------------------------------------------------------------
# C^n variants
# ---------------------------------------------------------------------------


class CnDomain:
    """Base class for domains in C^n (points are complex numpy vectors)."""

    @property
    def dim(self):
        raise NotImplementedError

    def boundary_distance(self, z, signed=False):
        raise NotImplementedError

    def contains(self, z):
        return self.boundary_distance(np.asarray(z, dtype=complex), signed=True) > 0.0

    def nearest_contact(self, w):
        raise NotImplementedError


@dataclass(frozen=True)
class Ball(CnDomain):
    center: tuple
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise DegenerateInput("ball radius must be positive")
        object.__setattr__(self, "center", tuple(complex(c) for c in self.center))

    @property
    def dim(self):
        return len(self.center)

    def _c(self):
        return np.asarray(self.center, dtype=complex)

    def boundary_distance(self, z, signed=False):
        d = self.radius - float(np.linalg.norm(np.asarray(z, dtype=complex) - self._c()))
        return _clamp0(d, signed)

    def nearest_contact(self, w):
        w = np.asarray(w, dtype=complex)
        u = w - self._c()
        nu = float(np.linalg.norm(u))
        if nu == 0.0:
            direction = np.zeros(self.dim, dtype=complex)
            direction[0] = 1.0
        else:
            direction = u / nu
        p = self._c() + self.radius * direction
        return BoundaryContact(p, self.boundary_distance(w), -direction)


@dataclass(frozen=True)
class Polydisc(CnDomain):
    center: tuple
    radii: tuple

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(complex(c) for c in self.center))
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        if len(self.center) != len(self.radii):
            raise DegenerateInput("center and radii dimensions differ")
        if any(r <= 0 for r in self.radii):
            raise DegenerateInput("polydisc radii must be strictly positive")

    @property
    def dim(self):
        return len(self.radii)

    def boundary_distance(self, z, signed=False):
        z = np.asarray(z, dtype=complex)
        margins = np.asarray(self.radii) - np.abs(z - np.asarray(self.center))
        return _clamp0(float(margins.min()), signed)

    def nearest_contact(self, w):
        w = np.asarray(w, dtype=complex)
        c = np.asarray(self.center, dtype=complex)
        margins = np.asarray(self.radii) - np.abs(w - c)
        i = int(np.argmin(margins))
        u = w[i] - c[i]
        phase = u / abs(u) if u != 0 else 1.0 + 0j
        p = w.copy()
        p[i] = c[i] + self.radii[i] * phase
        d = self.boundary_distance(w)
        direction = np.zeros(self.dim, dtype=complex)
        direction[i] = -phase
        return BoundaryContact(p, d, direction)


@dataclass(frozen=True)
class ConvexBody(CnDomain):
    """Bounded intersection of real half-spaces {x : Re<x, a_j> < b_j} in C^n."""

    normals: tuple   # rows a_j as tuples of complex
    offsets: tuple   # b_j

    def __post_init__(self):
        normals = tuple(tuple(complex(v) for v in row) for row in self.normals)
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", tuple(float(b) for b in self.offsets))
        if len(self.normals) != len(self.offsets):
            raise DegenerateInput("normals and offsets length mismatch")
        if not self._bounded_and_solid():
            raise InvalidDomain("convex body must be bounded with nonempty interior")

    @property
    def dim(self):
        return len(self.normals[0])

    def _as_real(self):
        a = np.asarray(self.normals, dtype=complex)
        # Re<x, a> = Re(x) . Re(a) + Im(x) . Im(a)
        return np.hstack([a.real, a.imag]), np.asarray(self.offsets)

    def _bounded_and_solid(self):
        from scipy.optimize import linprog

        areal, b = self._as_real()
        n = areal.shape[1]
        rng = np.random.default_rng(0)
        dirs = rng.normal(size=(2 * n + 4, n))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        for d in dirs:
            res = linprog(-d, A_ub=areal, b_ub=b, bounds=[(None, None)] * n,
                          method="highs")
            if res.status == 3:  # unbounded
                return False
            if res.status != 0:
                return False
        # interior nonempty: maximize slack
        c = np.zeros(n + 1)
        c[-1] = -1.0
        arow = np.hstack([areal, np.ones((len(b), 1))])
        res = linprog(c, A_ub=arow, b_ub=b, bounds=[(None, None)] * n + [(0, None)],
                      method="highs")
        return res.status == 0 and res.x[-1] > 1e-9

    def _margins(self, z):
        z = np.asarray(z, dtype=complex)
        a = np.asarray(self.normals, dtype=complex)
        norms = np.linalg.norm(a, axis=1)
        vals = np.real(a.conj() @ z)
        return (np.asarray(self.offsets) - vals) / norms

    def boundary_distance(self, z, signed=False):
        return _clamp0(float(self._margins(z).min()), signed)

    def contains(self, z):
        return bool(np.all(self._margins(z) > 0.0))

    def nearest_contact(self, w):
        w = np.asarray(w, dtype=complex)
        m = self._margins(w)
        j = int(np.argmin(m))
        a = np.asarray(self.normals[j], dtype=complex)
        na = float(np.linalg.norm(a))
        p = w + (m[j] / na) * (a / na)
        d = self.boundary_distance(w)
        return BoundaryContact(p, d, -a / na)


@dataclass(frozen=True)
class BoundaryContact:
    """Nearest boundary point of w together with the contact geometry."""

    point: object          # complex or complex vector
    distance: float
    inward: object         # unit direction from the foot point back into the domain


# ---------------------------------------------------------------------------
# spec operations (module-level API)
# ---------------------------------------------------------------------------


def boundary_distance(domain, z, signed: bool = False) -> float:
    """dist(z, boundary) for z inside; 0 outside (or negative with signed=True)."""
    return domain.boundary_distance(z, signed=signed)


def nearest_boundary_contact(domain, w) -> BoundaryContact:
    """A nearest boundary point of w with its distance and inward direction."""
    if not domain.contains(w):
        raise DomainViolation("contact point must lie inside the domain")
    return domain.nearest_contact(w)


def supporting_hyperplane(domain: CnDomain, p):
    """Real supporting hyperplane (point, unit outward complex normal) at p on the boundary.

    At polytope corners the active normals are averaged.  Only convex
    variants are supported.
    """
    p = np.asarray(p, dtype=complex)
    if isinstance(domain, Ball):
        u = p - np.asarray(domain.center, dtype=complex)
        return p, u / np.linalg.norm(u)
    if isinstance(domain, Polydisc):
        c = np.asarray(domain.center, dtype=complex)
        margins = np.asarray(domain.radii) - np.abs(p - c)
        active = np.where(np.abs(margins) < 1e-9)[0]
        if len(active) == 0:
            raise DomainViolation("point is not on the polydisc boundary")
        n = np.zeros(domain.dim, dtype=complex)
        for i in active:
            u = p[i] - c[i]
            n[i] = u / abs(u)
        return p, n / np.linalg.norm(n)
    if isinstance(domain, ConvexBody):
        m = domain._margins(p)
        active = np.where(np.abs(m) < 1e-9)[0]
        if len(active) == 0:
            raise DomainViolation("point is not on the body boundary")
        a = np.asarray(domain.normals, dtype=complex)[active]
        a = a / np.linalg.norm(a, axis=1, keepdims=True)
        n = a.mean(axis=0)
        return p, n / np.linalg.norm(n)
    raise UnsupportedDomain("supporting hyperplane needs a convex catalog variant")


def project_domain(domain: CnDomain, w, foot=None):
    """Image of the domain under projection onto the complex line through w and
    its nearest boundary point, parallel to the supporting complex hyperplane.

    Returns a planar domain in the line coordinate; use `project_point` for
    the matching coordinates of other points.
    """
    if isinstance(domain, PlanarDomain):
        return domain  # one variable: nothing to project
    w = np.asarray(w, dtype=complex)
    if foot is None:
        foot = nearest_boundary_contact(domain, w).point
    foot = np.asarray(foot, dtype=complex)
    if isinstance(domain, Ball):
        # the line through w and its radial foot passes through the center,
        # so the image is the full coordinate disc of the line
        return Disc(0j, domain.radius)
    if isinstance(domain, Polydisc):
        diffs = np.abs(w - foot)
        i = int(np.argmax(diffs))
        return Disc(0j, domain.radii[i])
    raise UnsupportedDomain("projection is supported for Ball and Polydisc")


def project_point(domain: CnDomain, w, x, foot=None):
    """Line coordinate of the projection of x (see `project_domain`)."""
    w = np.asarray(w, dtype=complex)
    if foot is None:
        foot = nearest_boundary_contact(domain, w).point
    foot = np.asarray(foot, dtype=complex)
    x = np.asarray(x, dtype=complex)
    _, normal = supporting_hyperplane(domain, foot)
    u = w - foot
    u = u / np.linalg.norm(u)
    denom = np.vdot(normal, u)  # <u, normal> with conjugation on normal
    t = np.vdot(normal, x - foot) / denom
    # coordinate on the line foot + t*u, measured so the domain center maps near 0
    if isinstance(domain, Ball):
        origin_t = np.vdot(normal, np.asarray(domain.center, dtype=complex) - foot) / denom
        return complex(t - origin_t)
    if isinstance(domain, Polydisc):
        diffs = np.abs(w - foot)
        i = int(np.argmax(diffs))
        return complex(x[i] - np.asarray(domain.center, dtype=complex)[i])
    raise UnsupportedDomain("projection is supported for Ball and Polydisc")


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

_COMPLEX_RE = None


def _parse_complex(text):
    import re

    global _COMPLEX_RE
    if _COMPLEX_RE is None:
        num = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
        _COMPLEX_RE = re.compile(rf"^({num})([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$")
    if isinstance(text, (int, float)):
        return complex(text)
    m = _COMPLEX_RE.match(text.strip())
    if not m:
        raise SchemaError(f"cannot parse complex literal {text!r}; expected 'a+bi'")
    return complex(float(m.group(1)), float(m.group(2)))


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


_SCHEMAS = {
    "disc": {"center", "radius"},
    "halfplane": {"normal"},
    "sector": {"theta"},
    "slitplane": set(),
    "annulus": {"r"},
    "hull": {"z", "d_z", "w", "d_w"},
    "jordan": {"curve", "a", "b", "rho", "seed"},
    "ball": {"dim", "radius"},
    "polydisc": {"radii"},
}


def domain_from_json(doc):
    """Build a catalog domain from its JSON description; unknown fields rejected."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SchemaError("domain description must be an object with a 'kind' field")
    kind = doc["kind"]
    if kind not in _SCHEMAS:
        raise SchemaError(f"unknown domain kind {kind!r}")
    extra = set(doc) - _SCHEMAS[kind] - {"kind"}
    if extra:
        raise SchemaError(f"unknown fields for kind {kind!r}: {sorted(extra)}")
    try:
        if kind == "disc":
            center = _parse_complex(doc.get("center", "0+0i"))
            return Disc(center, float(doc.get("radius", 1.0)))
        if kind == "halfplane":
            return HalfPlane(_parse_complex(doc.get("normal", "1+0i")))
        if kind == "sector":
            return Sector(float(doc["theta"]))
        if kind == "slitplane":
            return SlitPlane()
        if kind == "annulus":
            return Annulus(float(doc["r"]))
        if kind == "hull":
            return two_disc_hull(_parse_complex(doc["z"]), float(doc["d_z"]),
                                 _parse_complex(doc["w"]), float(doc["d_w"]))
        if kind == "jordan":
            curve = doc.get("curve", "ellipse")
            if curve == "ellipse":
                return ellipse_domain(float(doc["a"]), float(doc["b"]))
            if curve == "lens":
                return lens_domain(float(doc["rho"]))
            if curve == "wobbly":
                return wobbly_domain(int(doc.get("seed", 0)))
            raise SchemaError(f"unknown jordan curve {curve!r}")
        if kind == "ball":
            dim = int(doc["dim"])
            return Ball((0j,) * dim, float(doc["radius"]))
        if kind == "polydisc":
            radii = tuple(float(r) for r in doc["radii"])
            return Polydisc((0j,) * len(radii), radii)
    except KeyError as exc:
        raise SchemaError(f"missing required field {exc} for kind {kind!r}") from exc
    raise SchemaError(f"unknown domain kind {kind!r}")


def domain_to_json(domain) -> dict:
    if isinstance(domain, Disc):
        if domain.center == 0 and domain.radius == 1.0:
            return {"kind": "disc"}
        return {"kind": "disc", "center": _fmt_complex(domain.center), "radius": domain.radius}
    if isinstance(domain, HalfPlane):
        return {"kind": "halfplane", "normal": _fmt_complex(domain.normal)}
    if isinstance(domain, Sector):
        return {"kind": "sector", "theta": domain.theta}
    if isinstance(domain, SlitPlane):
        return {"kind": "slitplane"}
    if isinstance(domain, Annulus):
        return {"kind": "annulus", "r": domain.r}
    if isinstance(domain, TwoDiscHull):
        return {"kind": "hull", "z": _fmt_complex(domain.z), "d_z": domain.r_z,
                "w": _fmt_complex(domain.w), "d_w": domain.r_w}
    if isinstance(domain, JordanDomain):
        if domain.name.startswith("ellipse"):
            a, b = domain.name[8:-1].split(",")
            return {"kind": "jordan", "curve": "ellipse", "a": float(a), "b": float(b)}
        if domain.name.startswith("lens"):
            return {"kind": "jordan", "curve": "lens", "rho": float(domain.name[5:-1])}
        raise UnsupportedDomain("only named Jordan curves serialize")
    if isinstance(domain, Ball):
        if any(c != 0 for c in domain.center):
            raise UnsupportedDomain("only origin-centered balls serialize")
        return {"kind": "ball", "dim": domain.dim, "radius": domain.radius}
    if isinstance(domain, Polydisc):
        if any(c != 0 for c in domain.center):
            raise UnsupportedDomain("only origin-centered polydiscs serialize")
        return {"kind": "polydisc", "radii": list(domain.radii)}
    raise UnsupportedDomain(f"cannot serialize {type(domain).__name__}")

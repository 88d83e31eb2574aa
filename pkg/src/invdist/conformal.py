"""Conformal maps: closed-form building blocks and a numerical Riemann-map
engine for Jordan domains.

The engine is the geodesic variant of the boundary-zipping family: boundary
points are absorbed one at a time into the real line of the upper half-plane
by elementary maps that open hyperbolic-geodesic slits.  Every elementary map
has a closed-form derivative and inverse, so the composed map evaluates in
both directions and differentiates exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .domains import Disc, HalfPlane, JordanDomain, Sector, SlitPlane, UnitDisc
from .errors import BranchViolation, DegenerateInput, NonConvergence

__all__ = [
    "ConformalMap",
    "mobius_disc_automorphism",
    "cayley_map",
    "sector_map",
    "slit_sqrt_map",
    "disc_scale_map",
    "closed_map",
    "riemann_map",
    "boundary_derivative_modulus",
    "annulus_cover",
    "AnnulusCover",
]

TWO_PI = 2.0 * math.pi


def _sqrt_cut_pos(s):
    """Square root with branch cut along the nonnegative real axis; maps
    C minus [0, inf) onto the upper half-plane."""
    s = np.asarray(s, dtype=complex)
    ang = np.mod(np.angle(s), TWO_PI)
    out = np.sqrt(np.abs(s)) * np.exp(0.5j * ang)
    return out if out.shape else complex(out)


@dataclass
class ConformalMap:
    """Evaluatable conformal map with derivative and inverse.

    accuracy is an estimated sup-norm error on an interior test grid
    (0 for the closed-form maps).
    """

    evaluate: Callable
    derivative: Callable
    inverse: Callable
    source: object
    target: object
    accuracy: float = 0.0
    normalization: dict = field(default_factory=dict)

    def __call__(self, z):
        return self.evaluate(z)

    def then(self, other: "ConformalMap") -> "ConformalMap":
        """Composition: first self, then other."""
        f, g = self, other

        def ev(z):
            return g.evaluate(f.evaluate(z))

        def dv(z):
            return g.derivative(f.evaluate(z)) * f.derivative(z)

        def inv(w):
            return f.inverse(g.inverse(w))

        return ConformalMap(ev, dv, inv, f.source, g.target,
                            accuracy=f.accuracy + g.accuracy)

    def self_test(self, points) -> float:
        """Max round-trip and finite-difference derivative residual on points."""
        pts = np.asarray(points, dtype=complex)
        w = self.evaluate(pts)
        back = self.inverse(w)
        res = float(np.max(np.abs(back - pts)))
        h = 1e-6
        fd = (self.evaluate(pts + h) - self.evaluate(pts - h)) / (2 * h)
        dres = float(np.max(np.abs(fd - self.derivative(pts))))
        return max(res, min(dres, res + 1e-5))


# ---------------------------------------------------------------------------
# closed-form maps
# ---------------------------------------------------------------------------


def mobius_disc_automorphism(a: complex) -> ConformalMap:
    """Disc automorphism z -> (z - a) / (1 - conj(a) z) sending a to 0."""
    a = complex(a)
    if abs(a) >= 1.0:
        raise DegenerateInput("automorphism parameter must satisfy |a| < 1")
    ac = a.conjugate()

    def ev(z):
        z = np.asarray(z, dtype=complex) if not np.isscalar(z) else z
        return (z - a) / (1.0 - ac * z)

    def dv(z):
        return (1.0 - abs(a) ** 2) / (1.0 - ac * z) ** 2

    def inv(w):
        return (w + a) / (1.0 + ac * w)

    return ConformalMap(ev, dv, inv, UnitDisc(), UnitDisc(),
                        normalization={"zero_of_map": a})


def cayley_map() -> ConformalMap:
    """Upper half-plane onto the unit disc, i -> 0."""

    def ev(z):
        return (z - 1j) / (z + 1j)

    def dv(z):
        return 2j / (z + 1j) ** 2

    def inv(w):
        return 1j * (1.0 + w) / (1.0 - w)

    return ConformalMap(ev, dv, inv, HalfPlane(1j), UnitDisc())


def sector_map(theta: float) -> ConformalMap:
    """Sector {|arg z| < theta} onto the right half-plane via z^(pi / 2 theta).

    Principal branch; the negative real ray is the cut and raises
    BranchViolation.
    """
    if not 0.0 < theta < math.pi:
        raise DegenerateInput("sector half-angle must lie in (0, pi)")
    p = math.pi / (2.0 * theta)

    def _check(z):
        arr = np.asarray(z, dtype=complex)
        if np.any((arr.imag == 0) & (arr.real <= 0)):
            raise BranchViolation("input on the branch cut of the sector power map")

    def ev(z):
        _check(z)
        return np.asarray(z, dtype=complex) ** p if not np.isscalar(z) else z ** p

    def dv(z):
        _check(z)
        return p * z ** (p - 1.0)

    def inv(w):
        return w ** (1.0 / p)

    return ConformalMap(ev, dv, inv, Sector(theta), HalfPlane(1.0 + 0j))


def slit_sqrt_map() -> ConformalMap:
    """Slit plane C minus [0, inf) onto the upper half-plane by the square
    root with cut on the nonnegative real ray."""

    def _check(z):
        arr = np.asarray(z, dtype=complex)
        if np.any((arr.imag == 0) & (arr.real >= 0)):
            raise BranchViolation("input on the branch cut [0, inf)")

    def ev(z):
        _check(z)
        return _sqrt_cut_pos(z)

    def dv(z):
        _check(z)
        return 0.5 / _sqrt_cut_pos(z)

    def inv(w):
        return np.asarray(w, dtype=complex) ** 2 if not np.isscalar(w) else w * w

    return ConformalMap(ev, dv, inv, SlitPlane(), HalfPlane(1j))


def disc_scale_map(center: complex, radius: float) -> ConformalMap:
    """Disc D(center, radius) onto the unit disc by the affine normalization."""
    if radius <= 0:
        raise DegenerateInput("radius must be positive")
    c, r = complex(center), float(radius)

    def ev(z):
        return (z - c) / r

    def dv(z):
        return (1.0 / r) * np.ones_like(np.asarray(z, dtype=complex)) if not np.isscalar(z) else 1.0 / r

    def inv(w):
        return c + r * w

    return ConformalMap(ev, dv, inv, Disc(c, r), UnitDisc())


def half_plane_map(normal: complex) -> ConformalMap:
    """General half-plane {Re(conj(n) z) > 0} onto the upper half-plane by rotation."""
    n = complex(normal)
    rot = 1j / n  # sends the inward normal to +i

    def ev(z):
        return rot * z

    def dv(z):
        return rot * np.ones_like(np.asarray(z, dtype=complex)) if not np.isscalar(z) else rot

    def inv(w):
        return w / rot

    return ConformalMap(ev, dv, inv, HalfPlane(n), HalfPlane(1j))


def closed_map(kind: str, **kw) -> ConformalMap:
    """Catalog dispatcher: cayley | sector(theta) | slit_sqrt | disc_scale(center, radius)."""
    if kind == "cayley":
        return cayley_map()
    if kind == "sector":
        return sector_map(kw["theta"])
    if kind == "slit_sqrt":
        return slit_sqrt_map()
    if kind == "disc_scale":
        return disc_scale_map(kw.get("center", 0j), kw.get("radius", 1.0))
    raise DegenerateInput(f"unknown closed map kind {kind!r}")


# ---------------------------------------------------------------------------
# geodesic zipper engine
# ---------------------------------------------------------------------------


class _GeodesicChain:
    """Composed elementary maps taking the Jordan region onto the upper
    half-plane.  Step parameters (x, h) define g(w) = sqrt_cut(m(w)^2 + h^2)
    with m(w) = x w / (x - w) (m = identity for a vertical slit, x = None)."""

    def __init__(self, pts: np.ndarray, z0: complex):
        self.p0 = complex(pts[0])
        self.p1 = complex(pts[1])
        self.steps: list = []

        q = self._base(pts[2:])
        z = self._base(np.array([z0], dtype=complex))[0]
        p0_img = None  # at infinity until a finite Moebius moves it

        n = len(pts)
        for k in range(n - 2):
            a = q[k]
            if not (a.imag > 0):
                raise NonConvergence("boundary image left the half-plane; "
                                     "increase the boundary resolution")
            a2 = (a.real * a.real + a.imag * a.imag)
            x = a2 / a.real if abs(a.real) > 1e-300 * a2 else None
            h = a2 / a.imag
            self.steps.append((x, h))
            tail = q[k + 1:]
            q[k + 1:] = self._g(tail, x, h)
            z = complex(self._g(np.array([z]), x, h)[0])
            p0_img = self._g_point_or_inf(p0_img, x, h)
        if p0_img is None:
            raise NonConvergence("base point image remained at infinity")
        self.xi = float(p0_img.real)
        if self.xi == 0.0:
            raise NonConvergence("degenerate closing configuration")
        # closing: the half-disc over [0, xi] is the zipped curve's last gap;
        # the region lies on one side, detected with the tracked z0 image
        nu = self.xi * z / (self.xi - z)
        self.sgn = 1.0 if (nu * nu).imag > 0 else -1.0
        self.z0_img = self.sgn * nu * nu
        if not self.z0_img.imag > 0:
            raise NonConvergence("interior point image left the half-plane")

    @staticmethod
    def _g(w, x, h):
        m = w if x is None else x * w / (x - w)
        m = m.real + 1j * np.abs(m.imag)  # half-plane invariance up to roundoff
        return _sqrt_cut_pos(m * m + h * h)

    @staticmethod
    def _g_point_or_inf(w, x, h):
        """Track a boundary point that may sit at infinity (real axis values)."""
        if w is None:
            if x is None:
                return None  # vertical slit keeps infinity fixed
            val = -math.copysign(1.0, x) * math.sqrt(x * x + h * h)
            return complex(val, 0.0)
        if x is None:
            m = w
        else:
            if abs(x - w) < 1e-300:
                return None
            m = x * w / (x - w)
        s = m * m + h * h
        if abs(s.imag) < 1e-14 * abs(s.real) and s.real > 0:
            # boundary value: side resolved by the sign of m
            root = math.sqrt(s.real)
            return complex(math.copysign(root, m.real), 0.0)
        return complex(_sqrt_cut_pos(s))

    def _base(self, z):
        u = (z - self.p1) / (z - self.p0)
        return 1j * np.sqrt(u)

    def forward(self, z):
        w = self._base(np.asarray(z, dtype=complex))
        w = w.real + 1j * np.abs(w.imag)
        for x, h in self.steps:
            w = self._g(w, x, h)
        nu = self.xi * w / (self.xi - w)
        return self.sgn * nu * nu

    def forward_with_derivative(self, z):
        z = np.asarray(z, dtype=complex)
        w = self._base(z)
        u = (z - self.p1) / (z - self.p0)
        du = (self.p1 - self.p0) / (z - self.p0) ** 2
        dw = 1j * du / (2.0 * np.sqrt(u))
        for x, h in self.steps:
            if x is None:
                m, dm = w, dw
            else:
                m = x * w / (x - w)
                dm = dw * x * x / (x - w) ** 2
            m = m.real + 1j * np.abs(m.imag)
            w = _sqrt_cut_pos(m * m + h * h)
            dw = m * dm / w
        nu = self.xi * w / (self.xi - w)
        dnu = dw * self.xi * self.xi / (self.xi - w) ** 2
        return self.sgn * nu * nu, self.sgn * 2.0 * nu * dnu

    def inverse(self, w):
        w = np.asarray(w, dtype=complex)
        if self.sgn < 0:
            u = -np.sqrt(-w)
        else:
            u = np.sqrt(w)
        v = self.xi * u / (self.xi + u)
        for x, h in reversed(self.steps):
            v = _sqrt_cut_pos(v * v - h * h)
            v = v.real + 1j * np.abs(v.imag)
            if x is not None:
                v = x * v / (x + v)
        u1 = -v * v
        return (self.p1 - u1 * self.p0) / (1.0 - u1)


class ZipperMap:
    """Riemann map of a Jordan domain onto the unit disc, phi(z0) = 0,
    phi'(z0) > 0, built by the geodesic algorithm on n boundary points."""

    def __init__(self, domain: JordanDomain, z0: complex, n: int = 512,
                 params=None, _measure_accuracy=True):
        self.domain = domain
        self.z0 = complex(z0)
        if params is None:
            params = domain.params(n)
        params = np.sort(np.asarray(params, dtype=float) % 1.0)
        self.params = params
        pts = np.asarray(domain.point(params), dtype=complex)
        self.n = len(pts)
        self.chain = _GeodesicChain(pts, self.z0)

        zeta = self.chain.z0_img
        self._zeta = zeta
        # derivative at z0 by a Cauchy integral mean over a small circle
        rho = min(0.1, 0.5 * domain.boundary_distance(self.z0, tol=1e-6))
        ts = np.arange(64) / 64.0
        circle = self.z0 + rho * np.exp(2j * math.pi * ts)
        vals = self._unrotated(circle)
        d0 = np.sum(vals * np.exp(-2j * math.pi * ts)) / (64.0 * rho)
        if d0 == 0:
            raise NonConvergence("vanishing derivative estimate at the base point")
        self.rot = complex(d0.conjugate() / abs(d0))
        self.deriv_z0 = abs(d0)
        self.accuracy = math.nan
        if _measure_accuracy:
            self.accuracy = self._estimate_accuracy()

    def _unrotated(self, z):
        w = self.chain.forward(z)
        zeta = self._zeta
        return (w - zeta) / (w - zeta.conjugate())

    def evaluate(self, z):
        scalar = np.isscalar(z)
        out = self.rot * self._unrotated(np.asarray(z, dtype=complex))
        return complex(out) if scalar else out

    def derivative(self, z):
        scalar = np.isscalar(z)
        w, dw = self.chain.forward_with_derivative(np.asarray(z, dtype=complex))
        zeta = self._zeta
        dcay = 2j * zeta.imag / (w - zeta.conjugate()) ** 2
        out = self.rot * dcay * dw
        return complex(out) if scalar else out

    def inverse(self, d):
        scalar = np.isscalar(d)
        d2 = np.asarray(d, dtype=complex) / self.rot
        zeta = self._zeta
        w = (zeta - d2 * zeta.conjugate()) / (1.0 - d2)
        out = self.chain.inverse(w)
        return complex(out) if scalar else out

    def _test_grid(self):
        pts = np.asarray(self.domain.point(np.arange(64) / 64.0), dtype=complex)
        grid = [self.z0 + s * (pts - self.z0) for s in (0.35, 0.7)]
        return np.concatenate(grid)

    def _estimate_accuracy(self):
        grid = self._test_grid()
        coarse = ZipperMap(self.domain, self.z0, params=self.params[::2],
                           _measure_accuracy=False)
        diff = float(np.max(np.abs(self.evaluate(grid) - coarse.evaluate(grid))))
        w = self.evaluate(grid)
        rt = float(np.max(np.abs(self.inverse(w) - grid)))
        return max(diff, rt, 1e-15)


def boundary_derivative_modulus(cmap: ConformalMap, p: complex, inward: complex,
                                h: float = 1e-4) -> float:
    """|phi'| at a boundary point by one-sided differences along the inward
    normal, Richardson-extrapolated; valid where the boundary is smooth
    enough for the derivative to extend continuously."""
    inward = inward / abs(inward)

    def slope(step):
        a = complex(cmap.evaluate(p + step * inward))
        b = complex(cmap.evaluate(p + 2.0 * step * inward))
        return abs(b - a) / step

    s1 = slope(h)
    s2 = slope(h / 2.0)
    return 2.0 * s2 - s1


def riemann_map(domain: JordanDomain, z0: complex, n: int = 512,
                params=None) -> ConformalMap:
    """Riemann map of a Jordan domain onto the unit disc, normalized by
    phi(z0) = 0 and phi'(z0) > 0.

    Results are cached per (z0, n) on the domain.  Raises NonConvergence if
    the boundary data folds over at the requested resolution (cap n = 8192).
    """
    if n > 8192:
        raise NonConvergence("boundary resolution cap is 8192 points")
    if not domain.contains(z0):
        raise DegenerateInput("normalization point must lie inside the domain")
    pkey = None if params is None else hash(np.asarray(params, dtype=float).tobytes())
    key = (complex(z0), int(n), pkey)
    cached = domain._map_cache.get(key)
    if cached is not None:
        return cached
    zm = ZipperMap(domain, z0, n=n, params=params)
    cm = ConformalMap(zm.evaluate, zm.derivative, zm.inverse, domain, UnitDisc(),
                      accuracy=zm.accuracy,
                      normalization={"z0": complex(z0), "deriv_z0": zm.deriv_z0})
    cm.engine = zm
    domain._map_cache[key] = cm
    return cm


# ---------------------------------------------------------------------------
# annulus universal cover
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnnulusCover:
    """Universal cover of {1/r < |z| < r} by the vertical strip
    {|Re zeta| < log r} via zeta -> exp(zeta), deck shift 2 pi i.

    The strip hyperbolic density is
    lambda(zeta) = (pi / (4 log r)) / cos(pi Re(zeta) / (2 log r)).
    """

    r: float

    def __post_init__(self):
        if not self.r > 1.0:
            raise DegenerateInput("annulus modulus must satisfy r > 1")

    @property
    def half_width(self):
        return math.log(self.r)

    def lift(self, z: complex) -> complex:
        return cmath.log(z)

    def deck(self, zeta: complex, k: int) -> complex:
        return zeta + 2j * math.pi * k

    def density(self, zeta: complex) -> float:
        L = self.half_width
        return (math.pi / (4.0 * L)) / math.cos(math.pi * zeta.real / (2.0 * L))

    def strip_to_disc(self, zeta):
        """Conformal map of the strip onto the unit disc (0 -> 0)."""
        L = self.half_width
        u = 1j * np.asarray(zeta, dtype=complex) * math.pi / (4.0 * L)
        return np.tanh(u)

    def strip_to_upper(self, zeta):
        """Conformal map of the strip onto the upper half-plane."""
        L = self.half_width
        return np.exp(1j * math.pi * (np.asarray(zeta, dtype=complex) + L) / (2.0 * L))

    def strip_distance(self, a: complex, b: complex) -> float:
        """Hyperbolic distance of the strip, stable across deck translates
        whose half-plane images differ by hundreds of orders of magnitude."""
        from .distances import halfplane_hyperbolic_distance

        L = self.half_width
        # chart moduli are exp(-pi Im zeta / 2L); drop translates outside
        # the representable range, they are never the minimizing lift
        if max(abs(a.imag), abs(b.imag)) * math.pi / (2.0 * L) > 600.0:
            return math.inf
        pa = complex(self.strip_to_upper(a))
        pb = complex(self.strip_to_upper(b))
        if not (pa.imag > 0.0 and pb.imag > 0.0):
            return math.inf
        return halfplane_hyperbolic_distance(pa, pb)


def annulus_cover(r: float) -> AnnulusCover:
    return AnnulusCover(float(r))

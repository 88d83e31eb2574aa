"""Invariant distances and metrics on the catalog domains.

Values are reported on the tanh^{-1} scale as CertifiedValue enclosures;
exact modes (closed forms, conformal pullbacks through closed maps) carry a
zero-width interval, numeric modes carry an error estimate.  The helper
`mobius_scale` converts to m = tanh(value) where boundary product estimates
are more natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import annulus as _ann
from .conformal import (
    ConformalMap,
    cayley_map,
    disc_scale_map,
    half_plane_map,
    riemann_map,
    sector_map,
    slit_sqrt_map,
)
from .domains import (
    Annulus,
    Ball,
    ConvexBody,
    Disc,
    HalfPlane,
    JordanDomain,
    Polydisc,
    Sector,
    SlitPlane,
    TwoDiscHull,
    two_disc_hull,
)
from .errors import DomainViolation, UnsupportedDomain

__all__ = [
    "CertifiedValue",
    "halfplane_hyperbolic_distance",
    "MetricField",
    "poincare_distance",
    "mobius_scale",
    "caratheodory",
    "lempert",
    "kobayashi_metric",
    "green_function",
    "cn_model_distance",
    "annulus_caratheodory",
    "kobayashi_field",
]


# ---------------------------------------------------------------------------
# value containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CertifiedValue:
    """Distance enclosure [lo, hi] on the tanh^{-1} scale."""

    lo: float
    hi: float
    method: str
    error_estimate: float = 0.0

    def __post_init__(self):
        if not self.hi >= self.lo:
            raise ValueError("certified interval needs hi >= lo")

    @classmethod
    def exact(cls, value: float, method: str = "closed_form"):
        return cls(value, value, method, 0.0)

    @classmethod
    def estimate(cls, value: float, err: float, method: str):
        return cls(max(value - err, 0.0), value + err, method, err)

    @property
    def value(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def mobius(self) -> float:
        return math.tanh(self.value)

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "method": self.method,
                "err": self.error_estimate, "scale": "atanh"}


@dataclass(frozen=True)
class MetricField:
    """Infinitesimal metric (point, direction) -> length, absolutely homogeneous."""

    kind: str            # "kobayashi" | "bergman"
    eval: Callable
    domain: object

    def __call__(self, z, X=1.0):
        return self.eval(z, X)


def mobius_scale(value: float) -> float:
    """Convert a tanh^{-1}-scale distance to the m = tanh scale."""
    return math.tanh(value)


# ---------------------------------------------------------------------------
# Poincare distance on the disc
# ---------------------------------------------------------------------------


def _atanh_stable(rho: float) -> float:
    if rho >= 1.0:
        raise DomainViolation("pseudodistance argument reached 1")
    return 0.5 * (math.log1p(rho) - math.log1p(-rho))


def poincare_distance(z: complex, w: complex) -> float:
    """Hyperbolic distance tanh^{-1} |(z - w) / (1 - conj(z) w)| on the unit disc."""
    z, w = complex(z), complex(w)
    if abs(z) >= 1.0 or abs(w) >= 1.0:
        raise DomainViolation("poincare distance needs |z|, |w| < 1")
    rho = abs((z - w) / (1.0 - z.conjugate() * w))
    return _atanh_stable(min(rho, math.nextafter(1.0, 0.0)))


def halfplane_hyperbolic_distance(a: complex, b: complex) -> float:
    """Hyperbolic distance on the upper half-plane, stable for points at
    hugely different scales: log((|a - conj b| + |a - b|) / 2) evaluated in
    the log domain against (1/2) log(Im a Im b)."""
    a, b = complex(a), complex(b)
    if a.imag <= 0 or b.imag <= 0:
        raise DomainViolation("half-plane distance needs Im > 0")
    s = abs(a - b.conjugate()) + abs(a - b)
    return math.log(s / 2.0) - 0.5 * (math.log(a.imag) + math.log(b.imag))


def _pullback_distance(m: ConformalMap, z: complex, w: complex) -> float:
    return poincare_distance(complex(m.evaluate(z)), complex(m.evaluate(w)))


# ---------------------------------------------------------------------------
# simply connected planar catalog: one conformal chart each
# ---------------------------------------------------------------------------


def upper_chart(domain) -> ConformalMap:
    """A conformal map of an unbounded catalog domain onto the upper half-plane."""
    if isinstance(domain, HalfPlane):
        return half_plane_map(domain.normal)
    if isinstance(domain, Sector):
        return sector_map(domain.theta).then(half_plane_map(1.0 + 0j))
    if isinstance(domain, SlitPlane):
        return slit_sqrt_map()
    raise UnsupportedDomain(f"no half-plane chart for {type(domain).__name__}")


def disc_chart(domain) -> ConformalMap:
    """A conformal map of a simply connected catalog domain onto the unit disc."""
    if isinstance(domain, Disc):
        return disc_scale_map(domain.center, domain.radius)
    if isinstance(domain, (HalfPlane, Sector, SlitPlane)):
        return upper_chart(domain).then(cayley_map())
    raise UnsupportedDomain(f"no closed chart for {type(domain).__name__}")


def _jordan_chart(domain: JordanDomain, n=512) -> ConformalMap:
    return riemann_map(domain, domain.anchor(), n=n)


def _halfplane_pullback(domain, z, w) -> float:
    m = upper_chart(domain)
    return halfplane_hyperbolic_distance(complex(m.evaluate(z)), complex(m.evaluate(w)))


def _map_error_to_distance(m: ConformalMap, image_a: complex, image_b: complex) -> float:
    """Propagate the map's sup-norm accuracy into a distance error bound;
    the hyperbolic metric inflates map error near the disc boundary."""
    acc = m.accuracy if math.isfinite(m.accuracy) else 1e-6
    slack = 0.0
    for p in (image_a, image_b):
        gap = 1.0 - abs(p)
        slack += 2.0 * acc / max(gap * (2.0 - gap), 1e-12)
    return slack


# ---------------------------------------------------------------------------
# caratheodory / lempert dispatchers
# ---------------------------------------------------------------------------


def _require_inside(domain, *pts):
    for p in pts:
        if not domain.contains(p):
            raise DomainViolation(f"point {p} is not inside the domain")


_ANN_CACHE: dict = {}


def _annulus_engine(r: float) -> _ann.AnnulusCaratheodory:
    eng = _ANN_CACHE.get(r)
    if eng is None:
        eng = _ann.AnnulusCaratheodory(r)
        _ANN_CACHE[r] = eng
    return eng


def annulus_caratheodory(r: float, z: complex, w: complex) -> CertifiedValue:
    """Caratheodory distance on A_r; series mode when the boundary
    unimodularity self-tests pass, else a certified interval."""
    eng = _annulus_engine(r)
    if eng.series_mode:
        return CertifiedValue.exact(eng.distance(z, w), "series")
    lo = max(_disc_inclusion_lower(r, z, w), 0.0)
    hi = _ann.annulus_kobayashi_distance(r, z, w)
    return CertifiedValue(lo, hi, "interval", hi - lo)


def _disc_inclusion_lower(r, z, w):
    # A_r sits inside D(0, r); the pullback of the big-disc distance is a lower bound
    return poincare_distance(z / r, w / r)


def caratheodory(domain, z, w) -> CertifiedValue:
    """Caratheodory distance c_D(z, w) on the tanh^{-1} scale."""
    _require_inside(domain, z, w)
    if isinstance(domain, Disc):
        return CertifiedValue.exact(_pullback_distance(disc_chart(domain), z, w))
    if isinstance(domain, (HalfPlane, Sector, SlitPlane)):
        return CertifiedValue.exact(_halfplane_pullback(domain, z, w), "conformal_pullback")
    if isinstance(domain, TwoDiscHull):
        return caratheodory(domain.as_jordan(), z, w)
    if isinstance(domain, JordanDomain):
        m = _jordan_chart(domain)
        val = _pullback_distance(m, z, w)
        err = _map_error_to_distance(m, complex(m.evaluate(z)), complex(m.evaluate(w)))
        return CertifiedValue.estimate(val, err, "conformal_pullback")
    if isinstance(domain, Annulus):
        return annulus_caratheodory(domain.r, z, w)
    if isinstance(domain, (Ball, Polydisc)):
        return CertifiedValue.exact(cn_model_distance(domain, z, w))
    if isinstance(domain, ConvexBody):
        dz = domain.boundary_distance(z)
        dw = domain.boundary_distance(w)
        lo = max(0.5 * abs(math.log(dz / dw)), 0.0)
        up = lempert(domain, z, w)
        return CertifiedValue(min(lo, up.hi), up.hi, "interval", up.hi - min(lo, up.hi))
    raise UnsupportedDomain(f"caratheodory unsupported on {type(domain).__name__}")


def lempert(domain, z, w) -> CertifiedValue:
    """Lempert function l_D(z, w); equals the Kobayashi distance on all
    planar catalog variants and on Ball / Polydisc."""
    _require_inside(domain, z, w)
    if isinstance(domain, Disc):
        return CertifiedValue.exact(_pullback_distance(disc_chart(domain), z, w))
    if isinstance(domain, (HalfPlane, Sector, SlitPlane)):
        return CertifiedValue.exact(_halfplane_pullback(domain, z, w), "conformal_pullback")
    if isinstance(domain, TwoDiscHull):
        return lempert(domain.as_jordan(), z, w)
    if isinstance(domain, JordanDomain):
        return caratheodory(domain, z, w)
    if isinstance(domain, Annulus):
        val = _ann.annulus_kobayashi_distance(domain.r, z, w)
        return CertifiedValue(val - 1e-12, val + 1e-12, "covering", 1e-12)
    if isinstance(domain, (Ball, Polydisc)):
        return CertifiedValue.exact(cn_model_distance(domain, z, w))
    if isinstance(domain, ConvexBody):
        return _lempert_hull_upper(domain, z, w)
    raise UnsupportedDomain(f"lempert unsupported on {type(domain).__name__}")


def hull_distance(z, d_z, w, d_w, n: int = 512) -> float:
    """Distance between the two centers inside their two-disc hull, computed
    in the hull's own complex line coordinates.

    Uses the mapping chain directly (no normalization bookkeeping): the
    hyperbolic distance is invariant under the final disc rotation.
    """
    from .conformal import _GeodesicChain

    length = abs(w - z)
    hull = two_disc_hull(0j, d_z, complex(length, 0.0), d_w)
    if isinstance(hull, Disc):
        m = disc_scale_map(hull.center, hull.radius)
        return poincare_distance(complex(m.evaluate(0j)),
                                 complex(m.evaluate(complex(length, 0.0))))
    curve, _ = hull.parametrize()
    pts = np.asarray(curve(hull.param_grid(n)), dtype=complex)
    chain = _GeodesicChain(pts, 0j)
    zeta = chain.z0_img
    wim = complex(chain.forward(np.array([complex(length, 0.0)]))[0])
    rho = abs((wim - zeta) / (wim - zeta.conjugate()))
    return _atanh_stable(min(rho, math.nextafter(1.0, 0.0)))


def _lempert_hull_upper(domain, z, w) -> CertifiedValue:
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    dz = domain.boundary_distance(z)
    dw = domain.boundary_distance(w)
    hi = hull_distance(0j, dz, complex(np.linalg.norm(w - z), 0.0), dw)
    lo = max(0.0, 0.5 * abs(math.log(dz / dw)))
    return CertifiedValue(min(lo, hi), hi, "hull_upper", hi - min(lo, hi))


# ---------------------------------------------------------------------------
# Kobayashi metric
# ---------------------------------------------------------------------------


def kobayashi_metric(domain, z, X=1.0) -> float:
    """Infinitesimal Kobayashi metric kappa_D(z; X)."""
    if isinstance(domain, (Ball, Polydisc)):
        return _cn_kobayashi_metric(domain, z, X)
    _require_inside(domain, z)
    if isinstance(domain, Disc):
        u = (complex(z) - domain.center) / domain.radius
        return abs(X) / domain.radius / (1.0 - abs(u) ** 2)
    if isinstance(domain, (HalfPlane, Sector, SlitPlane)):
        m = upper_chart(domain)
        fz = complex(m.evaluate(z))
        return abs(complex(m.derivative(z))) * abs(X) / (2.0 * fz.imag)
    if isinstance(domain, TwoDiscHull):
        return kobayashi_metric(domain.as_jordan(), z, X)
    if isinstance(domain, JordanDomain):
        m = _jordan_chart(domain)
        fz = complex(m.evaluate(z))
        return abs(complex(m.derivative(z))) * abs(X) / (1.0 - abs(fz) ** 2)
    if isinstance(domain, Annulus):
        return _ann.annulus_kobayashi_metric(domain.r, complex(z), X)
    raise UnsupportedDomain(f"kobayashi metric unsupported on {type(domain).__name__}")


def _cn_kobayashi_metric(domain, z, X):
    z = np.asarray(z, dtype=complex)
    X = np.asarray(X, dtype=complex)
    if isinstance(domain, Ball):
        u = (z - np.asarray(domain.center)) / domain.radius
        V = X / domain.radius
        nu2 = float(np.real(np.vdot(u, u)))
        if nu2 >= 1.0:
            raise DomainViolation("point outside the ball")
        ip = complex(np.vdot(u, V))  # <V, u>
        nv2 = float(np.real(np.vdot(V, V)))
        val = (nv2 * (1.0 - nu2) + abs(ip) ** 2) / (1.0 - nu2) ** 2
        return math.sqrt(val)
    if isinstance(domain, Polydisc):
        best = 0.0
        for zi, Xi, ci, ri in zip(z, X, domain.center, domain.radii):
            ui = (zi - ci) / ri
            if abs(ui) >= 1.0:
                raise DomainViolation("point outside the polydisc")
            best = max(best, abs(Xi) / ri / (1.0 - abs(ui) ** 2))
        return best
    raise UnsupportedDomain("kobayashi metric on C^n supports Ball and Polydisc")


def kobayashi_field(domain) -> MetricField:
    if isinstance(domain, Annulus):
        return MetricField("kobayashi",
                           lambda z, X=1.0: _ann.annulus_kobayashi_metric(domain.r, z, X),
                           domain)
    return MetricField("kobayashi", lambda z, X=1.0: kobayashi_metric(domain, z, X), domain)


# ---------------------------------------------------------------------------
# Green function (simply connected planar)
# ---------------------------------------------------------------------------


def green_function(domain, z, w) -> float:
    """Green function with the normalization exp(-2 pi g) = tanh c_D on
    simply connected planar domains (g >= 0, g -> 0 at the boundary)."""
    if z == w:
        raise DomainViolation("green function pole: z must differ from w")
    if not getattr(domain, "simply_connected", False):
        raise UnsupportedDomain("green function implemented for simply connected domains")
    c = caratheodory(domain, z, w)
    return -math.log(math.tanh(c.value)) / (2.0 * math.pi)


# ---------------------------------------------------------------------------
# C^n model distances
# ---------------------------------------------------------------------------


def cn_model_distance(domain, z, w) -> float:
    """Kobayashi (= Caratheodory) distance on Ball and Polydisc, closed form."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if isinstance(domain, Ball):
        u = (z - np.asarray(domain.center)) / domain.radius
        v = (w - np.asarray(domain.center)) / domain.radius
        nu = float(np.real(np.vdot(u, u)))
        nv = float(np.real(np.vdot(v, v)))
        if nu >= 1.0 or nv >= 1.0:
            raise DomainViolation("points must lie in the open ball")
        ip = complex(np.vdot(v, u))  # <u, v>
        rho2 = 1.0 - (1.0 - nu) * (1.0 - nv) / abs(1.0 - ip) ** 2
        rho = math.sqrt(max(rho2, 0.0))
        return _atanh_stable(min(rho, math.nextafter(1.0, 0.0)))
    if isinstance(domain, Polydisc):
        best = 0.0
        for zi, wi, ci, ri in zip(z, w, domain.center, domain.radii):
            best = max(best, poincare_distance((zi - ci) / ri, (wi - ci) / ri))
        return best
    raise UnsupportedDomain("cn_model_distance supports Ball and Polydisc")

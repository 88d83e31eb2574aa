"""Invariant distances (Caratheodory, Kobayashi/Lempert, Bergman) on model
planar and several-variable domains, with verification suites for the
boundary estimates that relate them."""

from .annulus import (
    AnnulusCaratheodory,
    annulus_kobayashi_distance,
    annulus_kobayashi_metric,
    theta_product,
)
from .bergman import (
    annulus_monomial_norm_sq,
    bergman_distance,
    bergman_field,
    bergman_kernel,
    bergman_kernel_pair,
    bergman_metric,
    integrate_metric,
    shortest_path_length,
)
from .bounds import (
    BoundReport,
    bound_ccvx_lower,
    bound_convex_lower,
    bound_prop1_R,
    boundary_slope_regression,
    envelope_residual_pla,
    experiment_ratio_c_over_l,
    experiment_sector_ratio,
    experiment_slit_coefficient,
    fit_min_constant,
    run_suite,
    sandwich_gen,
    sandwich_log_forms,
    verify_prop5_product,
)
from .conformal import (
    AnnulusCover,
    ConformalMap,
    annulus_cover,
    cayley_map,
    closed_map,
    disc_scale_map,
    mobius_disc_automorphism,
    riemann_map,
    sector_map,
    slit_sqrt_map,
)
from .distances import (
    CertifiedValue,
    MetricField,
    annulus_caratheodory,
    caratheodory,
    cn_model_distance,
    green_function,
    halfplane_hyperbolic_distance,
    hull_distance,
    kobayashi_field,
    kobayashi_metric,
    lempert,
    mobius_scale,
    poincare_distance,
)
from .domains import (
    Annulus,
    Ball,
    BoundaryContact,
    ConvexBody,
    Disc,
    HalfPlane,
    JordanDomain,
    PlanarDomain,
    Polydisc,
    Sector,
    SlitPlane,
    TwoDiscHull,
    UnitDisc,
    boundary_distance,
    domain_from_json,
    domain_to_json,
    ellipse_domain,
    lens_domain,
    nearest_boundary_contact,
    project_domain,
    project_point,
    supporting_hyperplane,
    two_disc_hull,
    wobbly_domain,
)
from .errors import (
    BranchViolation,
    DegenerateInput,
    DomainViolation,
    InsufficientSamples,
    InvalidDomain,
    InvdistError,
    NoFiniteConstant,
    NonConvergence,
    SchemaError,
    UnsupportedDomain,
)

__version__ = "0.1.0"

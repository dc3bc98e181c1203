"""Computational tools for finite partial n-metric spaces.

Axiom validation, ball topology, sequence limits and fixed points of
self-maps by orbit iteration.
"""

from .axioms import ValidationReport, Violation, validate
from .errors import *  # noqa: F401,F403
from .fixed_point import (
    ContractivityCertificate,
    FixedPointResult,
    OrbitTrace,
    SelfMap,
    all_self_maps,
    certify_phi_contractive,
    certify_r_contractive,
    check_nonexpansive,
    check_orbital_completeness,
    check_orbital_continuity,
    orbit,
    solve_fixed_point,
    solve_via_contractive,
)
from .sequences import (
    SequencePrefix,
    check_limit,
    check_special_limit,
    estimate_cauchy,
    special_limit_search,
)
from .spaces import (
    DEFAULT_TOL,
    MetricSpace,
    PartialMetricSpace,
    PartialNMetricSpace,
    associated_metric,
    build_space,
    evaluate,
    from_partial_metric,
    is_n_metric,
    self_distance,
)
from .topology import basis_check, compare_topologies, open_ball, separation_class

__version__ = "0.1.0"


def two_point_five_metric() -> PartialNMetricSpace:
    """The bundled two-point 5-metric space with a negative table value."""
    from importlib.resources import files

    from .io import space_from_dict
    import json

    doc = json.loads(files(__package__).joinpath("data/two_point_5metric.json").read_text())
    return space_from_dict(doc)

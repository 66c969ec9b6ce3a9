"""Exact transversal, well-separation and MaxHyp tools for finite point families."""

from .approx import ApproxReport, approx_maxhyp, f_of_k
from .errors import TransversalError
from .exactmath import (Flat, Hyperplane, PointFamily, affine_dependence, affine_rank,
                        flat_contains, flat_from_points, hyperplane_through)
from .lpcore import (Constraint, Counter, FarkasCertificate, Feasible, Infeasible, Intersecting,
                     LPInstance, Optimal, Separated, Unbounded, flat_meets_hull, hulls_intersect,
                     lp_solve)
from .solvers import (MaxHypReport, SegmentFamily, TransversalCertificate,
                      finite_flat_transversal, hyperplane_transversal_points, maxhyp_exact,
                      segment_hyperplane_transversal)
from .wellsep import (NotWellSeparated, RadonPartition, WellSeparated, WitnessPartition,
                      flat_certificate_from_witness, is_well_separated, radon_partition,
                      witness_from_flat)

__version__ = "0.1.0"

__all__ = [
    "ApproxReport",
    "approx_maxhyp",
    "f_of_k",
    "TransversalError",
    "Flat",
    "Hyperplane",
    "PointFamily",
    "affine_dependence",
    "affine_rank",
    "flat_contains",
    "flat_from_points",
    "hyperplane_through",
    "Constraint",
    "Counter",
    "FarkasCertificate",
    "Feasible",
    "Infeasible",
    "Intersecting",
    "LPInstance",
    "Optimal",
    "Separated",
    "Unbounded",
    "flat_meets_hull",
    "hulls_intersect",
    "lp_solve",
    "MaxHypReport",
    "SegmentFamily",
    "TransversalCertificate",
    "finite_flat_transversal",
    "hyperplane_transversal_points",
    "maxhyp_exact",
    "segment_hyperplane_transversal",
    "NotWellSeparated",
    "RadonPartition",
    "WellSeparated",
    "WitnessPartition",
    "flat_certificate_from_witness",
    "is_well_separated",
    "radon_partition",
    "witness_from_flat",
]

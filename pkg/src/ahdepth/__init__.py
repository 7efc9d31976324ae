"""Exact angular halfspace depth for directional data on spheres."""
from .depth import (DepthResult, DepthTable, FlagWitness, ahd, ahd_approx, ahd_circle,
                    ahd_oracle, ahd_projected, depth_many, min_flag, signed_halfspace_depth)
from .errors import (AHDError, AlphaOutOfRange, AntipodalPair, CrossValidationError,
                     DimensionMismatch, EmptyRegion, GenericityFailure, NonUnitRow,
                     ParseError, UnsupportedModel, ZeroVector)
from .kernels import BACKEND
from .regions import (CentralRegion, MedianResult, antipodal_min_check, central_region,
                      convexity_check, depth_profile, hausdorff, median_set,
                      strict_monotonicity_diagnostic)
from .sphere import (ProjectedSignedDataset, SphericalDataset, apply_linear, apply_rotation,
                     gnomonic_project, generic_pole_rotation)

__version__ = "0.1.0"

"""Weighted integral means of mixed areas and lengths of holomorphic images of disks."""
from .errors import (DomainError, InvalidInputError, MixedMeansError, SingularParameterError,
                     ToleranceNotMetError, ZeroConstantTermError)
from .geometry import (DiskEvaluator, GeomValue, Kind, Method, area, area_dirichlet,
                       area_image_raster, length_boundary, mixed_ratio)
from .quadrature import QuadratureParams
from .series import PowerSeries, construct, derivative, evaluate, monomial, multiply, sqrt_zero_free
from .weights import (MeanValue, MomentMean, WeightParams, f_lambda, mean_at_one, moment_mean,
                      nu_alpha, weighted_mean, weighted_mean_monomial)

__version__ = "0.1.0"

from .support import (DeltaResult, delta_s, delta_s_explicit, delta_slope_at_zero, find_s1, delta_level_surface,
                      max_positive_s, angular_coverage, nearest_point_distance)
from .convexity import vertical_convexity, infinity_kernel_convexity
from .densities import (DensityModel, SegmentKInf, SegmentHyper, CircleHyper, UniformCircle, Arcsine, density_cdf,
                        empirical_cdf_distance, cdf_comparison_table, hilfssatz_integral)
from .scaling import energy_scaling_estimate, scaling_constant
from .level_sets import kernel_level_sets

__all__ = ['DeltaResult', 'delta_s', 'delta_s_explicit', 'delta_slope_at_zero', 'find_s1', 'delta_level_surface',
           'max_positive_s', 'angular_coverage', 'nearest_point_distance', 'vertical_convexity',
           'infinity_kernel_convexity', 'DensityModel', 'SegmentKInf', 'SegmentHyper', 'CircleHyper',
           'UniformCircle', 'Arcsine', 'density_cdf', 'empirical_cdf_distance', 'cdf_comparison_table',
           'hilfssatz_integral', 'energy_scaling_estimate', 'scaling_constant', 'kernel_level_sets']

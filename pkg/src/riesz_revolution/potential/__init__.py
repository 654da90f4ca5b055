from .kernel import (PlanePoint, HalfPlanePoint, KernelVariant, KernelSpec, ExpansionTerms, reflect, kernel_eval,
                     kernel_pairs, kernel_quadrature, i_s_circle, expansion_terms)
from .geometry import (Curve, Segment, Circle, CircularArc, CassinianOval, RectangleBoundary, Polyline,
                       SurfacePoint3, curve_point, lift_to_3d, curve_from_dict)
from .energy import (Configuration, EnergyReport, discrete_energy, discrete_potential, energy_gradient,
                     riesz_energy_3d, separation_radius)
from .optimize import OptimizeOptions, minimize_energy, descend

__all__ = ['PlanePoint', 'HalfPlanePoint', 'KernelVariant', 'KernelSpec', 'ExpansionTerms', 'reflect', 'kernel_eval',
           'kernel_pairs', 'kernel_quadrature', 'i_s_circle', 'expansion_terms', 'Curve', 'Segment', 'Circle',
           'CircularArc', 'CassinianOval', 'RectangleBoundary', 'Polyline', 'SurfacePoint3', 'curve_point',
           'lift_to_3d', 'curve_from_dict', 'Configuration', 'EnergyReport', 'discrete_energy',
           'discrete_potential', 'energy_gradient', 'riesz_energy_3d', 'separation_radius', 'OptimizeOptions',
           'minimize_energy', 'descend']

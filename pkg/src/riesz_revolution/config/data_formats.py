from __future__ import annotations
from typing import TypedDict, Optional

optimizer_option_format = TypedDict('optimizer_option_format', {'max_iterations': int,
                                                                'grad_tol': float,
                                                                'restarts': int,
                                                                'jitter': float,
                                                                'seed': int,
                                                                'workers': int})

energy_report_format = TypedDict('energy_report_format', {'energy': float,
                                                          'gradient_sup_norm': float,
                                                          'separation': float,
                                                          'iterations': int,
                                                          'restarts_used': int,
                                                          'converged': bool})

run_report_format = TypedDict('run_report_format', {'kernel': dict,
                                                    'curve': dict,
                                                    'n': int,
                                                    'seed': int,
                                                    'sweep_value': Optional[float],
                                                    'report': energy_report_format})

point_row_format = TypedDict('point_row_format', {'index': int,
                                                  't': float,
                                                  'x': float,
                                                  'y': float})

expansion_row_format = TypedDict('expansion_row_format', {'R': float,
                                                          'kernel': float,
                                                          'leading': float,
                                                          'infinity_term': float,
                                                          'drift_term': float,
                                                          'residual': float})

delta_report_format = TypedDict('delta_report_format', {'x': float,
                                                        'gamma': float,
                                                        's1': float,
                                                        'delta_at_s1': float,
                                                        'slope_at_zero': float,
                                                        'max_positive_s': Optional[float]})

"""
Experiment files shipped with the package, see ``experiments/``.
Load them with :func:`riesz_revolution.utils.get_resource_path`.
"""

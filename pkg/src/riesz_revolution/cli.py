"""
Command line interface ``riesz-revolution``.

Exit codes: 0 on success, 1 for usage errors (bad arguments, invalid or missing experiment files) and 2 for
every error raised by the library.
"""
from __future__ import annotations
import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import pandas as pd
from pydantic import ValidationError

from riesz_revolution import __version__
from riesz_revolution.analysis.densities import cdf_comparison_table, empirical_cdf_distance
from riesz_revolution.analysis.level_sets import kernel_level_sets
from riesz_revolution.analysis.scaling import energy_scaling_estimate, scaling_constant, scaling_regime
from riesz_revolution.analysis.support import (delta_level_surface, delta_slope_at_zero, evaluate_delta,
                                               find_s1, max_positive_s)
from riesz_revolution.config import get_log_level, settings
from riesz_revolution.config.data_formats import delta_report_format, expansion_row_format, run_report_format
from riesz_revolution.config.schemas import (DeltaExperiment, DensityExperiment, ExpansionExperiment,
                                             LevelsetExperiment, MinimizeExperiment, ScalingExperiment,
                                             format_path, load_experiment, sweep_curve_shift)
from riesz_revolution.exceptions import RieszError, UsageError
from riesz_revolution.potential.kernel import KernelSpec, expansion_residual, expansion_terms, kernel_eval
from riesz_revolution.potential.optimize import minimize_energy
from riesz_revolution.utils.helper import parse_point, write_configuration_csv, write_json, write_table_csv

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ERROR = 2


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f'{self.prog}: error: {message}\n')


def _point(text: str):
    try:
        return parse_point(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _format(value: float) -> str:
    return f'{value:.{settings.SIGNIFICANT_DIGITS}g}'


class _OutputGuard:
    """Removes every file written through it when the command fails."""

    def __init__(self):
        self.written: List[Path] = []

    def path(self, name: str) -> Path:
        path = Path(name)
        if path.parent != Path('.'):
            path.parent.mkdir(parents=True, exist_ok=True)
        self.written.append(path)
        return path

    def discard(self):
        for path in self.written:
            if path.exists():
                path.unlink()
                logger.info(f'removed partial output {path}')


def cmd_eval(args: argparse.Namespace, guard: _OutputGuard) -> int:
    spec = KernelSpec(args.variant, s=args.s, R=args.R)
    print(_format(kernel_eval(spec, args.z, args.w)))
    return EXIT_OK


def cmd_minimize(args: argparse.Namespace, guard: _OutputGuard) -> int:
    experiment: MinimizeExperiment = load_experiment(args.spec, MinimizeExperiment)
    opts = experiment.optimizer.to_options()
    sweep_values: List[Optional[float]] = list(experiment.sweep.values) if experiment.sweep else [None]
    for index, value in enumerate(sweep_values):
        kernel = experiment.kernel
        shift = 0.0
        if value is not None:
            if experiment.sweep.parameter == 's':
                kernel = kernel.model_copy(update={'s': value})
            shift = sweep_curve_shift(experiment.sweep.parameter, value)
        spec = kernel.to_spec()
        curve = experiment.curve.to_curve(shift)
        logger.info(f'minimize run {index}: kernel {spec.to_dict()}, curve {curve.to_dict()}')
        config, report = minimize_energy(spec, curve, experiment.n, opts)

        points_path = guard.path(format_path(experiment.output.points, index, value))
        write_configuration_csv(config, points_path)
        run_report: run_report_format = {'kernel': spec.to_dict(), 'curve': curve.to_dict(), 'n': config.n,
                                         'seed': opts.seed, 'sweep_value': value, 'report': report.to_dict()}
        write_json(run_report, guard.path(format_path(experiment.output.report, index, value)))
        print(f'{points_path}: energy {_format(report.energy)}, separation {_format(report.separation)}')
    return EXIT_OK


def cmd_levelset(args: argparse.Namespace, guard: _OutputGuard) -> int:
    experiment: LevelsetExperiment = load_experiment(args.spec, LevelsetExperiment)
    table = kernel_level_sets(experiment.kernel.to_spec(), experiment.w, experiment.levels, experiment.x_range,
                              experiment.y_range, experiment.resolution)
    write_table_csv(table, guard.path(experiment.output))
    print(f'{experiment.output}: {len(table)} contour pieces')
    return EXIT_OK


def cmd_scaling(args: argparse.Namespace, guard: _OutputGuard) -> int:
    experiment: ScalingExperiment = load_experiment(args.spec, ScalingExperiment)
    spec = experiment.kernel.to_spec()
    curve = experiment.curve.to_curve()
    limit, table = energy_scaling_estimate(spec, curve, experiment.n_list, experiment.optimizer.to_options())
    write_table_csv(table, guard.path(experiment.output))
    predicted = scaling_constant(spec, curve)
    if experiment.report is not None:
        write_json({'kernel': spec.to_dict(), 'curve': curve.to_dict(), 'regime': scaling_regime(spec),
                    'limit': limit, 'predicted': predicted}, guard.path(experiment.report))
    line = f'extrapolated limit {_format(limit)}'
    if predicted is not None:
        line += f', predicted {_format(predicted)}'
    print(line)
    return EXIT_OK


def cmd_density(args: argparse.Namespace, guard: _OutputGuard) -> int:
    experiment: DensityExperiment = load_experiment(args.spec, DensityExperiment)
    model = experiment.model.to_model()
    curve = experiment.curve.to_curve()
    config, report = minimize_energy(experiment.kernel.to_spec(), curve, experiment.n,
                                     experiment.optimizer.to_options())
    distance = empirical_cdf_distance(config, model, experiment.align_rotation)
    write_table_csv(cdf_comparison_table(config, model), guard.path(experiment.output))
    if experiment.report is not None:
        write_json({'model': experiment.model.model_dump(exclude_none=True), 'distance': distance,
                    'align_rotation': experiment.align_rotation, 'report': report.to_dict()},
                   guard.path(experiment.report))
    print(f'D = {_format(distance)}')
    return EXIT_OK


def cmd_expansion(args: argparse.Namespace, guard: _OutputGuard) -> int:
    experiment: ExpansionExperiment = load_experiment(args.spec, ExpansionExperiment)
    spec = KernelSpec('ks', s=experiment.s)
    z, w = experiment.z, experiment.w
    rows: List[expansion_row_format] = []
    for R in experiment.R_values:
        terms = expansion_terms(experiment.s, z, w, R)
        rows.append({'R': R, 'kernel': kernel_eval(spec, (R + z[0], z[1]), (R + w[0], w[1])),
                     'leading': terms.leading, 'infinity_term': terms.infinity_term,
                     'drift_term': terms.drift_term, 'residual': expansion_residual(experiment.s, z, w, R)})
    write_table_csv(pd.DataFrame(rows, columns=list(expansion_row_format.__annotations__)),
                    guard.path(experiment.output))
    print(f'{experiment.output}: {len(rows)} rows')
    return EXIT_OK


def cmd_delta(args: argparse.Namespace, guard: _OutputGuard) -> int:
    experiment: DeltaExperiment = load_experiment(args.spec, DeltaExperiment)
    grids = {name: getattr(experiment, name) for name in ('x_grid', 'inv_gamma_grid', 's_grid')
             if getattr(experiment, name) is not None}
    table = delta_level_surface(**grids)
    write_table_csv(table, guard.path(experiment.output))
    s1 = find_s1(experiment.x, experiment.gamma, experiment.bracket)
    at_root = evaluate_delta(experiment.x, experiment.gamma, s1)
    report: delta_report_format = {'x': experiment.x, 'gamma': experiment.gamma, 's1': s1,
                                   'delta_at_s1': at_root.delta,
                                   'slope_at_zero': delta_slope_at_zero(experiment.x, experiment.gamma),
                                   'max_positive_s': max_positive_s(table)}
    write_json(report, guard.path(experiment.report))
    print(f's1 = {_format(s1)}')
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, _OutputGuard], int]] = {
    'eval': cmd_eval, 'minimize': cmd_minimize, 'levelset': cmd_levelset, 'scaling': cmd_scaling,
    'density': cmd_density, 'expansion': cmd_expansion, 'delta': cmd_delta}


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog='riesz-revolution',
                            description='Reduced Riesz kernels for surfaces of revolution and their minimal '
                                        'energy configurations.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], type=str.upper,
                        default=None, help=f'log level, default ${settings.LOG_LEVEL_ENV_VAR} or WARNING')
    subparsers = parser.add_subparsers(dest='command', required=True, parser_class=ArgumentParser)

    evaluate = subparsers.add_parser('eval', help='evaluate a kernel at one pair of points')
    evaluate.add_argument('--variant', required=True, choices=['ks', 'ksr', 'ksinf', 'k0', 'k1'])
    evaluate.add_argument('--s', type=float, default=None, help='Riesz exponent')
    evaluate.add_argument('--R', type=float, default=None, help='translation of the ksr kernel')
    evaluate.add_argument('--z', type=_point, required=True, help='first point as x,y')
    evaluate.add_argument('--w', type=_point, required=True, help='second point as x,y')

    for name, text in (('minimize', 'minimal energy configurations, optionally swept over s or R'),
                       ('levelset', 'contours of a kernel with one argument fixed'),
                       ('scaling', 'energy asymptotics over a doubling sequence of N'),
                       ('density', 'distance of an optimized configuration from a limit density'),
                       ('expansion', 'large-R expansion of the kernel and its residual'),
                       ('delta', 'three-point exclusion difference: s1 and the level surface')):
        sub = subparsers.add_parser(name, help=text)
        sub.add_argument('spec', help='JSON experiment file')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level or get_log_level(),
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')

    guard = _OutputGuard()
    try:
        return COMMANDS[args.command](args, guard)
    except (ValidationError, FileNotFoundError, UsageError) as exc:
        guard.discard()
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_USAGE
    except (RieszError, ValueError, ArithmeticError) as exc:
        guard.discard()
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())

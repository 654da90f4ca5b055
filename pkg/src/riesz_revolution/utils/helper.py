# -*- coding: utf-8 -*-
# !/usr/bin/env python
from __future__ import annotations
import json
import math
from os.path import normpath
from pathlib import Path
from typing import Any, Optional, Tuple, Union, TYPE_CHECKING

import numpy as np
import pandas as pd

import riesz_revolution.resources
from riesz_revolution.config import settings
from riesz_revolution.config.data_formats import point_row_format
try:
    import importlib.resources as importlib_resources
except ImportError:
    import importlib_resources

if TYPE_CHECKING:
    from riesz_revolution.potential.energy import Configuration
    from riesz_revolution.potential.geometry import Curve

PathLike = Union[str, Path]
CONFIGURATION_COLUMNS = list(point_row_format.__annotations__)


def parse_point(text: str) -> Tuple[float, float]:
    """
    Parse a point given on the command line as ``x,y``.

    :param text: Two comma separated numbers, e.g. ``1,0`` or ``0.5,-1e-3``.
    :return: The point as a tuple of floats.
    :raises ValueError: If the text does not hold exactly two numbers.
    """
    parts = [p.strip() for p in text.split(',')]
    if len(parts) != 2:
        raise ValueError(f'point must be given as x,y, got {text!r}')
    return float(parts[0]), float(parts[1])


def round_significant(value: Any, digits: int = settings.SIGNIFICANT_DIGITS) -> Any:
    """Round every float in a (nested) JSON-like structure to ``digits`` significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if not math.isfinite(value) else float(f'{value:.{digits}g}')
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, dict):
        return {k: round_significant(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [round_significant(v, digits) for v in value]
    return value


def load_json(path: PathLike) -> Any:
    with open(path, 'r', encoding='utf-8') as file:
        return json.load(file)


def write_json(data: Any, path: PathLike) -> None:
    """Write ``data`` as UTF-8 JSON with floats rounded to 15 significant digits."""
    with open(path, 'w', encoding='utf-8') as file:
        json.dump(round_significant(data), file, indent=2)
        file.write('\n')


def write_table_csv(table: pd.DataFrame, path: PathLike) -> None:
    table.to_csv(path, index=False, float_format=settings.FLOAT_FORMAT)


def read_table_csv(path: PathLike) -> pd.DataFrame:
    """Read a CSV table written by :func:`write_table_csv` (header row, one row per record)."""
    return pd.read_csv(path, float_precision='round_trip')


def write_configuration_csv(config: Configuration, path: PathLike) -> None:
    """Write a configuration as rows ``index, t, x, y``."""
    table = pd.DataFrame({'index': np.arange(config.n), 't': config.params, 'x': config.points[:, 0],
                          'y': config.points[:, 1]}, columns=CONFIGURATION_COLUMNS)
    write_table_csv(table, path)


def read_configuration_csv(path: PathLike, curve: Optional[Curve] = None) -> Union[pd.DataFrame, Configuration]:
    """
    Read a configuration CSV back.

    :param path: File written by :func:`write_configuration_csv`.
    :param curve: If given, rebuild the configuration on this curve from the parameter column.
    :return: The raw table, or the configuration when a curve is given.
    :raises ValueError: If the header does not match the configuration columns.
    """
    table = read_table_csv(path)
    if list(table.columns) != CONFIGURATION_COLUMNS:
        raise ValueError(f'{path} is not a configuration table: columns {list(table.columns)}')
    if curve is None:
        return table
    from riesz_revolution.potential.energy import Configuration
    return Configuration.from_params(curve, table['t'].to_numpy())


def get_resource_path(name: Optional[str] = None) -> str:
    """
    Retrieve the normalized path of a file shipped in ``riesz_revolution.resources``, e.g. one of the
    experiment files under ``experiments/``.

    :param name: Path of the file relative to the resources package.
    :return: The normalized path.
    :raises ValueError: If no name is given.
    :raises FileNotFoundError: If the file does not exist.
    """
    if name is None:
        raise ValueError('The resource name must be provided')

    file_path = importlib_resources.files(riesz_revolution.resources).joinpath(name)
    if not file_path.is_file():
        raise FileNotFoundError(f'resource {name} does not exist')
    return normpath(str(file_path))

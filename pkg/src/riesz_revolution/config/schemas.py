"""
Experiment files of the command line, validated with pydantic. Unknown fields are rejected.
"""
from __future__ import annotations
import json
import math
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from riesz_revolution.analysis.densities import (Arcsine, CircleHyper, DensityModel, SegmentHyper, SegmentKInf,
                                                 UniformCircle)
from riesz_revolution.config import settings
from riesz_revolution.exceptions import UsageError
from riesz_revolution.potential.geometry import Curve, cassini_translate, curve_from_dict
from riesz_revolution.potential.kernel import KernelSpec
from riesz_revolution.potential.optimize import OptimizeOptions
from riesz_revolution.utils.helper import load_json

Point = Tuple[float, float]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra='forbid')


class KernelModel(StrictModel):
    variant: Literal['ks', 'ksr', 'ksinf', 'k0', 'k1']
    s: Optional[float] = None
    R: Optional[float] = None

    def to_spec(self) -> KernelSpec:
        return KernelSpec(self.variant, s=self.s, R=self.R)


class _CurveBase(StrictModel):

    def shifted(self, dx: float) -> dict:
        """Curve definition moved right by ``dx``."""
        data = self.model_dump(exclude_none=True)
        for key in ('start', 'end', 'center', 'lower_left', 'upper_right'):
            if key in data:
                data[key] = (data[key][0] + dx, data[key][1])
        if 'vertices' in data:
            data['vertices'] = [(x + dx, y) for x, y in data['vertices']]
        if data['kind'] == 'cassini':
            if 'translate' not in data:
                data['translate'] = cassini_translate(data.get('a', settings.CASSINI_A),
                                                      data.get('b', settings.CASSINI_B),
                                                      data.get('min_x', settings.CASSINI_MIN_X))
            data.pop('min_x', None)
            data['translate'] += dx
        return data

    def to_curve(self, shift: float = 0.0) -> Curve:
        return curve_from_dict(self.shifted(shift))


class SegmentModel(_CurveBase):
    kind: Literal['segment']
    start: Point
    end: Point


class CircleModel(_CurveBase):
    kind: Literal['circle']
    center: Point
    radius: float
    strict: bool = False


class ArcModel(_CurveBase):
    kind: Literal['arc']
    center: Point
    radius: float
    start_angle: float
    end_angle: float


class CassiniModel(_CurveBase):
    kind: Literal['cassini']
    a: Optional[float] = None
    b: Optional[float] = None
    translate: Optional[float] = None
    min_x: Optional[float] = None


class RectangleModel(_CurveBase):
    kind: Literal['rectangle']
    lower_left: Point
    upper_right: Point


class PolylineModel(_CurveBase):
    kind: Literal['polyline']
    vertices: List[Point] = Field(min_length=2)


CurveModel = Annotated[Union[SegmentModel, CircleModel, ArcModel, CassiniModel, RectangleModel, PolylineModel],
                       Field(discriminator='kind')]


class OptimizerModel(StrictModel):
    task: Literal['default', 'desk', 'quick'] = 'default'
    max_iterations: Optional[int] = None
    grad_tol: Optional[float] = None
    restarts: Optional[int] = None
    jitter: Optional[float] = None
    seed: Optional[int] = None
    workers: Optional[int] = None

    def to_options(self) -> OptimizeOptions:
        overrides = self.model_dump(exclude={'task'}, exclude_none=True)
        return OptimizeOptions.from_task(self.task, **overrides).with_seed_override()


class SweepModel(StrictModel):
    """Repeat a run for several values of the kernel exponent ``s`` or of the curve translation ``R``."""
    parameter: Literal['s', 'R']
    values: List[float] = Field(min_length=1)


class MinimizeOutput(StrictModel):
    points: str
    report: str


class MinimizeExperiment(StrictModel):
    kernel: KernelModel
    curve: CurveModel
    n: int = Field(ge=2)
    optimizer: OptimizerModel = OptimizerModel()
    sweep: Optional[SweepModel] = None
    output: MinimizeOutput

    @model_validator(mode='after')
    def _check_placeholders(self):
        if self.sweep is not None and len(self.sweep.values) > 1:
            for path in (self.output.points, self.output.report):
                if '{index}' not in path and '{value}' not in path:
                    raise ValueError(f'output path {path!r} needs an {{index}} or {{value}} placeholder for a sweep')
        return self


class LevelsetExperiment(StrictModel):
    kernel: KernelModel
    w: Point
    levels: List[float] = Field(min_length=1)
    x_range: Point = (0.0, 3.0)
    y_range: Point = (-1.5, 1.5)
    resolution: int = Field(default=301, ge=2)
    output: str


class ScalingExperiment(StrictModel):
    kernel: KernelModel
    curve: CurveModel
    n_list: List[int] = Field(min_length=3)
    optimizer: OptimizerModel = OptimizerModel()
    output: str
    report: Optional[str] = None


class DensityModelSpec(StrictModel):
    kind: Literal['segment_kinf', 'segment_hyper', 'circle_hyper', 'uniform_circle', 'arcsine']
    s: Optional[float] = None
    r: Optional[float] = None
    R: Optional[float] = None
    phi: Optional[float] = None

    @model_validator(mode='after')
    def _check_parameters(self):
        required = {'segment_kinf': ('s', 'r'), 'segment_hyper': ('s', 'R', 'phi'), 'circle_hyper': ('s', 'R'),
                    'uniform_circle': (), 'arcsine': ('r',)}[self.kind]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f'density model {self.kind} needs {", ".join(missing)}')
        return self

    def to_model(self) -> DensityModel:
        if self.kind == 'segment_kinf':
            return SegmentKInf(self.s, self.r)
        if self.kind == 'segment_hyper':
            return SegmentHyper(self.s, self.R, self.phi)
        if self.kind == 'circle_hyper':
            return CircleHyper(self.s, self.R)
        if self.kind == 'arcsine':
            return Arcsine(self.r)
        return UniformCircle()


class DensityExperiment(StrictModel):
    kernel: KernelModel
    curve: CurveModel
    n: int = Field(ge=2)
    optimizer: OptimizerModel = OptimizerModel()
    model: DensityModelSpec
    align_rotation: bool = False
    output: str
    report: Optional[str] = None


class ExpansionExperiment(StrictModel):
    s: float = Field(gt=0, lt=1)
    z: Point
    w: Point
    R_values: List[float] = Field(min_length=1)
    output: str


class DeltaExperiment(StrictModel):
    x: float = Field(gt=0)
    gamma: float = Field(gt=0)
    bracket: Optional[Point] = None
    x_grid: Optional[List[float]] = None
    inv_gamma_grid: Optional[List[float]] = None
    s_grid: Optional[List[float]] = None
    output: str
    report: str


def sweep_curve_shift(parameter: str, value: float) -> float:
    return value if parameter == 'R' else 0.0


def load_experiment(path: Union[str, Path], schema: type[StrictModel]) -> StrictModel:
    """
    Load and validate an experiment file.

    :raises FileNotFoundError: If the file does not exist.
    :raises UsageError: If the file is not valid JSON.
    :raises pydantic.ValidationError: If the document does not fit the schema.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f'experiment file not found: {path}')
    try:
        document = load_json(path)
    except json.JSONDecodeError as exc:
        raise UsageError(f'experiment file {path} is not valid JSON: {exc}') from exc
    return schema.model_validate(document)


def format_path(template: str, index: int, value: Optional[float]) -> str:
    """Fill the ``{index}`` and ``{value}`` placeholders of an output path."""
    value_text = '' if value is None or not math.isfinite(value) else f'{value:.15g}'
    return template.replace('{index}', str(index)).replace('{value}', value_text)

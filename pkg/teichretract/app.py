"""
API for running configured commands.

A run configuration is a JSON document validated against
schema/run_config.schema.json. dispatch() runs one command and collects
its artifacts; the returned exit status separates success, numerical
failures and failed property checks.
"""
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple
import jsonschema
import numpy as np
import pandas as pd
from .charts import (
    Chart, FNPoint, SurfaceType, make_chart, standard_chart, validate_point
)
from .config import SCHEMA_FILE, TEICHRETRACT_DIR
from .errors import NumericalError, SchemaError
from .experiments import (
    continuity_demo, cover_check, locus_point, parallel_map,
    retraction_batch, sample_thin_points, SYMMETRIC_LOCI
)
from .flow import FlowConfig, flow
from .gradient import MetricModel, field_diagnostics, root_length_gram
from .holonomy import EnumerationConfig
from .io import ArtifactCollector
from .mcg import MappingClass, equivariance_check, symmetric_locus_check
from .systole import BersBox, short_set, systole_row
from .utils import hash_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_NUMERICAL = 3
EXIT_PROPERTY = 4

DERIVATIVE_TOL = 1e-6
RESIDUAL_TOL = 1e-9
MONOTONICITY_TOL = 1e-6
DEFAULT_BOXES = ((2.0, 1.0), (4.0, 2.0))


def load_schema() -> Dict[str, Any]:
    with open(SCHEMA_FILE) as f:
        return json.load(f)


def validate_config(data: Dict[str, Any]):
    """Raise SchemaError listing every schema violation."""
    validator = jsonschema.Draft7Validator(load_schema())
    errors = sorted(
        validator.iter_errors(data), key=lambda e: list(e.absolute_path)
    )
    if errors:
        lines = [
            '/'.join(map(str, error.absolute_path)) + ': ' + error.message
            for error in errors
        ]
        raise SchemaError('Invalid run configuration:\n' + '\n'.join(lines))


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration."""

    command: str
    chart: Chart
    epsilon: float
    seed: int
    flow: FlowConfig
    points: Tuple[FNPoint, ...]
    params: Dict[str, Any] = field(default_factory=dict)
    output_dir: str = TEICHRETRACT_DIR
    n_jobs: int = 1
    raw: Dict[str, Any] = field(default_factory=dict)

    @property
    def config_hash(self) -> str:
        """Hash of the settings that determine the results."""
        return hash_json({
            key: value for key, value in self.raw.items()
            if key not in ('output_dir', 'n_jobs')
        })

    @property
    def enumeration(self) -> EnumerationConfig:
        return self.flow.enumeration

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunConfig':
        validate_config(data)
        try:
            genus, punctures = data['surface']
            surface = SurfaceType(genus, punctures)
            if not surface.is_supported:
                raise SchemaError(
                    f'Unsupported surface type {surface.label}'
                )
            gluing = data.get('gluing')
            if gluing is None:
                chart = standard_chart(genus, punctures)
                if data.get('twist_origin') is not None:
                    chart = make_chart(
                        surface, chart.gluing, data['twist_origin']
                    )
            else:
                chart = make_chart(surface, gluing, data.get('twist_origin'))
                if not chart.is_standard:
                    raise SchemaError(
                        f'Gluing {gluing} is not a reordering of the '
                        f'built-in pants decomposition of {surface.label}'
                    )
            enumeration = EnumerationConfig(**data.get('enumeration', {}))
            flow_cfg = FlowConfig(
                epsilon=data['epsilon'],
                metric=MetricModel(**data.get('metric', {})),
                enumeration=enumeration,
                **data.get('flow', {})
            )
            points = tuple(
                validate_point(FNPoint.from_json(point, chart))
                for point in data.get('points', [])
            )
        except SchemaError:
            raise
        except (ValueError, TypeError) as error:
            raise SchemaError(str(error)) from error
        return cls(
            command=data['command'],
            chart=chart,
            epsilon=float(data['epsilon']),
            seed=int(data.get('seed', 0)),
            flow=flow_cfg,
            points=points,
            params=dict(data.get('params', {})),
            output_dir=data.get('output_dir', TEICHRETRACT_DIR),
            n_jobs=int(data.get('n_jobs', 1)),
            raw=dict(data),
        )


def read_config(
    path: str,
    command: Optional[str] = None,
    seed: Optional[int] = None,
    output_dir: Optional[str] = None,
    n_jobs: Optional[int] = None
) -> RunConfig:
    """Read a config file, applying command line overrides."""
    try:
        with open(path) as f:
            data = json.load(f)
    except json.JSONDecodeError as error:
        raise SchemaError(f'{path} is not valid JSON: {error}') from error
    if not isinstance(data, dict):
        raise SchemaError(f'{path} does not hold a JSON object')
    overrides = {
        'command': command, 'seed': seed, 'output_dir': output_dir,
        'n_jobs': n_jobs,
    }
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    return RunConfig.from_dict(data)


def _sample_points(
    cfg: RunConfig, rng: np.random.Generator, n_default: int
) -> List[FNPoint]:
    if cfg.points:
        return list(cfg.points)
    n = int(cfg.params.get('n_points', n_default))
    return sample_thin_points(cfg.chart, n, cfg.epsilon, rng)


def run_systole(
    cfg: RunConfig, collector: ArtifactCollector, progress: Callable
) -> bool:
    rng = cfg.rng()
    if cfg.points:
        points = list(cfg.points)
    else:
        n = int(cfg.params.get('n_points', 100))
        low, high = cfg.params.get('length_range', (0.005, 3.0))
        twist_range = cfg.params.get('twist_range', 2.0)
        d = cfg.chart.n_curves
        points = [
            FNPoint(
                cfg.chart,
                tuple(rng.uniform(low, high, size=d)),
                tuple(rng.uniform(-twist_range, twist_range, size=d)),
            )
            for _ in range(n)
        ]
    box = None
    if 'box' in cfg.params:
        C, theta0 = cfg.params['box']
        box = BersBox(cfg.chart, C, theta0, cfg.epsilon)
    rows = parallel_map(
        systole_row,
        [(x, cfg.epsilon, cfg.enumeration, box) for x in points],
        cfg.n_jobs, progress
    )
    frame = pd.DataFrame(rows)
    collector.add_csv('systole.csv', frame)
    collector.add_json('systole.json', {
        'epsilon': cfg.epsilon,
        'n_points': len(rows),
        'n_in_truncated': int(frame['in_truncated'].sum()),
        'min_systole': float(frame['systole'].min()),
    })
    return True


def run_flow(
    cfg: RunConfig, collector: ArtifactCollector, progress: Callable
) -> bool:
    x0 = _sample_points(cfg, cfg.rng(), 1)[0]
    trajectory = flow(x0, cfg.flow)
    collector.add_csv('trajectory.csv', trajectory.to_frame())
    summary = trajectory.summary()
    summary['config'] = cfg.flow.to_json()
    collector.add_json('flow.json', summary)
    return bool(
        summary['monotonicity_violation'] <= MONOTONICITY_TOL
        and (
            trajectory.times[-1] < cfg.epsilon
            or summary['end']['in_truncated']
        )
    )


def run_retract(
    cfg: RunConfig, collector: ArtifactCollector, progress: Callable
) -> bool:
    points = _sample_points(cfg, cfg.rng(), 50)
    rows = retraction_batch(points, cfg.flow, cfg.n_jobs, progress)
    frame = pd.DataFrame(rows)
    collector.add_csv('retract.csv', frame)
    collector.add_json('retract.json', {
        'epsilon': cfg.epsilon,
        'n_points': len(rows),
        'n_passed': int(frame['passed'].sum()),
        'min_end_systole': float(frame['systole_end'].min()),
        'max_monotonicity_violation': float(
            frame['monotonicity_violation'].max()
        ),
    })
    return bool(frame['passed'].all())


def gram_report(x: FNPoint, cfg: FlowConfig) -> Dict[str, Any]:
    report = field_diagnostics(
        x, cfg.epsilon, cfg.mode, cfg.metric, cfg.enumeration
    )
    S = short_set(x, 3*cfg.epsilon, cfg.enumeration)
    if not S.is_empty:
        report['root_length_gram'] = root_length_gram(
            x, S, cfg.metric
        ).tolist()
    return report


def run_gram(
    cfg: RunConfig, collector: ArtifactCollector, progress: Callable
) -> bool:
    points = _sample_points(cfg, cfg.rng(), 10)
    reports = parallel_map(
        gram_report, [(x, cfg.flow) for x in points], cfg.n_jobs, progress
    )
    collector.add_json('gram.json', {
        'metric': cfg.flow.metric.to_json(),
        'points': reports,
    })
    return all(
        report['derivative_error'] <= DERIVATIVE_TOL
        and report['residual'] <= RESIDUAL_TOL
        for report in reports
    )


def _random_twist(
    chart: Chart, rng: np.random.Generator
) -> MappingClass:
    index = int(rng.integers(chart.n_curves))
    count = int(rng.choice([-2, -1, 1, 2]))
    return MappingClass.twist(index, count, chart)


def run_equivariance(
    cfg: RunConfig, collector: ArtifactCollector, progress: Callable
) -> bool:
    rng = cfg.rng()
    points = _sample_points(cfg, rng, 20)
    if 'twists' in cfg.params:
        fixed = MappingClass(
            tuple(tuple(pair) for pair in cfg.params['twists']), cfg.chart
        )
        classes = [fixed for _ in points]
    else:
        classes = [_random_twist(cfg.chart, rng) for _ in points]
    reports = parallel_map(
        equivariance_check,
        [(mc, x, cfg.flow) for mc, x in zip(classes, points)],
        cfg.n_jobs, progress
    )
    loci = []
    for name in cfg.params.get('loci', sorted(SYMMETRIC_LOCI)):
        x0, relations = locus_point(name)
        report = symmetric_locus_check(x0, relations, cfg.flow).to_json()
        report['name'] = name
        loci.append(report)
    collector.add_json('equivariance.json', {
        'checks': [report.to_json() for report in reports],
        'loci': loci,
        'max_error': max(
            (report.error for report in reports), default=0.0
        ),
    })
    return (
        all(report.passed for report in reports)
        and all(report['passed'] for report in loci)
    )


def run_continuity_demo(
    cfg: RunConfig, collector: ArtifactCollector, progress: Callable
) -> bool:
    keys = (
        'n_calibration', 'n_pairs', 'n_straddle', 'straddle_offset',
        'pair_distance', 'safety'
    )
    options = {key: cfg.params[key] for key in keys if key in cfg.params}
    report = continuity_demo(cfg.flow, cfg.rng(), cfg.chart, **options)
    collector.add_json('continuity.json', report.to_json())
    return report.passed


def run_cover_check(
    cfg: RunConfig, collector: ArtifactCollector, progress: Callable
) -> bool:
    boxes = [tuple(box) for box in cfg.params.get('boxes', DEFAULT_BOXES)]
    length_range = tuple(cfg.params.get('length_range', (None, None)))
    report = cover_check(
        boxes, cfg.epsilon, cfg.rng(),
        n_samples=int(cfg.params.get('n_points', 200)),
        length_range=length_range,
        twist_range=float(cfg.params.get('twist_range', 10.0)),
        enumeration=cfg.enumeration,
    )
    collector.add_json('cover.json', report.to_json())
    return report.passed


COMMAND_RUNNERS: Dict[str, Callable] = {
    'systole': run_systole,
    'flow': run_flow,
    'retract': run_retract,
    'gram': run_gram,
    'equivariance': run_equivariance,
    'continuity-demo': run_continuity_demo,
    'cover-check': run_cover_check,
}


def _identity_progress(x, total: int = 0):
    return x


def dispatch(
    command: str,
    cfg: RunConfig,
    progress: Optional[Callable] = None
) -> int:
    """Run a command and write its artifacts.

    Returns
    -------
    status : int
        0 on success, 3 after a numerical failure (error.json is written)
        and 4 when a property check failed.
    """
    if command not in COMMAND_RUNNERS:
        raise SchemaError(f'Unknown command {command!r}')
    if progress is None:
        progress = _identity_progress
    collector = ArtifactCollector(cfg.output_dir, cfg.config_hash)
    logger.info(
        'Running %s on %s with epsilon=%g, seed=%d',
        command, cfg.chart.surface.label, cfg.epsilon, cfg.seed
    )
    try:
        passed = COMMAND_RUNNERS[command](cfg, collector, progress)
    except NumericalError as error:
        logger.error('%s failed: %s', command, error)
        collector.write_error(error)
        return EXIT_NUMERICAL
    collector.write()
    if not passed:
        logger.warning('%s reported a failed property check', command)
        return EXIT_PROPERTY
    return EXIT_OK

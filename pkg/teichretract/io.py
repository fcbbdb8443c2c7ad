"""
Writing artifacts of a command to its output directory.
"""
import json
import logging
import os
from typing import Any, Dict, List, Tuple
import pandas as pd
import teichretract
from .utils import NumpyEncoder, sizeof_fmt

logger = logging.getLogger(__name__)


class ArtifactCollector:
    """Collects the JSON and CSV outputs of one command.

    Artifacts are held in memory and written by write() in the order they
    were added. Every JSON artifact records the config hash and package
    version, and every CSV starts with a '# config_hash=' comment line.
    """

    def __init__(self, output_dir: str, config_hash: str):
        self.output_dir = output_dir
        self.config_hash = config_hash
        self._artifacts: List[Tuple[str, str, Any]] = []

    def __len__(self):
        return len(self._artifacts)

    @property
    def names(self) -> List[str]:
        return [name for _, name, _ in self._artifacts]

    def _check_name(self, name: str):
        if name in self.names:
            raise ValueError(f'Artifact {name} already collected')

    def add_json(self, name: str, data: Dict[str, Any]):
        self._check_name(name)
        self._artifacts.append(('json', name, data))

    def add_csv(self, name: str, frame: pd.DataFrame):
        self._check_name(name)
        self._artifacts.append(('csv', name, frame))

    def _stamp(self, data: Dict[str, Any]) -> Dict[str, Any]:
        return {
            'config_hash': self.config_hash,
            'version': teichretract.__version__,
            **data,
        }

    def write(self) -> List[str]:
        """Write every artifact and return the paths in write order."""
        os.makedirs(self.output_dir, exist_ok=True)
        paths = []
        for kind, name, content in self._artifacts:
            path = os.path.join(self.output_dir, name)
            if kind == 'json':
                with open(path, 'w') as f:
                    json.dump(
                        self._stamp(content), f, cls=NumpyEncoder, indent=2,
                        sort_keys=True
                    )
            else:
                with open(path, 'w', newline='') as f:
                    f.write(f'# config_hash={self.config_hash}\n')
                    content.to_csv(f, index=False, float_format='%.17g')
            logger.info(
                'Wrote %s (%s)', path, sizeof_fmt(os.path.getsize(path))
            )
            paths.append(path)
        self._artifacts = []
        return paths

    def write_error(self, error: Exception) -> str:
        """Write error.json describing a failure."""
        os.makedirs(self.output_dir, exist_ok=True)
        path = os.path.join(self.output_dir, 'error.json')
        with open(path, 'w') as f:
            json.dump(self._stamp({
                'error': type(error).__name__,
                'message': str(error),
            }), f, cls=NumpyEncoder, indent=2, sort_keys=True)
        return path


def read_csv(path: str) -> pd.DataFrame:
    """Read a CSV artifact, skipping the config hash line."""
    return pd.read_csv(path, comment='#', float_precision='round_trip')


def read_config_hash(path: str) -> str:
    """Config hash recorded in a CSV or JSON artifact."""
    with open(path) as f:
        if path.endswith('.json'):
            return json.load(f)['config_hash']
        first = f.readline().strip()
    prefix = '# config_hash='
    if not first.startswith(prefix):
        raise ValueError(f'No config hash in {path}')
    return first[len(prefix):]

from importlib import reload
import pytest
import os
import teichretract
from teichretract.config import (
    TEICHRETRACT_DIR, SCHEMA_FILE, SURFACE_TYPES, COMMANDS, FIELD_MODES
)
from teichretract.app import COMMAND_RUNNERS


def test_output_dir_exists():
    assert os.path.exists(TEICHRETRACT_DIR)


def test_error_raised_if_teichretract_dir_does_not_exist(monkeypatch):
    monkeypatch.setenv('TEICHRETRACT_DIR', '/fake/path/here/')
    with pytest.raises(FileNotFoundError):
        reload(teichretract.config)
    monkeypatch.undo()
    reload(teichretract.config)


def test_schema_file_exists():
    assert os.path.isfile(SCHEMA_FILE)


def test_registries():
    assert set(SURFACE_TYPES) == {'(1,1)', '(0,4)', '(1,2)', '(2,0)'}
    assert set(COMMANDS) == set(COMMAND_RUNNERS)
    assert set(FIELD_MODES) == {'BLENDED', 'NAIVE', 'ROOT_LENGTH'}

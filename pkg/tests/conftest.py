"""Shared fixtures."""

import shutil
import sys
import tempfile
from pathlib import Path

import pytest

from py_bwcodes.graph import AdjacencyGraph

from .helpers import complete_graph


@pytest.fixture(autouse=True)
def reset_loggers():
    """Reset logger and configuration singletons between tests."""
    from loguru import logger as loguru_logger

    import py_bwcodes.config

    logger_module = sys.modules["py_bwcodes.logger"]

    try:
        loguru_logger.remove()
    except ValueError:
        pass

    logger_module._default_logger = None
    logger_module._handler_ids.clear()
    py_bwcodes.config._config_manager = py_bwcodes.config.ConfigManager()

    yield

    try:
        loguru_logger.remove()
    except ValueError:
        pass

    sys.stdout.flush()
    sys.stderr.flush()

    logger_module._default_logger = None
    logger_module._handler_ids.clear()
    py_bwcodes.config._config_manager = py_bwcodes.config.ConfigManager()


@pytest.fixture
def temp_dir():
    """Create temporary directory for testing."""
    temp = tempfile.mkdtemp()
    yield Path(temp)
    shutil.rmtree(temp)


@pytest.fixture
def triangle():
    return complete_graph(3)


@pytest.fixture
def path3():
    return AdjacencyGraph.from_edges(3, [(0, 1), (1, 2)])

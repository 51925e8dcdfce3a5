"""
Shared pytest setup: project root on sys.path and the experiment log
redirected away from logs/experiment_data.json.
"""
import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.utils import logger  # noqa: E402


@pytest.fixture(scope="session", autouse=True)
def isolated_experiment_log(tmp_path_factory):
    """Session-wide log file (session scope keeps hypothesis health checks quiet)"""
    log_path = str(tmp_path_factory.mktemp("logs") / "experiment_data.json")
    previous_file = logger.LOG_FILE
    previous_env = os.environ.get("QSOLVE_LOG_FILE")
    logger.set_log_file(log_path)
    os.environ["QSOLVE_LOG_FILE"] = log_path
    yield log_path
    logger.set_log_file(previous_file)
    if previous_env is None:
        os.environ.pop("QSOLVE_LOG_FILE", None)
    else:
        os.environ["QSOLVE_LOG_FILE"] = previous_env

"""
Configuration loaded from the environment (.env supported through python-dotenv).
"""

import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

ENV_PREFIX = "QSOLVE_"


class SolverSettings(BaseModel):
    """Tolerances and paths shared by the solvers and the CLI."""

    solver_tol: float = Field(default=1e-9, gt=0)
    identity_tol: float = Field(default=1e-12, gt=0)
    degeneracy: float = Field(default=1e-10, gt=0)
    pivot: float = Field(default=1e-12, gt=0)
    cond_max: float = Field(default=1e6, gt=1)
    log_file: str = "logs/experiment_data.json"

    @field_validator("log_file")
    @classmethod
    def _log_file_not_blank(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("log_file must not be empty")
        return value


def load_settings(env_file: Optional[str] = None) -> SolverSettings:
    """
    Read QSOLVE_* variables (after loading .env) into SolverSettings.

    Raises:
        pydantic.ValidationError: If a value does not parse or is out of range
    """
    if env_file:
        load_dotenv(env_file)
    else:
        load_dotenv()
    values = {}
    for name in SolverSettings.model_fields:
        raw = os.getenv(ENV_PREFIX + name.upper())
        if raw is not None and raw != "":
            values[name] = raw
    return SolverSettings(**values)


__all__ = ["SolverSettings", "load_settings", "ValidationError"]

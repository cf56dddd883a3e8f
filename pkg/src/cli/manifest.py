# cli/manifest.py

from importlib.metadata import PackageNotFoundError, version
from typing import Any, Dict, List

from pydantic import BaseModel, Field

from config.system_config import settings

DISTRIBUTION = "saw_modulator"


def tool_version() -> str:
    try:
        return version(DISTRIBUTION)
    except PackageNotFoundError:
        return "0+unknown"


class RunManifest(BaseModel):
    """What produced a result document, embedded in it under `manifest`."""

    command: str = Field(..., description="Subcommand name.")
    config_paths: List[str] = Field(
        default_factory=list, description="Input files read by the run."
    )
    overrides: Dict[str, Any] = Field(
        default_factory=dict, description="Parameters given on the command line."
    )
    tool_version: str = Field(default_factory=tool_version)
    timestamp: str = Field(
        default_factory=lambda: settings.get_current_time().isoformat()
    )

"""Input/Output utilities for the q-Schur engine.

This module provides common utilities for:
- Canonical JSON artifacts (tables, maps, reports)
- Run logging and timestamps
"""

import json
import logging
import time
from pathlib import Path
from typing import Any, Dict, Optional, Union

from .config import config

logger = logging.getLogger(__name__)


def dump_json(data: Any) -> str:
    """Serialize ``data`` canonically: sorted keys, fixed indent, trailing newline.

    Identical inputs give byte-identical text.
    """
    return json.dumps(data, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def save_json(data: Any, filepath: Union[str, Path]) -> Path:
    """Save data as canonical UTF-8 JSON.

    Args:
        data: JSON-serializable object
        filepath: Path to output file

    Returns:
        Path written
    """
    filepath = Path(filepath)
    filepath.parent.mkdir(parents=True, exist_ok=True)
    with open(filepath, "w", encoding="utf-8") as f:
        f.write(dump_json(data))
    return filepath


def load_json(filepath: Union[str, Path]) -> Optional[Any]:
    """Load a JSON artifact, returning None when the file does not exist."""
    filepath = Path(filepath)
    if not filepath.exists():
        return None
    with open(filepath, "r", encoding="utf-8") as f:
        return json.load(f)


def log_run(
    run_logger: logging.Logger,
    command: str,
    params: Dict[str, Any],
    outcome: Dict[str, Any],
) -> None:
    """Log a command invocation with its parameters and outcome."""
    log_data = {"command": command, "params": params, "outcome": outcome}

    if config.log_format.lower() == "json":
        run_logger.info(json.dumps(log_data, sort_keys=True))
    else:
        run_logger.info(f"{command} (params: {params}, outcome: {outcome})")


def get_timestamp() -> str:
    """Timestamp for log lines; never written into artifacts."""
    return time.strftime("%Y%m%d_%H%M%S")

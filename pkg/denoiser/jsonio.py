"""
JSON persistence helpers.

Artifacts are written with sorted keys and two-space indentation so that
identical runs produce byte-identical files.
"""

from pathlib import Path
from typing import Any, TypeVar

import orjson
from pydantic import BaseModel

from denoiser.errors import IoFailureError

ModelT = TypeVar("ModelT", bound=BaseModel)

_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY


def dumps(data: Any) -> bytes:
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="json", by_alias=True)
    return orjson.dumps(data, option=_OPTIONS) + b"\n"


def write_json(path: str | Path, data: Any) -> Path:
    """Write a dict or pydantic model."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(dumps(data))
    except OSError as e:
        raise IoFailureError(f"Cannot write {path}: {e}") from e
    return path


def read_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        return orjson.loads(path.read_bytes())
    except FileNotFoundError as e:
        raise IoFailureError(f"File not found: {path}") from e
    except OSError as e:
        raise IoFailureError(f"Cannot read {path}: {e}") from e
    except orjson.JSONDecodeError as e:
        raise IoFailureError(f"Invalid JSON in {path}: {e}") from e


def read_model(path: str | Path, model: type[ModelT]) -> ModelT:
    """Read and validate a pydantic model."""
    return model.model_validate(read_json(path))

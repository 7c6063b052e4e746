"""Shared loader for values given either as a JSON file path or inline JSON."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InputError

__all__ = ["read_json_source"]


def read_json_source(source, what: str):
    """Parse ``source`` as JSON: inline if it looks like a document, else a file path."""
    text = str(source)
    if not text.lstrip().startswith(("{", "[")):
        path = Path(text)
        if not path.exists():
            raise InputError(f"{what} file not found: {path}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid {what} JSON: {exc}") from exc

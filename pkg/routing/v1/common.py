from __future__ import annotations

import json
from argparse import ArgumentParser
from pathlib import Path

from pydantic import BaseModel


def to_json(model: BaseModel) -> str:
    return json.dumps(model.model_dump(mode="json", by_alias=True), sort_keys=True, indent=2) + "\n"


def emit(model: BaseModel, text: str, json_output: bool, out: Path | None = None) -> None:
    """Print `text` (or the JSON form) and mirror the JSON to `out` when given."""
    payload = to_json(model)
    print(payload if json_output else text, end="" if json_output else "\n")
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(payload, encoding="utf-8")


def add_common_arguments(parser: ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="random seed (64-bit)")
    parser.add_argument("--json", dest="json_output", action="store_true", help="emit JSON")
    parser.add_argument("--data-dir", type=Path, default=None, help="catalog and generator files")

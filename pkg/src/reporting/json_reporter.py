from .reporter import Reporter
from typing import Dict, Any
import json
import os


class JsonReporter(Reporter):
    """Writes recorded rows as one indented JSON list."""

    def __init__(self, path: str):
        os.makedirs(os.path.dirname(path) if os.path.dirname(path) else '.', exist_ok=True)
        self.path = path
        self._rows = []

    def record(self, row: Dict[str, Any]) -> None:
        self._rows.append(dict(row))

    def finalize(self) -> None:
        with open(self.path, "w", encoding="utf-8") as fh:
            json.dump(self._rows, fh, indent=2)
            fh.write("\n")

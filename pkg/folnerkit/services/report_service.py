"""Report writing: report.json, curves.csv and failure.json under the output directory."""

import csv
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import structlog
from pydantic import BaseModel

from folnerkit.core.exceptions import FolnerKitError
from folnerkit.version import VERSION

logger = structlog.get_logger()

REPORT_FILE = "report.json"
CURVES_FILE = "curves.csv"
FAILURE_FILE = "failure.json"


def _clean(value: Any) -> Any:
    """JSON-safe copy: non-finite floats become strings."""
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def render_json(payload: Dict[str, Any]) -> str:
    """Sorted keys, fixed indentation, trailing newline."""
    return json.dumps(_clean(payload), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


class ReportService:
    """Write deterministic reports for one run."""

    def __init__(self, out_dir: Union[str, Path], config_hash: str = ""):
        self.out_dir = Path(out_dir)
        self.config_hash = config_hash

    def _envelope(self, operation: str, body: Dict[str, Any]) -> Dict[str, Any]:
        return {
            "operation": operation,
            "version": VERSION,
            "config_hash": self.config_hash,
            "result": body,
        }

    def write_report(
        self, operation: str, result: Union[BaseModel, Dict[str, Any]], passed: bool = True
    ) -> Path:
        """Write report.json.

        Args:
            operation: subcommand name
            result: pydantic record or plain mapping
            passed: whether every internal certificate passed

        Returns:
            Path of the written file
        """
        body = result.model_dump(mode="json") if isinstance(result, BaseModel) else result
        payload = self._envelope(operation, body)
        payload["passed"] = passed
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / REPORT_FILE
        path.write_text(render_json(payload), encoding="utf-8")
        logger.info("Report written", path=str(path), operation=operation)
        return path

    def write_curves(self, header: Sequence[str], rows: List[Sequence[Any]]) -> Optional[Path]:
        """Write curves.csv; nothing is written for an empty table."""
        if not rows:
            return None
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / CURVES_FILE
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow(["" if v is None else v for v in row])
        logger.info("Curves written", path=str(path), rows=len(rows))
        return path

    def write_failure(self, operation: str, error: FolnerKitError) -> Path:
        """Machine-readable failure record with the exception's stage and exit code."""
        payload = self._envelope(operation, error.to_record())
        payload["passed"] = False
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / FAILURE_FILE
        path.write_text(render_json(payload), encoding="utf-8")
        logger.error("Run failed", operation=operation, stage=error.stage, error=str(error))
        return path

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from mdlab.lib.api import DualityReport

q = Fraction(1, 2)
Q = Fraction(1, 3)

# configurations of the worked open example on sites 0..3
ETA = (-1, -1, 1, 1)
ETA_HAT = (1, -1, 1, 1)
XI = (1, -1, 0, 1)
XI_HAT = (-1, -1, 0, 1)


def json_lines(output: str) -> list[dict[str, Any]]:
    """JSON objects among the output lines, human summaries skipped."""
    return [json.loads(line) for line in output.splitlines() if line.startswith("{")]


def mock_report(
    identity: str = "markov_duality",
    passed: bool = True,
    max_residual: Fraction = Fraction(0),
    witness: tuple[int, int] | None = None,
    seconds: float = 0.0,
    params: dict[str, str] | None = None,
) -> DualityReport:
    return DualityReport(
        identity=identity,
        params=params or {},
        passed=passed,
        max_residual=max_residual,
        witness=witness,
        seconds=seconds,
    )

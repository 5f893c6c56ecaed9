"""
Some short useful functions being used in the CLI tools.

They return plain JSON-ready dicts, rationals rendered as "p/q" strings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .lib.api import Config, DualityReport, ModelSpec
from .lib.duality import functional_for
from .lib.fusion import aux_process_distribution, fused_bond_probability
from .lib.generators import braided_rate
from .lib.qnum import format_rational
from .lib.report_store import ReportStore
from .lib.sim import estimate_duality_gap, z_score
from .lib.states import enumerate_states, format_config
from .lib.verify import SuiteParams, run_suite


def verify_suite(
    suite: str,
    params: SuiteParams,
    reports_file: str | None = None,
    progress: bool = False,
) -> list[DualityReport]:
    """Run a suite, appending the reports to `reports_file` when given."""
    reports = run_suite(suite, params, progress=progress)
    if reports_file:
        ReportStore(reports_file).write(reports)
    return reports


def bond_distribution(
    m: int, k1: int, k2: int, q: Fraction, lattice: bool = False
) -> list[dict[str, Any]]:
    """Law of the new bond state from the closed form, the fused matrix and the auxiliary process.

    By default (k1, k2) are read as the two blocks of the fused bond matrix.
    With `lattice` they are the occupancies (eta_x, eta_{x+1}) of a lattice bond,
    which is the same bond read from the other end.
    """
    # the formulas are written for the lattice bond
    left, right = (k1, k2) if lattice else (k2, k1)
    aux = aux_process_distribution(m, left, right, q)
    moves = []
    for l2 in range(m + 1):
        l1 = left + right - l2
        if not 0 <= l1 <= m:
            continue
        closed = braided_rate(m, left, right, l2, q)
        fused = fused_bond_probability(m, left, right, l2, q)
        auxiliary = aux.get(l2, Fraction(0))
        if not (closed or fused or auxiliary):
            continue
        target = (l1, l2) if lattice else (l2, l1)
        moves.append(
            {
                "to": list(target),
                "closed_form": format_rational(closed),
                "fusion_oracle": format_rational(fused),
                "aux_process": format_rational(auxiliary),
                "agree": closed == fused == auxiliary,
            }
        )
    return moves


def evaluate_duality(
    spec: ModelSpec, eta: Config, xi: Config, q: Fraction, Q: Fraction | None = None
) -> Fraction:
    space = enumerate_states(spec)
    space.index_of(eta)
    space.index_of(xi)
    return functional_for(spec, q, Q)(eta, xi)


def simulate_gap(
    spec: ModelSpec,
    q: Fraction,
    Q: Fraction | None,
    x: Config,
    y: Config,
    t: Fraction,
    n_traj: int,
    seed: int,
    processes: int = 1,
) -> dict[str, Any]:
    side1, side2 = estimate_duality_gap(spec, q, Q, x, y, float(t), n_traj, seed, processes)
    return {
        "x": format_config(x),
        "y": format_config(y),
        "side1": side1.to_json(),
        "side2": side2.to_json(),
        "z": z_score(side1, side2),
    }

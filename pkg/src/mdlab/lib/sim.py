"""
Continuous-time Monte-Carlo for the three particle systems.

The stochastic form of the duality identity,

    E_x[D(X(t), y)] == E_y[D(x, Y(t))],

is estimated by independent batches of trajectories, one batch per side.
Rates are converted to floats once per run; everything algebraic stays
exact elsewhere in the library.

Every trajectory draws from its own stream, spawned from the run seed,
so results do not depend on how trajectories are distributed over workers.

>>> gen = build_msasep(L=2, n=1, q=Fraction(1, 2))
>>> run_trajectory(gen, (1, 0), t_max=0.0, seed=1).final
(1, 0)
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool
from typing import Callable, Iterator, Union

import numpy as np

from .api import Config, McEstimate, ModelSpec, Trajectory
from .common import RationalMatrix
from .duality import functional_for
from .errors import ParameterError, TruncationError
from .generators import SparseGenerator, build_generator
from .states import StateSpace

logger = logging.getLogger(__name__)

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator, None]


class FloatGenerator:
    """Jump chain of a generator in double precision.

    For every state the total exit rate, the reachable targets
    and the cumulative jump probabilities towards them.
    """

    def __init__(self, generator: SparseGenerator) -> None:
        self.space = generator.space
        size = len(generator)
        self.exit_rates = np.zeros(size)
        self.targets: list[np.ndarray] = []
        self.cumulative: list[np.ndarray] = []
        for i in range(size):
            row = sorted((j, v) for j, v in generator.matrix.row(i).items() if j != i)
            rates = np.array([float(v) for _, v in row])
            total = rates.sum() if len(rates) else 0.0
            self.exit_rates[i] = total
            self.targets.append(np.array([j for j, _ in row], dtype=np.int64))
            self.cumulative.append(np.cumsum(rates) / total if total else rates)

    def __len__(self) -> int:
        return len(self.exit_rates)

    def walk(
        self, start: int, t_max: float, rng: np.random.Generator
    ) -> Iterator[tuple[float, int]]:
        """Jump times and entered states until the horizon or an absorbing state."""
        now, state = 0.0, start
        while True:
            rate = self.exit_rates[state]
            if rate <= 0.0:
                return
            now += rng.exponential(1.0 / rate)
            if now > t_max:
                return
            position = int(np.searchsorted(self.cumulative[state], rng.random(), side="right"))
            # float rounding may leave the last cumulative value just below 1
            state = int(self.targets[state][min(position, len(self.targets[state]) - 1)])
            yield now, state

    def final_state(self, start: int, t_max: float, rng: np.random.Generator) -> int:
        state = start
        for _, state in self.walk(start, t_max, rng):
            pass
        return state


def _as_rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _check_horizon(t_max: float) -> None:
    if t_max < 0 or math.isnan(t_max):
        raise ParameterError(f"Time horizon must be non-negative, got {t_max}")


def run_trajectory(
    generator: SparseGenerator | FloatGenerator,
    start: Config,
    t_max: float,
    seed: SeedLike = None,
) -> Trajectory:
    """One path of the chain started at `start`, observed up to `t_max`.

    Holding times are exponential with the exit rate, the next state is
    chosen proportionally to the off-diagonal rates. An absorbing state
    ends the path early.
    """
    _check_horizon(t_max)
    chain = generator if isinstance(generator, FloatGenerator) else FloatGenerator(generator)
    index = chain.space.index_of(start)
    events = [
        (moment, chain.space.config_of(state))
        for moment, state in chain.walk(index, t_max, _as_rng(seed))
    ]
    return Trajectory(start=tuple(start), t_max=t_max, events=events)


@dataclass
class _Batch:
    """A block of trajectories, picklable for worker processes."""

    chain: FloatGenerator
    observable: np.ndarray  # value of the observable per final state
    start: int
    t_max: float
    seeds: list[np.random.SeedSequence]

    def run(self) -> np.ndarray:
        values = np.empty(len(self.seeds))
        for k, seed in enumerate(self.seeds):
            rng = np.random.default_rng(seed)
            values[k] = self.observable[self.chain.final_state(self.start, self.t_max, rng)]
        return values


def _run_batch(batch: _Batch) -> np.ndarray:
    return batch.run()


def _summarize(values: np.ndarray, seed: int) -> McEstimate:
    count = len(values)
    se = float(values.std(ddof=1) / math.sqrt(count)) if count > 1 else 0.0
    return McEstimate(mean=float(values.mean()), se=se, count=count, seed=seed)


def estimate_expectation(
    chain: FloatGenerator,
    observable: np.ndarray,
    start: Config,
    t_max: float,
    n_traj: int,
    seed: int | np.random.SeedSequence,
    processes: int = 1,
    batch_size: int = 10_000,
) -> McEstimate:
    """Monte-Carlo estimate of E_start[observable(X(t_max))].

    Trajectory `k` always uses the `k`-th spawned stream and values are
    concatenated in trajectory order, so the estimate is the same for
    any number of processes.
    """
    _check_horizon(t_max)
    if n_traj < 1:
        raise ParameterError(f"Need at least one trajectory, got {n_traj}")
    sequence = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    streams = sequence.spawn(n_traj)
    index = chain.space.index_of(start)
    batches = [
        _Batch(chain, observable, index, t_max, streams[k : k + batch_size])
        for k in range(0, n_traj, batch_size)
    ]
    if processes > 1 and len(batches) > 1:
        with Pool(processes) as pool:
            blocks = pool.map(_run_batch, batches)
    else:
        blocks = [batch.run() for batch in batches]
    entropy = sequence.entropy if isinstance(sequence.entropy, int) else 0
    return _summarize(np.concatenate(blocks), entropy)


def observable_vectors(
    space: StateSpace, functional: Callable[[Config, Config], Fraction], x: Config, y: Config
) -> tuple[np.ndarray, np.ndarray]:
    """z -> D(z, y) and z -> D(x, z) as float arrays over the state space."""
    first = np.array([float(functional(z, y)) for z in space])
    second = np.array([float(functional(x, z)) for z in space])
    return first, second


def estimate_duality_gap(
    spec: ModelSpec,
    q: Fraction,
    Q: Fraction | None,
    x: Config,
    y: Config,
    t: float,
    n_traj: int,
    seed: int,
    processes: int = 1,
) -> tuple[McEstimate, McEstimate]:
    """Both sides of the duality identity from independent trajectory batches.

    The first side runs the chain from `x` and evaluates D(X(t), y),
    the second from `y` evaluating D(x, Y(t)).
    """
    started = time.perf_counter()
    generator = build_generator(spec, q, Q)
    space = generator.space
    space.index_of(x)
    space.index_of(y)
    chain = FloatGenerator(generator)
    first, second = observable_vectors(space, functional_for(spec, q, Q), x, y)
    seed_first, seed_second = np.random.SeedSequence(seed).spawn(2)
    side1 = estimate_expectation(chain, first, x, t, n_traj, seed_first, processes)
    side2 = estimate_expectation(chain, second, y, t, n_traj, seed_second, processes)
    side1.seed = side2.seed = seed
    logger.info(
        "Duality gap for %s at t=%s: %.6g vs %.6g (%d trajectories each, %.2f s)",
        spec.describe(),
        t,
        side1.mean,
        side2.mean,
        n_traj,
        time.perf_counter() - started,
    )
    return side1, side2


def z_score(first: McEstimate, second: McEstimate) -> float:
    """(mean1 - mean2) / sqrt(se1^2 + se2^2)

    Zero for two exact and equal means, infinite for two exact and different ones.
    """
    difference = first.mean - second.mean
    spread = math.hypot(first.se, second.se)
    if spread == 0.0:
        return 0.0 if difference == 0.0 else math.copysign(math.inf, difference)
    return difference / spread


@dataclass
class ExactExpectation:
    value: float
    bound: float  # bound on the truncation remainder
    order: int

    def agrees_with(self, estimate: McEstimate, n_se: float = 4.0) -> bool:
        return abs(estimate.mean - self.value) <= n_se * estimate.se + self.bound


def _as_time(t: Fraction | float | int) -> Fraction:
    if isinstance(t, float):
        # "0.1" rather than the binary expansion of 0.1
        return Fraction(repr(t))
    return Fraction(t)


def infinity_norm(matrix: RationalMatrix) -> Fraction:
    """Largest absolute row sum."""
    return max(
        (sum((abs(v) for v in row.values()), Fraction(0)) for row in matrix.rows.values()),
        default=Fraction(0),
    )


def exact_expectation(
    generator: SparseGenerator,
    duality: RationalMatrix,
    x: Config,
    y: Config,
    t: Fraction | float | int,
    truncation_order: int = 60,
    tolerance: float = 1e-9,
    dual_side: bool = False,
) -> ExactExpectation:
    """(e^{tL} D)(x, y) by the series sum_{k <= K} t^k/k! (L^k D)(x, y).

    With `dual_side` the other side, (D e^{tL^T})(x, y), is summed instead.
    Terms are exact, only the result is rounded. The remainder is bounded by
    (|L| t)^{K+1} / (K+1)! * e^{|L| t} * max|D|, with |L| the largest
    absolute row sum; above `tolerance` a `TruncationError` is raised.
    """
    if truncation_order < 0:
        raise ParameterError(f"Truncation order must be non-negative, got {truncation_order}")
    horizon = _as_time(t)
    if horizon < 0:
        raise ParameterError(f"Time must be non-negative, got {t}")
    space = generator.space
    i, j = space.index_of(x), space.index_of(y)
    if dual_side:
        column = {k: v for k, v in duality.row(i).items()}
        target = j
    else:
        column = {k: row[j] for k, row in duality.rows.items() if j in row}
        target = i

    norm = infinity_norm(generator.matrix)
    scale = float(norm * horizon)
    largest = float(max((abs(v) for v in column.values()), default=Fraction(0)))
    K = truncation_order
    bound = math.exp((K + 1) * math.log(scale) - math.lgamma(K + 2) + scale) * largest if scale else 0.0
    if bound > tolerance:
        raise TruncationError(
            f"Remainder bound {bound:.3g} exceeds {tolerance:.3g} at order {K}, "
            f"raise the order or shorten t={horizon}"
        )

    total = column.get(target, Fraction(0))
    term = column
    coefficient = Fraction(1)
    for k in range(1, K + 1):
        term = generator.matrix.apply(term)
        if not term:
            break
        coefficient *= horizon / k
        total += coefficient * term.get(target, Fraction(0))
    return ExactExpectation(value=float(total), bound=bound, order=K)

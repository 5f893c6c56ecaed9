"""
Defining all the interfaces between components.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Protocol, Sequence

from typing_extensions import Self

from .qnum import format_rational, parse_rational

# A configuration is a tuple of labels (or occupancies), one per site
Config = tuple[int, ...]


class Model(str, Enum):
    MSASEP = "msasep"
    OPEN = "open"
    BRAIDED = "braided"


@dataclass(frozen=True)
class ModelSpec:
    """Which lattice and which labels a state space lives on."""

    model: Model
    L: int
    species: int  # n for msasep, r for open, m for braided

    @property
    def origin(self) -> int:
        """Site number of the first entry of a configuration."""
        return 0 if self.model == Model.OPEN else 1

    @property
    def sites(self) -> range:
        return range(self.origin, self.L + 1)

    @property
    def labels(self) -> range:
        if self.model == Model.OPEN:
            return range(-self.species, self.species + 1)
        return range(0, self.species + 1)

    @property
    def size(self) -> int:
        return len(self.labels) ** len(self.sites)

    def describe(self) -> dict[str, str]:
        species_key = {Model.MSASEP: "n", Model.OPEN: "r", Model.BRAIDED: "m"}
        return {
            "model": self.model.value,
            "L": str(self.L),
            species_key[self.model]: str(self.species),
        }


@dataclass
class DualityReport:
    """Outcome of one exact check."""

    identity: str  # e.g. "markov_duality", "detailed_balance"
    params: dict[str, str]
    passed: bool
    max_residual: Fraction = Fraction(0)
    witness: tuple[int, int] | None = None  # lexicographically first failure
    seconds: float = 0.0
    detail: str = ""  # free-form note, e.g. the losing convention

    def to_json(self) -> dict[str, Any]:
        return {
            "identity": self.identity,
            "params": dict(self.params),
            "pass": self.passed,
            "max_residual": format_rational(self.max_residual),
            "witness": list(self.witness) if self.witness is not None else None,
            "seconds": round(self.seconds, 6),
            "detail": self.detail,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> Self:
        witness = data.get("witness")
        return cls(
            identity=data["identity"],
            params=dict(data.get("params", {})),
            passed=bool(data["pass"]),
            max_residual=parse_rational(data.get("max_residual", "0")),
            witness=tuple(witness) if witness is not None else None,  # type: ignore
            seconds=float(data.get("seconds", 0.0)),
            detail=data.get("detail", ""),
        )

    def format(self) -> str:
        """Nicely formatting this report"""
        verdict = "PASS" if self.passed else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        line = f"{verdict} {self.identity:<28} {params}"
        if not self.passed:
            line += f" residual={format_rational(self.max_residual)} witness={self.witness}"
        return line


@dataclass
class McEstimate:
    mean: float
    se: float  # sample std-dev / sqrt(count)
    count: int
    seed: int

    def to_json(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class Trajectory:
    start: Config
    t_max: float
    # (jump time, configuration entered at that time), times strictly increasing
    events: list[tuple[float, Config]] = field(default_factory=list)

    @property
    def final(self) -> Config:
        return self.events[-1][1] if self.events else self.start


@dataclass
class RunConfig:
    """Echo block of a CLI run, enough to reproduce it."""

    subcommand: str
    model: str = ""
    L: int | None = None
    species: int | None = None
    q: str = ""
    Q: str = ""
    s: str = ""
    seed: int | None = None
    output: str | None = None
    extra: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {k: v for k, v in asdict(self).items() if v not in (None, "", {})}


class BondRatesAPI(Protocol):
    """Transition probabilities of a single braided bond."""

    m: int
    q: Fraction

    def probability(self, k1: int, k2: int, l2: int) -> Fraction:
        """Probability of (k1, k2) -> (k1 + k2 - l2, l2), diagonal included."""
        ...  # pragma: no cover


class DualityFunctionalAPI(Protocol):
    """Evaluates D(eta, xi) for one model and one parameter set."""

    spec: ModelSpec

    def __call__(self, eta: Config, xi: Config) -> Fraction:
        ...  # pragma: no cover


class ReportSinkAPI(Protocol):
    """Responsible for keeping verification reports."""

    def write(self, reports: Sequence[DualityReport]) -> None:
        """Persist the reports."""
        ...  # pragma: no cover

    def read(self) -> list[DualityReport]:
        """Load all stored reports."""
        ...  # pragma: no cover

"""
Exact verification engines and the suites driving them.

Every check returns a `DualityReport`; a report passes iff its
residual is exactly zero.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from . import appendix, coideal, fusion, hecke
from .api import DualityReport, Model, ModelSpec
from .common import ProgressBar, RationalMatrix
from .duality import (
    DualityMatrix,
    MsasepReading,
    check_block_proportional,
    duality_braided,
    duality_matrix,
    duality_msasep_left,
    duality_open,
    duality_open_from_symmetry,
    markov_residual,
    resolve_msasep_reading,
    tabulate,
)
from .errors import DimensionMismatch, ParameterError
from .generators import (
    RateSource,
    SparseGenerator,
    braided_rate,
    build_braided,
    build_msasep,
    build_open,
)
from .qnum import format_rational, q_binomial_pascal_ok, q_int
from .states import enumerate_states

logger = logging.getLogger(__name__)

SUITES = ("msasep", "open", "braided", "algebra", "coideal", "appendix", "oracles", "all")


def _params(**values: object) -> dict[str, str]:
    return {
        key: format_rational(value) if isinstance(value, Fraction) else str(value)
        for key, value in values.items()
        if value is not None
    }


def report_from_residual(
    identity: str, params: dict[str, str], residual: RationalMatrix, started: float
) -> DualityReport:
    return DualityReport(
        identity=identity,
        params=params,
        passed=residual.is_zero(),
        max_residual=residual.max_abs_entry(),
        witness=residual.first_nonzero(),
        seconds=time.perf_counter() - started,
    )


def report_from_verdict(
    identity: str, params: dict[str, str], passed: bool, started: float, detail: str = ""
) -> DualityReport:
    # boolean checks have no residual matrix, a failure is reported as residual 1
    return DualityReport(
        identity=identity,
        params=params,
        passed=passed,
        max_residual=Fraction(0 if passed else 1),
        seconds=time.perf_counter() - started,
        detail=detail,
    )


def _matrix(operand: SparseGenerator | DualityMatrix | RationalMatrix) -> RationalMatrix:
    if isinstance(operand, RationalMatrix):
        return operand
    return operand.matrix


def check_markov_duality(
    generator: SparseGenerator | RationalMatrix,
    duality: DualityMatrix | RationalMatrix,
    params: dict[str, str] | None = None,
    identity: str = "markov_duality",
) -> DualityReport:
    """L D == D L^T."""
    started = time.perf_counter()
    residual = markov_residual(_matrix(generator), _matrix(duality))
    return report_from_residual(identity, params or {}, residual, started)


def check_detailed_balance(
    generator: SparseGenerator | RationalMatrix,
    measure: Sequence[Fraction],
    params: dict[str, str] | None = None,
    identity: str = "detailed_balance",
) -> DualityReport:
    """pi(x) L(x, y) == pi(y) L(y, x) for every pair."""
    started = time.perf_counter()
    matrix = _matrix(generator)
    if len(measure) != matrix.n_rows:
        raise DimensionMismatch(f"Measure of length {len(measure)} for {matrix.shape}")
    residual = RationalMatrix(matrix.n_rows)
    for i, j, value in matrix.items():
        residual[i, j] = measure[i] * value - measure[j] * matrix[j, i]
    return report_from_residual(identity, params or {}, residual, started)


def check_stationary(
    generator: SparseGenerator | RationalMatrix,
    measure: Sequence[Fraction],
    params: dict[str, str] | None = None,
) -> DualityReport:
    """pi^T L == 0."""
    started = time.perf_counter()
    row = RationalMatrix(1, len(measure), {(0, i): v for i, v in enumerate(measure)})
    residual = row @ _matrix(generator)
    return report_from_residual("stationary_measure", params or {}, residual, started)


def check_commutation(
    a: RationalMatrix,
    b: RationalMatrix,
    params: dict[str, str] | None = None,
    identity: str = "commutation",
) -> DualityReport:
    started = time.perf_counter()
    return report_from_residual(identity, params or {}, hecke.commutator(a, b), started)


def check_equal(
    identity: str, params: dict[str, str], actual: RationalMatrix, expected: RationalMatrix
) -> DualityReport:
    started = time.perf_counter()
    if actual.shape != expected.shape:
        raise DimensionMismatch(f"{identity}: {actual.shape} vs {expected.shape}")
    return report_from_residual(identity, params, actual - expected, started)


def _conjugated(matrix: RationalMatrix, g: Sequence[Fraction]) -> RationalMatrix:
    """G^{-2} M G^2."""
    result = RationalMatrix(matrix.n_rows)
    for i, j, value in matrix.items():
        result[i, j] = value * g[j] ** 2 / g[i] ** 2
    return result


def check_appendix_fixtures(
    q: Fraction, s_values: Sequence[Fraction] = (Fraction(1, 3), Fraction(1, 2))
) -> DualityReport:
    """Rebuild the m = 2 matrices and compare them with the fixed ones.

    The report fails on the first piece that differs and names it in `detail`.
    """
    started = time.perf_counter()
    params = _params(q=q, s=",".join(format_rational(s) for s in s_values))
    identity16 = RationalMatrix.identity(16)
    identity9 = RationalMatrix.identity(9)
    word = fusion.tensor_word_product(2, q)
    expected_bond = appendix.bond_generator_fixture(q)

    pieces: list[tuple[str, RationalMatrix, RationalMatrix]] = [
        ("s_check", hecke.s_check(q), appendix.s_check_fixture(q)),
        ("fused_generator", word - identity16, appendix.fused_generator_fixture(q)),
        ("fusion_map", fusion.fusion_map(2), appendix.fusion_fixture()),
    ]
    for s in s_values:
        fission = fusion.fission_map(2, s)
        pieces.append((f"fission_map[s={format_rational(s)}]", fission, appendix.fission_fixture(s)))
        bond = fission @ (word - identity16) @ fusion.fusion_map(2)
        pieces.append((f"bond_generator[s={format_rational(s)}]", bond, expected_bond))
    pieces.append(
        ("fused_bond_matrix", fusion.fused_bond_matrix(2, q) - identity9, expected_bond)
    )
    pieces.append(
        ("reversibility", expected_bond.T, _conjugated(expected_bond, appendix.g_fixture(q)))
    )

    for name, actual, expected in pieces:
        residual = actual - expected
        if not residual.is_zero():
            report = report_from_residual("appendix_fixtures", params, residual, started)
            report.detail = name
            return report
    return report_from_verdict(
        "appendix_fixtures", params, True, started, detail=f"{len(pieces)} pieces"
    )


@dataclass
class SuiteParams:
    """Parameters of a suite run.

    `L` and `species` pin a single instance; left as None the suite
    walks its default grid, or the larger acceptance grid with `full`.
    """

    q: Fraction = Fraction(1, 2)
    Q: Fraction = Fraction(1, 3)
    L: int | None = None
    species: int | None = None
    s_values: list[Fraction] = field(default_factory=lambda: [Fraction(1, 3), Fraction(1, 2)])
    full: bool = False

    def grid(self, default: Sequence[int], full: Sequence[int], pinned: int | None) -> list[int]:
        if pinned is not None:
            return [pinned]
        return list(full if self.full else default)

    def qs(self) -> list[Fraction]:
        if self.full:
            return [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)]
        return [self.q]

    def qQs(self) -> list[tuple[Fraction, Fraction]]:
        if self.full:
            return [
                (Fraction(1, 2), Fraction(1, 3)),
                (Fraction(1, 3), Fraction(1, 2)),
                (Fraction(2, 3), Fraction(1, 5)),
            ]
        return [(self.q, self.Q)]


Check = Callable[[], DualityReport]


def lazy(identity: str, test: Callable[[], bool], **params: object) -> Check:
    """Boolean check wrapped into a report, run when called."""

    def check() -> DualityReport:
        started = time.perf_counter()
        return report_from_verdict(identity, _params(**params), test(), started)

    return check


def msasep_checks(p: SuiteParams) -> Iterator[Check]:
    for L in p.grid([3, 4], [3, 4, 5], p.L):
        for n in p.grid([1, 2], [1, 2, 3], p.species):
            for q in p.qs():
                spec = ModelSpec(Model.MSASEP, L, n)

                def self_duality(spec: ModelSpec = spec, q: Fraction = q) -> DualityReport:
                    return check_markov_duality(
                        build_msasep(spec.L, spec.species, q),
                        duality_matrix(spec, q),
                        _params(model="msasep", L=spec.L, n=spec.species, q=q),
                        identity="msasep_self_duality",
                    )

                yield self_duality

    def left_form() -> DualityReport:
        started = time.perf_counter()
        L, n = p.L or 3, p.species or 2
        spec = ModelSpec(Model.MSASEP, L, n)
        space = enumerate_states(spec)
        left = tabulate(space, lambda eta, xi: duality_msasep_left(eta, xi, p.q))
        passed = check_block_proportional(duality_matrix(spec, p.q), left)
        return report_from_verdict(
            "msasep_left_form_blocks", _params(L=L, n=n, q=p.q), passed, started
        )

    def reading() -> DualityReport:
        started = time.perf_counter()
        winner, losers = resolve_msasep_reading(q=p.q)
        return report_from_verdict(
            "msasep_reading",
            _params(L=4, n=2, q=p.q),
            winner == MsasepReading.ETA,
            started,
            detail=f"{winner.value} wins, failing: {','.join(r.value for r in losers)}",
        )

    yield left_form
    yield reading


def _open_worked_example(q: Fraction, Q: Fraction) -> DualityReport:
    """Both one-step contributions of the L = 3 example equal Q^-2 q^-10."""
    started = time.perf_counter()
    generator = build_open(3, 1, q, Q)
    eta, eta_hat = (-1, -1, 1, 1), (1, -1, 1, 1)
    xi, xi_hat = (1, -1, 0, 1), (-1, -1, 0, 1)
    left = generator.rate(eta, eta_hat) * duality_open(eta_hat, xi, q, Q)
    right = duality_open(eta, xi_hat, q, Q) * generator.rate(xi, xi_hat)
    expected = Q**-2 * q**-10
    return report_from_verdict(
        "open_worked_example",
        _params(L=3, q=q, Q=Q),
        left == right == expected,
        started,
        detail=f"LD={format_rational(left)} DLT={format_rational(right)}",
    )


def open_checks(p: SuiteParams) -> Iterator[Check]:
    for L in p.grid([1, 2, 3], [1, 2, 3, 4], p.L):
        for q, Q in p.qQs():
            spec = ModelSpec(Model.OPEN, L, 1)

            def self_duality(spec: ModelSpec = spec, q: Fraction = q, Q: Fraction = Q) -> DualityReport:
                return check_markov_duality(
                    build_open(spec.L, 1, q, Q),
                    duality_matrix(spec, q, Q),
                    _params(model="open", L=spec.L, r=1, q=q, Q=Q),
                    identity="open_self_duality",
                )

            yield self_duality

    for L in p.grid([1, 2, 3], [1, 2, 3], p.L):

        def reversibility(L: int = L) -> DualityReport:
            return check_detailed_balance(
                build_open(L, 1, p.q, p.Q),
                coideal.reversible_measure_open(L, p.q, p.Q),
                _params(model="open", L=L, q=p.q, Q=p.Q),
            )

        yield reversibility
    yield lambda: _open_worked_example(p.q, p.Q)


def _braided_first_example(m: int, q: Fraction) -> DualityReport:
    """LD and D L^T at (3 0, 1 1) both equal [3][2](1 - q^{2m}) / [m]^2 q^{-4m}."""
    started = time.perf_counter()
    generator = build_braided(2, m, q)
    dual = duality_matrix(ModelSpec(Model.BRAIDED, 2, m), q)
    i, j = generator.space.index_of((3, 0)), generator.space.index_of((1, 1))
    ld = (generator.matrix @ dual.matrix)[i, j]
    dlt = (dual.matrix @ generator.T)[i, j]
    expected = q_int(3, q) * q_int(2, q) * (1 - q ** (2 * m)) / q_int(m, q) ** 2 * q ** (-4 * m)
    return report_from_verdict(
        "braided_worked_example",
        _params(m=m, q=q),
        ld == dlt == expected,
        started,
        detail=f"LD={format_rational(ld)}",
    )


def _braided_second_example(q: Fraction) -> DualityReport:
    """LD and D L^T at (2 4, 3 1) for m = 4, checked against their closed forms.

    With C = [2][3][4] / ([m]^2 [m-1][m-2]) the two sides read
    C (q^{2m-8}[2] - (q^{2m-8} - 1)[5]) and C ([m-2](1 - q^2)[3] + q^6 [2]),
    each times the spatial factor q^{-32}.
    """
    started = time.perf_counter()
    m = 4
    generator = build_braided(2, m, q)
    dual = duality_matrix(ModelSpec(Model.BRAIDED, 2, m), q)
    i, j = generator.space.index_of((2, 4)), generator.space.index_of((3, 1))
    ld = (generator.matrix @ dual.matrix)[i, j]
    dlt = (dual.matrix @ generator.T)[i, j]
    scale = (
        q_int(2, q) * q_int(3, q) * q_int(4, q)
        / (q_int(m, q) ** 2 * q_int(m - 1, q) * q_int(m - 2, q))
        * q**-32
    )
    shift = q ** (2 * m - 8)
    ld_expected = scale * (shift * q_int(2, q) - (shift - 1) * q_int(5, q))
    dlt_expected = scale * (q_int(m - 2, q) * (1 - q**2) * q_int(3, q) + q**6 * q_int(2, q))
    return report_from_verdict(
        "braided_second_example",
        _params(m=m, q=q),
        ld == ld_expected and dlt == dlt_expected,
        started,
        detail=f"LD={format_rational(ld)} DLT={format_rational(dlt)}",
    )


def _reflected_measure(g: Sequence[Fraction], m: int) -> list[Fraction]:
    size = m + 1
    return [g[fusion.pair_index(b, a, m)] ** -2 for a in range(size) for b in range(size)]


def braided_checks(p: SuiteParams) -> Iterator[Check]:
    pairs = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)]
    if p.full:
        pairs = [(m, L) for m in (1, 2, 3) for L in (2, 3)]
    if p.L is not None or p.species is not None:
        pairs = [(p.species or 2, p.L or 2)]
    for m, L in pairs:
        for q in p.qs():
            spec = ModelSpec(Model.BRAIDED, L, m)

            def self_duality(spec: ModelSpec = spec, q: Fraction = q) -> DualityReport:
                return check_markov_duality(
                    build_braided(spec.L, spec.species, q),
                    duality_matrix(spec, q),
                    _params(model="braided", L=spec.L, m=spec.species, q=q),
                    identity="braided_self_duality",
                )

            def sources_agree(spec: ModelSpec = spec, q: Fraction = q) -> DualityReport:
                return check_equal(
                    "braided_sources_agree",
                    _params(L=spec.L, m=spec.species, q=q),
                    build_braided(spec.L, spec.species, q, RateSource.CLOSED_FORM).matrix,
                    build_braided(spec.L, spec.species, q, RateSource.FUSION_ORACLE).matrix,
                )

            yield self_duality
            yield sources_agree

    def single_particle(L: int = p.L or 3) -> DualityReport:
        return check_equal(
            "braided_m1_is_msasep",
            _params(L=L, q=p.q),
            build_braided(L, 1, p.q).matrix,
            build_msasep(L, 1, p.q).matrix,
        )

    def single_particle_functional(L: int = p.L or 3) -> DualityReport:
        started = time.perf_counter()
        spec = ModelSpec(Model.MSASEP, L, 1)
        space = enumerate_states(spec)
        braided = tabulate(space, lambda eta, xi: duality_braided(eta, xi, p.q, 1))
        passed = check_block_proportional(braided, duality_matrix(spec, p.q))
        return report_from_verdict("braided_m1_functional_blocks", _params(L=L, q=p.q), passed, started)

    def appendix_reversibility() -> DualityReport:
        return check_detailed_balance(
            build_braided(2, 2, p.q),
            _reflected_measure(appendix.g_fixture(p.q), 2),
            _params(model="braided", L=2, m=2, q=p.q),
            identity="braided_detailed_balance",
        )

    yield single_particle
    yield single_particle_functional
    yield appendix_reversibility
    for m in (3, 4):
        yield lambda m=m: _braided_first_example(m, p.q)  # type: ignore[misc]
    yield lambda: _braided_second_example(p.q)


def algebra_checks(p: SuiteParams) -> Iterator[Check]:
    q, Q = p.q, p.Q
    r, s = Fraction(1, 3), Fraction(3, 4)

    for n in (1, 2):
        yield lazy(
            "type_a_quadratic",
            lambda n=n: hecke.check_hecke_quadratic(hecke.r_matrix_type_a(n, q) * q, q - 1, q),
            n=n,
            q=q,
        )
        yield lazy(
            "type_a_braid",
            lambda n=n: hecke.check_braid_relation(*hecke.braid_pair(hecke.r_matrix_type_a(n, q), n + 1)),
            n=n,
            q=q,
        )
    yield lazy(
        "two_parameter_quadratic",
        lambda: hecke.check_hecke_quadratic(hecke.r_matrix_two_param(2, r, s) * s, s - r, r * s),
        r=r,
        s=s,
    )
    yield lazy(
        "two_parameter_braid",
        lambda: hecke.check_braid_relation(*hecke.braid_pair(hecke.r_matrix_two_param(1, r, s), 2)),
        r=r,
        s=s,
    )
    for stochastic in (False, True):
        bulk = hecke.hecke_type_b_bulk(1, q, stochastic)
        boundary = hecke.hecke_type_b_boundary(1, Q, stochastic)
        yield lazy(
            "type_b_bulk_quadratic",
            lambda bulk=bulk: hecke.check_hecke_quadratic(bulk, 1 / q - q, Fraction(1)),
            q=q,
            stochastic=stochastic,
        )
        yield lazy(
            "type_b_boundary_quadratic",
            lambda boundary=boundary: hecke.check_hecke_quadratic(boundary, 1 / Q - Q, Fraction(1)),
            Q=Q,
            stochastic=stochastic,
        )
        yield lazy(
            "type_b_braid",
            lambda bulk=bulk: hecke.check_braid_relation(*hecke.braid_pair(bulk, 3)),
            q=q,
            stochastic=stochastic,
        )
        yield lazy(
            "type_b_mixed",
            lambda bulk=bulk, boundary=boundary: hecke.check_type_b_mixed(
                hecke.embed(boundary, 1, 2, 3), bulk
            ),
            q=q,
            Q=Q,
            stochastic=stochastic,
        )
    yield lazy(
        "stochastic_rows",
        lambda: all(
            total == 1
            for matrix in (
                hecke.hecke_type_b_bulk(1, q, stochastic=True) * q,
                hecke.hecke_type_b_boundary(1, Q, stochastic=True) * Q,
                hecke.s_check(q),
            )
            for total in matrix.row_sums()
        ),
        q=q,
        Q=Q,
    )
    yield lazy("s_check_braid", lambda: hecke.check_braid_relation(*hecke.braid_pair(hecke.s_check(q), 2)), q=q)
    for m in p.grid([1, 2], [1, 2, 3], None):
        yield lazy("fused_braid", lambda m=m: fusion.check_fused_braid(m, q), m=m, q=q)
    yield lazy("q_pascal", lambda: all(q_binomial_pascal_ok(n, q) for n in range(1, 13)), q=q)


def coideal_checks(p: SuiteParams) -> Iterator[Check]:
    q, Q = p.q, p.Q

    for L in p.grid([1, 2], [1, 2, 3], p.L):
        yield lazy("a_operator_relations", lambda L=L: coideal.check_a_relations(L, q, Q), L=L, q=q, Q=Q)
        yield lazy(
            "g_forms_agree",
            lambda L=L: all(
                coideal.g_formula(c, q, Q) == coideal.g_single_product(c, q, Q)
                for c in enumerate_states(ModelSpec(Model.OPEN, L, 1))
            ),
            L=L,
            q=q,
            Q=Q,
        )

        def ground_generator(L: int = L) -> DualityReport:
            frame = coideal.build_ground_frame(L, q, Q)
            return check_equal(
                "ground_state_transform",
                _params(L=L, q=q, Q=Q, eigenvalue=frame.eigenvalue),
                frame.generator(),
                build_open(L, 1, q, Q).matrix,
            )

        yield ground_generator

    for L in p.grid([1, 2], [1, 2], p.L):

        def commutes(L: int = L) -> DualityReport:
            return check_commutation(
                coideal.build_hamiltonian(L, q, Q),
                coideal.symmetry(L, q, Q),
                _params(L=L, q=q, Q=Q),
                identity="symmetry_commutes_with_h",
            )

        def symmetric_duality(L: int = L) -> DualityReport:
            return check_markov_duality(
                build_open(L, 1, q, Q),
                duality_open_from_symmetry(L, q, Q),
                _params(L=L, q=q, Q=Q),
                identity="symmetry_duality",
            )

        def matches_direct(L: int = L) -> DualityReport:
            return check_equal(
                "symmetry_duality_entrywise",
                _params(L=L, q=q, Q=Q),
                duality_open_from_symmetry(L, q, Q).matrix,
                duality_matrix(ModelSpec(Model.OPEN, L, 1), q, Q).matrix,
            )

        yield commutes
        yield symmetric_duality
        yield matches_direct
        for d in range(L + 3):
            yield lazy(
                "power_expansion",
                lambda L=L, d=d: coideal.check_power_expansion(L, d, q, Q),
                L=L,
                d=d,
                q=q,
                Q=Q,
            )


def oracle_checks(p: SuiteParams) -> Iterator[Check]:
    for m in p.grid([1, 2, 3], [1, 2, 3, 4], p.species):
        for q in p.qs():

            def triangle(m: int = m, q: Fraction = q) -> DualityReport:
                started = time.perf_counter()
                mismatch = ""
                for k1 in range(m + 1):
                    for k2 in range(m + 1):
                        aux = fusion.aux_process_distribution(m, k1, k2, q)
                        for l2 in range(m + 1):
                            values = (
                                braided_rate(m, k1, k2, l2, q),
                                fusion.fused_bond_probability(m, k1, k2, l2, q),
                                aux.get(l2, Fraction(0)),
                            )
                            if len(set(values)) != 1 and not mismatch:
                                mismatch = f"({k1},{k2})->{l2}: {[format_rational(v) for v in values]}"
                return report_from_verdict(
                    "rate_oracles_agree", _params(m=m, q=q), not mismatch, started, detail=mismatch
                )

            yield triangle
    for m in p.grid([1, 2, 3], [1, 2, 3, 4, 5], p.species):

        def recurrence(m: int = m) -> DualityReport:
            started = time.perf_counter()
            passed = fusion.check_rate_recurrence(m, p.q)
            return report_from_verdict("rate_recurrence", _params(m=m, q=p.q), passed, started)

        yield recurrence


def appendix_checks(p: SuiteParams) -> Iterator[Check]:
    for q in p.qs() if p.full else [p.q, Fraction(1, 3)]:
        yield lambda q=q: check_appendix_fixtures(q, p.s_values)  # type: ignore[misc]


SUITE_CHECKS: dict[str, Callable[[SuiteParams], Iterator[Check]]] = {
    "msasep": msasep_checks,
    "open": open_checks,
    "braided": braided_checks,
    "algebra": algebra_checks,
    "coideal": coideal_checks,
    "appendix": appendix_checks,
    "oracles": oracle_checks,
}


def run_suite(name: str, params: SuiteParams | None = None, progress: bool = False) -> list[DualityReport]:
    """Run the named suite, `all` running every one of them."""
    if name not in SUITES:
        raise ParameterError(f"Unknown suite {name!r}, choose from {', '.join(SUITES)}")
    params = params or SuiteParams()
    names = list(SUITE_CHECKS) if name == "all" else [name]
    checks = [check for suite in names for check in SUITE_CHECKS[suite](params)]

    bar = ProgressBar(len(checks)) if progress else None
    reports = []
    for count, check in enumerate(checks, start=1):
        report = check()
        logger.debug(report.format())
        reports.append(report)
        if bar is not None:
            bar.update(count)
    logger.info("Suite %s: %d/%d passed", name, sum(r.passed for r in reports), len(reports))
    return reports

"""
Command line interface: newton-strata {poset,dims,rc,slopes,check}.
"""

import argparse
from fractions import Fraction
from functools import partial
from itertools import combinations, product
import logging
from pathlib import Path
import random
import sys
from typing import Callable, Iterable, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from newton_strata import __version__
from newton_strata.central_leaf import (
    LeafDatum,
    count_lemma_bijection,
    frobenius_matrix,
    make_leaf_datum,
    random_leaf_data,
    rc_document,
    root_sets,
    solvability_predicate,
)
from newton_strata.documentation import get_documentation, get_tooltip
from newton_strata.errors import (
    ConsistencyError,
    LeafConditionError,
    NewtonStrataError,
    PrecisionError,
)
from newton_strata.kottwitz import (
    break_points,
    down_set_by_projection,
    enumerate_bgmu,
    exterior_power_weights,
    maximal_below,
    polygon_break_points,
    purity_representation_check,
)
from newton_strata.root_datum import (
    RationalCoweight,
    RootDatum,
    build_classical,
    datum_from_name,
    dominant_representative,
    pair,
    rho,
    weyl_element,
    weyl_group,
)
from newton_strata.schemas import CheckReportDocument, MatrixDocument, SlopesDocument, SuiteResultDocument
from newton_strata.settings import (
    EXIT_CONDITION_2,
    EXIT_CONDITION_3,
    EXIT_CONSISTENCY,
    EXIT_OK,
    EXIT_PRECISION,
    EXIT_USAGE,
    SCHEMA_VERSION,
    OutputFormat,
    settings,
)
from newton_strata.strata import strata_report
from newton_strata.utils import content_hash, format_rational, parse_int_list, read_cached, write_cached
from newton_strata.witt import (
    FrobeniusMatrix,
    GaloisRing,
    galois_ring,
    kappa_of_matrix,
    newton_slopes,
    sigma_conjugate,
    teichmuller,
)

logger = logging.getLogger(__name__)

Command = Literal["poset", "dims", "rc", "slopes", "check"]

FORMATS = {
    "poset": (OutputFormat.JSON, OutputFormat.DOT, OutputFormat.TEXT),
    "dims": (OutputFormat.TSV, OutputFormat.JSON, OutputFormat.TEXT),
    "rc": (OutputFormat.JSON, OutputFormat.TEXT),
    "slopes": (OutputFormat.TEXT, OutputFormat.JSON),
    "check": (OutputFormat.JSON, OutputFormat.TEXT),
}


class JobConfig(BaseModel):
    """One validated invocation; the first listed format of a command is its default."""

    model_config = ConfigDict(extra="forbid")

    command: Command
    group: Optional[str] = None
    n: Optional[int] = Field(default=None, ge=1)
    mu: Optional[List[int]] = None
    w: Optional[List[int]] = None
    matrix: Optional[Path] = None
    format: Optional[OutputFormat] = None
    cache_dir: Optional[Path] = None
    p: int = Field(default_factory=lambda: settings.NEWTON_PRIME, ge=2)
    precision: int = Field(default_factory=lambda: settings.NEWTON_PRECISION, ge=1)
    degree: int = Field(default_factory=lambda: settings.NEWTON_DEGREE, ge=1)
    seed: int = 0

    @field_validator("w")
    @classmethod
    def _one_based(cls, word: Optional[List[int]]) -> Optional[List[int]]:
        if word is not None and any(letter < 1 for letter in word):
            raise ValueError(f"--w letters are 1-based simple reflections, got {word}")
        return word

    @model_validator(mode="after")
    def _check_command_fields(self) -> "JobConfig":
        if self.format is None:
            self.format = FORMATS[self.command][0]
        if self.format not in FORMATS[self.command]:
            allowed = ", ".join(f.value for f in FORMATS[self.command])
            raise ValueError(f"'{self.command}' cannot write {self.format.value}; expected one of {allowed}")
        if self.command in ("poset", "dims", "rc") and (self.group is None or self.mu is None):
            raise ValueError(f"'{self.command}' needs --group and --mu")
        if self.command == "rc" and self.w is None:
            raise ValueError("'rc' needs --w")
        if self.command == "slopes":
            leaf = self.group is not None and self.mu is not None and self.w is not None
            if (self.matrix is None) == (not leaf):
                raise ValueError("'slopes' needs exactly one of --matrix or --group/--mu/--w")
        return self

    def datum(self) -> RootDatum:
        if self.group is None:
            raise ValueError("No group given")
        if self.n is None:
            return datum_from_name(self.group)
        return build_classical(self.group, self.n)

    def leaf_datum(self) -> LeafDatum:
        datum = self.datum()
        word = [letter - 1 for letter in self.w or []]
        return make_leaf_datum(datum, self.mu or [], weyl_element(datum, word))

    def cache_key(self) -> str:
        payload = {
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "job": self.model_dump(mode="json", exclude={"cache_dir"}),
        }
        if self.matrix is not None:
            payload["matrix"] = self.matrix.read_text(encoding="utf-8")
        return content_hash(payload)


# --- Subcommands ---


def cmd_poset(config: JobConfig) -> str:
    poset = enumerate_bgmu(config.datum(), config.mu or [])
    if config.format == OutputFormat.DOT:
        return poset.to_dot()
    if config.format == OutputFormat.TEXT:
        lines = [f"B({poset.datum}, {poset.mu}): {len(poset)} classes, {len(poset.hasse)} covers"]
        for i, b in enumerate(poset):
            covers = sorted(lo for lo, hi in poset.hasse if hi == i)
            lines.append(f"{i}\t{b.label}\tkappa={list(b.kottwitz_point)}\tcovers={covers}")
        return "\n".join(lines) + "\n"
    return poset.to_document().to_json()


def cmd_dims(config: JobConfig) -> str:
    report = strata_report(config.datum(), config.mu or [])
    if config.format == OutputFormat.JSON:
        return report.to_document().to_json()
    if config.format == OutputFormat.TEXT:
        header = f"{report.datum}, mu={report.mu}, dim Def = {report.dim_deformation_space}\n"
        return header + report.to_tsv()
    return report.to_tsv()


def cmd_rc(config: JobConfig) -> str:
    ld = config.leaf_datum()
    sets = root_sets(ld)
    orbits = count_lemma_bijection(ld, sets)
    if config.format == OutputFormat.TEXT:

        def show(roots: Iterable[Tuple[int, ...]]) -> str:
            return " ".join("(" + ",".join(str(x) for x in alpha) + ")" for alpha in roots) or "-"

        lines = [
            f"nu\t{ld.nu}",
            f"R_mu\t{show(sets.r_mu)}",
            f"R_nu\t{show(sets.r_nu)}",
            f"R_mu,nu\t{show(sets.r_mu_nu)}",
            f"R_C\t{show(sets.r_c)}",
        ]
        return "\n".join(lines) + "\n"
    return rc_document(ld, sets, orbits).to_json()


def _frobenius_from_config(config: JobConfig) -> FrobeniusMatrix:
    if config.matrix is not None:
        document = MatrixDocument.model_validate_json(config.matrix.read_text(encoding="utf-8"))
        return FrobeniusMatrix.from_document(document)
    return frobenius_matrix(config.leaf_datum(), galois_ring(config.p, config.precision, config.degree))


def cmd_slopes(config: JobConfig) -> str:
    A = _frobenius_from_config(config)
    slopes = newton_slopes(A)
    kappa = kappa_of_matrix(A)
    if sum(slopes) != kappa:
        raise ConsistencyError(f"Slopes sum to {sum(slopes)} but val(det) gives {kappa}")
    if config.format == OutputFormat.JSON:
        document = SlopesDocument(
            slopes=[format_rational(x) for x in slopes], kappa=kappa, precision=A.ring.precision
        )
        return document.to_json()
    return " ".join(format_rational(x) for x in slopes) + "\n"


# --- Consistency suites ---

Case = Tuple[str, Callable[[], bool]]


def _run_suite(name: str, cases: Iterable[Case]) -> SuiteResultDocument:
    failures: List[str] = []
    count = 0
    for label, case in cases:
        count += 1
        try:
            if not case():
                failures.append(label)
        except NewtonStrataError as e:
            failures.append(f"{label}: {e}")
    logger.info("suite %s: %d cases, %d failures", name, count, len(failures))
    return SuiteResultDocument(name=name, passed=not failures, cases=count, failures=failures)


def _minuscule_gl(n: int) -> List[List[int]]:
    return [[1] * k + [0] * (n - k) for k in range(n + 1)]


def _counting_case(ld: LeafDatum) -> bool:
    sets = root_sets(ld)
    count_lemma_bijection(ld, sets)
    return len(sets.r_c) == -2 * pair(rho(ld.datum), ld.nu)


def _suite_counting_lemma(rng: random.Random) -> Iterable[Case]:
    for n in range(2, 7):
        for ld in random_leaf_data(build_classical("GL", n), rng, 40):
            yield f"GL{n} mu'={ld.mu_prime} w={list(ld.w.word)}", partial(_counting_case, ld)
    gsp4 = build_classical("GSp", 4)
    for ld in random_leaf_data(gsp4, rng, 40, mu=[1, 1, 1]):
        yield f"GSp4 mu'={ld.mu_prime} w={list(ld.w.word)}", partial(_counting_case, ld)


def _strata_case(datum: RootDatum, mu: List[int]) -> bool:
    strata_report(datum, mu)
    return True


def _suite_strata() -> Iterable[Case]:
    for n in range(1, 7):
        datum = build_classical("GL", n)
        for mu in _minuscule_gl(n):
            yield f"GL{n} mu={mu}", partial(_strata_case, datum, mu)


def _maximal_below_case(datum: RootDatum, mu: List[int]) -> bool:
    poset = enumerate_bgmu(datum, mu)
    for b in poset:
        pairs = maximal_below(poset, b)
        if len(pairs) != len(break_points(datum, b)):
            return False
        for b_prime, _ in pairs:
            down_set_by_projection(poset, b, b_prime)
        if not pairs and down_set_by_projection(poset, b):
            return False
    return True


def _suite_maximal_below() -> Iterable[Case]:
    for n in range(1, 7):
        datum = build_classical("GL", n)
        for mu in _minuscule_gl(n):
            yield f"GL{n} mu={mu}", partial(_maximal_below_case, datum, mu)


def _slope_case(ld: LeafDatum) -> bool:
    ring = galois_ring(settings.NEWTON_PRIME, settings.NEWTON_PRECISION)
    nu_dom, _ = dominant_representative(ld.datum, ld.nu)
    return newton_slopes(frobenius_matrix(ld, ring)) == list(nu_dom)


def _suite_slope_oracle(rng: random.Random) -> Iterable[Case]:
    for k in range(100):
        datum = build_classical("GL", 2 + k % 3)
        ld = random_leaf_data(datum, rng, 1)[0]
        yield f"{datum} mu'={ld.mu_prime} w={list(ld.w.word)}", partial(_slope_case, ld)


def _random_invertible(ring: GaloisRing, n: int, rng: random.Random) -> FrobeniusMatrix:
    """A random matrix over the Galois ring with unit determinant."""
    while True:
        rows = [
            [ring([rng.randrange(ring.characteristic) for _ in range(ring.degree)]) for _ in range(n)] for _ in range(n)
        ]
        g = FrobeniusMatrix(ring, tuple(tuple(row) for row in rows))
        if g.determinant().is_unit():
            return g


def _conjugation_case(g: FrobeniusMatrix, A: FrobeniusMatrix) -> bool:
    return newton_slopes(sigma_conjugate(g, A)) == newton_slopes(A)


def _suite_sigma_conjugation(rng: random.Random) -> Iterable[Case]:
    for k in range(100):
        n, s = 1 + k % 4, 1 + k % 3
        ring = galois_ring(settings.NEWTON_PRIME, settings.NEWTON_PRECISION, s)
        exponents = [rng.randint(0, 2) for _ in range(n)]
        diagonal = FrobeniusMatrix.diagonal(ring, [ring.p_power(e) for e in exponents])
        A = _random_invertible(ring, n, rng) @ diagonal @ _random_invertible(ring, n, rng)
        g = _random_invertible(ring, n, rng)
        yield f"n={n} s={s} exponents={exponents}", partial(_conjugation_case, g, A)


def _all_leaf_data(datum: RootDatum) -> List[LeafDatum]:
    """Every valid (mu', w) with mu' a 0/1 vector, w in the Weyl group."""
    data = []
    for mu_prime in product((0, 1), repeat=datum.rank):
        for w in weyl_group(datum):
            try:
                data.append(make_leaf_datum(datum, mu_prime, w))
            except LeafConditionError:
                continue
    return data


def _solver_case(ld: LeafDatum, support: Tuple[Tuple[int, ...], ...], seed: int) -> bool:
    ring = galois_ring(settings.NEWTON_PRIME, settings.NEWTON_PRECISION)
    rng = random.Random(seed)
    tau = {alpha: teichmuller(ring, rng.randrange(1, ring.p)) for alpha in support}
    r_c = set(root_sets(ld).r_c)
    return solvability_predicate(ld, tau, ring) == all(alpha in r_c for alpha in support)


def _suite_solver(rng: random.Random) -> Iterable[Case]:
    for n in (3, 4):
        for ld in _all_leaf_data(build_classical("GL", n)):
            candidates = root_sets(ld).r_mu_nu
            for size in range(len(candidates) + 1):
                for support in combinations(candidates, size):
                    label = f"GL{n} mu'={ld.mu_prime} w={list(ld.w.word)} support={list(support)}"
                    yield label, partial(_solver_case, ld, support, rng.randrange(2**32))


def _purity_case(datum: RootDatum, d: int) -> bool:
    samples = []
    for mu in _minuscule_gl(datum.rank):
        poset = enumerate_bgmu(datum, mu)
        samples.extend((poset.elements[i].newton_point, poset.elements[j].newton_point) for i, j in poset.order)
    return purity_representation_check(datum, d - 1, exterior_power_weights(datum, d), samples)


def _suite_purity() -> Iterable[Case]:
    for n in range(2, 5):
        datum = build_classical("GL", n)
        for d in range(1, n):
            yield f"GL{n} Lambda^{d}", partial(_purity_case, datum, d)


def _polygon_case(nu: RationalCoweight) -> bool:
    datum = build_classical("GL", len(nu))
    return [orbit[0] + 1 for orbit in break_points(datum, nu)] == polygon_break_points(nu)


def _suite_polygon(rng: random.Random) -> Iterable[Case]:
    for _ in range(100):
        n = rng.randint(1, 8)
        nu = RationalCoweight(sorted((_random_rational(rng) for _ in range(n)), reverse=True))
        yield f"nu={nu}", partial(_polygon_case, nu)


def _random_rational(rng: random.Random) -> Fraction:
    """Small numerator and denominator, so that repeated values are likely."""
    return Fraction(rng.randint(-3, 3), rng.randint(1, 3))


def check_report(config: JobConfig) -> CheckReportDocument:
    """Run every consistency suite with the seed of the job."""
    rng = random.Random(config.seed)
    suites = [
        _run_suite("counting_lemma", _suite_counting_lemma(rng)),
        _run_suite("strata", _suite_strata()),
        _run_suite("maximal_below", _suite_maximal_below()),
        _run_suite("slope_oracle", _suite_slope_oracle(rng)),
        _run_suite("sigma_conjugation", _suite_sigma_conjugation(rng)),
        _run_suite("solver", _suite_solver(rng)),
        _run_suite("purity", _suite_purity()),
        _run_suite("polygon", _suite_polygon(rng)),
    ]
    return CheckReportDocument(passed=all(s.passed for s in suites), suites=suites, seed=config.seed)


def render_check(report: CheckReportDocument, output_format: Optional[OutputFormat]) -> str:
    suites = report.suites
    if output_format == OutputFormat.TEXT:
        lines = [f"{'PASS' if s.passed else 'FAIL'}\t{s.name}\t{s.cases} cases" for s in suites]
        lines += [f"  {s.name}: {failure}" for s in suites for failure in s.failures]
        return "\n".join(lines) + "\n"
    return report.to_json()


COMMANDS = {
    "poset": cmd_poset,
    "dims": cmd_dims,
    "rc": cmd_rc,
    "slopes": cmd_slopes,
}


# --- Entry point ---


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newton-strata",
        description=get_documentation("newton-strata"),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=OutputFormat.options(), help=get_tooltip("format"))
    common.add_argument("--cache-dir", dest="cache_dir", type=Path, help=get_tooltip("cache_dir"))
    common.add_argument("--verbose", "-v", action="store_true", help=get_tooltip("verbose"))

    group_options = argparse.ArgumentParser(add_help=False)
    group_options.add_argument("--group", help=get_tooltip("group"))
    group_options.add_argument("--n", type=int, help=get_tooltip("n"))
    group_options.add_argument("--mu", help=get_tooltip("mu"))
    group_options.add_argument("--w", help=get_tooltip("w"))

    witt_options = argparse.ArgumentParser(add_help=False)
    witt_options.add_argument("--matrix", type=Path, help=get_tooltip("matrix"))
    witt_options.add_argument("--p", type=int, help=get_tooltip("p"))
    witt_options.add_argument("--precision", type=int, help=get_tooltip("precision"))
    witt_options.add_argument("--degree", type=int, help=get_tooltip("degree"))

    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in ("poset", "dims", "rc"):
        subparsers.add_parser(
            name,
            parents=[common, group_options],
            description=get_documentation(name),
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
    subparsers.add_parser(
        "slopes",
        parents=[common, group_options, witt_options],
        description=get_documentation("slopes"),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    check = subparsers.add_parser(
        "check",
        parents=[common],
        description=get_documentation("check"),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    check.add_argument("--seed", type=int, default=0, help=get_tooltip("seed"))
    return parser


def _config_from_args(args: argparse.Namespace) -> JobConfig:
    values = {
        "command": args.command,
        "format": args.format,
        "cache_dir": args.cache_dir if args.cache_dir is not None else settings.NEWTON_CACHE_DIR,
    }
    for name in ("group", "n", "matrix", "p", "precision", "degree", "seed"):
        value = getattr(args, name, None)
        if value is not None:
            values[name] = value
    for name in ("mu", "w"):
        text = getattr(args, name, None)
        if text is not None:
            values[name] = parse_int_list(text)
    return JobConfig.model_validate(values)


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else settings.NEWTON_LOG_LEVEL.upper()
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def run(config: JobConfig) -> str:
    """Run one job other than 'check', serving it from the cache when possible."""
    key = config.cache_key()
    cached = read_cached(config.cache_dir, key)
    if cached is not None:
        return cached
    output = COMMANDS[config.command](config)
    write_cached(config.cache_dir, key, output)
    return output


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    _configure_logging(args.verbose)

    def fail(code: int, error: Exception) -> int:
        print(f"newton-strata: error: {error}", file=sys.stderr)
        return code

    try:
        config = _config_from_args(args)
        if config.command == "check":
            report = check_report(config)
            output, passed = render_check(report, config.format), report.passed
        else:
            output, passed = run(config), True
    except LeafConditionError as e:
        return fail(EXIT_CONDITION_2 if e.condition == 2 else EXIT_CONDITION_3, e)
    except PrecisionError as e:
        return fail(EXIT_PRECISION, e)
    except ConsistencyError as e:
        return fail(EXIT_CONSISTENCY, e)
    except (NewtonStrataError, ValueError, OSError) as e:
        return fail(EXIT_USAGE, e)
    sys.stdout.write(output)
    return EXIT_OK if passed else EXIT_CONSISTENCY


if __name__ == "__main__":
    raise SystemExit(main())

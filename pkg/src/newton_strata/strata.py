"""
Dimensions of Newton strata, central leaves and Rapoport-Zink spaces.

The defect def(b) = rk G - rk J_b is computed either from the poset (via the
identity l[b, b_max] = <rho, mu - nu(b)> + def(b)/2) or, for GL_n and GSp_2n,
directly from the slope decomposition of the isocrystal.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import List, Optional, Tuple

from newton_strata.errors import ConsistencyError, PreconditionError, UnsupportedInputError
from newton_strata.kottwitz import NewtonPoset, SigmaConjClass, chain_length, enumerate_bgmu
from newton_strata.root_datum import (
    RationalCoweight,
    RootDatum,
    VectorLike,
    is_dominant,
    is_minuscule,
    pair,
    rho,
    sigma_average,
)
from newton_strata.schemas import StrataReportDocument, StrataRowDocument
from newton_strata.settings import DefectMode, GroupFamily

logger = logging.getLogger(__name__)


def _as_integer(value: Fraction, what: str, label: str) -> int:
    if value.denominator != 1 or value < 0:
        raise ConsistencyError(f"{what} = {value} is not a nonnegative integer", label)
    return int(value)


def dim_deformation_space(datum: RootDatum, mu: VectorLike) -> int:
    """
    |R_mu| = |{alpha : <alpha, mu> < 0}|, which is <2 rho, mu> for minuscule mu.

    Raises:
        PreconditionError: If mu is not dominant.
        UnsupportedInputError: If mu is not minuscule.
    """
    if not is_dominant(datum, mu):
        raise PreconditionError(f"{RationalCoweight(mu)} is not dominant for {datum}")
    if not is_minuscule(datum, mu):
        raise UnsupportedInputError(f"{RationalCoweight(mu)} is not minuscule for {datum}")
    return sum(1 for alpha in datum.roots if pair(alpha, mu) < 0)


def _simple_multiplicities(slopes: List[Fraction], label: str) -> Counter[Fraction]:
    """m_lambda: number of simple isocrystals of slope lambda (height = denominator)."""
    counts = Counter(slopes)
    multiplicities: Counter[Fraction] = Counter()
    for slope, count in counts.items():
        if count % slope.denominator:
            raise ConsistencyError(f"Slope {slope} occurs {count} times, not a multiple of its height", label)
        multiplicities[slope] = count // slope.denominator
    return multiplicities


def direct_defect(datum: RootDatum, b: SigmaConjClass) -> int:
    """
    The defect from the slope decomposition.

    GL_n: def = n - sum_lambda m_lambda. GSp_2n with similitude slope c: the
    GL_2n slopes are nu_i and c - nu_i, and rk J_b = sum_{lambda < c/2} m_lambda
    + floor(m_{c/2} / 2) + 1.

    Raises:
        UnsupportedInputError: For other families.
    """
    nu = b.newton_point
    if datum.family == GroupFamily.GL.value:
        return datum.rank - sum(_simple_multiplicities(list(nu), b.label).values())
    if datum.family == GroupFamily.GSP.value:
        n = datum.rank - 1
        c = nu[n]
        slopes = [nu[i] for i in range(n)] + [c - nu[i] for i in range(n)]
        multiplicities = _simple_multiplicities(slopes, b.label)
        split_rank = sum(m for slope, m in multiplicities.items() if slope < c / 2)
        split_rank += multiplicities[c / 2] // 2 + 1
        return datum.rank - split_rank
    raise UnsupportedInputError(f"No direct defect formula for {datum}; use the poset mode")


def defect(
    datum: RootDatum,
    b: SigmaConjClass,
    poset: Optional[NewtonPoset] = None,
    mode: Optional[DefectMode] = None,
) -> int:
    """
    def(b) = rk G - rk J_b.

    Args:
        datum: The root datum.
        b: The class.
        poset: B(G, mu) containing b; required for the poset mode.
        mode: DefectMode.POSET or DefectMode.DIRECT. Defaults to the poset
            mode when a poset is given and to the direct mode otherwise.

    Raises:
        ConsistencyError: If the poset mode gives a negative or non-integral value.
        UnsupportedInputError: If the direct mode does not cover the family.
    """
    if mode is None:
        mode = DefectMode.POSET if poset is not None else DefectMode.DIRECT
    if mode == DefectMode.DIRECT:
        return direct_defect(datum, b)
    if poset is None:
        raise PreconditionError("The poset mode needs the poset B(G, mu)")
    mu_bar = sigma_average(datum, poset.mu)
    value = 2 * (chain_length(poset, b, poset.maximal) - pair(rho(datum), mu_bar - b.newton_point))
    return _as_integer(value, "def", b.label)


def dim_newton_stratum(datum: RootDatum, mu: VectorLike, b: SigmaConjClass, poset: Optional[NewtonPoset] = None) -> int:
    """<rho, mu_bar + nu(b)> - def(b)/2, with def(b) from the poset when one is given."""
    def_b = defect(datum, b, poset=poset)
    value = pair(rho(datum), sigma_average(datum, mu) + b.newton_point) - Fraction(def_b, 2)
    return _as_integer(value, "dim of the Newton stratum", b.label)


def dim_central_leaf(datum: RootDatum, b: SigmaConjClass) -> int:
    """2 <rho, nu(b)>."""
    return _as_integer(2 * pair(rho(datum), b.newton_point), "dim of the central leaf", b.label)


def dim_rz(datum: RootDatum, mu: VectorLike, b: SigmaConjClass, poset: Optional[NewtonPoset] = None) -> int:
    """<rho, mu_bar - nu(b)> - def(b)/2."""
    def_b = defect(datum, b, poset=poset)
    value = pair(rho(datum), sigma_average(datum, mu) - b.newton_point) - Fraction(def_b, 2)
    return _as_integer(value, "dim of the Rapoport-Zink space", b.label)


def codim_stratum(poset: NewtonPoset, b: SigmaConjClass) -> int:
    """l[b, b_max]."""
    return chain_length(poset, b, poset.maximal)


@dataclass(frozen=True)
class StrataRow:
    newton_point: RationalCoweight
    kottwitz_point: Tuple[int, ...]
    defect: int
    dim_stratum: int
    codim: int
    dim_central_leaf: int
    dim_rz: int


TSV_COLUMNS = ("nu", "kappa", "defect", "dim", "codim", "dim_central", "dim_rz")


@dataclass(frozen=True)
class StrataReport:
    datum: RootDatum
    mu: RationalCoweight
    dim_deformation_space: int
    rows: Tuple[StrataRow, ...]

    def column(self, name: str) -> Tuple[int, ...]:
        return tuple(getattr(row, name) for row in self.rows)

    def to_tsv(self) -> str:
        lines = ["\t".join(TSV_COLUMNS)]
        for row in self.rows:
            cells = [
                ",".join(row.newton_point.to_strings()),
                ",".join(str(k) for k in row.kottwitz_point),
                str(row.defect),
                str(row.dim_stratum),
                str(row.codim),
                str(row.dim_central_leaf),
                str(row.dim_rz),
            ]
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"

    def to_document(self) -> StrataReportDocument:
        return StrataReportDocument(
            group=str(self.datum),
            mu=list(self.mu.as_ints()),
            dim_deformation_space=self.dim_deformation_space,
            rows=[
                StrataRowDocument(
                    newton_point=row.newton_point.to_strings(),
                    kottwitz_point=list(row.kottwitz_point),
                    defect=row.defect,
                    dim_stratum=row.dim_stratum,
                    codim=row.codim,
                    dim_central_leaf=row.dim_central_leaf,
                    dim_rz=row.dim_rz,
                )
                for row in self.rows
            ],
        )


def strata_report(datum: RootDatum, mu: VectorLike, poset: Optional[NewtonPoset] = None) -> StrataReport:
    """
    Tabulate defect and dimensions over B(G, mu), in the poset's order.

    The defect comes from the poset and is cross-checked against the direct
    formula where one exists.

    Raises:
        ConsistencyError: If any row violates dim + codim = dim Def,
            dim = dim_central + dim_rz, or a range/integrality condition,
            or if dim does not drop by exactly 1 along a Hasse cover; the
            message names the offending class.
    """
    mu = RationalCoweight(mu)
    total = dim_deformation_space(datum, mu)
    if poset is None:
        poset = enumerate_bgmu(datum, mu)
    rows = []
    for b in poset:
        def_b = defect(datum, b, poset=poset)
        try:
            direct = direct_defect(datum, b)
        except UnsupportedInputError:
            direct = def_b
        if direct != def_b:
            raise ConsistencyError(f"Poset defect {def_b} differs from the slope defect {direct}", b.label)
        row = StrataRow(
            newton_point=b.newton_point,
            kottwitz_point=b.kottwitz_point,
            defect=def_b,
            dim_stratum=dim_newton_stratum(datum, mu, b, poset),
            codim=codim_stratum(poset, b),
            dim_central_leaf=dim_central_leaf(datum, b),
            dim_rz=dim_rz(datum, mu, b, poset),
        )
        if row.dim_stratum + row.codim != total:
            raise ConsistencyError(f"dim {row.dim_stratum} + codim {row.codim} != {total}", b.label)
        if row.dim_stratum != row.dim_central_leaf + row.dim_rz:
            raise ConsistencyError("dim != dim_central + dim_rz", b.label)
        if row.dim_stratum > total:
            raise ConsistencyError(f"dim {row.dim_stratum} exceeds {total}", b.label)
        rows.append(row)
    for lower, upper in poset.hasse:
        step = rows[upper].dim_stratum - rows[lower].dim_stratum
        if step != 1:
            raise ConsistencyError(f"dim drops by {step} along a cover", poset.elements[lower].label)
    logger.debug("strata report for %s, mu=%s: %d rows", datum, mu, len(rows))
    return StrataReport(datum, mu, total, tuple(rows))

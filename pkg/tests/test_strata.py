#!/usr/bin/env python
"""Tests for `newton_strata.strata`."""

from dataclasses import replace
from fractions import Fraction

import pytest

from newton_strata.errors import ConsistencyError, PreconditionError, UnsupportedInputError
from newton_strata.kottwitz import enumerate_bgmu
from newton_strata.root_datum import RationalCoweight, build_classical
from newton_strata.settings import DefectMode
from newton_strata.strata import (
    TSV_COLUMNS,
    defect,
    dim_central_leaf,
    dim_deformation_space,
    dim_newton_stratum,
    dim_rz,
    direct_defect,
    strata_report,
)


@pytest.fixture
def gl4_report(gl4):
    return strata_report(gl4, [1, 1, 0, 0])


def test_gl4_columns(gl4_report):
    assert gl4_report.dim_deformation_space == 4
    assert gl4_report.column("defect") == (0, 1, 2, 2, 2)
    assert gl4_report.column("dim_stratum") == (4, 3, 2, 2, 1)
    assert gl4_report.column("codim") == (0, 1, 2, 2, 3)
    assert gl4_report.column("dim_central_leaf") == (4, 3, 2, 2, 0)
    assert gl4_report.column("dim_rz") == (0, 0, 0, 0, 1)


def test_gl4_tsv(gl4_report):
    lines = gl4_report.to_tsv().splitlines()
    assert lines[0].split("\t") == list(TSV_COLUMNS)
    assert lines[-1].split("\t") == ["1/2,1/2,1/2,1/2", "2", "2", "1", "3", "0", "1"]


def test_gl4_document(gl4_report):
    document = gl4_report.to_document()
    assert document.group == "GL4"
    assert [row.dim_stratum for row in document.rows] == [4, 3, 2, 2, 1]


def test_gsp4_siegel_threefold(gsp4):
    """Ordinary, p-rank one and supersingular strata of dimensions 3, 2, 1."""
    report = strata_report(gsp4, [1, 1, 1])
    assert report.dim_deformation_space == 3
    assert report.column("dim_stratum") == (3, 2, 1)
    assert report.column("defect") == (0, 1, 1)
    assert report.column("dim_central_leaf") == (3, 2, 0)
    assert report.column("dim_rz") == (0, 0, 1)


def test_gsp6_basic_defect(gsp6):
    poset = enumerate_bgmu(gsp6, [1, 1, 1, 1])
    assert defect(gsp6, poset.basic, poset=poset) == 2
    assert direct_defect(gsp6, poset.basic) == 2
    assert dim_deformation_space(gsp6, [1, 1, 1, 1]) == 6


def test_unitary_report(u3):
    report = strata_report(u3, [1, 0, 0])
    assert report.dim_deformation_space == 2
    assert report.column("defect") == (0, 0)
    assert report.column("dim_stratum") == (2, 1)
    assert report.column("dim_rz") == (0, 1)


def test_direct_defect_needs_gl_or_gsp(u3):
    poset = enumerate_bgmu(u3, [1, 0, 0])
    with pytest.raises(UnsupportedInputError):
        direct_defect(u3, poset.basic)
    with pytest.raises(UnsupportedInputError):
        defect(u3, poset.basic, mode=DefectMode.DIRECT)


def test_defect_modes_agree(gl4):
    poset = enumerate_bgmu(gl4, [1, 1, 0, 0])
    for b in poset:
        assert defect(gl4, b, poset=poset) == defect(gl4, b, mode=DefectMode.DIRECT)


def test_poset_mode_needs_poset(gl4):
    poset = enumerate_bgmu(gl4, [1, 1, 0, 0])
    with pytest.raises(PreconditionError):
        defect(gl4, poset.basic, mode=DefectMode.POSET)


def test_single_functions_match_report(gl4, gl4_report):
    poset = enumerate_bgmu(gl4, [1, 1, 0, 0])
    b = poset.elements[2]
    assert dim_newton_stratum(gl4, [1, 1, 0, 0], b, poset) == gl4_report.rows[2].dim_stratum
    assert dim_newton_stratum(gl4, [1, 1, 0, 0], b) == gl4_report.rows[2].dim_stratum
    assert dim_rz(gl4, [1, 1, 0, 0], b) == 0
    assert dim_central_leaf(gl4, b) == 2


@pytest.mark.parametrize("n", range(1, 6))
def test_gl_identities(n):
    """strata_report checks dim + codim = dim Def and dim = dim_central + dim_rz on every row."""
    datum = build_classical("GL", n)
    for k in range(n + 1):
        report = strata_report(datum, [1] * k + [0] * (n - k))
        assert report.dim_deformation_space == k * (n - k)
        assert report.column("dim_stratum")[0] == k * (n - k)
        assert report.column("codim")[0] == 0


def test_deformation_space_rejects_bad_mu(gl3):
    with pytest.raises(PreconditionError):
        dim_deformation_space(gl3, [0, 1, 0])
    with pytest.raises(UnsupportedInputError):
        dim_deformation_space(gl3, [2, 0, 0])


@pytest.mark.parametrize(
    "family,mu",
    [
        (("GSp", 4), [1, 1, 1]),
        (("GSp", 6), [1, 1, 1, 1]),
        (("U", 3), [1, 0, 0]),
        (("U", 4), [1, 0, 0, 0]),
        (("SO", 5), [1, 0]),
        (("SO", 6), [1, 0, 0]),
        (("PGL", 4), [0, 1, 0]),
        (("GL", 5), [1, 1, 0, 0, 0]),
    ],
)
def test_dimension_drops_by_one_along_covers(family, mu):
    """Strata are strictly monotone in the poset, in steps of exactly one."""
    datum = build_classical(*family)
    poset = enumerate_bgmu(datum, mu)
    report = strata_report(datum, mu, poset)
    dims = report.column("dim_stratum")
    for lower, upper in poset.hasse:
        assert dims[upper] - dims[lower] == 1
    for i, j in poset.order:
        if i != j:
            assert dims[i] < dims[j]


def test_report_rejects_cover_skipping_dimensions(gl4):
    poset = enumerate_bgmu(gl4, [1, 1, 0, 0])
    skewed = replace(poset, hasse=poset.hasse + ((poset.b_min, poset.b_max),))
    with pytest.raises(ConsistencyError):
        strata_report(gl4, [1, 1, 0, 0], skewed)


def test_gsp4_supersingular_row(gsp4):
    """The basic class of the Siegel case: slopes 1/2, defect 1, a curve that is all Rapoport-Zink."""
    report = strata_report(gsp4, [1, 1, 1])
    basic = report.rows[-1]
    assert basic.newton_point == RationalCoweight([Fraction(1, 2), Fraction(1, 2), 1])
    assert (basic.defect, basic.dim_stratum, basic.codim) == (1, 1, 2)
    assert (basic.dim_central_leaf, basic.dim_rz) == (0, 1)
    assert report.to_tsv().splitlines()[-1].split("\t")[2:] == ["1", "1", "2", "0", "1"]


@pytest.mark.parametrize("family,mu", [(("GSp", 4), [1, 1, 1]), (("GSp", 6), [1, 1, 1, 1]), (("GSp", 8), [1] * 5)])
def test_gsp_defect_modes_agree(family, mu):
    datum = build_classical(*family)
    poset = enumerate_bgmu(datum, mu)
    for b in poset:
        assert defect(datum, b, poset=poset) == defect(datum, b, mode=DefectMode.DIRECT)

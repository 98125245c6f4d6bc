#!/usr/bin/env python
"""Tests for `newton_strata.root_datum`."""

from fractions import Fraction
from itertools import combinations
import random

import pytest
import sympy

from newton_strata.errors import DimensionMismatchError, PreconditionError, UnsupportedInputError
from newton_strata.root_datum import (
    RationalCoweight,
    RationalWeight,
    build_classical,
    datum_from_name,
    dominance_leq,
    dominant_representative,
    from_document,
    fundamental_coweight,
    fundamental_weight,
    in_convex_hull_of_orbit,
    is_dominant,
    is_minuscule,
    pair,
    parse_group,
    reflections_preserve_roots,
    relative_simple_roots,
    rho,
    sigma_act,
    sigma_average,
    to_document,
    weyl_element,
    weight_orbit,
    weyl_group,
    weyl_orbit,
)


def test_gl4_root_system(gl4):
    """GL4 has 12 roots, 6 of them positive, and is split."""
    assert len(gl4.roots) == 12
    assert len(gl4.positive_roots) == 6
    assert gl4.semisimple_rank == 3
    assert gl4.is_split
    assert gl4.simple_roots[0] == (1, -1, 0, 0)


def test_rho(gl4):
    assert rho(gl4) == RationalWeight([Fraction(3, 2), Fraction(1, 2), Fraction(-1, 2), Fraction(-3, 2)])


@pytest.mark.parametrize(
    "name,n", [("GL", 3), ("SL", 3), ("PGL", 4), ("GSp", 4), ("GSp", 6), ("SO", 5), ("SO", 6), ("U", 3)]
)
def test_classical_data_are_root_data(name, n):
    """Every builder produces a root system closed under its reflections."""
    assert reflections_preserve_roots(build_classical(name, n))


@pytest.mark.parametrize("group,order", [("GL3", 6), ("GL4", 24), ("GSp4", 8), ("SO5", 8), ("SO6", 24), ("U3", 6)])
def test_weyl_group_order(group, order):
    assert len(weyl_group(datum_from_name(group))) == order


def test_unitary_frobenius(u3):
    """sigma swaps the two simple roots of U3 and has order 2."""
    assert u3.sigma_permutation == (1, 0)
    assert u3.sigma_order == 2
    assert not u3.is_split
    assert relative_simple_roots(u3) == ((0, 1),)
    assert sigma_act(u3, [1, 0, 0]) == RationalCoweight([0, 0, -1])
    assert sigma_average(u3, [1, 0, 0]) == RationalCoweight([Fraction(1, 2), 0, Fraction(-1, 2)])


def test_fundamental_weights(gl3):
    omega = fundamental_weight(gl3, 0)
    assert omega == RationalWeight([Fraction(2, 3), Fraction(-1, 3), Fraction(-1, 3)])
    for k, coalpha in enumerate(gl3.simple_coroots):
        assert pair(omega, coalpha) == (1 if k == 0 else 0)


def test_relative_fundamental_weight_is_orbit_average(u3):
    """For a sigma-orbit of simple roots the weight pairs to 1 with the summed coroots."""
    omega = fundamental_weight(u3, (0, 1))
    total = [a + b for a, b in zip(u3.simple_coroots[0], u3.simple_coroots[1])]
    assert pair(omega, total) == 1
    assert fundamental_coweight(u3, (0, 1)) == fundamental_coweight(u3, [1, 0])


def test_invalid_simple_root_index(gl3):
    with pytest.raises(PreconditionError):
        fundamental_weight(gl3, 5)
    with pytest.raises(PreconditionError):
        weyl_element(gl3, [2])


def test_dominant_representative(gl3):
    nu = [0, 1, 0]
    dominant, w = dominant_representative(gl3, nu)
    assert dominant == RationalCoweight([1, 0, 0])
    assert w.act(nu) == dominant


def test_dominance_order(gl3):
    half = [Fraction(1, 2), Fraction(1, 2), 0]
    assert dominance_leq(gl3, half, [1, 0, 0])
    assert not dominance_leq(gl3, [1, 0, 0], half)
    with pytest.raises(PreconditionError):
        dominance_leq(gl3, [0, 1, 0], [1, 0, 0])


def test_dominance_order_respects_center(gl3):
    """Coweights with different central parts are incomparable."""
    assert not dominance_leq(gl3, [0, 0, 0], [1, 0, 0])


def test_minuscule(gl3, gsp4):
    assert is_minuscule(gl3, [1, 0, 0])
    assert not is_minuscule(gl3, [2, 0, 0])
    assert is_minuscule(gsp4, [1, 1, 1])


def test_convex_hull_of_orbit(gl3):
    assert in_convex_hull_of_orbit(gl3, [0, 1, 0], [1, 0, 0])
    assert in_convex_hull_of_orbit(gl3, [Fraction(1, 2), Fraction(1, 2), 0], [1, 0, 0])
    assert not in_convex_hull_of_orbit(gl3, [2, -1, 0], [1, 0, 0])


def test_convex_hull_agrees_with_orbit_membership(gl4):
    """Every element of the orbit of mu lies in the hull; a longer vector does not."""
    mu = [1, 1, 0, 0]
    for nu in weyl_orbit(gl4, mu):
        assert in_convex_hull_of_orbit(gl4, nu, mu)
    assert len(weyl_orbit(gl4, mu)) == 6
    assert not in_convex_hull_of_orbit(gl4, [2, 0, 0, 0], mu)


def test_pairing_rank_mismatch():
    with pytest.raises(DimensionMismatchError):
        pair([1, 2], [3])


def test_vectors_are_exact():
    nu = RationalCoweight([1, Fraction(1, 3)])
    assert nu.to_strings() == ["1", "1/3"]
    assert not nu.is_integral()
    with pytest.raises(PreconditionError):
        nu.as_ints()


@pytest.mark.parametrize("group,expected", [("GSp4", ("GSp", 4)), ("U_3", ("U", 3)), ("gl5", ("GL", 5))])
def test_parse_group(group, expected):
    assert parse_group(group) == expected


@pytest.mark.parametrize("group", ["foo", "GL", "GSp5", "Sp4"])
def test_unsupported_groups(group):
    with pytest.raises(UnsupportedInputError):
        datum_from_name(group)


def test_document(gsp4):
    document = to_document(gsp4)
    assert document.sigma_permutation == [0, 1]
    assert from_document(document) == gsp4


def test_document_rejects_inconsistent_permutation(u3):
    document = to_document(u3).model_copy(update={"sigma_permutation": [0, 1]})
    with pytest.raises(PreconditionError):
        from_document(document)


ALL_FAMILIES = [
    ("GL", 2), ("GL", 4), ("SL", 3), ("PGL", 4), ("GSp", 4), ("GSp", 6),
    ("SO", 3), ("SO", 5), ("SO", 6), ("SO", 7), ("SO", 8), ("U", 3), ("U", 4),
]


def _expected_root_count(name, n):
    if name in ("GL", "SL", "PGL", "U"):
        return n * (n - 1)
    if name == "GSp" or (name == "SO" and n % 2):
        return 2 * (n // 2) ** 2
    return 2 * (n // 2) * (n // 2 - 1)


@pytest.mark.parametrize("name,n", ALL_FAMILIES)
def test_root_counts(name, n):
    datum = build_classical(name, n)
    assert len(datum.roots) == _expected_root_count(name, n)
    assert len(datum.positive_roots) * 2 == len(datum.roots)


@pytest.mark.parametrize("name,n", ALL_FAMILIES)
def test_rho_pairs_to_one_with_simple_coroots(name, n):
    datum = build_classical(name, n)
    for coalpha in datum.simple_coroots:
        assert pair(rho(datum), coalpha) == 1


def _random_points_below(datum, mu, rng, count):
    """Dominant representatives of random convex combinations of the orbit of mu."""
    orbit = sorted(weyl_orbit(datum, mu))
    points = [RationalCoweight(mu)]
    for _ in range(count):
        weights = [rng.randint(0, 3) for _ in orbit]
        weights[rng.randrange(len(orbit))] += 1
        total = sum(weights)
        combination = [
            sum((Fraction(c, total) * v[k] for c, v in zip(weights, orbit)), Fraction(0)) for k in range(datum.rank)
        ]
        points.append(dominant_representative(datum, combination)[0])
    return points


@pytest.mark.parametrize(
    "name,n,mu", [("GL", 4, [2, 1, 0, 0]), ("GSp", 4, [2, 1, 2]), ("SO", 5, [2, 1]), ("U", 3, [1, 1, 0])]
)
def test_dominance_is_a_partial_order(name, n, mu):
    datum = build_classical(name, n)
    points = _random_points_below(datum, mu, random.Random(n), 8)
    for a in points:
        assert dominance_leq(datum, a, a)
        assert dominance_leq(datum, a, mu)
        for b in points:
            if dominance_leq(datum, a, b) and dominance_leq(datum, b, a):
                assert a == b
            for c in points:
                if dominance_leq(datum, a, b) and dominance_leq(datum, b, c):
                    assert dominance_leq(datum, a, c)


@pytest.mark.parametrize("name,n", ALL_FAMILIES)
def test_dominant_representative_properties(name, n):
    """The representative is dominant, idempotent and lies in the orbit."""
    datum = build_classical(name, n)
    rng = random.Random(n)
    for _ in range(10):
        nu = [rng.randint(-2, 2) for _ in range(datum.rank)]
        dominant, w = dominant_representative(datum, nu)
        assert is_dominant(datum, dominant)
        assert w.act(nu) == dominant
        assert dominant_representative(datum, dominant)[0] == dominant
        assert dominant in weyl_orbit(datum, nu)


def _in_hull_by_simplices(datum, lam, mu):
    """Caratheodory: lam is in the hull iff it is a convex combination of affinely independent orbit points."""
    orbit = [tuple(sympy.Rational(c.numerator, c.denominator) for c in v) for v in weight_orbit(datum, mu)]
    target = sympy.Matrix([sympy.Rational(c.numerator, c.denominator) for c in lam] + [1])
    for size in range(1, datum.semisimple_rank + 2):
        for subset in combinations(orbit, size):
            columns = sympy.Matrix([list(v) + [1] for v in subset]).T
            try:
                solution, parameters = columns.gauss_jordan_solve(target)
            except ValueError:
                continue
            if parameters.shape[0] == 0 and all(x >= 0 for x in solution):
                return True
    return False


@pytest.mark.parametrize("name,n", [("GL", 3), ("SL", 3), ("GSp", 4), ("SO", 5), ("U", 3)])
def test_convex_hull_matches_simplex_oracle(name, n):
    datum = build_classical(name, n)
    mu = rho(datum).scale(2)
    orbit = sorted(weight_orbit(datum, mu))
    rng = random.Random(len(orbit))
    candidates = [orbit[0], orbit[0].scale(Fraction(3, 2))]
    for _ in range(12):
        first, second = rng.choice(orbit), rng.choice(orbit)
        t = Fraction(rng.randint(0, 4), 4)
        shift = Fraction(rng.randint(-3, 3), 4)
        alpha = rng.choice(datum.roots)
        candidates.append(
            RationalWeight([t * a + (1 - t) * b + shift * r for a, b, r in zip(first, second, alpha)])
        )
    for lam in candidates:
        assert in_convex_hull_of_orbit(datum, lam, mu) == _in_hull_by_simplices(datum, lam, mu)


def test_document_rejects_roots_not_closed_under_reflections(gl3):
    """Dropping the highest root leaves s_1(alpha_2) outside the root set."""
    document = to_document(gl3)
    index = document.roots.index([1, 0, -1])
    roots = document.roots[:index] + document.roots[index + 1:]
    coroots = document.coroots[:index] + document.coroots[index + 1:]
    simple = [i - (i > index) for i in document.simple_indices]
    damaged = document.model_copy(update={"roots": roots, "coroots": coroots, "simple_indices": simple})
    with pytest.raises(PreconditionError):
        from_document(damaged)

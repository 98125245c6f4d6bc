#!/usr/bin/env python
"""Tests for settings, documentation and helpers."""

from fractions import Fraction

import pytest

from newton_strata.documentation import get_documentation, get_tooltip
from newton_strata.settings import DefectMode, OutputFormat, Settings
from newton_strata.utils import (
    atomic_write_text,
    content_hash,
    format_rational,
    inverse_transpose,
    parse_int_list,
    parse_rational,
    read_cached,
    write_cached,
)


def test_enum_defaults():
    assert OutputFormat.default() == "json"
    assert DefectMode.default() == "poset"
    assert OutputFormat.options() == ["json", "dot", "tsv", "text"]


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("NEWTON_PRIME", "5")
    monkeypatch.setenv("NEWTON_PRECISION", "12")
    current = Settings()
    assert current.NEWTON_PRIME == 5
    assert current.NEWTON_PRECISION == 12
    assert current.NEWTON_DEGREE == 1


def test_rationals():
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational(" -4 ") == -4
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(ValueError):
        parse_rational("1.5")


def test_int_lists():
    assert parse_int_list("1,1,0,0") == [1, 1, 0, 0]
    assert parse_int_list("") == []
    with pytest.raises(ValueError):
        parse_int_list("1,x")


def test_inverse_transpose():
    assert inverse_transpose([[0, -1], [-1, 0]]) == ((0, -1), (-1, 0))
    with pytest.raises(ValueError):
        inverse_transpose([[2, 0], [0, 1]])


def test_content_hash_is_order_independent():
    assert content_hash({"a": 1, "b": [1, 2]}) == content_hash({"b": [1, 2], "a": 1})
    assert content_hash({"a": 1}) != content_hash({"a": 2})


def test_cache_round_trip(tmp_path):
    assert read_cached(None, "key") is None
    assert read_cached(tmp_path, "key") is None
    write_cached(tmp_path, "key", "value\n")
    assert read_cached(tmp_path, "key") == "value\n"


def test_atomic_write_creates_parents(tmp_path):
    target = tmp_path / "a" / "b.txt"
    atomic_write_text(target, "x")
    assert target.read_text(encoding="utf-8") == "x"
    assert [p.name for p in target.parent.iterdir()] == ["b.txt"]


def test_documentation():
    assert get_documentation("poset").startswith("Kottwitz poset")
    assert "Exit codes" in get_documentation("newton-strata")
    assert get_documentation("nope") == "No documentation available"
    assert get_tooltip("mu").startswith("The cocharacter")
    assert get_tooltip("nope") == "No documentation available"

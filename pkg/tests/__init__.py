"""Unit test package for newton_strata."""

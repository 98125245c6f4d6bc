"""
Utility functions for newton_strata.
"""

from fractions import Fraction
import hashlib
import json
import logging
import os
from pathlib import Path
import tempfile
from typing import Any, List, Optional, Sequence, Tuple, Union

import sympy

Rational = Union[int, Fraction]
IntVector = Tuple[int, ...]
IntMatrix = Tuple[IntVector, ...]

logger = logging.getLogger(__name__)


def format_rational(value: Rational) -> str:
    """
    Render an exact rational as "a/b", or "a" when integral.

    Args:
        value: An int or Fraction.

    Returns:
        The canonical string form.
    """
    return str(Fraction(value))


def parse_rational(text: str) -> Fraction:
    """
    Parse "a/b" or "a" into a Fraction.

    Raises:
        ValueError: If the text is not an exact rational (floats are rejected).
    """
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"Expected an exact rational like '3/2', got {text!r}")
    return Fraction(text)


def parse_int_list(text: str) -> List[int]:
    """
    Parse a comma separated list of integers such as "1,1,0,0".

    Raises:
        ValueError: If an entry is not an integer.
    """
    if not text.strip():
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as e:
        raise ValueError(f"Expected comma separated integers, got {text!r}") from e


def sympy_to_fraction(value: Any) -> Fraction:
    """Convert a sympy Rational (or int) into a Fraction."""
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_vec(matrix: Sequence[Sequence[Rational]], vector: Sequence[Rational]) -> Tuple[Any, ...]:
    """Apply a row-major matrix to a column vector."""
    return tuple(sum((a * b for a, b in zip(row, vector)), start=0) for row in matrix)


def mat_mul(left: Sequence[Sequence[int]], right: Sequence[Sequence[int]]) -> IntMatrix:
    """Product of two integer matrices given as rows."""
    columns = list(zip(*right))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in columns) for row in left)


def transpose(matrix: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(row) for row in zip(*matrix))


def inverse_transpose(matrix: Sequence[Sequence[int]]) -> IntMatrix:
    """
    Inverse transpose of a unimodular integer matrix.

    Args:
        matrix: A square integer matrix with determinant +-1.

    Returns:
        (M^-1)^T as an integer matrix.

    Raises:
        ValueError: If the matrix is not unimodular.
    """
    m = sympy.Matrix(matrix)
    if abs(m.det()) != 1:
        raise ValueError(f"Matrix {matrix} is not invertible over the integers")
    inv_t = m.inv().T
    return tuple(tuple(int(inv_t[i, j]) for j in range(inv_t.cols)) for i in range(inv_t.rows))


def content_hash(payload: Any) -> str:
    """
    Hash a JSON-serializable payload deterministically.

    Args:
        payload: Any JSON-serializable object.

    Returns:
        The hex sha256 digest of its canonical JSON encoding.
    """
    encoded = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(encoded).hexdigest()


def atomic_write_text(path: Path, text: str) -> None:
    """
    Write text to a file atomically (write to a temporary file, then rename).

    Args:
        path: Destination file. Parent directories are created.
        text: The content to write.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def read_cached(cache_dir: Optional[Path], key: str) -> Optional[str]:
    """Return a cached output for `key`, or None on a miss or when caching is disabled."""
    if cache_dir is None:
        return None
    path = cache_dir / f"{key}.out"
    if not path.is_file():
        logger.debug("cache miss %s", key)
        return None
    logger.debug("cache hit %s", key)
    return path.read_text(encoding="utf-8")


def write_cached(cache_dir: Optional[Path], key: str, text: str) -> None:
    if cache_dir is None:
        return
    atomic_write_text(cache_dir / f"{key}.out", text)

"""
Truncated Witt vectors of a finite field and sigma-linear algebra.

W(F_q)/p^N with q = p^s is modelled as the Galois ring (Z/p^N)[x]/(f) for the
least (lexicographic) monic f of degree s that is irreducible mod p. Every
element is stored as its coefficient tuple of length s, each coefficient in
[0, p^N). Results are exact modulo p^N; whenever p^N hides information that an
operation needs, a PrecisionError is raised instead of returning a guess.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
import itertools
import logging
from typing import List, Optional, Sequence, Tuple, Union

import sympy

from newton_strata.errors import NonUnitError, PrecisionError, PreconditionError
from newton_strata.schemas import MatrixDocument

logger = logging.getLogger(__name__)

Coefficients = Tuple[int, ...]
Scalar = Union["GaloisRingElement", int]


def _is_irreducible_mod_p(modulus: Sequence[int], p: int) -> bool:
    x = sympy.Symbol("x")
    expression = sum(c * x**i for i, c in enumerate(modulus))
    return bool(sympy.Poly(expression, x, modulus=p).is_irreducible)


def least_irreducible(p: int, s: int) -> Coefficients:
    """
    The least monic irreducible polynomial of degree s over F_p.

    Coefficients are listed from the constant term up (the trailing 1 is the
    leading coefficient) and compared lexicographically in that order.
    """
    for lower in itertools.product(range(p), repeat=s):
        candidate = tuple(lower) + (1,)
        if _is_irreducible_mod_p(candidate, p):
            return candidate
    raise PreconditionError(f"No irreducible polynomial of degree {s} over F_{p}")


@dataclass(frozen=True)
class GaloisRing:
    """The ring W(F_{p^s}) / p^N."""

    p: int
    precision: int
    degree: int
    modulus: Coefficients

    def __post_init__(self) -> None:
        if not sympy.isprime(self.p):
            raise PreconditionError(f"p = {self.p} is not prime")
        if self.precision < 1 or self.degree < 1:
            raise PreconditionError(f"Precision and degree must be positive, got N={self.precision}, s={self.degree}")
        if len(self.modulus) != self.degree + 1 or self.modulus[-1] != 1:
            raise PreconditionError(f"Modulus {list(self.modulus)} is not monic of degree {self.degree}")
        if not _is_irreducible_mod_p(self.modulus, self.p):
            raise PreconditionError(f"Modulus {list(self.modulus)} is not irreducible mod {self.p}")

    def __str__(self) -> str:
        return f"W(F_{self.p}^{self.degree})/{self.p}^{self.precision}"

    @property
    def characteristic(self) -> int:
        """p^N."""
        return int(self.p**self.precision)

    @property
    def residue_size(self) -> int:
        """q = p^s."""
        return int(self.p**self.degree)

    def __call__(self, value: Union[int, Sequence[int]]) -> "GaloisRingElement":
        """Coerce an integer or a coefficient sequence into the ring."""
        if isinstance(value, int):
            coefficients = [value] + [0] * (self.degree - 1)
        else:
            coefficients = list(value)
            if len(coefficients) != self.degree:
                raise PreconditionError(f"Expected {self.degree} coefficients, got {len(coefficients)}")
        return GaloisRingElement(self, tuple(c % self.characteristic for c in coefficients))

    @property
    def zero(self) -> "GaloisRingElement":
        return self(0)

    @property
    def one(self) -> "GaloisRingElement":
        return self(1)

    @property
    def generator(self) -> "GaloisRingElement":
        """The class of x; a root of the modulus."""
        if self.degree == 1:
            return self(-self.modulus[0])
        return self([0, 1] + [0] * (self.degree - 2))

    def p_power(self, k: int) -> "GaloisRingElement":
        return self(self.p**k) if k < self.precision else self.zero

    def _multiply(self, left: Coefficients, right: Coefficients) -> Coefficients:
        s = self.degree
        product = [0] * (2 * s - 1)
        for i, a in enumerate(left):
            if a:
                for j, b in enumerate(right):
                    product[i + j] += a * b
        for d in range(2 * s - 2, s - 1, -1):
            c = product[d]
            if c:
                for i in range(s):
                    product[d - s + i] -= c * self.modulus[i]
                product[d] = 0
        m = self.characteristic
        return tuple(c % m for c in product[:s])

    @cached_property
    def _frobenius_basis_images(self) -> Tuple[Coefficients, ...]:
        """sigma(x^i) for i < s, where sigma(x) is the Hensel lift of x^p."""
        f = [self(c) for c in self.modulus]

        def evaluate(coefficients: Sequence["GaloisRingElement"], y: "GaloisRingElement") -> "GaloisRingElement":
            total = self.zero
            for c in reversed(coefficients):
                total = total * y + c
            return total

        derivative = [f[i] * i for i in range(1, len(f))]
        y = self.generator**self.p
        for _ in range(self.precision + 1):
            step = evaluate(f, y) * evaluate(derivative, y).inverse()
            if step.is_zero():
                break
            y = y - step
        images = [self.one]
        for _ in range(1, self.degree):
            images.append(images[-1] * y)
        return tuple(image.coefficients for image in images)

    def _sigma_once(self, coefficients: Coefficients) -> Coefficients:
        total = [0] * self.degree
        for a, image in zip(coefficients, self._frobenius_basis_images):
            if a:
                for k, c in enumerate(image):
                    total[k] += a * c
        m = self.characteristic
        return tuple(c % m for c in total)


@lru_cache(maxsize=None)
def galois_ring(p: int, precision: int, degree: int = 1, modulus: Optional[Coefficients] = None) -> GaloisRing:
    """
    The Galois ring W(F_{p^s}) / p^N.

    Args:
        p: A prime.
        precision: N >= 1.
        degree: s >= 1.
        modulus: Optional monic modulus (constant term first); defaults to the
            least irreducible polynomial of degree s mod p.

    Raises:
        PreconditionError: If p is not prime, N or s is not positive, or the
            modulus is not monic irreducible of degree s.
    """
    if modulus is None:
        if not sympy.isprime(p):
            raise PreconditionError(f"p = {p} is not prime")
        if degree < 1:
            raise PreconditionError(f"Degree must be positive, got {degree}")
        modulus = least_irreducible(p, degree)
    return GaloisRing(p, precision, degree, tuple(modulus))


@dataclass(frozen=True)
class GaloisRingElement:
    ring: GaloisRing
    coefficients: Coefficients

    def _coerce(self, other: Scalar) -> "GaloisRingElement":
        if isinstance(other, GaloisRingElement):
            if other.ring != self.ring:
                raise PreconditionError(f"Cannot combine elements of {self.ring} and {other.ring}")
            return other
        return self.ring(other)

    def __add__(self, other: Scalar) -> "GaloisRingElement":
        other = self._coerce(other)
        return self.ring([a + b for a, b in zip(self.coefficients, other.coefficients)])

    __radd__ = __add__

    def __neg__(self) -> "GaloisRingElement":
        return self.ring([-a for a in self.coefficients])

    def __sub__(self, other: Scalar) -> "GaloisRingElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "GaloisRingElement":
        return self._coerce(other) - self

    def __mul__(self, other: Scalar) -> "GaloisRingElement":
        other = self._coerce(other)
        return GaloisRingElement(self.ring, self.ring._multiply(self.coefficients, other.coefficients))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "GaloisRingElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = self.ring.one, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def valuation(self) -> int:
        """The largest k <= N with p^k dividing self; N stands for "at least N"."""
        p, n = self.ring.p, self.ring.precision
        best = n
        for c in self.coefficients:
            k = 0
            while c and c % p == 0 and k < best:
                c //= p
                k += 1
            if c:
                best = min(best, k)
        return best

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def residue(self) -> Coefficients:
        return tuple(c % self.ring.p for c in self.coefficients)

    def inverse(self) -> "GaloisRingElement":
        """
        Multiplicative inverse of a unit.

        Raises:
            NonUnitError: If the residue is zero.
        """
        if not self.is_unit():
            raise NonUnitError(f"{self} is not a unit in {self.ring}")
        # x^(q-2) inverts the residue; Newton's iteration v <- v(2 - xv) lifts it.
        v = self ** (self.ring.residue_size - 2) if self.ring.residue_size > 2 else self
        for _ in range(self.ring.precision.bit_length() + 1):
            v = v * (2 - self * v)
        return v

    def sigma(self, power: int = 1) -> "GaloisRingElement":
        """The Frobenius automorphism applied `power` times (negative powers allowed)."""
        coefficients = self.coefficients
        for _ in range(power % self.ring.degree):
            coefficients = self.ring._sigma_once(coefficients)
        return GaloisRingElement(self.ring, coefficients)

    def divide_by_p_power(self, k: int) -> "GaloisRingElement":
        """Exact quotient by p^k; the top k digits of the result are unknown and set to 0."""
        if self.valuation() < k:
            raise NonUnitError(f"{self} is not divisible by {self.ring.p}^{k}")
        return self.ring([c // self.ring.p**k for c in self.coefficients])

    def __str__(self) -> str:
        if self.ring.degree == 1:
            return str(self.coefficients[0])
        return "[" + ", ".join(str(c) for c in self.coefficients) + "]"


def teichmuller(ring: GaloisRing, residue: Union[int, Sequence[int]]) -> GaloisRingElement:
    """
    The Teichmuller representative of a residue class.

    Computed as a^(q^(N-1)) for any lift a, which is congruent to the
    multiplicative representative modulo p^N.
    """
    lift = ring(residue if isinstance(residue, int) else [c % ring.p for c in residue])
    if lift.residue() == (0,) * ring.degree:
        return ring.zero
    for _ in range(ring.precision - 1):
        lift = lift**ring.residue_size
    return lift


@dataclass(frozen=True)
class FractionalElement:
    """
    p^(-shift) * value, an element of W[1/p] at finite precision.

    `value` is exact modulo p^N, so the represented number is exact modulo
    p^(N - shift).
    """

    value: GaloisRingElement
    shift: int = 0

    @property
    def ring(self) -> GaloisRing:
        return self.value.ring

    def _aligned(self, other: "FractionalElement") -> Tuple[GaloisRingElement, GaloisRingElement, int]:
        shift = max(self.shift, other.shift)
        left = self.value * self.ring.p_power(shift - self.shift)
        right = other.value * self.ring.p_power(shift - other.shift)
        return left, right, shift

    def __add__(self, other: "FractionalElement") -> "FractionalElement":
        left, right, shift = self._aligned(other)
        return FractionalElement(left + right, shift)

    def __neg__(self) -> "FractionalElement":
        return FractionalElement(-self.value, self.shift)

    def __sub__(self, other: "FractionalElement") -> "FractionalElement":
        return self + (-other)

    def __mul__(self, other: "FractionalElement") -> "FractionalElement":
        return FractionalElement(self.value * other.value, self.shift + other.shift)

    def times_p_power(self, k: int) -> "FractionalElement":
        """Multiply by p^k for any integer k."""
        if k < 0:
            return FractionalElement(self.value, self.shift - k)
        reduce = min(k, self.shift)
        return FractionalElement(self.value * self.ring.p_power(k - reduce), self.shift - reduce)

    def sigma(self, power: int = 1) -> "FractionalElement":
        return FractionalElement(self.value.sigma(power), self.shift)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def is_integral(self) -> bool:
        """
        Whether the represented number lies in W.

        Raises:
            PrecisionError: If the precision left after the shift cannot decide.
        """
        n = self.ring.precision
        v = self.value.valuation()
        if v < n:
            return v >= self.shift
        if self.shift <= n:
            return True
        raise PrecisionError(
            f"Cannot decide integrality of p^-{self.shift} * O(p^{n})", suggested_precision=self.shift + n
        )

    def to_integral(self) -> GaloisRingElement:
        """The element of W it represents, once known to be integral."""
        if not self.is_integral():
            raise NonUnitError(f"p^-{self.shift} * {self.value} is not integral")
        if self.value.valuation() >= self.ring.precision:
            return self.ring.zero
        return self.value.divide_by_p_power(self.shift)


# --- Matrices ---


@dataclass(frozen=True)
class FrobeniusMatrix:
    """
    The matrix A of a sigma-linear map F = A sigma on W(F_q)^n / p^N.
    """

    ring: GaloisRing
    entries: Tuple[Tuple[GaloisRingElement, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            lengths = [len(row) for row in self.entries]
            raise PreconditionError(f"Frobenius matrices must be square, got rows of lengths {lengths}")
        if any(entry.ring != self.ring for row in self.entries for entry in row):
            raise PreconditionError(f"All entries must lie in {self.ring}")

    @classmethod
    def from_integers(cls, ring: GaloisRing, rows: Sequence[Sequence[int]]) -> "FrobeniusMatrix":
        return cls(ring, tuple(tuple(ring(int(c)) for c in row) for row in rows))

    @classmethod
    def identity(cls, ring: GaloisRing, n: int) -> "FrobeniusMatrix":
        return cls.from_integers(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, ring: GaloisRing, values: Sequence[Scalar]) -> "FrobeniusMatrix":
        n = len(values)
        return cls(
            ring,
            tuple(tuple(ring(0) + values[i] if i == j else ring.zero for j in range(n)) for i in range(n)),
        )

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> GaloisRingElement:
        i, j = index
        return self.entries[i][j]

    def __matmul__(self, other: "FrobeniusMatrix") -> "FrobeniusMatrix":
        if other.size != self.size:
            raise PreconditionError(f"Cannot multiply {self.size}x{self.size} by {other.size}x{other.size}")
        n = self.size
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                total = self.ring.zero
                for k in range(n):
                    total = total + self.entries[i][k] * other.entries[k][j]
                row.append(total)
            rows.append(tuple(row))
        return FrobeniusMatrix(self.ring, tuple(rows))

    def sigma(self, power: int = 1) -> "FrobeniusMatrix":
        return FrobeniusMatrix(self.ring, tuple(tuple(e.sigma(power) for e in row) for row in self.entries))

    def norm(self) -> "FrobeniusMatrix":
        """B = A sigma(A) ... sigma^(s-1)(A), the matrix of F^s."""
        result = self
        for k in range(1, self.ring.degree):
            result = result @ self.sigma(k)
        return result

    def charpoly(self) -> List[GaloisRingElement]:
        """
        Characteristic polynomial det(t - A) by Berkowitz's division-free algorithm.

        Returns:
            Coefficients [1, a_1, ..., a_n] from the leading one down.
        """
        ring = self.ring
        polynomial = [ring.one]
        for k in range(self.size):
            # A_{k+1} = [[A_k, C], [R, a]]
            a = self.entries[k][k]
            column = [self.entries[i][k] for i in range(k)]
            row = [self.entries[k][j] for j in range(k)]
            toeplitz = [ring.one, -a]
            power = column
            for _ in range(k):
                toeplitz.append(-sum((r * c for r, c in zip(row, power)), ring.zero))
                power = [
                    sum((self.entries[i][j] * power[j] for j in range(k)), ring.zero) for i in range(k)
                ]
            polynomial = [
                sum((toeplitz[i - j] * polynomial[j] for j in range(min(i, k) + 1)), ring.zero)
                for i in range(k + 2)
            ]
        return polynomial

    def determinant(self) -> GaloisRingElement:
        last = self.charpoly()[-1]
        return last if self.size % 2 == 0 else -last

    def inverse(self) -> "FrobeniusMatrix":
        """
        Gauss-Jordan inverse over the local ring.

        Raises:
            NonUnitError: If the determinant is not a unit.
        """
        n, ring = self.size, self.ring
        work = [list(row) + [ring.one if i == j else ring.zero for j in range(n)] for i, row in enumerate(self.entries)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col].is_unit()), None)
            if pivot is None:
                raise NonUnitError(f"Matrix is not invertible over {ring}")
            work[col], work[pivot] = work[pivot], work[col]
            scale = work[col][col].inverse()
            work[col] = [e * scale for e in work[col]]
            for r in range(n):
                if r != col and not work[r][col].is_zero():
                    factor = work[r][col]
                    work[r] = [e - factor * f for e, f in zip(work[r], work[col])]
        return FrobeniusMatrix(ring, tuple(tuple(row[n:]) for row in work))

    def exterior_square(self) -> "FrobeniusMatrix":
        """The induced matrix on the basis e_i ^ e_j (i < j), ordered lexicographically."""
        pairs = list(itertools.combinations(range(self.size), 2))
        a = self.entries
        return FrobeniusMatrix(
            self.ring,
            tuple(tuple(a[i][k] * a[j][l] - a[i][l] * a[j][k] for k, l in pairs) for i, j in pairs),
        )

    def to_document(self) -> MatrixDocument:
        return MatrixDocument(
            p=self.ring.p,
            precision=self.ring.precision,
            degree=self.ring.degree,
            modulus=list(self.ring.modulus),
            entries=[[list(e.coefficients) for e in row] for row in self.entries],
        )

    @classmethod
    def from_document(cls, document: MatrixDocument) -> "FrobeniusMatrix":
        ring = galois_ring(document.p, document.precision, document.degree, tuple(document.modulus))
        return cls(ring, tuple(tuple(ring(coefficients) for coefficients in row) for row in document.entries))


def newton_polygon(valuations: Sequence[Optional[int]]) -> Tuple[List[Fraction], List[Fraction]]:
    """
    Lower convex hull of the points (i, v_i).

    Args:
        valuations: v_0 .. v_n with v_0 and v_n known; None marks a
            coefficient that vanishes at the working precision.

    Returns:
        (slopes, heights): the slope of each unit segment in ascending order,
        and the height of the hull above every x = 0 .. n.
    """
    points = [(i, v) for i, v in enumerate(valuations) if v is not None]
    hull: List[Tuple[int, int]] = []
    for point in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the chord
            if (y2 - y1) * (point[0] - x1) >= (point[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(point)
    slopes: List[Fraction] = []
    heights: List[Fraction] = [Fraction(hull[0][1])]
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = Fraction(y2 - y1, x2 - x1)
        for step in range(1, x2 - x1 + 1):
            slopes.append(slope)
            heights.append(y1 + slope * step)
    return slopes, heights


def _certified_polygon(B: FrobeniusMatrix) -> List[Fraction]:
    ring = B.ring
    n, precision = B.size, ring.precision
    coefficients = B.charpoly()
    valuations: List[Optional[int]] = []
    for c in coefficients:
        v = c.valuation()
        valuations.append(v if v < precision else None)
    if valuations[-1] is None:
        raise PrecisionError(
            f"The determinant vanishes modulo {ring.p}^{precision}", suggested_precision=2 * precision
        )
    slopes, heights = newton_polygon(valuations)
    needed = max((heights[i] for i, v in enumerate(valuations) if v is None), default=Fraction(0))
    if needed > precision:
        raise PrecisionError(
            f"A coefficient of the characteristic polynomial vanishes modulo {ring.p}^{precision} "
            f"where the polygon needs valuation {needed}",
            suggested_precision=int(needed) + 1,
        )
    logger.debug("Newton polygon valuations %s -> slopes %s", valuations, [str(x) for x in slopes])
    return slopes


def newton_slopes(A: FrobeniusMatrix) -> List[Fraction]:
    """
    Newton slopes of the isocrystal F = A sigma, in descending order.

    The slopes are 1/s times the slopes of the Newton polygon of the
    characteristic polynomial of B = A sigma(A) ... sigma^(s-1)(A).

    Raises:
        PrecisionError: If p^N hides a coefficient the polygon depends on.
    """
    s = A.ring.degree
    slopes = [slope / s for slope in _certified_polygon(A.norm())]
    return sorted(slopes, reverse=True)


def sigma_conjugate(g: FrobeniusMatrix, A: FrobeniusMatrix) -> FrobeniusMatrix:
    """
    g A sigma(g)^-1.

    Raises:
        NonUnitError: If g is not invertible.
    """
    return g @ A @ g.sigma().inverse()


def kappa_of_matrix(A: FrobeniusMatrix) -> int:
    """
    The Kottwitz point of F = A sigma for GL_n: val(det B) / s.

    Raises:
        PrecisionError: If the determinant vanishes at the working precision.
    """
    ring = A.ring
    v = A.norm().determinant().valuation()
    if v >= ring.precision:
        raise PrecisionError(
            f"The determinant vanishes modulo {ring.p}^{ring.precision}", suggested_precision=2 * ring.precision
        )
    return v // ring.degree

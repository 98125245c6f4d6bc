"""
Based root data with a Frobenius action.

Lattices are written in a fixed coordinate basis; the pairing between
X^*(T) and X_*(T) is the dot product of coordinate vectors. Simple roots are
addressed by their position in `RootDatum.simple_indices` (0-based), and a
relative simple root of a non-split datum is a sigma-orbit of such positions.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
import logging
import re
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Sequence,
    Tuple,
    TypeVar,
    Union,
)

import sympy

from newton_strata.errors import (
    DimensionMismatchError,
    PreconditionError,
    UnsupportedInputError,
    WeylGroupTooLargeError,
)
from newton_strata.schemas import RootDatumDocument
from newton_strata.settings import GroupFamily, settings
from newton_strata.utils import (
    IntMatrix,
    IntVector,
    Rational,
    identity_matrix,
    inverse_transpose,
    mat_mul,
    mat_vec,
    sympy_to_fraction,
    transpose,
)

logger = logging.getLogger(__name__)

V = TypeVar("V", bound="RationalVector")
SimpleRoot = Union[int, Sequence[int]]


@dataclass(frozen=True, order=True, init=False)
class RationalVector:
    """An exact rational vector. Never holds floats."""

    coords: Tuple[Fraction, ...]

    def __init__(self, coords: Iterable[Rational]) -> None:
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in coords))

    @classmethod
    def zero(cls: type[V], rank: int) -> V:
        return cls([0] * rank)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def __add__(self: V, other: "VectorLike") -> V:
        _check_same_rank(self, other)
        return type(self)(a + Fraction(b) for a, b in zip(self.coords, other))

    def __sub__(self: V, other: "VectorLike") -> V:
        _check_same_rank(self, other)
        return type(self)(a - Fraction(b) for a, b in zip(self.coords, other))

    def __neg__(self: V) -> V:
        return type(self)(-a for a in self.coords)

    def scale(self: V, factor: Rational) -> V:
        return type(self)(a * factor for a in self.coords)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coords)

    def as_ints(self) -> IntVector:
        """
        Return the coordinates as integers.

        Raises:
            PreconditionError: If some coordinate is not an integer.
        """
        if not self.is_integral():
            raise PreconditionError(f"{self} is not integral")
        return tuple(int(a) for a in self.coords)

    def to_strings(self) -> List[str]:
        return [str(a) for a in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"


class RationalCoweight(RationalVector):
    """An element of X_*(T) tensor Q (Newton points, cocharacters)."""


class RationalWeight(RationalVector):
    """An element of X^*(T) tensor Q (rho, fundamental weights, representation weights)."""


VectorLike = Union[RationalVector, Sequence[Rational]]


def _check_same_rank(left: VectorLike, right: VectorLike) -> None:
    if len(left) != len(right):
        raise DimensionMismatchError(f"Rank mismatch: {len(left)} vs {len(right)}")


def pair(chi: VectorLike, nu: VectorLike) -> Fraction:
    """
    The perfect pairing <chi, nu> between X^*(T)_Q and X_*(T)_Q.

    Args:
        chi: A weight.
        nu: A coweight.

    Returns:
        The exact rational value of the pairing.

    Raises:
        DimensionMismatchError: If the ranks differ.
    """
    _check_same_rank(chi, nu)
    return sum((Fraction(a) * Fraction(b) for a, b in zip(chi, nu)), start=Fraction(0))


@dataclass(frozen=True)
class RootDatum:
    """
    A based root datum (X^*, R, X_*, R^v) with a diagram automorphism sigma.

    `roots` live in X^*(T) and `coroots` in X_*(T), index aligned. `sigma` is
    the Frobenius action on X^*(T) as a row-major integer matrix and must
    permute the simple roots; its action on X_*(T) is the inverse transpose.
    """

    rank: int
    roots: Tuple[IntVector, ...]
    coroots: Tuple[IntVector, ...]
    simple_indices: Tuple[int, ...]
    sigma: IntMatrix
    name: str = ""
    family: str = ""
    size: int = 0

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise PreconditionError(f"Rank must be positive, got {self.rank}")
        if len(self.roots) != len(self.coroots):
            raise PreconditionError(f"{len(self.roots)} roots but {len(self.coroots)} coroots")
        for alpha, coalpha in zip(self.roots, self.coroots):
            if len(alpha) != self.rank or len(coalpha) != self.rank:
                raise DimensionMismatchError(f"Root {alpha} / coroot {coalpha} does not have rank {self.rank}")
            if pair(alpha, coalpha) != 2:
                raise PreconditionError(f"<{alpha}, {coalpha}> != 2")
        if len(self.sigma) != self.rank or any(len(row) != self.rank for row in self.sigma):
            raise DimensionMismatchError(f"sigma must be a {self.rank}x{self.rank} matrix")
        for i in self.simple_indices:
            if not 0 <= i < len(self.roots):
                raise PreconditionError(f"Simple index {i} out of range")
        # raises when sigma is not a diagram automorphism
        _ = self.sigma_permutation, self.sigma_order

    def __str__(self) -> str:
        return self.name or f"RootDatum(rank={self.rank})"

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_indices)

    @cached_property
    def simple_roots(self) -> Tuple[IntVector, ...]:
        return tuple(self.roots[i] for i in self.simple_indices)

    @cached_property
    def simple_coroots(self) -> Tuple[IntVector, ...]:
        return tuple(self.coroots[i] for i in self.simple_indices)

    @cached_property
    def cartan_matrix(self) -> IntMatrix:
        """C[j][k] = <alpha_j, alpha_k^v>."""
        return tuple(
            tuple(int(pair(alpha, coalpha)) for coalpha in self.simple_coroots) for alpha in self.simple_roots
        )

    @cached_property
    def sigma_coweight_matrix(self) -> IntMatrix:
        return inverse_transpose(self.sigma)

    @cached_property
    def sigma_permutation(self) -> Tuple[int, ...]:
        position = {root: k for k, root in enumerate(self.simple_roots)}
        permutation = []
        for root in self.simple_roots:
            image = tuple(int(x) for x in mat_vec(self.sigma, root))
            if image not in position:
                raise PreconditionError(f"sigma maps the simple root {root} to {image}, which is not simple")
            permutation.append(position[image])
        return tuple(permutation)

    @cached_property
    def sigma_order(self) -> int:
        identity = identity_matrix(self.rank)
        power, order = self.sigma, 1
        while power != identity:
            power, order = mat_mul(self.sigma, power), order + 1
            if order > 64:
                raise PreconditionError("sigma does not have finite order")
        return order

    @property
    def is_split(self) -> bool:
        return self.sigma == identity_matrix(self.rank)

    @cached_property
    def fundamental_weights(self) -> Tuple["RationalWeight", ...]:
        """omega_i in the span of the roots with <omega_i, alpha_k^v> = delta_ik."""
        return self._dual_basis(self.simple_roots, transpose_inverse=False, factory=RationalWeight)

    @cached_property
    def fundamental_coweights(self) -> Tuple["RationalCoweight", ...]:
        """omega_i^v in the span of the coroots with <alpha_k, omega_i^v> = delta_ik."""
        return self._dual_basis(self.simple_coroots, transpose_inverse=True, factory=RationalCoweight)

    def _dual_basis(
        self, basis: Sequence[IntVector], transpose_inverse: bool, factory: Callable[[List[Fraction]], V]
    ) -> Tuple[V, ...]:
        r = self.semisimple_rank
        if r == 0:
            return ()
        inverse = sympy.Matrix(self.cartan_matrix).inv()
        result = []
        for i in range(r):
            coeffs = [sympy_to_fraction(inverse[j, i] if transpose_inverse else inverse[i, j]) for j in range(r)]
            coords = [sum((c * b[k] for c, b in zip(coeffs, basis)), Fraction(0)) for k in range(self.rank)]
            result.append(factory(coords))
        return tuple(result)

    def root_coefficients(self, alpha: VectorLike) -> Tuple[Fraction, ...]:
        """Coefficients of a root-span weight in the basis of simple roots."""
        return tuple(pair(alpha, coweight) for coweight in self.fundamental_coweights)

    @cached_property
    def positive_root_indices(self) -> Tuple[int, ...]:
        return tuple(k for k, alpha in enumerate(self.roots) if all(c >= 0 for c in self.root_coefficients(alpha)))

    @cached_property
    def positive_roots(self) -> Tuple[IntVector, ...]:
        return tuple(self.roots[k] for k in self.positive_root_indices)


@dataclass(frozen=True)
class WeylElement:
    """
    An element of the Weyl group given by a word in the simple reflections.

    `matrix` is s_{word[0]} ... s_{word[-1]} acting on X_*(T); `weight_matrix`
    is the same element acting on X^*(T) (the inverse transpose).
    """

    word: Tuple[int, ...]
    matrix: IntMatrix
    weight_matrix: IntMatrix

    def act(self, nu: VectorLike) -> RationalCoweight:
        return RationalCoweight(mat_vec(self.matrix, list(nu)))

    def act_on_weight(self, chi: VectorLike) -> RationalWeight:
        return RationalWeight(mat_vec(self.weight_matrix, list(chi)))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(
            self.word + other.word,
            mat_mul(self.matrix, other.matrix),
            mat_mul(self.weight_matrix, other.weight_matrix),
        )

    def inverse(self) -> "WeylElement":
        return WeylElement(tuple(reversed(self.word)), transpose(self.weight_matrix), transpose(self.matrix))

    def is_identity(self) -> bool:
        return self.matrix == identity_matrix(len(self.matrix))

    @property
    def length(self) -> int:
        """Length of the stored word (an upper bound for the Coxeter length)."""
        return len(self.word)


def _reflection_matrices(datum: RootDatum, position: int) -> Tuple[IntMatrix, IntMatrix]:
    alpha, coalpha = datum.simple_roots[position], datum.simple_coroots[position]
    n = datum.rank
    on_coweights = tuple(tuple((1 if a == b else 0) - coalpha[a] * alpha[b] for b in range(n)) for a in range(n))
    on_weights = tuple(tuple((1 if a == b else 0) - alpha[a] * coalpha[b] for b in range(n)) for a in range(n))
    return on_coweights, on_weights


def _check_position(datum: RootDatum, position: int) -> None:
    if not 0 <= position < datum.semisimple_rank:
        raise PreconditionError(
            f"Invalid simple root index {position} for {datum} (expected 0..{datum.semisimple_rank - 1})"
        )


def weyl_element(datum: RootDatum, word: Sequence[int]) -> WeylElement:
    """
    Build the Weyl element s_{word[0]} ... s_{word[-1]}.

    Args:
        datum: The ambient root datum.
        word: 0-based positions of simple reflections.

    Raises:
        PreconditionError: If a letter is not a simple root position.
    """
    identity = identity_matrix(datum.rank)
    element = WeylElement((), identity, identity)
    for position in word:
        _check_position(datum, position)
        on_coweights, on_weights = _reflection_matrices(datum, position)
        element = element * WeylElement((position,), on_coweights, on_weights)
    return element


def reflect_coweight(datum: RootDatum, position: int, nu: VectorLike) -> RationalCoweight:
    alpha, coalpha = datum.simple_roots[position], datum.simple_coroots[position]
    value = pair(alpha, nu)
    return RationalCoweight(Fraction(x) - value * c for x, c in zip(nu, coalpha))


def reflect_weight(datum: RootDatum, position: int, chi: VectorLike) -> RationalWeight:
    alpha, coalpha = datum.simple_roots[position], datum.simple_coroots[position]
    value = pair(chi, coalpha)
    return RationalWeight(Fraction(x) - value * a for x, a in zip(chi, alpha))


def rho(datum: RootDatum) -> RationalWeight:
    """Half the sum of the positive roots."""
    total = RationalWeight.zero(datum.rank)
    for alpha in datum.positive_roots:
        total = total + alpha
    return total.scale(Fraction(1, 2))


def is_dominant(datum: RootDatum, nu: VectorLike) -> bool:
    return all(pair(alpha, nu) >= 0 for alpha in datum.simple_roots)


def is_dominant_weight(datum: RootDatum, chi: VectorLike) -> bool:
    return all(pair(chi, coalpha) >= 0 for coalpha in datum.simple_coroots)


def is_minuscule(datum: RootDatum, mu: VectorLike) -> bool:
    """True iff <alpha, mu> lies in {-1, 0, 1} for every root alpha."""
    return all(pair(alpha, mu) in (-1, 0, 1) for alpha in datum.roots)


def dominant_representative(datum: RootDatum, nu: VectorLike) -> Tuple[RationalCoweight, WeylElement]:
    """
    The unique dominant element of the Weyl orbit of a coweight.

    Args:
        datum: The ambient root datum.
        nu: Any rational coweight.

    Returns:
        A pair (nu_dom, w) with w.act(nu) == nu_dom.
    """
    current = RationalCoweight(nu)
    applied: List[int] = []
    while True:
        for position, alpha in enumerate(datum.simple_roots):
            if pair(alpha, current) < 0:
                current = reflect_coweight(datum, position, current)
                applied.append(position)
                break
        else:
            break
    return current, weyl_element(datum, tuple(reversed(applied)))


def dominant_weight(datum: RootDatum, chi: VectorLike) -> Tuple[RationalWeight, WeylElement]:
    """Weight analogue of `dominant_representative`; w.act_on_weight(chi) is dominant."""
    current = RationalWeight(chi)
    applied: List[int] = []
    while True:
        for position, coalpha in enumerate(datum.simple_coroots):
            if pair(current, coalpha) < 0:
                current = reflect_weight(datum, position, current)
                applied.append(position)
                break
        else:
            break
    return current, weyl_element(datum, tuple(reversed(applied)))


def dominance_leq(datum: RootDatum, nu1: VectorLike, nu2: VectorLike) -> bool:
    """
    Dominance order on dominant coweights.

    nu1 <= nu2 iff nu2 - nu1 is a nonnegative rational combination of simple
    coroots. Coweights with different central parts are never comparable.

    Raises:
        PreconditionError: If either input is not dominant.
    """
    for nu in (nu1, nu2):
        if not is_dominant(datum, nu):
            raise PreconditionError(f"{RationalCoweight(nu)} is not dominant for {datum}")
    difference = RationalCoweight(nu2) - nu1
    return _nonnegative_combination(difference, datum.fundamental_weights, datum.simple_coroots)


def weight_dominance_leq(datum: RootDatum, chi1: VectorLike, chi2: VectorLike) -> bool:
    """Dominance order on weights: chi2 - chi1 a nonnegative combination of simple roots."""
    difference = RationalWeight(chi2) - chi1
    return _nonnegative_combination(difference, datum.fundamental_coweights, datum.simple_roots)


def _nonnegative_combination(
    difference: RationalVector, dual_basis: Sequence[RationalVector], basis: Sequence[IntVector]
) -> bool:
    coefficients = [pair(dual, difference) for dual in dual_basis]
    if any(c < 0 for c in coefficients):
        return False
    rebuilt = [sum((c * b[k] for c, b in zip(coefficients, basis)), Fraction(0)) for k in range(len(difference))]
    return tuple(rebuilt) == difference.coords


def _as_orbit(datum: RootDatum, beta: SimpleRoot) -> Tuple[int, ...]:
    orbit = (beta,) if isinstance(beta, int) else tuple(beta)
    if not orbit:
        raise PreconditionError("Empty relative simple root")
    for position in orbit:
        _check_position(datum, position)
    return orbit


def fundamental_weight(datum: RootDatum, beta: SimpleRoot) -> RationalWeight:
    """
    The adjoint-normalized fundamental weight omega_{beta^v}.

    For a relative simple root (a sigma-orbit of simple positions) this is
    the average of the absolute fundamental weights over the orbit, so that it
    pairs to 1 with the sum of the coroots in the orbit.

    Raises:
        PreconditionError: On an invalid simple root index.
    """
    orbit = _as_orbit(datum, beta)
    total = RationalWeight.zero(datum.rank)
    for position in orbit:
        total = total + datum.fundamental_weights[position]
    return total.scale(Fraction(1, len(orbit)))


def fundamental_coweight(datum: RootDatum, beta: SimpleRoot) -> RationalCoweight:
    """Coweight counterpart of `fundamental_weight` (average over the orbit)."""
    orbit = _as_orbit(datum, beta)
    total = RationalCoweight.zero(datum.rank)
    for position in orbit:
        total = total + datum.fundamental_coweights[position]
    return total.scale(Fraction(1, len(orbit)))


def relative_simple_roots(datum: RootDatum) -> Tuple[Tuple[int, ...], ...]:
    """The sigma-orbits of simple root positions, each sorted, ordered by smallest member."""
    seen: set[int] = set()
    orbits = []
    for start in range(datum.semisimple_rank):
        if start in seen:
            continue
        orbit, position = [], start
        while position not in orbit:
            orbit.append(position)
            position = datum.sigma_permutation[position]
        seen.update(orbit)
        orbits.append(tuple(sorted(orbit)))
    return tuple(orbits)


def sigma_act(datum: RootDatum, nu: VectorLike) -> RationalCoweight:
    """The Frobenius action on X_*(T)_Q."""
    return RationalCoweight(mat_vec(datum.sigma_coweight_matrix, list(nu)))


def sigma_average(datum: RootDatum, nu: VectorLike) -> RationalCoweight:
    """Average of nu over the (finite) group generated by sigma."""
    current = RationalCoweight(nu)
    total = RationalCoweight.zero(datum.rank)
    for _ in range(datum.sigma_order):
        total = total + current
        current = sigma_act(datum, current)
    return total.scale(Fraction(1, datum.sigma_order))


def _orbit(start: V, reflect: Callable[[int, V], V], generators: int) -> FrozenSet[V]:
    limit = settings.NEWTON_WEYL_LIMIT
    seen = {start}
    queue = deque([start])
    while queue:
        vector = queue.popleft()
        for position in range(generators):
            image = reflect(position, vector)
            if image not in seen:
                seen.add(image)
                if len(seen) > limit:
                    raise WeylGroupTooLargeError(f"Orbit of {start} exceeds the limit of {limit} elements")
                queue.append(image)
    return frozenset(seen)


def weyl_orbit(datum: RootDatum, nu: VectorLike) -> FrozenSet[RationalCoweight]:
    """The full Weyl orbit of a coweight."""
    return _orbit(
        RationalCoweight(nu), lambda i, v: reflect_coweight(datum, i, v), datum.semisimple_rank
    )


def weight_orbit(datum: RootDatum, chi: VectorLike) -> FrozenSet[RationalWeight]:
    """The full Weyl orbit of a weight."""
    return _orbit(RationalWeight(chi), lambda i, v: reflect_weight(datum, i, v), datum.semisimple_rank)


def weyl_group(datum: RootDatum) -> List[WeylElement]:
    """
    Materialize the Weyl group, each element with a reduced word.

    Raises:
        WeylGroupTooLargeError: If the order exceeds NEWTON_WEYL_LIMIT.
    """
    limit = settings.NEWTON_WEYL_LIMIT
    identity = weyl_element(datum, ())
    generators = [weyl_element(datum, (i,)) for i in range(datum.semisimple_rank)]
    elements: Dict[IntMatrix, WeylElement] = {identity.matrix: identity}
    queue = deque([identity])
    while queue:
        element = queue.popleft()
        for generator in generators:
            product = element * generator
            if product.matrix not in elements:
                elements[product.matrix] = product
                if len(elements) > limit:
                    raise WeylGroupTooLargeError(f"The Weyl group of {datum} has more than {limit} elements")
                queue.append(product)
    logger.debug("materialized Weyl group of %s with %d elements", datum, len(elements))
    return list(elements.values())


def in_convex_hull_of_orbit(datum: RootDatum, lam: VectorLike, mu_dom: VectorLike) -> bool:
    """
    Whether a weight lies in the convex hull of the Weyl orbit of mu_dom.

    Uses the standard characterization: the dominant representative of lam
    is <= mu_dom in the dominance order.

    Raises:
        PreconditionError: If mu_dom is not dominant.
    """
    if not is_dominant_weight(datum, mu_dom):
        raise PreconditionError(f"{RationalWeight(mu_dom)} is not dominant for {datum}")
    lam_dom, _ = dominant_weight(datum, lam)
    return weight_dominance_leq(datum, lam_dom, mu_dom)


def reflections_preserve_roots(datum: RootDatum) -> bool:
    """Check that every root reflection s_alpha permutes the root set."""
    roots = set(datum.roots)
    for alpha, coalpha in zip(datum.roots, datum.coroots):
        for beta in datum.roots:
            value = int(pair(beta, coalpha))
            image = tuple(b - value * a for a, b in zip(alpha, beta))
            if image not in roots:
                return False
    return True


# --- Builders ---


def _unit(n: int, *entries: Tuple[int, int]) -> IntVector:
    vector = [0] * n
    for index, value in entries:
        vector[index] += value
    return tuple(vector)


def _negate(vector: IntVector) -> IntVector:
    return tuple(-x for x in vector)


def _assemble(
    rank: int,
    positives: Sequence[Tuple[IntVector, IntVector]],
    simple_roots: Sequence[IntVector],
    sigma: IntMatrix,
    name: str,
    family: str,
    size: int,
) -> RootDatum:
    roots = [alpha for alpha, _ in positives] + [_negate(alpha) for alpha, _ in positives]
    coroots = [coalpha for _, coalpha in positives] + [_negate(coalpha) for _, coalpha in positives]
    simple_indices = tuple(roots.index(alpha) for alpha in simple_roots)
    return RootDatum(rank, tuple(roots), tuple(coroots), simple_indices, sigma, name, family, size)


def _type_a_cartan_row(r: int, k: int) -> IntVector:
    return tuple(2 if l == k else (-1 if abs(l - k) == 1 else 0) for l in range(r))


def _build_gl(n: int, sigma: IntMatrix, family: str) -> RootDatum:
    positives = [(_unit(n, (i, 1), (j, -1)),) * 2 for i in range(n) for j in range(i + 1, n)]
    simple = [_unit(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
    return _assemble(n, positives, simple, sigma, f"{family}{n}", family, n)


def _build_type_a_semisimple(n: int, simply_connected: bool) -> RootDatum:
    r = n - 1
    positives = []
    for i in range(r):
        for j in range(i + 1, n):
            lattice = tuple(1 if i <= k < j else 0 for k in range(r))
            cartan = tuple(sum(_type_a_cartan_row(r, k)[l] for k in range(i, j)) for l in range(r))
            positives.append((cartan, lattice) if simply_connected else (lattice, cartan))
    if simply_connected:
        simple = [_type_a_cartan_row(r, k) for k in range(r)]
        family = GroupFamily.SL.value
    else:
        simple = [_unit(r, (k, 1)) for k in range(r)]
        family = GroupFamily.PGL.value
    return _assemble(r, positives, simple, identity_matrix(r), f"{family}{n}", family, n)


def _build_gsp(two_n: int) -> RootDatum:
    n = two_n // 2
    rank, zero = n + 1, n
    positives = []
    for i in range(n):
        for j in range(i + 1, n):
            positives.append((_unit(rank, (i, 1), (j, -1)), _unit(rank, (i, 1), (j, -1))))
            positives.append((_unit(rank, (i, 1), (j, 1), (zero, -1)), _unit(rank, (i, 1), (j, 1))))
        positives.append((_unit(rank, (i, 2), (zero, -1)), _unit(rank, (i, 1))))
    simple = [_unit(rank, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_unit(rank, (n - 1, 2), (zero, -1))]
    return _assemble(rank, positives, simple, identity_matrix(rank), f"GSp{two_n}", GroupFamily.GSP.value, two_n)


def _build_so(n: int) -> RootDatum:
    m = n // 2
    positives = []
    for i in range(m):
        for j in range(i + 1, m):
            positives.append((_unit(m, (i, 1), (j, -1)),) * 2)
            positives.append((_unit(m, (i, 1), (j, 1)),) * 2)
    simple = [_unit(m, (i, 1), (i + 1, -1)) for i in range(m - 1)]
    if n % 2:
        positives += [(_unit(m, (i, 1)), _unit(m, (i, 2))) for i in range(m)]
        simple.append(_unit(m, (m - 1, 1)))
    else:
        simple.append(_unit(m, (m - 2, 1), (m - 1, 1)))
    return _assemble(m, positives, simple, identity_matrix(m), f"SO{n}", GroupFamily.SO.value, n)


def build_classical(name: str, n: int) -> RootDatum:
    """
    Build the root datum of a classical group.

    Args:
        name: One of GL, SL, PGL, GSp, SO, U (case-insensitive).
        n: The size: GL_n, SL_n, PGL_n, GSp_n (n even), SO_n, U_n.

    Returns:
        The root datum in standard coordinates. U_n is the unramified
        unitary group: the GL_n datum with sigma(e_i) = -e_{n+1-i}.

    Raises:
        UnsupportedInputError: On an unknown family or invalid size.
    """
    family = _normalize_family(name)
    if family == GroupFamily.GL and n >= 1:
        return _build_gl(n, identity_matrix(n), GroupFamily.GL.value)
    if family in (GroupFamily.SL, GroupFamily.PGL) and n >= 2:
        return _build_type_a_semisimple(n, simply_connected=family == GroupFamily.SL)
    if family == GroupFamily.GSP and n >= 2 and n % 2 == 0:
        return _build_gsp(n)
    if family == GroupFamily.SO and n >= 3:
        return _build_so(n)
    if family == GroupFamily.U and n >= 2:
        flip = tuple(tuple(-1 if a == n - 1 - b else 0 for b in range(n)) for a in range(n))
        return _build_gl(n, flip, GroupFamily.U.value)
    raise UnsupportedInputError(f"Unsupported group {name}{n}")


def _normalize_family(name: str) -> GroupFamily:
    for family in GroupFamily:
        if family.value.lower() == name.lower():
            return family
    raise UnsupportedInputError(f"Unknown group family {name!r}; expected one of {GroupFamily.options()}")


_GROUP_PATTERN = re.compile(r"^\s*([A-Za-z]+?)_?(\d+)\s*$")


def parse_group(name: str) -> Tuple[str, int]:
    """
    Split a group name such as "GL4", "GSp4" or "U_3" into (family, n).

    Raises:
        UnsupportedInputError: If the name cannot be parsed.
    """
    match = _GROUP_PATTERN.match(name)
    if not match:
        raise UnsupportedInputError(f"Cannot parse group {name!r}; expected e.g. GL4, GSp4, U3")
    return _normalize_family(match.group(1)).value, int(match.group(2))


def datum_from_name(name: str) -> RootDatum:
    return build_classical(*parse_group(name))


# --- Serialization ---


def to_document(datum: RootDatum) -> RootDatumDocument:
    return RootDatumDocument(
        rank=datum.rank,
        roots=[list(alpha) for alpha in datum.roots],
        coroots=[list(coalpha) for coalpha in datum.coroots],
        simple_indices=list(datum.simple_indices),
        sigma_permutation=list(datum.sigma_permutation),
        sigma_matrix=[list(row) for row in datum.sigma],
        name=datum.name,
        family=datum.family,
        size=datum.size,
    )


def from_document(document: RootDatumDocument) -> RootDatum:
    """
    Rebuild a root datum from its document.

    Raises:
        PreconditionError: If the stored sigma permutation disagrees with the
            matrix, or a root reflection does not permute the roots.
    """
    datum = RootDatum(
        rank=document.rank,
        roots=tuple(tuple(alpha) for alpha in document.roots),
        coroots=tuple(tuple(coalpha) for coalpha in document.coroots),
        simple_indices=tuple(document.simple_indices),
        sigma=tuple(tuple(row) for row in document.sigma_matrix),
        name=document.name,
        family=document.family,
        size=document.size,
    )
    if tuple(document.sigma_permutation) != datum.sigma_permutation:
        raise PreconditionError(
            f"Stored sigma permutation {document.sigma_permutation} does not match {datum.sigma_permutation}"
        )
    if not reflections_preserve_roots(datum):
        raise PreconditionError(f"The roots of {datum} are not stable under their reflections")
    return datum

"""
Root combinatorics of central leaves.

A leaf datum is a pair (mu', w) with b = w sigma(mu')(p): mu' is a Weyl
conjugate of mu and delta = w sigma acts on the character and cocharacter
lattices. The Newton point of b is the delta-average nu of mu', which must be
anti-dominant and fixed by w. From these data come the root sets R_mu, R_nu,
R_{mu,nu} and R_C, the last being the coordinates of the central leaf in the
deformation space.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
import logging
import random
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from newton_strata.errors import (
    ConsistencyError,
    LeafConditionError,
    PreconditionError,
    UnsupportedInputError,
)
from newton_strata.root_datum import (
    RationalCoweight,
    RootDatum,
    VectorLike,
    WeylElement,
    pair,
    weyl_group,
    weyl_orbit,
)
from newton_strata.schemas import OrbitPairingDocument, RootSetsDocument
from newton_strata.settings import GroupFamily
from newton_strata.utils import IntMatrix, IntVector, identity_matrix, mat_mul, mat_vec, transpose
from newton_strata.witt import FractionalElement, FrobeniusMatrix, GaloisRing, GaloisRingElement, teichmuller

logger = logging.getLogger(__name__)

Root = IntVector


def _apply(matrix: IntMatrix, vector: Sequence[int]) -> IntVector:
    return tuple(int(x) for x in mat_vec(matrix, vector))


@dataclass(frozen=True)
class LeafDatum:
    """
    A validated pair (mu', w).

    `delta` is w sigma on X_*(T) and `delta_weight` is w sigma on X^*(T);
    `order` is the order N of delta and `nu` the average of delta^k(mu'),
    k = 1 .. N.
    """

    datum: RootDatum
    mu_prime: RationalCoweight
    w: WeylElement
    delta: IntMatrix
    delta_weight: IntMatrix
    order: int
    nu: RationalCoweight

    def delta_on_root(self, alpha: Root, power: int = 1) -> Root:
        """delta^power(alpha); negative powers use the inverse."""
        matrix = self.delta_weight if power >= 0 else transpose(self.delta)
        for _ in range(abs(power)):
            alpha = _apply(matrix, alpha)
        return alpha

    @cached_property
    def mu_images(self) -> Tuple[RationalCoweight, ...]:
        """delta^k(mu') for k = 0 .. N."""
        images = [self.mu_prime]
        for _ in range(self.order):
            images.append(RationalCoweight(mat_vec(self.delta, list(images[-1]))))
        return tuple(images)

    def partial_sums(self, alpha: Root) -> List[Fraction]:
        """sum_{i=1..r} <delta^-i(alpha), mu'> for r = 1 .. N."""
        sums, total = [], Fraction(0)
        for image in self.mu_images[1:]:
            total += pair(alpha, image)
            sums.append(total)
        return sums


def _matrix_order(matrix: IntMatrix) -> int:
    identity = identity_matrix(len(matrix))
    power, order = matrix, 1
    while power != identity:
        power, order = mat_mul(matrix, power), order + 1
    return order


def make_leaf_datum(datum: RootDatum, mu_prime: VectorLike, w: WeylElement) -> LeafDatum:
    """
    Validate (mu', w) and compute delta, its order and the Newton point nu.

    Args:
        datum: The root datum.
        mu_prime: An integral coweight (a Weyl conjugate of mu).
        w: A Weyl group element.

    Returns:
        The leaf datum.

    Raises:
        PreconditionError: If mu' is not integral or has the wrong rank.
        LeafConditionError: condition 2 when w does not fix nu, condition 3
            when nu is not anti-dominant.
    """
    mu_prime = RationalCoweight(mu_prime)
    if len(mu_prime) != datum.rank:
        raise PreconditionError(f"{mu_prime} does not have rank {datum.rank}")
    if not mu_prime.is_integral():
        raise PreconditionError(f"mu' = {mu_prime} is not integral")
    delta = mat_mul(w.matrix, datum.sigma_coweight_matrix)
    delta_weight = mat_mul(w.weight_matrix, datum.sigma)
    order = _matrix_order(delta)
    total = RationalCoweight.zero(datum.rank)
    image = mu_prime
    for _ in range(order):
        image = RationalCoweight(mat_vec(delta, list(image)))
        total = total + image
    nu = total.scale(Fraction(1, order))
    if w.act(nu) != nu:
        raise LeafConditionError(2, f"w = {list(w.word)} does not fix nu = {nu}, so it is not in the Weyl group of M")
    offending = [alpha for alpha in datum.simple_roots if pair(alpha, nu) > 0]
    if offending:
        raise LeafConditionError(3, f"nu = {nu} is not anti-dominant: <{offending[0]}, nu> > 0")
    return LeafDatum(datum, mu_prime, w, delta, delta_weight, order, nu)


@dataclass(frozen=True)
class RootSets:
    r_mu: Tuple[Root, ...]
    r_nu: Tuple[Root, ...]
    r_mu_nu: Tuple[Root, ...]
    r_c: Tuple[Root, ...]


def root_sets(ld: LeafDatum) -> RootSets:
    """
    R_mu, R_nu, R_{mu,nu} and R_C, each in the order of `datum.roots`.

    R_C keeps the alpha in R_{mu,nu} all of whose partial sums
    sum_{i=1..r} <delta^-i(alpha), mu'> are <= 0. Checking r = 1 .. N is
    enough: each further period adds N <alpha, nu> < 0.
    """
    roots = ld.datum.roots
    r_mu = tuple(alpha for alpha in roots if pair(alpha, ld.mu_prime) < 0)
    r_nu = tuple(alpha for alpha in roots if pair(alpha, ld.nu) < 0)
    nu_set = set(r_nu)
    r_mu_nu = tuple(alpha for alpha in r_mu if alpha in nu_set)
    r_c = tuple(alpha for alpha in r_mu_nu if all(s <= 0 for s in ld.partial_sums(alpha)))
    return RootSets(r_mu, r_nu, r_mu_nu, r_c)


def _delta_orbits(ld: LeafDatum, roots: Sequence[Root]) -> List[Tuple[Root, ...]]:
    """delta-orbits of a delta-stable root set, each as (alpha, delta(alpha), ...)."""
    seen: set[Root] = set()
    orbits = []
    for start in roots:
        if start in seen:
            continue
        orbit = [start]
        current = ld.delta_on_root(start)
        while current != start:
            orbit.append(current)
            current = ld.delta_on_root(current)
        seen.update(orbit)
        orbits.append(tuple(orbit))
    return orbits


@dataclass(frozen=True)
class OrbitPairing:
    """
    The counting identity on one delta-orbit O of R_nu.

    `pairs` maps each alpha in O \\ R_C with <alpha, mu'> = -1 to the root
    delta^-r(alpha) with <., mu'> = 1, r minimal with
    sum_{i=0..r} <delta^-i(alpha), mu'> = 0.
    """

    orbit: Tuple[Root, ...]
    r_c_count: int
    negative_pairing_sum: Fraction
    pairs: Tuple[Tuple[Root, Root], ...]

    def to_document(self) -> OrbitPairingDocument:
        return OrbitPairingDocument(
            orbit=[list(alpha) for alpha in self.orbit],
            r_c_count=self.r_c_count,
            negative_pairing_sum=str(self.negative_pairing_sum),
            pairs=[(list(a), list(b)) for a, b in self.pairs],
        )


def _first_return(ld: LeafDatum, alpha: Root, step: int) -> Root:
    """Walk delta^step from alpha, summing <., mu'> from alpha on, until the sum is 0."""
    total = pair(alpha, ld.mu_prime)
    current = alpha
    for _ in range(len(ld.datum.roots) * ld.order):
        current = ld.delta_on_root(current, step)
        total += pair(current, ld.mu_prime)
        if total == 0:
            return current
    raise ConsistencyError(f"The partial sums starting at {alpha} never return to 0")


def count_lemma_bijection(ld: LeafDatum, sets: Optional[RootSets] = None) -> List[OrbitPairing]:
    """
    Orbit-wise proof of |R_C| = -2 <rho, nu>.

    On each delta-orbit O of R_nu, the map Phi (backwards to the first zero of
    the partial sums) is a bijection from {alpha in O \\ R_C : <alpha, mu'> = -1}
    onto {alpha in O : <alpha, mu'> = 1}, with inverse Psi (forwards to the
    first zero). Hence |R_C cap O| = -sum_{alpha in O} <alpha, nu>.

    Raises:
        ConsistencyError: If Phi and Psi are not mutually inverse or a count
            does not match.
    """
    if sets is None:
        sets = root_sets(ld)
    r_c = set(sets.r_c)
    report = []
    for orbit in _delta_orbits(ld, sets.r_nu):
        excluded = [a for a in orbit if a not in r_c and pair(a, ld.mu_prime) == -1]
        positive = [a for a in orbit if pair(a, ld.mu_prime) == 1]
        phi = {a: _first_return(ld, a, -1) for a in excluded}
        psi = {b: _first_return(ld, b, 1) for b in positive}
        if sorted(phi.values()) != sorted(positive) or any(psi[phi[a]] != a for a in excluded):
            raise ConsistencyError(f"Phi and Psi are not mutually inverse on the orbit of {orbit[0]}")
        if any(phi[psi[b]] != b for b in positive):
            raise ConsistencyError(f"Psi is not a section of Phi on the orbit of {orbit[0]}")
        count = sum(1 for a in orbit if a in r_c)
        negative_sum = -sum((pair(a, ld.nu) for a in orbit), Fraction(0))
        if count != negative_sum:
            raise ConsistencyError(f"|R_C cap O| = {count} but -sum <alpha, nu> = {negative_sum} on {orbit[0]}")
        report.append(OrbitPairing(orbit, count, negative_sum, tuple((a, phi[a]) for a in excluded)))
    return report


# --- The sigma-linear side (GL_n) ---


def _require_gl(ld: LeafDatum) -> None:
    if ld.datum.family != GroupFamily.GL.value:
        raise UnsupportedInputError(f"Only split GL_n is supported here, got {ld.datum}")


def frobenius_matrix(ld: LeafDatum, ring: GaloisRing) -> FrobeniusMatrix:
    """
    The monomial matrix of b = w p^mu' for GL_n.

    Raises:
        UnsupportedInputError: Outside GL_n.
        PreconditionError: If mu' has a negative entry (the matrix would not be integral).
    """
    _require_gl(ld)
    exponents = ld.mu_prime.as_ints()
    if min(exponents) < 0:
        raise PreconditionError(f"mu' = {ld.mu_prime} has a negative entry")
    n = ld.datum.rank
    rows = [[ld.w.matrix[i][j] * ring.p ** exponents[j] for j in range(n)] for i in range(n)]
    return FrobeniusMatrix.from_integers(ring, rows)


def _root_indices(alpha: Root) -> Tuple[int, int]:
    return alpha.index(1), alpha.index(-1)


def solvability_predicate(
    ld: LeafDatum, tau: Mapping[Root, GaloisRingElement], ring: GaloisRing, sets: Optional[RootSets] = None
) -> bool:
    """
    Whether u(tau) b is sigma-conjugate to b by an integral u(x) in U_nu.

    Writing u(x) = 1 + sum x_alpha E_alpha over R_nu, the condition
    u(x) u(tau) b sigma(u(x))^-1 = b reads, for every alpha in R_nu,

        x_alpha = p^<delta^-1(alpha), mu'> sigma(x_{delta^-1(alpha)}) - tau_alpha - C_alpha

    with C_alpha = sum x_beta tau_gamma over beta + gamma = alpha. The system is
    solved level by level in <alpha, nu>; on each delta-orbit of length L the
    composite map is a contraction by p^(-L <alpha, nu>), so the solution over
    W[1/p] is unique and solvability means it is integral.

    The verdict of the system is cross-checked against the R_C criterion
    (support(tau) inside R_C): the returned value is the common answer of
    both, and a disagreement raises ConsistencyError.

    Args:
        ld: A GL_n leaf datum.
        tau: Teichmuller values indexed by roots of R_{mu,nu}; missing roots are 0.
        ring: The Galois ring the values live in.
        sets: Precomputed root sets.

    Returns:
        True iff an integral solution exists.

    Raises:
        UnsupportedInputError: Outside GL_n.
        PreconditionError: If tau is supported outside R_{mu,nu} or a value is
            not a Teichmuller representative.
        PrecisionError: If the working precision cannot certify integrality.
        ConsistencyError: If the solved system contradicts the R_C criterion.
    """
    _require_gl(ld)
    if sets is None:
        sets = root_sets(ld)
    allowed = set(sets.r_mu_nu)
    values: Dict[Root, FractionalElement] = {}
    for alpha, value in tau.items():
        alpha = tuple(alpha)
        if alpha not in allowed:
            raise PreconditionError(f"tau is supported at {alpha}, which is not in R_mu,nu")
        if value.ring != ring or teichmuller(ring, value.residue()) != value:
            raise PreconditionError(f"tau_{alpha} = {value} is not a Teichmuller representative in {ring}")
        if not value.is_zero():
            values[alpha] = FractionalElement(value)

    zero = FractionalElement(ring.zero)
    by_indices = {_root_indices(alpha): alpha for alpha in sets.r_nu}
    x: Dict[Root, FractionalElement] = {}
    solvable = True
    levels = sorted({pair(alpha, ld.nu) for alpha in sets.r_nu}, reverse=True)
    for level in levels:
        level_roots = [alpha for alpha in sets.r_nu if pair(alpha, ld.nu) == level]
        c: Dict[Root, FractionalElement] = {}
        for alpha in level_roots:
            i, j = _root_indices(alpha)
            total = -values.get(alpha, zero)
            for k in range(ld.datum.rank):
                beta, gamma = by_indices.get((i, k)), by_indices.get((k, j))
                if beta is not None and gamma is not None and gamma in values:
                    total = total - x[beta] * values[gamma]
            c[alpha] = total
        for orbit in _delta_orbits(ld, level_roots):
            length = len(orbit)
            for position, beta in enumerate(orbit):
                # x_beta = p^k sigma^-L(x_beta) + D_beta
                d, exponent = zero, 0
                for r in range(1, length + 1):
                    exponent += int(pair(orbit[(position + r - 1) % length], ld.mu_prime))
                    target = orbit[(position + r) % length]
                    d = d - c[target].sigma(-r).times_p_power(-exponent)
                k = -exponent
                if k < 1:
                    raise ConsistencyError(f"delta-orbit of {beta} does not contract (k = {k})")
                solution, term = zero, d
                for _ in range((d.shift + ring.precision) // k + 1):
                    solution = solution + term
                    term = term.sigma(-length).times_p_power(k)
                x[beta] = solution
        if not all(x[alpha].is_integral() for alpha in level_roots):
            solvable = False
            break
    logger.debug("solved %d of %d unknowns over %d levels", len(x), len(sets.r_nu), len(levels))

    r_c = set(sets.r_c)
    expected = all(alpha in r_c for alpha in values)
    if solvable != expected:
        raise ConsistencyError(f"The equation system gives {solvable} but the R_C criterion gives {expected}")
    return solvable


# --- Generators and documents ---


def _random_gl_leaf_datum(datum: RootDatum, rng: random.Random, elements: Sequence[WeylElement]) -> LeafDatum:
    """A uniform draw among the valid pairs (mu', w) with mu' a 0/1 vector."""
    while True:
        mu_prime = [rng.randint(0, 1) for _ in range(datum.rank)]
        try:
            return make_leaf_datum(datum, mu_prime, rng.choice(elements))
        except LeafConditionError:
            continue


def random_leaf_data(
    datum: RootDatum, rng: random.Random, count: int, mu: Optional[VectorLike] = None
) -> List[LeafDatum]:
    """
    Random valid leaf data.

    For GL_n without mu, pairs (mu', w) with mu' a 0/1 vector and w
    uniform in the Weyl group are drawn until valid, so every valid pair is
    equally likely. Otherwise every pair (mu', w) with mu' in the Weyl
    orbit of mu is tried once and the valid ones are sampled with replacement.

    Raises:
        PreconditionError: If mu is missing for a group other than GL_n, or no
            pair is valid.
    """
    if datum.family == GroupFamily.GL.value and mu is None:
        elements = weyl_group(datum)
        return [_random_gl_leaf_datum(datum, rng, elements) for _ in range(count)]
    if mu is None:
        raise PreconditionError(f"random_leaf_data needs mu for {datum}")
    valid = []
    for mu_prime in sorted(weyl_orbit(datum, mu)):
        for w in weyl_group(datum):
            try:
                valid.append(make_leaf_datum(datum, mu_prime, w))
            except LeafConditionError:
                continue
    if not valid:
        raise PreconditionError(f"No valid leaf datum for {datum} and mu = {RationalCoweight(mu)}")
    logger.debug("%d valid leaf data for %s", len(valid), datum)
    return [rng.choice(valid) for _ in range(count)]


def rc_document(ld: LeafDatum, sets: RootSets, orbits: Sequence[OrbitPairing] = ()) -> RootSetsDocument:
    return RootSetsDocument(
        group=str(ld.datum),
        mu_prime=list(ld.mu_prime.as_ints()),
        w=list(ld.w.word),
        nu=ld.nu.to_strings(),
        r_mu=[list(alpha) for alpha in sets.r_mu],
        r_nu=[list(alpha) for alpha in sets.r_nu],
        r_mu_nu=[list(alpha) for alpha in sets.r_mu_nu],
        r_c=[list(alpha) for alpha in sets.r_c],
        orbits=[orbit.to_document() for orbit in orbits],
    )

"""
The Kottwitz set B(G, mu) as a finite poset.

A sigma-conjugacy class is represented by its pair of invariants (Newton
point, Kottwitz point). Classes in B(G, mu) are enumerated Levi by Levi: the
class with centralizer Levi M is the basic class of M whose Kottwitz point
lifts to an integral coweight lambda in mu + (coroot lattice), and its Newton
point is the sigma-average of the M-central projection of lambda.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
import logging
import math
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import sympy

from newton_strata.errors import (
    ConsistencyError,
    IncomparableError,
    NotInPosetError,
    PreconditionError,
    UnsupportedInputError,
)
from newton_strata.root_datum import (
    RationalCoweight,
    RationalWeight,
    RootDatum,
    SimpleRoot,
    VectorLike,
    dominance_leq,
    fundamental_coweight,
    fundamental_weight,
    is_dominant,
    is_dominant_weight,
    is_minuscule,
    pair,
    reflect_weight,
    relative_simple_roots,
    sigma_average,
    weight_dominance_leq,
    weight_orbit,
)
from newton_strata.schemas import AbelianGroupDocument, ClassDocument, PosetDocument
from newton_strata.utils import IntMatrix, IntVector, sympy_to_fraction

logger = logging.getLogger(__name__)

RelativeRoot = Tuple[int, ...]


# --- Finitely generated abelian groups ---


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> Tuple[List[List[int]], List[int]]:
    """
    Smith normal form of an integer matrix, keeping the left transform.

    Args:
        matrix: A rows x cols integer matrix.

    Returns:
        (U, d) with U a unimodular rows x rows matrix such that U * A * V is
        diagonal with nonzero entries d[0] | d[1] | ... (all positive) for
        some unimodular V. len(d) is the rank of A.
    """
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]

    def swap(t: int, i: int, j: int) -> None:
        a[t], a[i] = a[i], a[t]
        u[t], u[i] = u[i], u[t]
        for row in a:
            row[t], row[j] = row[j], row[t]

    diagonal: List[int] = []
    for t in range(min(rows, cols)):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap(t, i, j)
        while True:
            clean = True
            for i in range(t + 1, rows):
                q = a[i][t] // a[t][t]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                q = a[t][j] // a[t][t]
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                clean = clean and a[t][j] == 0
            if not clean:
                candidates = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
                candidates += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
                _, i, j = min(candidates)
                swap(t, i, j)
                continue
            # divisibility: fold an offending row into the pivot row and reduce again
            offending = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                None,
            )
            if offending is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offending])]
            u[t] = [x + y for x, y in zip(u[t], u[offending])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        diagonal.append(a[t][t])
    return u, diagonal


@dataclass(frozen=True)
class FinitelyGeneratedAbelianGroup:
    """
    Z^free_rank x Z/d_1 x ... x Z/d_k with d_1 | ... | d_k, all d_i >= 2.

    `projection` has one row per normal-form coordinate (free coordinates
    first, then torsion) and maps a lattice vector to its class.
    """

    free_rank: int
    torsion: Tuple[int, ...]
    projection: IntMatrix

    def class_of(self, vector: Sequence[int]) -> Tuple[int, ...]:
        values = [sum(a * b for a, b in zip(row, vector)) for row in self.projection]
        free, torsion = values[: self.free_rank], values[self.free_rank :]
        return tuple(free) + tuple(v % d for v, d in zip(torsion, self.torsion))

    def identity(self) -> Tuple[int, ...]:
        return (0,) * (self.free_rank + len(self.torsion))

    def add(self, x: Sequence[int], y: Sequence[int]) -> Tuple[int, ...]:
        total = [a + b for a, b in zip(x, y)]
        free, torsion = total[: self.free_rank], total[self.free_rank :]
        return tuple(free) + tuple(v % d for v, d in zip(torsion, self.torsion))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_document(self) -> AbelianGroupDocument:
        return AbelianGroupDocument(free_rank=self.free_rank, torsion=list(self.torsion))

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "0"


def abelian_quotient(rank: int, relations: Sequence[Sequence[int]]) -> FinitelyGeneratedAbelianGroup:
    """
    The quotient of Z^rank by the subgroup generated by `relations`.

    Args:
        rank: Rank of the ambient lattice.
        relations: Generators of the relation subgroup, as vectors.
    """
    columns = [list(r) for r in relations] or [[0] * rank]
    matrix = [[column[k] for column in columns] for k in range(rank)]
    u, diagonal = smith_normal_form(matrix)
    r = len(diagonal)
    free_rows = []
    for row in u[r:]:
        leading = next((x for x in row if x), 1)
        free_rows.append(tuple(x if leading > 0 else -x for x in row))
    torsion_rows = [(tuple(u[i]), d) for i, d in enumerate(diagonal) if d > 1]
    return FinitelyGeneratedAbelianGroup(
        free_rank=len(free_rows),
        torsion=tuple(d for _, d in torsion_rows),
        projection=tuple(free_rows) + tuple(row for row, _ in torsion_rows),
    )


@lru_cache(maxsize=None)
def pi1_coinvariants(datum: RootDatum, levi: Optional[Tuple[int, ...]] = None) -> FinitelyGeneratedAbelianGroup:
    """
    pi_1(G)_Gamma = X_*(T) / (coroot lattice + (1 - sigma) X_*(T)).

    Args:
        datum: The root datum.
        levi: If given, the simple positions of a standard sigma-stable Levi M;
            the result is then pi_1(M)_Gamma.
    """
    positions = range(datum.semisimple_rank) if levi is None else levi
    relations: List[Tuple[int, ...]] = [datum.simple_coroots[i] for i in positions]
    for k in range(datum.rank):
        column = tuple(row[k] for row in datum.sigma_coweight_matrix)
        relations.append(tuple((1 if i == k else 0) - column[i] for i in range(datum.rank)))
    group = abelian_quotient(datum.rank, relations)
    logger.debug("pi1 of %s (levi %s) is %s", datum, levi, group)
    return group


def kappa(datum: RootDatum, mu: VectorLike) -> Tuple[int, ...]:
    """
    The Kottwitz point of an integral coweight, in the normal form of pi1_coinvariants.

    Raises:
        PreconditionError: If mu is not integral.
    """
    coweight = RationalCoweight(mu)
    if not coweight.is_integral():
        raise PreconditionError(f"kappa needs an integral coweight, got {coweight}")
    if len(coweight) != datum.rank:
        raise PreconditionError(f"{coweight} does not have rank {datum.rank}")
    return pi1_coinvariants(datum).class_of(coweight.as_ints())


# --- sigma-conjugacy classes ---


@dataclass(frozen=True)
class SigmaConjClass:
    """
    A class [b] in B(G), recorded by its invariants.

    `lift` is an integral coweight whose class is the Kottwitz point of the
    basic element of the centralizer Levi; it is a witness, not an invariant,
    and does not take part in equality.
    """

    newton_point: RationalCoweight
    kottwitz_point: Tuple[int, ...]
    lift: IntVector = field(default=(), compare=False)

    @property
    def label(self) -> str:
        return str(self.newton_point)

    def __str__(self) -> str:
        return self.label


def centralizer_levi(datum: RootDatum, nu: VectorLike) -> Tuple[int, ...]:
    """Simple positions j with <alpha_j, nu> = 0."""
    return tuple(j for j, alpha in enumerate(datum.simple_roots) if pair(alpha, nu) == 0)


def levi_central_projection(datum: RootDatum, levi: Sequence[int], lam: VectorLike) -> RationalCoweight:
    """
    Project a coweight onto the center of the Levi M_J along the coroots of M_J.

    Returns lam - sum_{j in J} c_j alpha_j^v with <alpha_k, result> = 0 for k in J.
    """
    coweight = RationalCoweight(lam)
    levi = sorted(levi)
    if not levi:
        return coweight
    system = sympy.Matrix([[datum.cartan_matrix[k][j] for j in levi] for k in levi])
    values = [pair(datum.simple_roots[k], coweight) for k in levi]
    rhs = sympy.Matrix([sympy.Rational(v.numerator, v.denominator) for v in values])
    coefficients = [sympy_to_fraction(c) for c in system.LUsolve(rhs)]
    for c, j in zip(coefficients, levi):
        coweight = coweight - [c * x for x in datum.simple_coroots[j]]
    return coweight


def kottwitz_compatible(datum: RootDatum, nu: VectorLike, lift: VectorLike) -> bool:
    """
    Whether (nu, kappa(lift)) satisfies the Kottwitz compatibility condition.

    The image of the Kottwitz point in pi_1(M_nu)_Gamma tensor Q must be the
    class of nu, where M_nu is the centralizer Levi. The image is realized as
    the sigma-average of the M-central projection of the lift.
    """
    levi = centralizer_levi(datum, nu)
    if sorted(datum.sigma_permutation[j] for j in levi) != list(levi):
        return False
    return sigma_average(datum, levi_central_projection(datum, levi, lift)) == RationalCoweight(nu)


def leq(datum: RootDatum, b1: SigmaConjClass, b2: SigmaConjClass) -> bool:
    """b1 <= b2 iff the Kottwitz points agree and the Newton points are in dominance order."""
    if b1.kottwitz_point != b2.kottwitz_point:
        return False
    return dominance_leq(datum, b1.newton_point, b2.newton_point)


def break_points(datum: RootDatum, b: SigmaConjClass | VectorLike) -> Tuple[RelativeRoot, ...]:
    """The relative simple roots beta with <beta, nu> > 0."""
    nu = b.newton_point if isinstance(b, SigmaConjClass) else RationalCoweight(b)
    return tuple(
        orbit
        for orbit in relative_simple_roots(datum)
        if sum(pair(datum.simple_roots[i], nu) for i in orbit) > 0
    )


def polygon_break_points(nu: VectorLike) -> List[int]:
    """For GL_n: the x-coordinates i (1-based) where the Newton polygon changes slope."""
    values = list(nu)
    return [i + 1 for i in range(len(values) - 1) if values[i] != values[i + 1]]


def pr(datum: RootDatum, beta: SimpleRoot, nu: VectorLike) -> Fraction:
    """pr_beta(nu) = <omega_{beta^v}, nu> with the adjoint-normalized fundamental weight."""
    return pair(fundamental_weight(datum, beta), nu)


# --- The poset ---


@dataclass(frozen=True)
class NewtonPoset:
    """
    B(G, mu) with its order and Hasse diagram.

    Elements are sorted by Newton point, descending lexicographically. `order`
    holds all pairs (i, j) with elements[i] <= elements[j]; `hasse` holds the
    covering pairs (lower, upper).
    """

    datum: RootDatum
    mu: RationalCoweight
    elements: Tuple[SigmaConjClass, ...]
    order: FrozenSet[Tuple[int, int]]
    hasse: Tuple[Tuple[int, int], ...]
    b_min: int
    b_max: int

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[SigmaConjClass]:
        return iter(self.elements)

    @property
    def basic(self) -> SigmaConjClass:
        return self.elements[self.b_min]

    @property
    def maximal(self) -> SigmaConjClass:
        return self.elements[self.b_max]

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.elements)))
        graph.add_edges_from(self.hasse)
        return graph

    def index(self, b: SigmaConjClass) -> int:
        try:
            return self.elements.index(b)
        except ValueError:
            raise NotInPosetError(f"{b} is not an element of B({self.datum}, {self.mu})") from None

    def leq(self, b1: SigmaConjClass, b2: SigmaConjClass) -> bool:
        return (self.index(b1), self.index(b2)) in self.order

    def below(self, b: SigmaConjClass, strict: bool = True) -> FrozenSet[SigmaConjClass]:
        j = self.index(b)
        return frozenset(
            self.elements[i] for i in range(len(self.elements)) if (i, j) in self.order and not (strict and i == j)
        )

    def lower_covers(self, b: SigmaConjClass) -> FrozenSet[SigmaConjClass]:
        j = self.index(b)
        return frozenset(self.elements[i] for i, k in self.hasse if k == j)

    def to_document(self) -> PosetDocument:
        return PosetDocument(
            group=str(self.datum),
            mu=list(self.mu.as_ints()),
            pi1=pi1_coinvariants(self.datum).to_document(),
            elements=[
                ClassDocument(
                    label=b.label,
                    newton_point=b.newton_point.to_strings(),
                    kottwitz_point=list(b.kottwitz_point),
                    break_points=[list(beta) for beta in break_points(self.datum, b)],
                )
                for b in self.elements
            ],
            hasse=list(self.hasse),
            b_min=self.b_min,
            b_max=self.b_max,
        )

    def to_dot(self) -> str:
        """DOT text: one node per class, one edge per cover drawn from the larger class."""
        lines = [f'digraph "B({self.datum}, {self.mu})" {{', "  rankdir=TB;"]
        for i, b in enumerate(self.elements):
            lines.append(f'  n{i} [label="{b.label}"];')
        for lo, hi in self.hasse:
            lines.append(f"  n{hi} -> n{lo};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def enumerate_bgmu(datum: RootDatum, mu: VectorLike) -> NewtonPoset:
    """
    Enumerate B(G, mu) for a dominant minuscule cocharacter mu.

    Args:
        datum: The root datum.
        mu: A dominant, integral, minuscule coweight.

    Returns:
        The poset, with b_max = [mu(p)] and b_min the basic class.

    Raises:
        PreconditionError: If mu is not integral and dominant.
        UnsupportedInputError: If mu is not minuscule.
        ConsistencyError: If the enumerated set violates a structural invariant.
    """
    mu = RationalCoweight(mu)
    if len(mu) != datum.rank or not mu.is_integral() or not is_dominant(datum, mu):
        raise PreconditionError(f"mu = {mu} must be an integral dominant coweight of rank {datum.rank}")
    if not is_minuscule(datum, mu):
        raise UnsupportedInputError(f"mu = {mu} is not minuscule for {datum}")

    mu_bar = sigma_average(datum, mu)
    all_simple = tuple(range(datum.semisimple_rank))
    nu_basic = sigma_average(datum, levi_central_projection(datum, all_simple, mu))
    orbits = relative_simple_roots(datum)
    bounds = {
        orbit: math.floor(sum(pair(datum.fundamental_weights[i], mu_bar - nu_basic) for i in orbit))
        for orbit in orbits
    }

    found: Dict[RationalCoweight, IntVector] = {}
    for size in range(len(orbits) + 1):
        for inside in combinations(orbits, size):
            levi = tuple(sorted(i for orbit in inside for i in orbit))
            outside = [orbit for orbit in orbits if orbit not in inside]
            for steps in product(*(range(bounds[orbit] + 1) for orbit in outside)):
                lift = list(mu.as_ints())
                for n_steps, orbit in zip(steps, outside):
                    lift = [x - n_steps * c for x, c in zip(lift, datum.simple_coroots[orbit[0]])]
                nu = sigma_average(datum, levi_central_projection(datum, levi, lift))
                if not is_dominant(datum, nu) or centralizer_levi(datum, nu) != levi:
                    continue
                if nu not in found and dominance_leq(datum, nu, mu_bar):
                    found[nu] = tuple(lift)

    k = kappa(datum, mu)
    elements = tuple(
        SigmaConjClass(nu, k, found[nu]) for nu in sorted(found, key=lambda v: v.coords, reverse=True)
    )
    for b in elements:
        if not kottwitz_compatible(datum, b.newton_point, b.lift):
            raise ConsistencyError("Enumerated class fails the Kottwitz compatibility test", b.label)

    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(elements)))
    order = set()
    for i, j in product(range(len(elements)), repeat=2):
        if leq(datum, elements[i], elements[j]):
            order.add((i, j))
            if i != j:
                graph.add_edge(i, j)
    hasse = tuple(sorted(nx.transitive_reduction(graph).edges()))

    minimal = [i for i in graph.nodes if graph.in_degree(i) == 0]
    maximal = [i for i in graph.nodes if graph.out_degree(i) == 0]
    if len(minimal) != 1 or len(maximal) != 1:
        raise ConsistencyError(f"B({datum}, {mu}) has minimal {minimal} and maximal {maximal} elements")
    basic = elements[minimal[0]]
    if any(pair(alpha, basic.newton_point) != 0 for alpha in datum.roots):
        raise ConsistencyError("The minimal element is not basic", basic.label)
    if elements[maximal[0]].newton_point != mu_bar:
        raise ConsistencyError(f"The maximal element is not [mu(p)] = {mu_bar}", elements[maximal[0]].label)

    logger.debug("B(%s, %s) has %d elements and %d covers", datum, mu, len(elements), len(hasse))
    return NewtonPoset(datum, mu, elements, frozenset(order), hasse, minimal[0], maximal[0])


def maximal_below(poset: NewtonPoset, b: SigmaConjClass) -> List[Tuple[SigmaConjClass, RelativeRoot]]:
    """
    The maximal elements of B(G)_{<b}, each paired with its break point.

    The element paired with beta is the unique maximal element of
    {b'' < b : pr_beta(b'') < pr_beta(b)}.

    Raises:
        NotInPosetError: If b is not in the poset.
        ConsistencyError: If the pairing is not a bijection onto the lower covers.
    """
    datum = poset.datum
    strictly_below = poset.below(b)
    pairs = []
    for beta in break_points(datum, b):
        level = pr(datum, beta, b.newton_point)
        candidates = [c for c in strictly_below if pr(datum, beta, c.newton_point) < level]
        tops = [c for c in candidates if not any(c != d and poset.leq(c, d) for d in candidates)]
        if len(tops) != 1:
            raise ConsistencyError(f"Break point {beta} has {len(tops)} maximal candidates", b.label)
        pairs.append((tops[0], beta))
    if {c for c, _ in pairs} != poset.lower_covers(b) or len(pairs) != len({c for c, _ in pairs}):
        raise ConsistencyError("Break points are not in bijection with the maximal elements below", b.label)
    return pairs


def down_set_by_projection(
    poset: NewtonPoset, b: SigmaConjClass, b_prime: Optional[SigmaConjClass] = None
) -> FrozenSet[SigmaConjClass]:
    """
    {b'' < b : pr_beta(b'') < pr_beta(b)} for the break point beta of b_prime.

    The result is checked against the order-theoretic down-set B(G)_{<= b'}.
    With b_prime omitted, b must be minimal and the result is empty.

    Raises:
        PreconditionError: If b_prime is not a maximal element below b.
        ConsistencyError: If the two descriptions of the down-set differ.
    """
    pairs = maximal_below(poset, b)
    if b_prime is None:
        if pairs:
            raise PreconditionError(f"{b} has elements below it; name one of them as b_prime")
        return frozenset()
    beta = next((beta for c, beta in pairs if c == b_prime), None)
    if beta is None:
        raise PreconditionError(f"{b_prime} is not a maximal element below {b}")
    datum = poset.datum
    level = pr(datum, beta, b.newton_point)
    by_projection = frozenset(c for c in poset.below(b) if pr(datum, beta, c.newton_point) < level)
    if by_projection != poset.below(b_prime, strict=False):
        raise ConsistencyError(f"Projection down-set differs from the order down-set of {b_prime}", b.label)
    return by_projection


def chain_length(poset: NewtonPoset, b_lo: SigmaConjClass, b_hi: SigmaConjClass) -> int:
    """
    Length of a longest chain b_lo = b_0 < b_1 < ... < b_k = b_hi.

    Raises:
        IncomparableError: If b_lo is not <= b_hi.
    """
    if not poset.leq(b_lo, b_hi):
        raise IncomparableError(f"{b_lo} is not below {b_hi}")
    lo, hi = poset.index(b_lo), poset.index(b_hi)
    interval = [i for i in range(len(poset)) if (lo, i) in poset.order and (i, hi) in poset.order]
    return int(nx.dag_longest_path_length(poset.graph.subgraph(interval)))


def closure(poset: NewtonPoset, b: SigmaConjClass) -> FrozenSet[SigmaConjClass]:
    """The classes whose strata make up the closure of the stratum of b."""
    return poset.below(b, strict=False)


# --- Representations and purity ---


def _gl_pr(values: Sequence[Fraction], i: int) -> Fraction:
    """pr_i of a dominant vector of GL_m: f(i) - (i/m) f(m)."""
    return sum(values[:i], Fraction(0)) - Fraction(i, len(values)) * sum(values, Fraction(0))


def purity_representation_check(
    datum: RootDatum,
    beta: SimpleRoot,
    weights: Sequence[VectorLike],
    nu_samples: Sequence[Tuple[VectorLike, VectorLike]],
) -> bool:
    """
    Check that a representation separates the break point beta.

    The weight multiset must be Weyl-stable with unique highest weight
    N * omega_beta; i is the multiplicity of that weight. The check holds iff
    (i) <N omega_beta - lambda, omega_beta^v> > 0 for every other weight, and
    (ii) on every sample (nu', nu) with nu' <= nu, rho(nu)_dom breaks at i
    exactly when nu breaks at beta, and pr_beta(nu') < pr_beta(nu) exactly when
    pr_i(rho(nu')_dom) < pr_i(rho(nu)_dom).

    Raises:
        PreconditionError: If the multiset is not Weyl-stable, has no unique
            highest weight of the form N * omega_beta, or a sample is invalid.
    """
    counts = Counter(RationalWeight(w) for w in weights)
    for weight, count in counts.items():
        for position in range(datum.semisimple_rank):
            if counts[reflect_weight(datum, position, weight)] != count:
                raise PreconditionError(f"Weight multiset is not Weyl-stable at {weight}")
    dominant = [w for w in counts if is_dominant_weight(datum, w)]
    tops = [w for w in dominant if not any(w != v and _weight_below(datum, w, v) for v in dominant)]
    if len(tops) != 1:
        raise PreconditionError(f"Expected a unique highest weight, found {len(tops)}")
    top = tops[0]
    omega = fundamental_weight(datum, beta)
    orbit = (beta,) if isinstance(beta, int) else tuple(sorted(beta))
    n = sum(pair(top, datum.simple_coroots[j]) for j in orbit)
    if n <= 0 or n.denominator != 1 or top != omega.scale(n):
        raise PreconditionError(f"Highest weight {top} is not a positive multiple of omega_{orbit}")
    i = counts[top]
    m = sum(counts.values())
    if not 1 <= i < m:
        raise PreconditionError(f"Multiplicity {i} of the highest weight leaves no break index")

    coweight = fundamental_coweight(datum, beta)
    if any(pair(top - w, coweight) <= 0 for w in counts if w != top):
        return False

    def image(nu: VectorLike) -> List[Fraction]:
        return sorted((pair(w, nu) for w in counts.elements()), reverse=True)

    for nu_prime, nu in nu_samples:
        if not dominance_leq(datum, nu_prime, nu):
            raise PreconditionError(f"Sample {RationalCoweight(nu_prime)} is not <= {RationalCoweight(nu)}")
        for sample in (nu_prime, nu):
            values = image(sample)
            breaks_at_i = values[i - 1] > values[i]
            if breaks_at_i != (orbit in break_points(datum, sample)):
                return False
        lower = pr(datum, beta, nu_prime) < pr(datum, beta, nu)
        if lower != (_gl_pr(image(nu_prime), i) < _gl_pr(image(nu), i)):
            return False
    return True


def _weight_below(datum: RootDatum, lower: RationalWeight, upper: RationalWeight) -> bool:
    return lower != upper and weight_dominance_leq(datum, lower, upper)


def weights_of_small_irrep(datum: RootDatum, lam: VectorLike) -> FrozenSet[RationalWeight]:
    """
    The weight support of the irreducible representation of highest weight lam.

    Dominant weights below lam are reached from lam by repeatedly subtracting
    positive roots while staying dominant; the support is the union of their
    Weyl orbits. Multiplicities are not computed.

    Raises:
        PreconditionError: If lam is not dominant and integral.
        WeylGroupTooLargeError: If an orbit exceeds the materialization limit.
    """
    top = RationalWeight(lam)
    if not top.is_integral() or not is_dominant_weight(datum, top):
        raise PreconditionError(f"{top} is not a dominant integral weight")
    dominant = {top}
    frontier = [top]
    while frontier:
        weight = frontier.pop()
        for alpha in datum.positive_roots:
            lower = weight - alpha
            if lower not in dominant and is_dominant_weight(datum, lower):
                dominant.add(lower)
                frontier.append(lower)
    support: set[RationalWeight] = set()
    for weight in dominant:
        support |= weight_orbit(datum, weight)
    return frozenset(support)


def exterior_power_weights(datum: RootDatum, d: int) -> List[RationalWeight]:
    """
    Weights of the d-th exterior power of the standard representation of GL_n,
    twisted by the central character so that the highest weight is omega_d.

    Raises:
        UnsupportedInputError: If the datum is not of GL type.
    """
    if datum.family not in ("GL", "U") or not 1 <= d < datum.rank:
        raise UnsupportedInputError(f"Exterior powers need GL_n and 1 <= d < n, got {datum} and d={d}")
    n = datum.rank
    shift = Fraction(d, n)
    return [
        RationalWeight((1 if k in subset else 0) - shift for k in range(n)) for subset in combinations(range(n), d)
    ]


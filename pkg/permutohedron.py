"""
Triangulation of the permutohedron P^n by the same cone-and-product recursion.

P^n is the convex hull of the permutations of (1, ..., n+1). A facet is
indexed by a proper nonempty set A of positions: its vertices put the values
1..|A| on A, so it is P^(|A|-1) x P^(n-|A|). The apex is the reversal
(n+1, ..., 1); the only facets through it are the suffixes, which are
skipped. ZP_n counts the resulting simplices.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Sequence

import config
from exact_geometry import hyperplane_check, run_geometric_checks
from models import (
    CapacityError, CheckResult, CheckStatus, ConstructionError, DomainError, FacetSubset,
    PolytopeKind, Simplex, SimplexRecipe, Triangulation, ValidationReport, VertexRecord,
)
from shuffles import Shuffle, enumerate_shuffles, staircase

logger = logging.getLogger(__name__)

Permutation = tuple[int, ...]
OrderedSurjection = tuple[int, ...]


# =============================================================================
# PERMUTATIONS AND THE WEAK ORDER
# =============================================================================

def check_permutation(sigma: Sequence[int]) -> Permutation:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise DomainError(f"{sigma} is not a permutation of 1..{len(sigma)}")
    return sigma


def identity(m: int) -> Permutation:
    return tuple(range(1, m + 1))


def reversal(m: int) -> Permutation:
    return tuple(range(m, 0, -1))


def permuto_point(sigma: Sequence[int]) -> Permutation:
    """Coordinates of the vertex: the permutation itself."""
    return check_permutation(sigma)


def bruhat_covers(sigma: Sequence[int]) -> list[Permutation]:
    """
    Upper covers in the weak order: swap the values k and k+1 whenever k
    stands to the left of k+1. Each cover is an edge of the permutohedron.
    """
    sigma = check_permutation(sigma)
    where = {value: position for position, value in enumerate(sigma)}
    covers = []
    for k in range(1, len(sigma)):
        if where[k] < where[k + 1]:
            swapped = list(sigma)
            swapped[where[k]], swapped[where[k + 1]] = k + 1, k
            covers.append(tuple(swapped))
    return covers


def inversions(sigma: Sequence[int]) -> frozenset[tuple[int, int]]:
    """Position pairs i < j with sigma(i) > sigma(j)."""
    return frozenset(
        (i, j) for i, j in combinations(range(len(sigma)), 2) if sigma[i] > sigma[j]
    )


def bruhat_leq(sigma: Sequence[int], tau: Sequence[int]) -> bool:
    sigma = check_permutation(sigma)
    tau = check_permutation(tau)
    if len(sigma) != len(tau):
        raise DomainError(f"cannot compare permutations of lengths {len(sigma)} and {len(tau)}")
    return inversions(sigma) <= inversions(tau)


# =============================================================================
# FACETS
# =============================================================================

def sm_count(n: int, p: int) -> int:
    """Number of facets of P^n with |A| = p+1 that miss the reversal."""
    if not 0 <= p <= n - 1:
        raise DomainError(f"p must lie in 0..{n - 1}, got {p}")
    return comb(n + 1, p + 1) - 1


def ordered_surjections(n: int, p: int) -> list[OrderedSurjection]:
    """Weakly increasing surjections {0..n+1} -> {0..p+1}, as value tuples."""
    sm_count(n, p)
    result = []
    for steps in combinations(range(n + 1), p + 1):
        values = [0]
        for position in range(n + 1):
            values.append(values[-1] + (1 if position in steps else 0))
        result.append(tuple(values))
    return sorted(result)


def facet_contains(facet: FacetSubset, sigma: Sequence[int]) -> bool:
    """sigma puts the values 1..|A| on the positions of A."""
    sigma = check_permutation(sigma)
    if len(sigma) != facet.n + 1:
        raise DomainError(f"{sigma} is not a vertex of P^{facet.n}")
    size = len(facet.positions)
    return all(sigma[position - 1] <= size for position in facet.positions)


def facet_embed(facet: FacetSubset, sigma1: Sequence[int], sigma2: Sequence[int]) -> Permutation:
    """Vertex of the facet with pattern sigma1 on A and sigma2 on the complement."""
    sigma1 = check_permutation(sigma1)
    sigma2 = check_permutation(sigma2)
    size = len(facet.positions)
    if len(sigma1) != size or len(sigma2) != facet.n + 1 - size:
        raise DomainError(
            f"facet {facet} of P^{facet.n} takes permutations of lengths {size} and {facet.n + 1 - size}"
        )
    values = [0] * (facet.n + 1)
    for position, value in zip(facet.positions, sigma1):
        values[position - 1] = value
    for position, value in zip(facet.complement, sigma2):
        values[position - 1] = size + value
    return tuple(values)


def facet_vertices(facet: FacetSubset) -> list[Permutation]:
    size = len(facet.positions)
    return [
        facet_embed(facet, sigma1, sigma2)
        for sigma1 in permutations(range(1, size + 1))
        for sigma2 in permutations(range(1, facet.n + 2 - size))
    ]


def enumerate_cone_facets(n: int) -> list[FacetSubset]:
    """Facets of P^n missing the reversal: |A| ascending, A lexicographic."""
    if n < 1:
        raise DomainError(f"P^{n} has no facets")
    apex = reversal(n + 1)
    facets = []
    for p in range(n):
        for positions in combinations(range(1, n + 2), p + 1):
            facet = FacetSubset(n, positions)
            if facet_contains(facet, apex):
                logger.debug("P^%d: facet %s contains the apex", n, facet)
                continue
            facets.append(facet)
    return facets


@lru_cache(maxsize=None)
def zp_count(n: int) -> int:
    """ZP_n = sum_p (C(n+1,p+1) - 1) C(n-1,p) ZP_p ZP_(n-1-p)."""
    if n < 0:
        raise DomainError(f"dimension must be non-negative, got {n}")
    if n == 0:
        return 1
    return sum(zp_recursion_terms(n))


def zp_recursion_terms(n: int) -> list[int]:
    """Contribution of each p = |A| - 1 to ZP_n."""
    if n < 1:
        raise DomainError(f"P^{n} has no facets")
    return [
        sm_count(n, p) * comb(n - 1, p) * zp_count(p) * zp_count(n - 1 - p)
        for p in range(n)
    ]


# =============================================================================
# CONSTRUCTION
# =============================================================================

@dataclass(frozen=True)
class _Cell:
    vertices: tuple[Permutation, ...]
    recipe: SimplexRecipe


def _check_chain(vertices: tuple[Permutation, ...], facet: FacetSubset, theta: Shuffle) -> None:
    for lower, upper in zip(vertices, vertices[1:]):
        if lower == upper or not bruhat_leq(lower, upper):
            raise ConstructionError(
                f"facet {facet} with shuffle {theta.word!r}: {lower} does not precede {upper} in the weak order"
            )


@lru_cache(maxsize=None)
def _cells(n: int) -> tuple[_Cell, ...]:
    if n == 0:
        return (_Cell((identity(1),), SimplexRecipe(0)),)

    apex = reversal(n + 1)
    cells = []
    for facet in enumerate_cone_facets(n):
        for alpha in _cells(facet.p):
            for beta in _cells(facet.q):
                for theta in enumerate_shuffles(facet.p, facet.q):
                    base = tuple(
                        facet_embed(facet, alpha.vertices[i], beta.vertices[j])
                        for i, j in staircase(theta)
                    )
                    vertices = base + (apex,)
                    _check_chain(vertices, facet, theta)
                    recipe = SimplexRecipe(n, facet, theta.word, alpha.recipe, beta.recipe)
                    cells.append(_Cell(vertices, recipe))

    logger.info("P^%d: %d simplices", n, len(cells))
    return tuple(cells)


def triangulate_permutohedron(n: int) -> Triangulation:
    if n < 0:
        raise DomainError(f"dimension must be non-negative, got {n}")
    if n > config.MAX_PERM_DIM:
        raise CapacityError(f"P^{n} is above the construction bound {config.MAX_PERM_DIM}")

    perms = sorted(permutations(range(1, n + 2)))
    index = {sigma: i for i, sigma in enumerate(perms)}
    vertices = [VertexRecord(i, sigma, permuto_point(sigma)) for i, sigma in enumerate(perms)]
    simplices = [
        Simplex(k, tuple(index[v] for v in cell.vertices), None, cell.recipe)
        for k, cell in enumerate(_cells(n))
    ]
    return Triangulation(PolytopeKind.PERMUTOHEDRON, n, vertices, simplices)


# =============================================================================
# VALIDATION
# =============================================================================

def check_permutohedron_triangulation(tri: Triangulation, seed: int = config.DEFAULT_SEED,
                                      interior_samples: int = config.DEFAULT_INTERIOR_SAMPLES,
                                      hull_samples: int = config.DEFAULT_HULL_SAMPLES,
                                      geometry: bool = True) -> ValidationReport:
    n = tri.n
    report = ValidationReport(PolytopeKind.PERMUTOHEDRON, n, seed)

    expected = zp_count(n)
    report.add(CheckResult(
        "simplex_count",
        CheckStatus.PASS if tri.simplex_count == expected else CheckStatus.FAIL,
        {"expected": expected, "found": tri.simplex_count},
    ))

    keys = [tuple(v.key) for v in tri.vertices]
    table_ok = (
        sorted(keys) == sorted(permutations(range(1, n + 2)))
        and all(tuple(v.coords) == tuple(v.key) for v in tri.vertices)
    )
    report.add(CheckResult("vertex_table", CheckStatus.PASS if table_ok else CheckStatus.FAIL,
                           {"vertices": len(keys)},
                           None if table_ok else {"problem": f"vertex table is not the permutations of 1..{n + 1}"}))

    coords = [v.coords for v in tri.vertices]
    on_plane = hyperplane_check(coords, n + 1) and all(len(c) == n + 1 for c in coords)
    report.add(CheckResult("hyperplane", CheckStatus.PASS if on_plane else CheckStatus.FAIL,
                           {"target_sum": (n + 1) * (n + 2) // 2}))

    chains_ok = table_ok and _check_chains(tri, keys, report)

    if not geometry:
        return report
    if not (on_plane and chains_ok):
        for name in ("nondegeneracy", "facet_pairing", "sampling_disjointness", "sampling_coverage"):
            report.add(CheckResult(name, CheckStatus.SKIPPED, {"reason": "combinatorial checks failed"}))
    else:
        run_geometric_checks(tri, report, seed, interior_samples, hull_samples)
    return report


def _check_chains(tri: Triangulation, keys: list[Permutation], report: ValidationReport) -> bool:
    apex = reversal(tri.n + 1)
    bad = None
    for simplex in tri.simplices:
        chain = [keys[i] for i in simplex.vertices]
        if len(chain) != tri.n + 1 or len(set(chain)) != len(chain) or chain[-1] != apex:
            bad = {"simplex": simplex.id, "problem": "wrong size, repeated vertex or missing apex"}
            break
        broken = next(((i, j) for i in range(len(chain)) for j in range(i + 1, len(chain))
                       if not bruhat_leq(chain[i], chain[j])), None)
        if broken is not None:
            bad = {"simplex": simplex.id, "problem": f"{chain[broken[0]]} is not below {chain[broken[1]]}"}
            break
    report.add(CheckResult("bruhat_chain", CheckStatus.PASS if bad is None else CheckStatus.FAIL,
                           {"simplices": tri.simplex_count}, bad))
    return bad is None


def validate_permutohedron(n: int, seed: int = config.DEFAULT_SEED,
                           interior_samples: int = config.DEFAULT_INTERIOR_SAMPLES,
                           hull_samples: int = config.DEFAULT_HULL_SAMPLES) -> ValidationReport:
    try:
        tri = triangulate_permutohedron(n)
    except ConstructionError as exc:
        report = ValidationReport(PolytopeKind.PERMUTOHEDRON, n, seed)
        report.add(CheckResult("construction", CheckStatus.FAIL, {}, str(exc)))
        return report
    return check_permutohedron_triangulation(tri, seed, interior_samples, hull_samples)

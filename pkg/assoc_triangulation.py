"""
Minimal triangulation of the associahedron K^n.

K^n is the convex hull of the Loday points of Y_{n+1}. Its facets are the
faces gamma(a;p,q) = K^p x K^q obtained by grafting a tree of Y_{q+1} onto
leaf a (counted from the right) of a tree of Y_{p+1}. The facets with a = 0
contain the right comb S; every other facet is triangulated recursively as
a product and coned to S. The result has (n+1)^(n-1) simplices, each labeled
by the parking function assembled from its construction recipe.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Optional

import config
from exact_geometry import hyperplane_check, run_geometric_checks, skip_geometric_checks
from models import (
    CapacityError, CheckResult, CheckStatus, ConstructionError, DomainError, FaceGamma,
    PolytopeKind, Simplex, SimplexRecipe, Triangulation, ValidationReport, VertexRecord,
)
from parking import ParkingFunction, PiDecomposition, compose_pf, enumerate_parking, is_parking, parking_count
from shuffles import Shuffle, enumerate_shuffles, staircase
from trees import (
    Tree, enumerate_trees, graft, loday_point, parse_tree, right_comb, tamari_leq, tamari_sort_key,
)

logger = logging.getLogger(__name__)


# =============================================================================
# FACES
# =============================================================================

def enumerate_cone_faces(n: int) -> list[FaceGamma]:
    """Facets of K^n missing the right comb: p ascending, then a ascending."""
    if n < 1:
        raise DomainError(f"K^{n} has no facets")
    return [FaceGamma(a, p, n - 1 - p) for p in range(n) for a in range(1, p + 2)]


def boundary_faces(n: int) -> list[FaceGamma]:
    """All n(n+3)/2 facets of K^n, the ones through S included."""
    if n < 1:
        raise DomainError(f"K^{n} has no facets")
    return [FaceGamma(a, p, n - 1 - p) for p in range(n) for a in range(0, p + 2)]


def face_vertex(gamma: FaceGamma, s: Tree, t: Tree) -> Tree:
    if s.size != gamma.p + 1 or t.size != gamma.q + 1:
        raise DomainError(
            f"face {gamma} takes trees of sizes {gamma.p + 1} and {gamma.q + 1}, got {s.size} and {t.size}"
        )
    return graft(s, gamma.a, t)


def face_vertices(gamma: FaceGamma) -> list[Tree]:
    return [
        face_vertex(gamma, s, t)
        for s in enumerate_trees(gamma.p + 1)
        for t in enumerate_trees(gamma.q + 1)
    ]


def face_contains_south_pole(gamma: FaceGamma) -> bool:
    return right_comb(gamma.n + 1) in face_vertices(gamma)


def fatten_face(gamma: FaceGamma) -> FaceGamma:
    """gamma(a;p,q) of K^(n-1) -> gamma(a+1;p+1,q) of K^n."""
    return FaceGamma(gamma.a + 1, gamma.p + 1, gamma.q)


@lru_cache(maxsize=None)
def simplex_count_recursion(n: int) -> int:
    """Top simplices of K^n counted along the cone faces."""
    if n < 0:
        raise DomainError(f"dimension must be non-negative, got {n}")
    if n == 0:
        return 1
    return sum(
        (p + 1) * comb(n - 1, p) * simplex_count_recursion(p) * simplex_count_recursion(n - 1 - p)
        for p in range(n)
    )


# =============================================================================
# CONSTRUCTION
# =============================================================================

@dataclass(frozen=True)
class _Cell:
    vertices: tuple[Tree, ...]
    recipe: SimplexRecipe
    label: ParkingFunction


def _check_chain(vertices: tuple[Tree, ...], gamma: FaceGamma, theta: Shuffle) -> None:
    for lower, upper in zip(vertices, vertices[1:]):
        if not tamari_sort_key(lower) < tamari_sort_key(upper) or not tamari_leq(lower, upper):
            raise ConstructionError(
                f"face {gamma} with shuffle {theta.word!r}: {lower} does not precede {upper} in the Tamari order"
            )


@lru_cache(maxsize=None)
def _cells(n: int) -> tuple[_Cell, ...]:
    if n == 0:
        return (_Cell((right_comb(1),), SimplexRecipe(0), ()),)

    apex = right_comb(n + 1)
    cells = []
    for gamma in enumerate_cone_faces(n):
        for alpha in _cells(gamma.p):
            for beta in _cells(gamma.q):
                for theta in enumerate_shuffles(gamma.p, gamma.q):
                    base = tuple(
                        face_vertex(gamma, alpha.vertices[i], beta.vertices[j])
                        for i, j in staircase(theta)
                    )
                    vertices = base + (apex,)
                    _check_chain(vertices, gamma, theta)
                    recipe = SimplexRecipe(n, gamma, theta.word, alpha.recipe, beta.recipe)
                    label = compose_pf(PiDecomposition(gamma.a, theta, alpha.label, beta.label))
                    cells.append(_Cell(vertices, recipe, label))

    logger.info("K^%d: %d simplices", n, len(cells))
    return tuple(cells)


def triangulate_associahedron(n: int) -> Triangulation:
    """Triangulation of K^n with its Y_{n+1} vertex table."""
    if n < 0:
        raise DomainError(f"dimension must be non-negative, got {n}")
    if n > config.MAX_ASSOC_DIM:
        raise CapacityError(f"K^{n} is above the construction bound {config.MAX_ASSOC_DIM}")

    trees = enumerate_trees(n + 1)
    index = {t.code: i for i, t in enumerate(trees)}
    vertices = [VertexRecord(i, t.code, loday_point(t)) for i, t in enumerate(trees)]
    simplices = [
        Simplex(k, tuple(index[v.code] for v in cell.vertices), cell.label, cell.recipe)
        for k, cell in enumerate(_cells(n))
    ]
    return Triangulation(PolytopeKind.ASSOCIAHEDRON, n, vertices, simplices)


def phi_label(recipe: SimplexRecipe) -> ParkingFunction:
    """Parking function of a simplex, read off its recipe."""
    if recipe.face is None:
        if recipe.dim != 0:
            raise DomainError(f"a {recipe.dim}-dimensional recipe needs a face")
        return ()
    gamma = recipe.face
    if not isinstance(gamma, FaceGamma):
        raise DomainError(f"{gamma} is not a face of an associahedron")
    if recipe.left is None or recipe.right is None:
        raise DomainError(f"recipe on {gamma} is missing a factor")
    if recipe.left.dim != gamma.p or recipe.right.dim != gamma.q or recipe.dim != gamma.n:
        raise DomainError(f"recipe dimensions do not match face {gamma}")
    decomposition = PiDecomposition(gamma.a, Shuffle(recipe.theta), phi_label(recipe.left), phi_label(recipe.right))
    return compose_pf(decomposition)


# =============================================================================
# VALIDATION
# =============================================================================

def check_associahedron_triangulation(tri: Triangulation, seed: int = config.DEFAULT_SEED,
                                      interior_samples: int = config.DEFAULT_INTERIOR_SAMPLES,
                                      hull_samples: int = config.DEFAULT_HULL_SAMPLES,
                                      geometry: bool = True) -> ValidationReport:
    """Combinatorial checks, then exact geometry when n is small enough."""
    n = tri.n
    report = ValidationReport(PolytopeKind.ASSOCIAHEDRON, n, seed)

    expected = parking_count(n)
    report.add(CheckResult(
        "simplex_count",
        CheckStatus.PASS if tri.simplex_count == expected else CheckStatus.FAIL,
        {"expected": expected, "found": tri.simplex_count},
    ))

    trees = _check_vertex_table(tri, report)
    coords = [v.coords for v in tri.vertices]
    on_plane = hyperplane_check(coords, n + 1) and all(len(c) == n + 1 for c in coords)
    report.add(CheckResult("hyperplane", CheckStatus.PASS if on_plane else CheckStatus.FAIL,
                           {"target_sum": (n + 1) * (n + 2) // 2}))

    chains_ok = trees is not None and _check_chains(tri, trees, report)
    _check_labels(tri, report)

    if not geometry:
        return report
    if n > config.MAX_ASSOC_GEOMETRY_DIM:
        skip_geometric_checks(report, config.MAX_ASSOC_GEOMETRY_DIM)
    elif not (on_plane and chains_ok):
        for name in ("nondegeneracy", "facet_pairing", "sampling_disjointness", "sampling_coverage"):
            report.add(CheckResult(name, CheckStatus.SKIPPED, {"reason": "combinatorial checks failed"}))
    else:
        run_geometric_checks(tri, report, seed, interior_samples, hull_samples)
    return report


def _check_vertex_table(tri: Triangulation, report: ValidationReport) -> Optional[list[Tree]]:
    expected = enumerate_trees(tri.n + 1)
    try:
        trees = [parse_tree(v.key) for v in tri.vertices]
    except (DomainError, AttributeError) as exc:
        report.add(CheckResult("vertex_table", CheckStatus.FAIL, {"vertices": len(tri.vertices)}, str(exc)))
        return None

    mismatch = next((v.id for v, t in zip(tri.vertices, trees)
                     if t.size != tri.n + 1 or tuple(v.coords) != loday_point(t)), None)
    same_set = sorted(t.code for t in trees) == [t.code for t in expected]
    ok = mismatch is None and same_set
    counterexample = None
    if mismatch is not None:
        counterexample = {"vertex": mismatch, "problem": "coordinates differ from the Loday point"}
    elif not same_set:
        counterexample = {"problem": f"vertex table is not Y_{tri.n + 1}"}
    report.add(CheckResult("vertex_table", CheckStatus.PASS if ok else CheckStatus.FAIL,
                           {"vertices": len(trees), "expected": len(expected)}, counterexample))
    return trees if ok else None


def _check_chains(tri: Triangulation, trees: list[Tree], report: ValidationReport) -> bool:
    apex = right_comb(tri.n + 1)
    bad = None
    for simplex in tri.simplices:
        chain = [trees[i] for i in simplex.vertices]
        if len(chain) != tri.n + 1 or len(set(simplex.vertices)) != len(chain) or chain[-1] != apex:
            bad = {"simplex": simplex.id, "problem": "wrong size, repeated vertex or missing apex"}
            break
        broken = next(((i, j) for i in range(len(chain)) for j in range(i + 1, len(chain))
                       if not tamari_leq(chain[i], chain[j])), None)
        if broken is not None:
            bad = {"simplex": simplex.id, "problem": f"{chain[broken[0]]} is not below {chain[broken[1]]}"}
            break
    report.add(CheckResult("tamari_chain", CheckStatus.PASS if bad is None else CheckStatus.FAIL,
                           {"simplices": tri.simplex_count}, bad))
    return bad is None


def _check_labels(tri: Triangulation, report: ValidationReport) -> None:
    labels = tri.labels
    problem = None
    if any(label is None or not is_parking(label) or len(label) != tri.n for label in labels):
        problem = "missing label or not a parking function of the right length"
    elif len(set(labels)) != len(labels):
        problem = "repeated label"
    elif tri.n <= config.MAX_PARKING_LENGTH and set(labels) != set(enumerate_parking(tri.n)):
        problem = "labels differ from the parking functions"
    else:
        try:
            mismatch = next((s.id for s in tri.simplices
                             if s.recipe is not None and phi_label(s.recipe) != s.label), None)
        except DomainError as exc:
            mismatch = None
            problem = f"malformed recipe: {exc}"
        if mismatch is not None:
            problem = f"label of simplex {mismatch} differs from its recipe"
    report.add(CheckResult("label_bijection", CheckStatus.PASS if problem is None else CheckStatus.FAIL,
                           {"labels": len(labels), "distinct": len(set(labels))}, problem))


def validate_association(n: int, seed: int = config.DEFAULT_SEED,
                         interior_samples: int = config.DEFAULT_INTERIOR_SAMPLES,
                         hull_samples: int = config.DEFAULT_HULL_SAMPLES) -> ValidationReport:
    """Build K^n and run every check on it."""
    try:
        tri = triangulate_associahedron(n)
    except ConstructionError as exc:
        report = ValidationReport(PolytopeKind.ASSOCIAHEDRON, n, seed)
        report.add(CheckResult("construction", CheckStatus.FAIL, {}, str(exc)))
        return report
    return check_associahedron_triangulation(tri, seed, interior_samples, hull_samples)

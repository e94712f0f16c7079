"""
Exact integer geometry for triangulations living in the hyperplane sum(x) = const.

Every predicate here works on Python integers or Fractions, never floats:
determinants are computed by fraction-free elimination and random interior
points are kept as integer numerators over a common weight.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import config
from models import (
    CheckResult, CheckStatus, Coord, DomainError, IntMatrix, Simplex, Triangulation, ValidationReport,
)

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MULTIPLIER_1 = 0xBF58476D1CE4E5B9
MIX_MULTIPLIER_2 = 0x94D049BB133111EB

# Stream ids handed to SplitMix64.fork by the sampling check
INTERIOR_STREAM = 1
HULL_STREAM = 2


# =============================================================================
# PSEUDO-RANDOM NUMBERS
# =============================================================================

def _mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * MIX_MULTIPLIER_1 & MASK64
    z = (z ^ (z >> 27)) * MIX_MULTIPLIER_2 & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Small 64-bit generator, identical output on every platform for a given seed."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return _mix64(self.state)

    def randint(self, low: int, high: int) -> int:
        """Integer in low..high inclusive."""
        if high < low:
            raise DomainError(f"empty range {low}..{high}")
        return low + self.next_u64() % (high - low + 1)

    def fork(self, stream: int) -> "SplitMix64":
        """Independent generator for a numbered stream; does not advance self."""
        salt = _mix64((stream + 1) * GOLDEN_GAMMA & MASK64)
        return SplitMix64(_mix64(self.state ^ salt))


# =============================================================================
# DETERMINANTS
# =============================================================================

def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    rows = [list(row) for row in matrix]
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise DomainError("determinant needs a square matrix")
    if size == 0:
        return 1

    sign = 1
    previous = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if rows[i][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                # exact: Sylvester's identity
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // previous
        previous = pivot
    return sign * rows[-1][-1]


def _check_points(points: Sequence[Sequence[int]]) -> list[Coord]:
    pts = [tuple(p) for p in points]
    if not pts:
        raise DomainError("no points given")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise DomainError("points have different dimensions")
    if len({sum(p) for p in pts}) > 1:
        raise DomainError("points do not lie on a common hyperplane sum(x) = c")
    if len(pts) != dim:
        raise DomainError(f"{len(pts)} points cannot form a top simplex of a hyperplane in R^{dim}")
    return pts


def simplex_det(points: Sequence[Sequence[int]]) -> int:
    """
    Signed volume form of n+1 points of R^(n+1) on a hyperplane sum(x) = c:
    the determinant of the rows v_i - v_0 (i >= 1) completed by a row of ones.
    """
    pts = _check_points(points)
    origin = pts[0]
    rows = [[x - o for x, o in zip(p, origin)] for p in pts[1:]]
    rows.append([1] * len(origin))
    return determinant(rows)


def hyperplane_check(points: Sequence[Sequence[int]], n: int) -> bool:
    """All points lie on sum(x) = n(n+1)/2."""
    target = n * (n + 1) // 2
    return all(sum(p) == target for p in points)


def _sign(value: int) -> int:
    return (value > 0) - (value < 0)


# =============================================================================
# POINT LOCATION
# =============================================================================

@dataclass
class SimplexFrame:
    """
    Precomputed barycentric solver for one simplex.

    The first n coordinates together with the all-ones row give a square
    system; for an integer point X / W the barycentric coordinates are
    adjugate @ (X_0..X_{n-1}, W) / (det * W).
    """
    det: int
    adjugate: IntMatrix
    lower: Coord
    upper: Coord

    @classmethod
    def from_points(cls, points: Sequence[Coord]) -> "SimplexFrame":
        dim = len(points[0])
        matrix = [[p[r] for p in points] for r in range(dim - 1)]
        matrix.append([1] * len(points))
        det = determinant(matrix)
        if det == 0:
            raise DomainError("degenerate simplex has no barycentric frame")
        inverse = _inverse(matrix)
        adjugate = []
        for row in inverse:
            scaled = [value * det for value in row]
            if any(value.denominator != 1 for value in scaled):
                raise DomainError("adjugate is not integral")
            adjugate.append([int(value) for value in scaled])
        lower = tuple(min(p[r] for p in points) for r in range(dim))
        upper = tuple(max(p[r] for p in points) for r in range(dim))
        return cls(det=det, adjugate=adjugate, lower=lower, upper=upper)

    def contains(self, numerator: Sequence[int], weight: int) -> bool:
        """Closed membership of the point numerator / weight, weight > 0."""
        for value, low, high in zip(numerator, self.lower, self.upper):
            if value < weight * low or value > weight * high:
                return False
        rhs = list(numerator[:-1]) + [weight]
        orientation = _sign(self.det)
        for row in self.adjugate:
            if orientation * sum(c * x for c, x in zip(row, rhs)) < 0:
                return False
        return True


def _inverse(matrix: IntMatrix) -> list[list[Fraction]]:
    size = len(matrix)
    rows = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(size)]
        for i, row in enumerate(matrix)
    ]
    for col in range(size):
        pivot_row = next(r for r in range(col, size) if rows[r][col] != 0)
        rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
        pivot = rows[col][col]
        rows[col] = [x / pivot for x in rows[col]]
        for r in range(size):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return [row[size:] for row in rows]


def _combine(points: Sequence[Coord], weights: Sequence[int]) -> tuple[list[int], int]:
    numerator = [sum(w * p[r] for w, p in zip(weights, points)) for r in range(len(points[0]))]
    return numerator, sum(weights)


# =============================================================================
# CHECKS
# =============================================================================

def nondegeneracy_check(tri: Triangulation) -> CheckResult:
    """Every simplex has a nonzero determinant; records the sign census."""
    census = {"positive": 0, "negative": 0, "zero": 0}
    first_zero: Optional[int] = None
    for simplex in tri.simplices:
        det = simplex_det(tri.vertex_coords(simplex))
        if det > 0:
            census["positive"] += 1
        elif det < 0:
            census["negative"] += 1
        else:
            census["zero"] += 1
            if first_zero is None:
                first_zero = simplex.id
    status = CheckStatus.PASS if census["zero"] == 0 else CheckStatus.FAIL
    counterexample = None if first_zero is None else {"simplex": first_zero}
    return CheckResult("nondegeneracy", status, {"simplices": tri.simplex_count, **census}, counterexample)


def volume_sum(tri: Triangulation) -> int:
    return sum(abs(simplex_det(tri.vertex_coords(s))) for s in tri.simplices)


def _facet_map(tri: Triangulation) -> dict[tuple[int, ...], list[tuple[Simplex, int]]]:
    facets: dict[tuple[int, ...], list[tuple[Simplex, int]]] = {}
    for simplex in tri.simplices:
        for position, opposite in enumerate(simplex.vertices):
            facet = tuple(sorted(v for k, v in enumerate(simplex.vertices) if k != position))
            facets.setdefault(facet, []).append((simplex, opposite))
    return facets


def facet_pairing_check(tri: Triangulation) -> ValidationReport:
    """
    Codimension-1 census: each facet belongs to two simplices that lie on
    opposite sides of it, or to one simplex and then supports the polytope.
    """
    report = ValidationReport(tri.kind, tri.n)
    if tri.n == 0:
        report.add(CheckResult("facet_pairing", CheckStatus.PASS, {"internal": 0, "boundary": 0}))
        return report

    coords = [v.coords for v in tri.vertices]
    internal = boundary = 0
    violations = 0
    counterexample = None
    for facet, incidences in sorted(_facet_map(tri).items()):
        facet_points = [coords[i] for i in facet]
        problem = None
        if len(incidences) == 2:
            internal += 1
            sides = [_sign(simplex_det(facet_points + [coords[opposite]])) for _, opposite in incidences]
            if 0 in sides or sides[0] == sides[1]:
                problem = "internal facet does not separate its two simplices"
        elif len(incidences) == 1:
            boundary += 1
            sides = {_sign(simplex_det(facet_points + [point])) for point in coords} - {0}
            if len(sides) > 1:
                problem = "boundary facet is not a supporting hyperplane"
        else:
            problem = f"facet shared by {len(incidences)} simplices"
        if problem:
            violations += 1
            if counterexample is None:
                counterexample = {
                    "facet": list(facet),
                    "simplices": [s.id for s, _ in incidences],
                    "problem": problem,
                }

    status = CheckStatus.PASS if violations == 0 else CheckStatus.FAIL
    details = {"internal": internal, "boundary": boundary, "violations": violations}
    report.add(CheckResult("facet_pairing", status, details, counterexample))
    return report


def sample_membership_check(tri: Triangulation, seed: int, count: int,
                            hull_count: Optional[int] = None) -> ValidationReport:
    """
    Random exact points: interior points of each simplex must lie in no other
    simplex, and random points of the whole polytope must lie in at least one.
    """
    hull_count = count if hull_count is None else hull_count
    report = ValidationReport(tri.kind, tri.n, seed)
    frames = [SimplexFrame.from_points(tri.vertex_coords(s)) for s in tri.simplices]
    rng = SplitMix64(seed)

    interior = rng.fork(INTERIOR_STREAM)
    violations = 0
    counterexample = None
    for index, simplex in enumerate(tri.simplices):
        stream = interior.fork(index)
        points = tri.vertex_coords(simplex)
        for _ in range(count):
            weights = [stream.randint(1, config.SAMPLE_WEIGHT_MAX) for _ in points]
            numerator, weight = _combine(points, weights)
            hit = next((other for other, frame in enumerate(frames)
                        if other != index and frame.contains(numerator, weight)), None)
            if hit is not None:
                violations += 1
                if counterexample is None:
                    counterexample = {
                        "simplex": simplex.id,
                        "also_in": tri.simplices[hit].id,
                        "weights": weights,
                    }
    status = CheckStatus.PASS if violations == 0 else CheckStatus.FAIL
    report.add(CheckResult(
        "sampling_disjointness", status,
        {"samples_per_simplex": count, "violations": violations}, counterexample,
    ))

    hull = rng.fork(HULL_STREAM)
    all_points = [v.coords for v in tri.vertices]
    misses = 0
    counterexample = None
    for _ in range(hull_count):
        weights = [hull.randint(1, config.SAMPLE_WEIGHT_MAX) for _ in all_points]
        numerator, weight = _combine(all_points, weights)
        if not any(frame.contains(numerator, weight) for frame in frames):
            misses += 1
            if counterexample is None:
                counterexample = {"weights": weights}
    status = CheckStatus.PASS if misses == 0 else CheckStatus.FAIL
    report.add(CheckResult("sampling_coverage", status, {"samples": hull_count, "misses": misses}, counterexample))
    return report


def run_geometric_checks(tri: Triangulation, report: ValidationReport, seed: int,
                         interior_samples: int, hull_samples: int) -> None:
    """Nondegeneracy, facet pairing and sampling, added to report in that order."""
    nondegenerate = report.add(nondegeneracy_check(tri))
    if not nondegenerate.passed:
        reason = {"reason": "degenerate simplices"}
        for name in ("facet_pairing", "sampling_disjointness", "sampling_coverage"):
            report.add(CheckResult(name, CheckStatus.SKIPPED, dict(reason)))
        return
    report.merge(facet_pairing_check(tri))
    report.merge(sample_membership_check(tri, seed, interior_samples, hull_samples))


def skip_geometric_checks(report: ValidationReport, bound: int) -> None:
    reason = {"reason": f"exact geometry runs up to n={bound}"}
    for name in ("nondegeneracy", "facet_pairing", "sampling_disjointness", "sampling_coverage"):
        report.add(CheckResult(name, CheckStatus.SKIPPED, dict(reason)))

"""
Tests for exact_geometry

Integer determinants, the seeded generator, and the three geometric checks on
hand-built triangulations of the pentagon and the hexagon.
"""

import unittest
import sys
import os

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from exact_geometry import (
    SimplexFrame, SplitMix64, determinant, facet_pairing_check, hyperplane_check,
    nondegeneracy_check, sample_membership_check, simplex_det, volume_sum,
)
from models import CheckStatus, DomainError, PolytopeKind, Simplex, Triangulation, VertexRecord

# K^2: the pentagon on Y_3, vertex ids in canonical tree order
PENTAGON = [(1, 2, 3), (2, 1, 3), (1, 4, 1), (3, 1, 2), (3, 2, 1)]
PENTAGON_SIMPLICES = [(0, 1, 4), (1, 3, 4), (0, 2, 4)]

# P^2: the hexagon, vertex ids in lexicographic order of the permutations
HEXAGON = [(1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)]
HEXAGON_SIMPLICES = [(0, 1, 5), (2, 4, 5), (0, 2, 5), (1, 3, 5)]


def make_triangulation(kind, n, points, simplices):
    vertices = [VertexRecord(i, p, p) for i, p in enumerate(points)]
    return Triangulation(kind, n, vertices, [Simplex(k, s) for k, s in enumerate(simplices)])


def pentagon(simplices=PENTAGON_SIMPLICES):
    return make_triangulation(PolytopeKind.ASSOCIAHEDRON, 2, PENTAGON, simplices)


def hexagon(simplices=HEXAGON_SIMPLICES):
    return make_triangulation(PolytopeKind.PERMUTOHEDRON, 2, HEXAGON, simplices)


class TestDeterminants(unittest.TestCase):
    """determinant and simplex_det."""

    def test_determinant(self):
        self.assertEqual(determinant([]), 1)
        self.assertEqual(determinant([[2]]), 2)
        self.assertEqual(determinant([[1, 2], [3, 4]]), -2)
        self.assertEqual(determinant([[0, 1], [1, 0]]), -1)
        self.assertEqual(determinant([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]), 4)
        self.assertEqual(determinant([[1, 2, 3], [2, 4, 6], [0, 1, 5]]), 0)

    def test_determinant_needs_square_matrix(self):
        with self.assertRaises(DomainError):
            determinant([[1, 2]])

    def test_large_entries_stay_exact(self):
        big = 10 ** 30
        self.assertEqual(determinant([[big, 1], [1, big]]), big * big - 1)

    def test_segment(self):
        self.assertEqual(simplex_det([(1, 2), (2, 1)]), 2)

    def test_pentagon_simplices(self):
        dets = [simplex_det([PENTAGON[i] for i in s]) for s in PENTAGON_SIMPLICES]
        self.assertEqual(dets, [6, 3, -12])

    def test_hexagon_simplices(self):
        dets = [simplex_det([HEXAGON[i] for i in s]) for s in HEXAGON_SIMPLICES]
        self.assertEqual(dets, [-6, 3, 6, -3])

    def test_swapping_vertices_flips_the_sign(self):
        a, b, c = PENTAGON[0], PENTAGON[1], PENTAGON[4]
        self.assertEqual(simplex_det([b, a, c]), -simplex_det([a, b, c]))
        self.assertEqual(simplex_det([a, c, b]), -simplex_det([a, b, c]))

    def test_repeated_vertex_is_degenerate(self):
        self.assertEqual(simplex_det([PENTAGON[0], PENTAGON[0], PENTAGON[4]]), 0)

    def test_bad_inputs(self):
        with self.assertRaises(DomainError):
            simplex_det([(1, 2, 3), (2, 1, 3)])
        with self.assertRaises(DomainError):
            simplex_det([(1, 2, 3), (2, 2, 3), (3, 2, 1)])

    def test_hyperplane(self):
        self.assertTrue(hyperplane_check(PENTAGON, 3))
        self.assertFalse(hyperplane_check(PENTAGON + [(1, 1, 1)], 3))


class TestSplitMix64(unittest.TestCase):
    """Deterministic pseudo-random numbers."""

    def test_reference_value(self):
        self.assertEqual(SplitMix64(0).next_u64(), 0xE220A8397B1DCDAF)

    def test_same_seed_same_stream(self):
        a, b = SplitMix64(42), SplitMix64(42)
        self.assertEqual([a.next_u64() for _ in range(10)], [b.next_u64() for _ in range(10)])

    def test_different_seeds(self):
        self.assertNotEqual(SplitMix64(1).next_u64(), SplitMix64(2).next_u64())

    def test_fork_does_not_advance(self):
        rng = SplitMix64(7)
        first = rng.fork(3).next_u64()
        self.assertEqual(rng.fork(3).next_u64(), first)
        self.assertNotEqual(rng.fork(4).next_u64(), first)
        self.assertEqual(rng.next_u64(), SplitMix64(7).next_u64())

    def test_randint_range(self):
        rng = SplitMix64(5)
        values = [rng.randint(1, 6) for _ in range(500)]
        self.assertEqual(set(values), set(range(1, 7)))
        with self.assertRaises(DomainError):
            rng.randint(3, 2)


class TestPointLocation(unittest.TestCase):
    """SimplexFrame."""

    def test_vertices_and_centroid(self):
        points = [PENTAGON[i] for i in PENTAGON_SIMPLICES[0]]
        frame = SimplexFrame.from_points(points)
        for p in points:
            self.assertTrue(frame.contains(list(p), 1))
        centroid = [sum(p[r] for p in points) for r in range(3)]
        self.assertTrue(frame.contains(centroid, 3))

    def test_outside(self):
        frame = SimplexFrame.from_points([PENTAGON[i] for i in PENTAGON_SIMPLICES[0]])
        self.assertFalse(frame.contains(list(PENTAGON[2]), 1))
        self.assertFalse(frame.contains(list(PENTAGON[3]), 1))

    def test_degenerate(self):
        with self.assertRaises(DomainError):
            SimplexFrame.from_points([PENTAGON[0], PENTAGON[0], PENTAGON[4]])


class TestChecks(unittest.TestCase):
    """Nondegeneracy, facet pairing and sampling."""

    # =========================================================================
    # VALID TRIANGULATIONS
    # =========================================================================

    def test_nondegeneracy_census(self):
        result = nondegeneracy_check(pentagon())
        self.assertEqual(result.status, CheckStatus.PASS)
        self.assertEqual(result.details["positive"] + result.details["negative"], 3)
        self.assertEqual(result.details["zero"], 0)

    def test_volumes(self):
        self.assertEqual(volume_sum(pentagon()), 21)
        self.assertEqual(volume_sum(hexagon()), 18)

    def test_volume_matches_a_fan(self):
        # fan of the pentagon from (1,2,3) over the far edges
        fan = [(0, 1, 3), (0, 3, 4), (0, 4, 2)]
        self.assertEqual(volume_sum(pentagon(fan)), volume_sum(pentagon()))

    def test_pentagon_facets(self):
        result = facet_pairing_check(pentagon()).checks["facet_pairing"]
        self.assertEqual(result.status, CheckStatus.PASS)
        self.assertEqual((result.details["internal"], result.details["boundary"]), (2, 5))

    def test_hexagon_facets(self):
        result = facet_pairing_check(hexagon()).checks["facet_pairing"]
        self.assertEqual(result.status, CheckStatus.PASS)
        self.assertEqual((result.details["internal"], result.details["boundary"]), (3, 6))

    def test_sampling_passes(self):
        report = sample_membership_check(pentagon(), seed=42, count=50)
        self.assertTrue(report.passed)
        self.assertEqual(report.checks["sampling_disjointness"].details["violations"], 0)
        self.assertEqual(report.checks["sampling_coverage"].details["misses"], 0)

    def test_sampling_is_deterministic(self):
        first = sample_membership_check(hexagon(), seed=3, count=5).to_dict()
        second = sample_membership_check(hexagon(), seed=3, count=5).to_dict()
        self.assertEqual(first, second)

    def test_single_point(self):
        tri = make_triangulation(PolytopeKind.ASSOCIAHEDRON, 0, [(1,)], [(0,)])
        self.assertTrue(facet_pairing_check(tri).passed)
        self.assertTrue(sample_membership_check(tri, seed=1, count=3).passed)

    # =========================================================================
    # BROKEN TRIANGULATIONS
    # =========================================================================

    def test_degenerate_simplex_detected(self):
        tri = pentagon([(0, 1, 4), (1, 3, 4), (0, 0, 4)])
        result = nondegeneracy_check(tri)
        self.assertEqual(result.status, CheckStatus.FAIL)
        self.assertEqual(result.counterexample, {"simplex": 2})

    def test_overlap_detected(self):
        tri = pentagon([(0, 1, 4), (0, 1, 4)])
        self.assertFalse(facet_pairing_check(tri).passed)
        report = sample_membership_check(tri, seed=42, count=10, hull_count=0)
        disjoint = report.checks["sampling_disjointness"]
        self.assertEqual(disjoint.status, CheckStatus.FAIL)
        self.assertEqual(disjoint.details["violations"], 20)

    def test_gap_detected(self):
        tri = pentagon([(0, 1, 4)])
        report = sample_membership_check(tri, seed=42, count=5, hull_count=200)
        self.assertEqual(report.checks["sampling_coverage"].status, CheckStatus.FAIL)
        self.assertGreater(report.checks["sampling_coverage"].details["misses"], 0)
        facets = facet_pairing_check(tri).checks["facet_pairing"]
        self.assertEqual(facets.status, CheckStatus.FAIL)


if __name__ == '__main__':
    unittest.main()

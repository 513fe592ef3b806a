#!/usr/bin/env python
import unittest
import numpy as np
from test.test_helper import TestHelper
from hk_infconv.space.metric_space_factory import buildEuclidean
from hk_infconv.measure.discrete_measure import DiscreteMeasure
from hk_infconv.uot.brute_force import BruteForceOracle, BruteForceError, \
    bruteForceUot
from hk_infconv.uot.pair_cost import HkPairCost, WhePairCost
from hk_infconv.uot.uot_solver import solveUot
from hk_infconv.uot.unbalanced_distances import hkDirac
from hk_infconv.utils.solver_options import BruteForceOptions
from hk_infconv.utils.exceptions import InputValidationError


class BruteForceOracleTest(unittest.TestCase):

    def setUp(self):
        self._oracle = BruteForceOracle(TestHelper.bruteForceOptions())
        self._space = buildEuclidean([[0.], [0.4], [1.1], [5.], [5.4]])

    def _measure(self, atoms):
        return DiscreteMeasure(self._space, atoms)

    def testNumberOfParameters(self):
        self.assertEqual(0, BruteForceOracle._numberOfParameters(1, 1))
        self.assertEqual(1, BruteForceOracle._numberOfParameters(1, 2))
        self.assertEqual(1, BruteForceOracle._numberOfParameters(2, 1))
        self.assertEqual(4, BruteForceOracle._numberOfParameters(2, 2))

    def testSingleAtomsNeedNoSearch(self):
        mu0, mu1 = TestHelper.diracPair(1., 4., 1.)
        result = self._oracle.evaluate(HkPairCost(), mu0, mu1)
        self.assertAlmostEqual(hkDirac(1., 4., 1.), result.value)
        self.assertEqual(0, result.refinements)

    def testOneAgainstTwoMatchesTheSolver(self):
        mu0 = self._measure([(0, 1.)])
        mu1 = self._measure([(1, 0.7), (2, 1.5)])
        for cost in (HkPairCost(), WhePairCost()):
            for first, second in ((mu0, mu1), (mu1, mu0)):
                expected, _ = solveUot(cost, first, second,
                                       TestHelper.uotOptions())
                self.assertAlmostEqual(
                    expected,
                    self._oracle.evaluate(cost, first, second).value,
                    places=8)

    def testDecoupledPairsAreFoundOnTheFirstGrid(self):
        mu0 = self._measure([(0, 1.), (3, 2.)])
        mu1 = self._measure([(1, 2.), (4, 0.5)])
        result = self._oracle.evaluate(HkPairCost(), mu0, mu1)
        self.assertAlmostEqual(hkDirac(1., 2., 0.4) + hkDirac(2., 0.5, 0.4),
                               result.value, places=8)
        self.assertEqual(21 ** 4, result.cells)

    def testUpperBoundsTheSolverOnTwoAgainstTwo(self):
        mu0 = self._measure([(0, 1.), (2, 0.6)])
        mu1 = self._measure([(1, 0.8), (2, 1.2)])
        expected, _ = solveUot(HkPairCost(), mu0, mu1,
                               TestHelper.uotOptions())
        value = bruteForceUot(HkPairCost(), mu0, mu1,
                              TestHelper.bruteForceOptions())
        self.assertLessEqual(expected, value + 1e-9)
        self.assertLessEqual(value, expected * (1 + 1e-3) + 1e-9)

    def testNullMarginal(self):
        null = self._measure([])
        mu1 = self._measure([(1, 0.8), (2, 1.2)])
        for cost in (HkPairCost(), WhePairCost()):
            self.assertAlmostEqual(
                2., self._oracle.evaluate(cost, null, mu1).value)
            self.assertAlmostEqual(
                2., self._oracle.evaluate(cost, mu1, null).value)

    def testTooManyAtoms(self):
        mu0 = self._measure([(0, 1.), (1, 1.), (2, 1.)])
        mu1 = self._measure([(3, 1.)])
        self.assertRaises(BruteForceError, self._oracle.evaluate,
                          HkPairCost(), mu0, mu1)

    def testModulusBoundShrinksWithTheStep(self):
        m = np.array([1., 2.])
        d = np.array([[0., 1.], [2., 0.5]])
        coarse = BruteForceOracle.modulusBound(0.1, m, m, d)
        fine = BruteForceOracle.modulusBound(1e-6, m, m, d)
        self.assertGreater(coarse, fine)
        self.assertGreater(fine, 0.)

    def testResultToDict(self):
        mu0 = self._measure([(0, 1.)])
        mu1 = self._measure([(1, 0.7), (2, 1.5)])
        result = self._oracle.evaluate(HkPairCost(), mu0, mu1)
        self.assertEqual(
            set(['value', 'modulus_bound', 'search_bound', 'grid_step',
                 'cells', 'refinements']), set(result.toDict().keys()))

    def testSearchBoundComesFromTheFirstGrid(self):
        mu0 = self._measure([(0, 1.), (2, 0.6)])
        mu1 = self._measure([(1, 0.8), (2, 1.2)])
        result = self._oracle.evaluate(WhePairCost(), mu0, mu1)
        m0, m1 = mu0.masses(), mu1.masses()
        d = self._space.distances(mu0.indices(), mu1.indices())
        self.assertAlmostEqual(
            BruteForceOracle.modulusBound(1. / 20, m0, m1, d),
            result.searchBound)
        self.assertGreater(result.searchBound, result.modulusBound)
        self.assertLess(result.gridStep, 1e-14)

    def testCoarseGridsAreRejected(self):
        self.assertRaises(InputValidationError, BruteForceOptions,
                          pointsPerAxis=11)
        self.assertEqual(BruteForceOptions.MIN_POINTS_PER_AXIS,
                         BruteForceOptions().pointsPerAxis)

    def _randomTinyPair(self, rnd):
        space = buildEuclidean(rnd.uniform(0, 2, size=(4, 1)))
        atoms = rnd.choice(4, 4, False)
        n0, n1 = rnd.randint(1, 3, size=2)
        mu0 = DiscreteMeasure(space, zip(atoms[:n0],
                                         rnd.uniform(0.1, 2, n0)))
        mu1 = DiscreteMeasure(space, zip(atoms[2:2 + n1],
                                         rnd.uniform(0.1, 2, n1)))
        return mu0, mu1

    @TestHelper.longRunningTest
    def testAgreesWithTheSolverOnRandomTinyInstances(self):
        rnd = np.random.RandomState(21)
        for _ in range(50):
            mu0, mu1 = self._randomTinyPair(rnd)
            for cost in (HkPairCost(), WhePairCost()):
                expected, _ = solveUot(cost, mu0, mu1,
                                       TestHelper.uotOptions())
                value = self._oracle.evaluate(cost, mu0, mu1).value
                self.assertLessEqual(expected, value + 1e-9)
                self.assertAlmostEqual(expected, value, delta=1e-4)


if __name__ == "__main__":
    unittest.main()

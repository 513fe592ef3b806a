#!/usr/bin/env python
import unittest
import numpy as np
from test.test_helper import TestHelper
from hk_infconv.space.metric_space_factory import buildEuclidean
from hk_infconv.measure.discrete_measure import DiscreteMeasure
from hk_infconv.uot.pair_cost import HkPairCost, WhePairCost, CustomPairCost
from hk_infconv.uot.uot_solver import UotSolver, SolverNotConvergedError, \
    projectRowsOntoSimplex, projectColumnsOntoSimplex, solveUot
from hk_infconv.uot.unbalanced_distances import hkDirac
from hk_infconv.utils.solver_options import UotSolverOptions
from hk_infconv.utils.exceptions import ErrorCodes, InputValidationError


class SimplexProjectionTest(unittest.TestCase):

    def testKnownProjections(self):
        x = np.array([[0.5, 0.5, 0.], [2., 0., 0.], [1., 1., -5.]])
        np.testing.assert_allclose(
            [[0.5, 0.5, 0.], [1., 0., 0.], [0.5, 0.5, 0.]],
            projectRowsOntoSimplex(x, [1., 1., 1.]))

    def testRowsSumToTheirMasses(self):
        rnd = np.random.RandomState(11)
        x = rnd.normal(size=(5, 4))
        masses = rnd.uniform(0.1, 3, 5)
        projected = projectRowsOntoSimplex(x, masses)
        self.assertTrue(np.all(projected >= 0))
        np.testing.assert_allclose(masses, projected.sum(axis=1))
        columns = projectColumnsOntoSimplex(x.T, masses)
        np.testing.assert_allclose(projected.T, columns)


class UotSolverTest(unittest.TestCase):

    def setUp(self):
        self._solver = UotSolver(TestHelper.uotOptions())

    def testHkBetweenDiracs(self):
        for m0 in (0.25, 1., 4.):
            for m1 in (0.25, 1., 4.):
                for d in (0., 0.5, np.pi / 2, 2., np.pi):
                    mu0, mu1 = TestHelper.diracPair(m0, m1, d)
                    solution = self._solver.solve(HkPairCost(), mu0, mu1)
                    self.assertAlmostEqual(hkDirac(m0, m1, d),
                                           solution.value(), places=10)
                    self.assertTrue(solution.converged())
                    self.assertTrue(solution.plan().isFeasible(mu0, mu1))

    def testWheBetweenDiracs(self):
        mu0, mu1 = TestHelper.diracPair(1., 1., 2.)
        solution = self._solver.solve(WhePairCost(), mu0, mu1)
        self.assertAlmostEqual(1.75, solution.value(), places=10)
        self.assertEqual('WHE', solution.costKind())

    def testNullMarginals(self):
        mu0, mu1 = TestHelper.diracPair(2., 3., 1.)
        null = DiscreteMeasure.null(mu0.space())
        for cost in (HkPairCost(), WhePairCost()):
            towardsNull = self._solver.solve(cost, mu0, null)
            fromNull = self._solver.solve(cost, null, mu1)
            self.assertAlmostEqual(2., towardsNull.value())
            self.assertAlmostEqual(3., fromNull.value())
            self.assertTrue(towardsNull.plan().hasVertexColumn())
            self.assertTrue(fromNull.plan().hasVertexRow())
            self.assertTrue(fromNull.plan().isFeasible(null, mu1))
            self.assertEqual(0., self._solver.solve(cost, null,
                                                    null).value())

    def testFarApartPairsDecouple(self):
        space = buildEuclidean([[0.], [0.3], [5.], [5.4]])
        mu0 = DiscreteMeasure(space, [(0, 1.), (2, 2.)])
        mu1 = DiscreteMeasure(space, [(1, 2.), (3, 0.5)])
        value, plan = solveUot(HkPairCost(), mu0, mu1,
                               TestHelper.uotOptions())
        self.assertAlmostEqual(hkDirac(1., 2., 0.3) + hkDirac(2., 0.5, 0.4),
                               value, places=10)
        self.assertAlmostEqual(0., plan.a()[0, 1])
        self.assertAlmostEqual(0., plan.b()[1, 0])

    def testPlansAreFeasible(self):
        rnd = np.random.RandomState(1)
        for cost in (HkPairCost(), WhePairCost()):
            mu0, mu1 = TestHelper.randomMeasurePair(rnd)
            solution = self._solver.solve(cost, mu0, mu1)
            self.assertTrue(solution.plan().isFeasible(mu0, mu1))
            self.assertAlmostEqual(
                cost.total(solution.plan().a(), solution.plan().b(),
                           _distances(mu0, mu1)),
                solution.value())

    def testHomogeneity(self):
        rnd = np.random.RandomState(2)
        mu0, mu1 = TestHelper.randomMeasurePair(rnd)
        for cost in (HkPairCost(), WhePairCost()):
            value = self._solver.solve(cost, mu0, mu1).value()
            scaled = self._solver.solve(cost, mu0.scale(3.),
                                        mu1.scale(3.)).value()
            self.assertAlmostEqual(3 * value, scaled, delta=1e-7 * value)

    def testHkIsSymmetric(self):
        rnd = np.random.RandomState(4)
        mu0, mu1 = TestHelper.randomMeasurePair(rnd)
        forward = self._solver.solve(HkPairCost(), mu0, mu1).value()
        backward = self._solver.solve(HkPairCost(), mu1, mu0).value()
        self.assertAlmostEqual(forward, backward, delta=1e-5 * forward)

    def testExhaustedBudgetRaisesWithTheIncumbent(self):
        rnd = np.random.RandomState(6)
        mu0, mu1 = TestHelper.randomMeasurePair(rnd)
        solver = UotSolver(UotSolverOptions(maxIter=1, tol=1e-14))
        with self.assertRaises(SolverNotConvergedError) as context:
            solver.solve(HkPairCost(), mu0, mu1)
        error = context.exception
        self.assertEqual(ErrorCodes.SOLVER_FAILURE, error.errorCode)
        self.assertFalse(error.incumbent.converged())
        self.assertTrue(np.isfinite(error.incumbent.value()))
        self.assertIn('incumbent', error.toDict())
        self.assertEqual(1, error.toDict()['incumbent']['sweeps'])

    def testToleranceControlsTheStop(self):
        rnd = np.random.RandomState(7)
        mu0, mu1 = TestHelper.randomMeasurePair(rnd)
        loose = UotSolver(UotSolverOptions(tol=1.))
        for cost in (HkPairCost(), WhePairCost()):
            tight = self._solver.solve(cost, mu0, mu1)
            early = loose.solve(cost, mu0, mu1)
            self.assertTrue(early.converged())
            self.assertEqual(1, early.sweeps())
            self.assertLess(early.sweeps(), tight.sweeps())
            self.assertGreaterEqual(early.value(), tight.value() - 1e-9)
            self.assertLessEqual(early.dualityGap(), 1.)

    def testDualityGapVanishesBetweenDiracs(self):
        for d in (0., 0.5, 1., np.pi / 2, 2.):
            mu0, mu1 = TestHelper.diracPair(1., 4., d)
            for cost in (HkPairCost(), WhePairCost()):
                solution = self._solver.solve(cost, mu0, mu1)
                self.assertLessEqual(solution.dualityGap(), 1e-9)
                self.assertIn('duality_gap', solution.toDict())

    def testDualBoundNeverExceedsTheValue(self):
        rnd = np.random.RandomState(8)
        for _ in range(5):
            mu0, mu1 = TestHelper.randomMeasurePair(rnd)
            m0, m1 = mu0.masses(), mu1.masses()
            d = _distances(mu0, mu1)
            independent = (np.outer(m0, m1) / np.sum(m1),
                           np.outer(m0, m1) / np.sum(m0))
            for cost in (HkPairCost(), WhePairCost()):
                plan = self._solver.solve(cost, mu0, mu1).plan()
                for a, b in ((plan.a(), plan.b()), independent):
                    bound = self._solver.lowerBound(cost, a, b, d, m0, m1)
                    self.assertGreaterEqual(bound, 0.)
                    self.assertLessEqual(bound,
                                         cost.total(a, b, d) + 1e-12)

    def testNoDualBoundForCustomCosts(self):
        cost = CustomPairCost(lambda a, b, d: a + b)
        one = np.ones((1, 1))
        self.assertIsNone(self._solver.lowerBound(cost, one, 2 * one, one,
                                                  one[0], 2 * one[0]))


def _distances(mu0, mu1):
    return mu0.space().distances(mu0.indices(), mu1.indices())


class UotSolverOptionsTest(unittest.TestCase):

    def testToleranceFromTheEnvironment(self):
        options = UotSolverOptions()
        self.assertEqual(1e-5, options.withEnvironment(
            {'UOT_TOL': '1e-5'}).tol)
        self.assertEqual(options.tol, options.withEnvironment({}).tol)
        self.assertEqual(options.tol, options.withEnvironment(
            {'UOT_TOL': ' '}).tol)
        self.assertRaises(InputValidationError, options.withEnvironment,
                          {'UOT_TOL': 'small'})

    def testInvalidOptions(self):
        self.assertRaises(InputValidationError, UotSolverOptions, tol=0.)
        self.assertRaises(InputValidationError, UotSolverOptions,
                          maxIter=0)
        self.assertRaises(InputValidationError, UotSolverOptions,
                          epsilonSchedule='1e-4, -1')

    def testScheduleFromAString(self):
        options = UotSolverOptions(epsilonSchedule='1e-3, 1e-5;1e-7')
        self.assertEqual((1e-3, 1e-5, 1e-7), options.epsilonSchedule)


if __name__ == "__main__":
    unittest.main()

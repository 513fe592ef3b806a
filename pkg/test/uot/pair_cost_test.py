#!/usr/bin/env python
import unittest
import numpy as np
from test.test_helper import TestHelper
from hk_infconv.uot.pair_cost import AbstractPairCost, HkPairCost, \
    WhePairCost, CustomPairCost, PairCostError, pairCostFromKind


def _hkEvaluator(a, b, d):
    return a + b - 2 * np.sqrt(a * b) * max(np.cos(min(d, np.pi / 2)), 0.)


def _checkPotentialCaps(testCase, cost, seed):
    '''Caps are the largest row potentials keeping every pair feasible'''
    rnd = np.random.RandomState(seed)
    d = rnd.uniform(0, 3, (3, 4))
    d[0, 0] = 0.
    psi = rnd.uniform(-2, 0.5, 4)
    caps = cost.rowPotentialCaps(psi, d)
    t = np.square(np.linspace(0, 4, 400001))
    for i in range(3):
        for j in range(4):
            slack = cost.value(1., t, d[i, j]) - caps[i, j] - psi[j] * t
            testCase.assertGreaterEqual(np.min(slack), -1e-12)
            testCase.assertLessEqual(np.min(slack), 1e-6)
    phi = np.min(caps, axis=1)
    columnCaps = np.min(cost.columnPotentialCaps(phi, d), axis=0)
    testCase.assertTrue(np.all(columnCaps >= psi - 1e-12))
    testCase.assertTrue(np.all(columnCaps <= 1.))


class HkPairCostTest(unittest.TestCase):

    def setUp(self):
        self._cost = HkPairCost()

    def testValue(self):
        self.assertEqual('HK', self._cost.kind())
        self.assertAlmostEqual(0., self._cost.value(1., 1., 0.))
        self.assertAlmostEqual(2., self._cost.value(1., 1., np.pi))
        self.assertAlmostEqual(2 - 2 * np.cos(1.),
                               self._cost.value(1., 1., 1.))
        self.assertAlmostEqual(4., self._cost.value(0., 4., 0.5))

    def testPotentialCaps(self):
        _checkPotentialCaps(self, self._cost, 12)

    def testRowMinimizerIsProportionalToCosineSquaredTimesB(self):
        a = self._cost.rowMinimizer(1., np.array([1., 1.]),
                                    np.array([0., np.pi / 3]))
        np.testing.assert_allclose([0.8, 0.2], a)

    def testRowMinimizerWithoutUsefulPairsIsUniform(self):
        a = self._cost.rowMinimizer(3., np.array([1., 2., 0.]),
                                    np.array([np.pi / 2, 2., 0.]))
        np.testing.assert_allclose([1., 1., 1.], a)

    def testVectorizedBlocksMatchTheGenericOnes(self):
        rnd = np.random.RandomState(3)
        b = rnd.uniform(0, 1, (3, 4))
        a = rnd.uniform(0, 1, (3, 4))
        d = rnd.uniform(0, 2, (3, 4))
        d[1] = 2.
        masses0 = rnd.uniform(0.5, 1, 3)
        masses1 = rnd.uniform(0.5, 1, 4)
        np.testing.assert_allclose(
            AbstractPairCost.rowsMinimizer(self._cost, masses0, b, d),
            self._cost.rowsMinimizer(masses0, b, d))
        np.testing.assert_allclose(
            AbstractPairCost.columnsMinimizer(self._cost, masses1, a, d),
            self._cost.columnsMinimizer(masses1, a, d))

    def testSmoothedGradient(self):
        a, b, d, epsilon, h = 0.7, 0.4, 0.3, 1e-4, 1e-6
        gradA, gradB = self._cost.smoothedGradient(a, b, d, epsilon)
        numericA = (self._cost.smoothedValue(a + h, b, d, epsilon) -
                    self._cost.smoothedValue(a - h, b, d, epsilon)) / (2 * h)
        numericB = (self._cost.smoothedValue(a, b + h, d, epsilon) -
                    self._cost.smoothedValue(a, b - h, d, epsilon)) / (2 * h)
        self.assertAlmostEqual(numericA, gradA, places=6)
        self.assertAlmostEqual(numericB, gradB, places=6)


class WhePairCostTest(unittest.TestCase):

    def setUp(self):
        self._cost = WhePairCost()

    def testValue(self):
        self.assertEqual('WHE', self._cost.kind())
        self.assertAlmostEqual(1.75, self._cost.value(1., 1., 2.))
        self.assertAlmostEqual(1., self._cost.value(1., 4., 0.))
        self.assertAlmostEqual(4., self._cost.value(0., 4., 0.))
        self.assertAlmostEqual(4., self._cost.value(4., 0., 1.))

    def testEnvelopeIsContinuousAcrossBranches(self):
        for a, d in [(1., 1.), (2., 0.5), (0.3, 1.7)]:
            b = a / d ** 4
            below = self._cost.value(a, b * (1 - 1e-9), d)
            above = self._cost.value(a, b * (1 + 1e-9), d)
            self.assertAlmostEqual(below, above, places=6)

    def testEnvelopeIsBelowTheMarginalCost(self):
        rnd = np.random.RandomState(5)
        a, b = rnd.uniform(0, 2, 200), rnd.uniform(0, 2, 200)
        d = rnd.uniform(0, 3, 200)
        marginal = np.square(np.sqrt(a) - np.sqrt(b)) + b * np.square(d)
        self.assertTrue(np.all(self._cost.value(a, b, d) <=
                               marginal + 1e-12))

    def testRowMinimizer(self):
        for mass, b, d in [(1., [1., 2.], [0.5, 1.5]),
                           (3., [1., 1.], [0.5, 1.]),
                           (0.5, [2., 1.], [1.2, 0.]),
                           (1., [0.3, 0.7], [2., 2.])]:
            b, d = np.array(b), np.array(d)
            a = self._cost.rowMinimizer(mass, b, d)
            self.assertAlmostEqual(mass, np.sum(a))
            self.assertTrue(np.all(a >= 0))
            best = TestHelper.rowObjective(self._cost, mass, b, d)
            value = self._cost.total(a, b, d)
            self.assertLessEqual(value, best + 1e-9)
            self.assertGreaterEqual(value, best - 1e-6)

    def testColumnMinimizer(self):
        for mass, a, d in [(1., [1., 1.], [0.5, 1.]),
                           (1., [1., 1.], [2., 2.]),
                           (2., [0.5, 3.], [0., 1.]),
                           (0.2, [1., 0.1], [1.5, 0.3])]:
            a, d = np.array(a), np.array(d)
            b = self._cost.columnMinimizer(mass, a, d)
            self.assertAlmostEqual(mass, np.sum(b))
            self.assertTrue(np.all(b >= 0))
            best = TestHelper.rowObjective(self._cost, mass, a, d,
                                           asRow=False)
            value = self._cost.total(a, b, d)
            self.assertLessEqual(value, best + 1e-9)
            self.assertGreaterEqual(value, best - 1e-6)

    def testPotentialCaps(self):
        _checkPotentialCaps(self, self._cost, 13)

    def testColumnMinimizerSharesOneMultiplier(self):
        a, d = np.array([1., 1., 0.5]), np.array([0.5, 0.2, 1.])
        b = self._cost.columnMinimizer(1., a, d)
        self.assertAlmostEqual(1., np.sum(b))
        multipliers = np.sqrt(a / b) - np.square(d)
        np.testing.assert_allclose(multipliers, multipliers[0], rtol=1e-9)
        self.assertGreater(multipliers[0], 0.)

    def testZeroMassBlocks(self):
        np.testing.assert_array_equal(
            [0., 0.], self._cost.rowMinimizer(0., np.ones(2), np.ones(2)))
        np.testing.assert_allclose(
            [0.5, 0.5], self._cost.columnMinimizer(1., np.zeros(2),
                                                   np.ones(2)))


class CustomPairCostTest(unittest.TestCase):

    def testReproducesHellingerKantorovich(self):
        custom = CustomPairCost(_hkEvaluator, 'hk by hand')
        hk = HkPairCost()
        b, d = np.array([1., 0.5, 2.]), np.array([0.2, 0.9, 1.3])
        self.assertEqual('custom', custom.kind())
        self.assertEqual('hk by hand', custom.name())
        self.assertAlmostEqual(hk.total(np.ones(3), b, d),
                               custom.total(np.ones(3), b, d))
        exact = hk.total(hk.rowMinimizer(1., b, d), b, d)
        numeric = hk.total(custom.rowMinimizer(1., b, d), b, d)
        self.assertAlmostEqual(exact, numeric, places=5)

    def testEvaluatorMustBeCallable(self):
        self.assertRaises(PairCostError, CustomPairCost, 3.)


class PairCostFromKindTest(unittest.TestCase):

    def testKinds(self):
        self.assertIsInstance(pairCostFromKind('hk'), HkPairCost)
        self.assertIsInstance(pairCostFromKind('WHE'), WhePairCost)
        self.assertRaises(PairCostError, pairCostFromKind, 'wasserstein')


if __name__ == "__main__":
    unittest.main()

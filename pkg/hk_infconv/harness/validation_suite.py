import numpy as np
from plico.utils.logger import Logger
from hk_infconv.utils.solver_options import UotSolverOptions
from hk_infconv.geometry.cone_distance import coneDistanceSquared, \
    coneDistanceSquaredSineForm, hkConeCost, wheConeCost
from hk_infconv.space.abstract_metric_space import checkMetricAxioms
from hk_infconv.space.metric_space_factory import buildEuclidean, \
    buildPathGraph
from hk_infconv.measure.discrete_measure import DiscreteMeasure
from hk_infconv.uot.unbalanced_distances import hkDirac, hkDistanceSquared, \
    wheCost, wheDiracMinimizer
from hk_infconv.infconv.minplus import minplusInfconv
from hk_infconv.infconv.fn_solver import diracFnMin
from hk_infconv.hilbert.spd_matrix import SPDMatrix
from hk_infconv.hilbert.parallel_sum import parallelSum, oneStepQuadratic


class CheckResult(object):

    def __init__(self, name, passed, detail=''):
        self.name = name
        self.passed = bool(passed)
        self.detail = detail

    def toDict(self):
        return {'name': self.name, 'passed': self.passed,
                'detail': self.detail}


class ValidationReport(object):

    def __init__(self, checks):
        self.checks = list(checks)

    def allPassed(self):
        return all(each.passed for each in self.checks)

    def failed(self):
        return [each.name for each in self.checks if not each.passed]

    def toDict(self):
        return {'passed': self.allPassed(),
                'checks': [each.toDict() for each in self.checks]}


class ValidationSuite(object):
    """Seeded, reduced run of the invariant checks.

    Every check is a method named _checkXxx returning (passed, detail);
    exceptions raised by a check count as failures.
    """

    CHECKS = ('coneForms', 'conePointwiseChain', 'metricAxioms',
              'hkDiracClosedForm', 'wheDiracClosedForm', 'inequalityChain',
              'homogeneity', 'minplusExamples', 'hilbertianIdentities',
              'fnLinearInterpolant')

    def __init__(self, seed=0, uotOptions=None, fnOptions=None):
        self._seed = seed
        self._uotOptions = uotOptions
        self._fnOptions = fnOptions
        self._logger = Logger.of('Validation suite')

    def run(self):
        results = []
        for name in self.CHECKS:
            method = getattr(self, '_check%s%s' % (name[0].upper(),
                                                   name[1:]))
            try:
                passed, detail = method(np.random.RandomState(self._seed))
            except Exception as e:
                passed, detail = False, '%s: %s' % (e.__class__.__name__,
                                                    str(e))
            if passed:
                self._logger.notice('%s passed' % name)
            else:
                self._logger.error('%s FAILED %s' % (name, detail))
            results.append(CheckResult(name, passed, detail))
        return ValidationReport(results)

    def _checkConeForms(self, rnd):
        r, s = rnd.uniform(0, 3, 200), rnd.uniform(0, 3, 200)
        d = rnd.uniform(0, np.pi, 200)
        err = np.max(np.abs(coneDistanceSquared(r, s, d) -
                            coneDistanceSquaredSineForm(r, s, d)))
        return err <= 1e-12, 'max disagreement %g' % err

    def _checkConePointwiseChain(self, rnd):
        r, s = rnd.uniform(0, 3, 200), rnd.uniform(0, 3, 200)
        d = rnd.uniform(0, 4, 200)
        dc2 = coneDistanceSquared(r, s, d)
        ok = np.all(hkConeCost(r, s, d) <= dc2 + 1e-12) and \
            np.all(dc2 <= 2 * wheConeCost(r, s, d) + 1e-12)
        return ok, ''

    def _checkMetricAxioms(self, rnd):
        space = buildEuclidean(rnd.normal(size=(6, 2)))
        checkMetricAxioms(space.distanceMatrix())
        checkMetricAxioms(buildPathGraph(7).distanceMatrix())
        return True, ''

    def _diracs(self, m0, m1, d):
        space = buildEuclidean([[0.], [d]])
        return (DiscreteMeasure.dirac(space, 0, m0),
                DiscreteMeasure.dirac(space, 1, m1))

    def _checkHkDiracClosedForm(self, rnd):
        worst = 0.
        for m0, m1, d in [(1, 1, np.pi / 2), (0.25, 4, 0.5), (4, 1, 2.)]:
            mu0, mu1 = self._diracs(m0, m1, d)
            worst = max(worst, abs(
                hkDistanceSquared(mu0, mu1, self._uotOptions) -
                hkDirac(m0, m1, d)))
        return worst <= 1e-6, 'max error %g' % worst

    def _checkWheDiracClosedForm(self, rnd):
        worst = 0.
        for m0, m1, d in [(1, 1, 1.), (1, 1, 2.), (0.25, 4, 0.5)]:
            mu0, mu1 = self._diracs(m0, m1, d)
            value, _, nu = wheCost(mu0, mu1, self._uotOptions)
            expected, s0 = wheDiracMinimizer(m0, m1, d)
            worst = max(worst, abs(value - expected),
                        abs(nu.massAt(0) - s0),
                        abs(nu.massAt(1) - (m1 - s0)))
        return worst <= 1e-6, 'max error %g' % worst

    def _randomPair(self, rnd, space, atoms=3):
        n = space.numberOfPoints()
        mu0 = DiscreteMeasure(space, zip(rnd.choice(n, atoms, False),
                                         rnd.uniform(0.1, 2, atoms)))
        mu1 = DiscreteMeasure(space, zip(rnd.choice(n, atoms, False),
                                         rnd.uniform(0.1, 2, atoms)))
        return mu0, mu1

    def _checkInequalityChain(self, rnd):
        # both sides carry the solver accuracy
        tol = (self._uotOptions or UotSolverOptions()).tol
        space = buildEuclidean(rnd.uniform(0, 2, size=(8, 2)))
        for _ in range(5):
            mu0, mu1 = self._randomPair(rnd, space)
            hk2 = hkDistanceSquared(mu0, mu1, self._uotOptions)
            whe = wheCost(mu0, mu1, self._uotOptions)[0]
            if hk2 > 2 * whe + 1e-8 + tol * (hk2 + 2 * whe):
                return False, 'HK^2 %g > 2 WHe %g' % (hk2, 2 * whe)
        return True, ''

    def _checkHomogeneity(self, rnd):
        space = buildEuclidean(rnd.uniform(0, 2, size=(8, 2)))
        mu0, mu1 = self._randomPair(rnd, space)
        value = hkDistanceSquared(mu0, mu1, self._uotOptions)
        scaled = hkDistanceSquared(mu0.scale(3.), mu1.scale(3.),
                                   self._uotOptions)
        err = abs(scaled - 3 * value) / (3 * value)
        return err <= 1e-8, 'relative error %g' % err

    def _checkMinplusExamples(self, rnd):
        discrete = 1. - np.eye(4)
        for N in (1, 2, 8):
            if minplusInfconv(discrete, discrete, 0, 1, N) < N:
                return False, 'discrete metric below N at N=%d' % N
            if minplusInfconv(discrete, discrete, 2, 2, N) != 0:
                return False, 'z0 = z1 not null at N=%d' % N
        rho2 = np.square(buildPathGraph(101).distanceMatrix())
        value = minplusInfconv(rho2, rho2, 0, 100, 1)
        return abs(value - 0.5) <= 0.01, 'path graph value %g' % value

    def _checkHilbertianIdentities(self, rnd):
        worst = 0.
        for m in (1, 2, 4):
            A, B = SPDMatrix.random(m, rnd), SPDMatrix.random(m, rnd)
            v = rnd.normal(size=m)
            value, _ = oneStepQuadratic(A, B, v)
            expected = parallelSum(A, B).quadraticForm(v)
            worst = max(worst, abs(value - expected) / expected)
        return worst <= 1e-8, 'max relative error %g' % worst

    def _checkFnLinearInterpolant(self, rnd):
        value, state = diracFnMin(1., 3., 0., 8, self._fnOptions)
        err = abs(value - 4.)
        return err <= 1e-12, 'error %g' % err

import logging
import os
import shutil
import tempfile
import numpy as np
from hk_infconv.utils.solver_options import UotSolverOptions, \
    BruteForceOptions
from hk_infconv.space.metric_space_factory import buildEuclidean
from hk_infconv.measure.discrete_measure import DiscreteMeasure


ENV_VAR_LONG_RUNNING_TESTS_ENABLE = "ENABLE_LONG_RUNNING_TESTS"


class TestHelper(object):

    @staticmethod
    def longRunningTest(f):
        def wrappedMethod(self, *args, **kwds):
            if TestHelper.areLongRunningTestsInhibited():
                TestHelper._logSkippedTest()
                return
            else:
                return f(self, *args, **kwds)

        return wrappedMethod

    @staticmethod
    def areLongRunningTestsInhibited():
        return ENV_VAR_LONG_RUNNING_TESTS_ENABLE not in os.environ

    @staticmethod
    def _logSkippedTest():
        logging.warning("Test is skipped because long running tests"
                        " are inhibited.  Set environment variable %s"
                        " in order to enable this test!" % (
                            ENV_VAR_LONG_RUNNING_TESTS_ENABLE))

    @staticmethod
    def uotOptions():
        '''Tight enough for comparisons with closed forms'''
        return UotSolverOptions(tol=1e-12)

    @staticmethod
    def bruteForceOptions():
        return BruteForceOptions()

    @staticmethod
    def diracPair(m0, m1, d):
        '''m0 delta_0 and m1 delta_1 on a line, points at distance d'''
        space = buildEuclidean([[0.], [d]], 'line')
        return (DiscreteMeasure.dirac(space, 0, m0),
                DiscreteMeasure.dirac(space, 1, m1))

    @staticmethod
    def randomMeasurePair(rnd, nPoints=8, atoms=3, dimension=2):
        space = buildEuclidean(rnd.uniform(0, 2, size=(nPoints,
                                                       dimension)))
        mu0 = DiscreteMeasure(space, zip(rnd.choice(nPoints, atoms, False),
                                         rnd.uniform(0.1, 2, atoms)))
        mu1 = DiscreteMeasure(space, zip(rnd.choice(nPoints, atoms, False),
                                         rnd.uniform(0.1, 2, atoms)))
        return mu0, mu1

    @staticmethod
    def rowObjective(cost, mass, fixed, d, asRow=True, points=100001):
        '''Smallest value of a two-entry block on a fine scan of the
        simplex'''
        t = np.linspace(0, 1, points)
        x0, x1 = mass * t, mass * (1 - t)
        if asRow:
            values = cost.value(x0, fixed[0], d[0]) + \
                cost.value(x1, fixed[1], d[1])
        else:
            values = cost.value(fixed[0], x0, d[0]) + \
                cost.value(fixed[1], x1, d[1])
        return float(np.min(values))

    @staticmethod
    def makeTemporaryFolder():
        return tempfile.mkdtemp(prefix='hk_infconv_test_')

    @staticmethod
    def removeFolderIfAny(path):
        if os.path.exists(path):
            shutil.rmtree(path)

    @staticmethod
    def removeFileIfAny(path):
        if os.path.exists(path):
            os.remove(path)

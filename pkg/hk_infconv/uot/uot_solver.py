import numpy as np
from plico.utils.logger import Logger
from hk_infconv.utils.constants import Constants
from hk_infconv.utils.exceptions import NumericalError
from hk_infconv.utils.solver_options import UotSolverOptions
from hk_infconv.measure.discrete_measure import checkSameSpace
from hk_infconv.uot.semi_coupling import SemiCoupling


class SolverNotConvergedError(NumericalError):
    """Exception raised when the sweeps budget is exhausted.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
        incumbent -- best UotSolution found before giving up
    """

    def __init__(self, message, incumbent):
        NumericalError.__init__(self, message)
        self.incumbent = incumbent

    def toDict(self):
        ret = NumericalError.toDict(self)
        ret['incumbent'] = self.incumbent.toDict()
        return ret


class UotSolution(object):

    def __init__(self, value, plan, sweeps=0, converged=True,
                 polished=False, costKind=None, dualityGap=None):
        self._value = float(value)
        self._plan = plan
        self._sweeps = int(sweeps)
        self._converged = bool(converged)
        self._polished = bool(polished)
        self._costKind = costKind
        self._dualityGap = dualityGap

    def value(self):
        return self._value

    def plan(self):
        return self._plan

    def sweeps(self):
        return self._sweeps

    def converged(self):
        return self._converged

    def polished(self):
        return self._polished

    def costKind(self):
        return self._costKind

    def dualityGap(self):
        '''Certified relative distance from the optimum, None if unknown'''
        return self._dualityGap

    def toDict(self):
        return {'value': self._value,
                'cost': self._costKind,
                'sweeps': self._sweeps,
                'converged': self._converged,
                'polished': self._polished,
                'duality_gap': self._dualityGap,
                'plan': self._plan.toDict()}


def projectRowsOntoSimplex(x, masses):
    '''Euclidean projection of each row of x onto {y >= 0, sum(y) = mass}'''
    n = x.shape[1]
    u = -np.sort(-x, axis=1)
    cumsum = np.cumsum(u, axis=1) - np.asarray(masses)[:, None]
    ind = np.arange(1, n + 1)
    cond = u - cumsum / ind > 0
    count = np.maximum(np.count_nonzero(cond, axis=1), 1)
    theta = cumsum[np.arange(x.shape[0]), count - 1] / count
    return np.maximum(x - theta[:, None], 0.)


def projectColumnsOntoSimplex(x, masses):
    return projectRowsOntoSimplex(x.T, masses).T


def _weightedMean(values, weights, axis):
    total = np.sum(weights, axis=axis)
    mean = np.sum(values * weights, axis=axis) / np.where(total > 0, total,
                                                          1.)
    return np.where(total > 0, mean, 1.)


class UotSolver(object):
    """Semi-coupling solver for 1-homogeneous convex pair costs.

    The problem is solved on the measures normalized to unit total mass,
    by exact block-coordinate descent (rows of a, then columns of b),
    followed by a projected-gradient polish on the smoothed objective.
    The descent stops after stallSweeps sweeps without relative decrease,
    or as soon as the duality gap of the HK and WHe costs falls below tol.
    The plan is scaled back before evaluating the returned value.
    """

    SUFFICIENT_DECREASE = 1e-4
    MIN_STEP = 1e-20

    def __init__(self, options=None):
        if options is None:
            options = UotSolverOptions()
        self._options = options
        self._logger = Logger.of('UOT solver')

    def options(self):
        return self._options

    def solve(self, cost, mu0, mu1):
        checkSameSpace(mu0, mu1)
        if mu0.isNull() and mu1.isNull():
            return UotSolution(0., SemiCoupling.empty(),
                               costKind=cost.kind())
        if mu1.isNull() or mu0.isNull():
            return self._solveAgainstVertex(cost, mu0, mu1)
        return self._solveBalancedSupports(cost, mu0, mu1)

    def _solveAgainstVertex(self, cost, mu0, mu1):
        vertex = np.array([Constants.VERTEX_SENTINEL])
        if mu1.isNull():
            a = mu0.masses()[:, np.newaxis].copy()
            b = np.zeros_like(a)
            rows, columns = mu0.indices(), vertex
        else:
            b = mu1.masses()[np.newaxis, :].copy()
            a = np.zeros_like(b)
            rows, columns = vertex, mu1.indices()
        d = np.zeros_like(a)
        plan = SemiCoupling(a, b, rows, columns)
        return UotSolution(cost.total(a, b, d), plan, costKind=cost.kind())

    def _solveBalancedSupports(self, cost, mu0, mu1):
        opts = self._options
        scale = mu0.totalMass() + mu1.totalMass()
        m0 = mu0.masses() / scale
        m1 = mu1.masses() / scale
        d = mu0.space().distances(mu0.indices(), mu1.indices())
        a = np.outer(m0, m1) / np.sum(m1)
        b = np.outer(m0, m1) / np.sum(m0)

        value = cost.total(a, b, d)
        best = (value, a, b)
        history = [value]
        stalled = 0
        converged = False
        gap = None
        sweeps = 0
        while sweeps < opts.maxIter:
            sweeps += 1
            a = cost.rowsMinimizer(m0, b, d)
            b = cost.columnsMinimizer(m1, a, d)
            newValue = cost.total(a, b, d)
            if value - newValue <= opts.relativeDecrease * abs(value):
                stalled += 1
            else:
                stalled = 0
            value = newValue
            if value < best[0]:
                best = (value, a, b)
            history.append(value)
            if stalled >= opts.stallSweeps:
                converged = True
                break
            gap = self.relativeGap(cost, best[1], best[2], d, m0, m1)
            if gap is not None and gap <= opts.tol:
                converged = True
                break
        if not converged and gap is None and \
                len(history) > opts.stallSweeps:
            # no certificate for this cost: accept a flat tail
            reference = history[-opts.stallSweeps - 1]
            converged = reference - value <= opts.tol * abs(reference)
        self._logger.debug('%s block descent: %d sweeps, value %.17g' % (
            cost.kind(), sweeps, best[0]))

        polishedValue, pa, pb = self._polish(cost, best[1], best[2], d,
                                             m0, m1)
        polished = polishedValue < best[0]
        if polished:
            best = (polishedValue, pa, pb)
            self._logger.debug('polish improved value to %.17g' %
                               polishedValue)
        gap = self.relativeGap(cost, best[1], best[2], d, m0, m1)
        if not converged and gap is not None:
            converged = gap <= opts.tol

        plan = SemiCoupling(best[1] * scale, best[2] * scale,
                            mu0.indices(), mu1.indices())
        solution = UotSolution(cost.total(plan.a(), plan.b(), d), plan,
                               sweeps=sweeps, converged=converged,
                               polished=polished, costKind=cost.kind(),
                               dualityGap=gap)
        if not converged:
            self._logger.warn('%s solve stopped after %d sweeps' % (
                cost.kind(), sweeps))
            raise SolverNotConvergedError(
                'no convergence after %d sweeps (incumbent %.17g)' % (
                    sweeps, solution.value()), solution)
        return solution

    def lowerBound(self, cost, a, b, d, m0, m1):
        """ Dual lower bound on the optimal value

        Potentials are read off the plan as mass-weighted averages of the
        smoothed partial derivatives, then made feasible by alternately
        taking the largest row (column) potentials the pairs allow. Any
        feasible pair of potentials bounds the optimum from below.

        Return:
            bound (float): nonnegative lower bound, or None when the cost
                has no closed-form dual
        """
        if not cost.hasClosedFormDual():
            return None
        epsilon = min(self._options.epsilonSchedule)
        gradA, gradB = cost.smoothedGradient(a, b, d, epsilon)
        phi = np.minimum(_weightedMean(gradA, a, axis=1), 1.)
        psi = np.minimum(_weightedMean(gradB, b, axis=0), 1.)

        def rows(psi):
            return np.min(cost.rowPotentialCaps(psi, d), axis=1)

        def columns(phi):
            return np.min(cost.columnPotentialCaps(phi, d), axis=0)

        candidates = []
        columnPotentials = columns(rows(psi))
        candidates.append((rows(columnPotentials), columnPotentials))
        rowPotentials = rows(columns(phi))
        candidates.append((rowPotentials, columns(rowPotentials)))
        bound = 0.
        for rowPotentials, columnPotentials in candidates:
            if np.all(np.isfinite(rowPotentials)) and \
                    np.all(np.isfinite(columnPotentials)):
                bound = max(bound, float(np.dot(rowPotentials, m0) +
                                         np.dot(columnPotentials, m1)))
        return bound

    def relativeGap(self, cost, a, b, d, m0, m1):
        bound = self.lowerBound(cost, a, b, d, m0, m1)
        if bound is None:
            return None
        value = cost.total(a, b, d)
        if value <= 0:
            return 0.
        return max(0., value - bound) / value

    def _polish(self, cost, a, b, d, m0, m1):
        bestValue = cost.total(a, b, d)
        best = (bestValue, a, b)
        for epsilon in self._options.epsilonSchedule:
            a, b = self._projectedGradient(cost, a, b, d, m0, m1, epsilon)
            value = cost.total(a, b, d)
            if value < best[0]:
                best = (value, a, b)
            else:
                a, b = best[1], best[2]
        return best

    def _projectedGradient(self, cost, a, b, d, m0, m1, epsilon):
        step = 1.
        current = cost.smoothedTotal(a, b, d, epsilon)
        for _ in range(self._options.polishIterations):
            gradA, gradB = cost.smoothedGradient(a, b, d, epsilon)
            while step >= self.MIN_STEP:
                newA = projectRowsOntoSimplex(a - step * gradA, m0)
                newB = projectColumnsOntoSimplex(b - step * gradB, m1)
                candidate = cost.smoothedTotal(newA, newB, d, epsilon)
                move = np.sum(np.square(newA - a)) + \
                    np.sum(np.square(newB - b))
                if candidate <= current - \
                        self.SUFFICIENT_DECREASE * move / step:
                    break
                step *= 0.5
            else:
                break
            if move == 0 or current - candidate <= \
                    self._options.relativeDecrease * abs(current):
                a, b = newA, newB
                break
            a, b, current = newA, newB, candidate
            step *= 2.
        return a, b


def solveUot(cost, mu0, mu1, options=None):
    solution = UotSolver(options).solve(cost, mu0, mu1)
    return solution.value(), solution.plan()

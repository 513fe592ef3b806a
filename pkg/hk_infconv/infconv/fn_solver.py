import math
import numpy as np
from scipy.linalg import solve_banded
from plico.utils.logger import Logger
from hk_infconv.utils.exceptions import NumericalError, InputValidationError
from hk_infconv.utils.solver_options import FnSolverOptions
from hk_infconv.uot.uot_solver import projectRowsOntoSimplex


class FnSolverError(NumericalError):
    """Exception raised when the f_N minimization does not converge.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
        incumbent -- best (value, FNState) found
    """

    def __init__(self, message, incumbent):
        NumericalError.__init__(self, message)
        self.incumbent = incumbent

    def toDict(self):
        ret = NumericalError.toDict(self)
        ret['incumbent'] = {'value': self.incumbent[0],
                            'state': self.incumbent[1].toDict()}
        return ret


def evaluateFn(r, d):
    '''f_N(r, d) = N sum_i |r_i - r_{i-1}|^2 + r_i^2 d_i^2

    r holds r_0, ..., r_N and d holds d_1, ..., d_N.
    '''
    r = np.asarray(r, dtype=float)
    d = np.asarray(d, dtype=float)
    if len(r) != len(d) + 1 or len(d) < 1:
        raise InputValidationError(
            "f_N needs N+1 radii and N steps, got %d and %d" % (
                len(r), len(d)))
    N = len(d)
    return N * math.fsum(np.square(np.diff(r)) + np.square(r[1:] * d))


class FNState(object):
    """Radii, spatial steps and Lagrange multiplier of a Dirac N-path."""

    def __init__(self, r, d, lam, iterations=0, converged=True,
                 method='alternating'):
        self.r = np.asarray(r, dtype=float)
        self.d = np.asarray(d, dtype=float)
        self.lam = float(lam)
        self.iterations = int(iterations)
        self.converged = bool(converged)
        self.method = method

    @property
    def N(self):
        return len(self.d)

    def value(self):
        return evaluateFn(self.r, self.d)

    def constraintResidual(self, dTotal):
        return abs(math.fsum(self.d) - dTotal)

    def radialResidual(self):
        '''max_i |r_i (2 + d_i^2) - r_{i-1} - r_{i+1}| over interior i'''
        if self.N < 2:
            return 0.
        r, d = self.r, self.d
        residual = r[1:-1] * (2 + np.square(d[:-1])) - r[:-2] - r[2:]
        return float(np.max(np.abs(residual)))

    def angularResidual(self):
        '''max_i |2 r_i^2 d_i - lambda|'''
        return float(np.max(np.abs(2 * np.square(self.r[1:]) * self.d -
                                   self.lam)))

    def stationarityResidual(self):
        return max(self.radialResidual(), self.angularResidual())

    def radiusBounds(self):
        r0, rN = self.r[0], self.r[-1]
        return (1 - np.pi / 4) * min(r0, rN), max(r0, rN)

    def stepBound(self):
        r0, rN = self.r[0], self.r[-1]
        return 1. / np.sqrt(self.N) * (np.pi / (2 - np.pi / 2)) * \
            np.sqrt(r0 * rN) / min(r0, rN)

    def satisfiesBounds(self):
        low, high = self.radiusBounds()
        return bool(np.all(self.r >= low) and np.all(self.r <= high) and
                    np.all(self.d <= self.stepBound()))

    def toDict(self):
        return {'N': self.N,
                'r': self.r.tolist(),
                'd': self.d.tolist(),
                'lambda': self.lam,
                'iterations': self.iterations,
                'converged': self.converged,
                'method': self.method}


class FnSolver(object):
    """Minimizer of f_N over radii and spatial steps summing to d.

    Alternates the exact minimization in the interior radii, a
    tridiagonal solve of r_i (2 + d_i^2) = r_{i-1} + r_{i+1}, with the
    exact minimization in the steps, d_i = lambda / (2 r_i^2) with
    lambda fixed by the sum constraint. Projected gradient descent from
    random starts takes over when the alternation stalls.
    """

    PG_SUFFICIENT_DECREASE = 1e-4

    def __init__(self, options=None):
        if options is None:
            options = FnSolverOptions()
        self._options = options
        self._logger = Logger.of('f_N solver')

    def minimize(self, r0, rN, dTotal, N):
        self._checkProblem(r0, rN, dTotal, N)
        if N == 1:
            state = FNState([r0, rN], [dTotal], 2 * rN ** 2 * dTotal,
                            method='closed-form')
            return state.value(), state
        if dTotal == 0:
            state = FNState(np.linspace(r0, rN, N + 1), np.zeros(N), 0.,
                            method='closed-form')
            return state.value(), state

        r = np.linspace(r0, rN, N + 1)
        state = self._alternate(r, dTotal)
        if state.converged:
            return state.value(), state
        self._logger.warn('alternating sweeps stalled (residual %g), '
                          'falling back to projected gradient' %
                          state.stationarityResidual())
        best = state
        rnd = np.random.RandomState(self._options.seed)
        for restart in range(self._options.restarts):
            if restart == 0:
                start = np.linspace(r0, rN, N + 1)
                steps = np.full(N, dTotal / N)
            else:
                start = np.concatenate([
                    [r0],
                    rnd.uniform(min(r0, rN), max(r0, rN), N - 1),
                    [rN]])
                steps = rnd.dirichlet(np.ones(N)) * dTotal
            r, d = self._projectedGradient(start, steps, dTotal)
            candidate = self._alternate(r, dTotal)
            if candidate.converged or candidate.value() < best.value():
                candidate.method = 'projected-gradient'
                best = candidate
            if best.converged:
                return best.value(), best
        raise FnSolverError(
            'f_N minimization did not converge: N=%d residual %g' % (
                N, best.stationarityResidual()), (best.value(), best))

    @staticmethod
    def _checkProblem(r0, rN, dTotal, N):
        if not (r0 > 0 and rN > 0):
            raise InputValidationError(
                "f_N endpoints need positive radii, got %g and %g" % (
                    r0, rN))
        if not dTotal >= 0:
            raise InputValidationError(
                "spatial distance must be nonnegative, got %g" % dTotal)
        if N < 1:
            raise InputValidationError("N must be >= 1, got %d" % N)

    @staticmethod
    def _optimalRadii(r, d):
        '''Interior radii solving r_i (2 + d_i^2) = r_{i-1} + r_{i+1}'''
        n = len(r) - 2
        banded = np.zeros((3, n))
        banded[0, 1:] = -1.
        banded[1, :] = 2 + np.square(d[:-1])
        banded[2, :-1] = -1.
        rhs = np.zeros(n)
        rhs[0] += r[0]
        rhs[-1] += r[-1]
        ret = r.copy()
        ret[1:-1] = solve_banded((1, 1), banded, rhs)
        return ret

    @staticmethod
    def _optimalSteps(r, dTotal):
        inverse = 1. / np.square(r[1:])
        lam = 2 * dTotal / np.sum(inverse)
        return lam * inverse / 2, lam

    def _alternate(self, r, dTotal):
        tol = self._options.tol
        d, lam = self._optimalSteps(r, dTotal)
        iterations = 0
        converged = False
        while iterations < self._options.maxIter:
            iterations += 1
            r = self._optimalRadii(r, d)
            state = FNState(r, d, lam, iterations, False)
            if state.angularResidual() <= tol:
                converged = True
                break
            d, lam = self._optimalSteps(r, dTotal)
        state = FNState(r, d, lam, iterations, converged)
        self._logger.debug('alternating sweeps: %d, value %.17g' % (
            iterations, state.value()))
        return state

    def _projectedGradient(self, r, d, dTotal):
        N = len(d)
        step = 1. / N
        current = evaluateFn(r, d)
        for _ in range(self._options.maxIter):
            increments = np.diff(r)
            gradR = 2 * N * (increments[:-1] - increments[1:] +
                             r[1:-1] * np.square(d[:-1]))
            gradD = 2 * N * np.square(r[1:]) * d
            while step > 1e-20:
                newR = r.copy()
                newR[1:-1] = np.maximum(r[1:-1] - step * gradR, 0.)
                newD = projectRowsOntoSimplex(
                    (d - step * gradD)[np.newaxis, :], [dTotal])[0]
                candidate = evaluateFn(newR, newD)
                move = np.sum(np.square(newR - r)) + \
                    np.sum(np.square(newD - d))
                if candidate <= current - \
                        self.PG_SUFFICIENT_DECREASE * move / step:
                    break
                step *= 0.5
            else:
                break
            r, d = newR, newD
            if current - candidate <= 1e-16 * current:
                break
            current = candidate
            step *= 2
        return r, d


def diracFnMin(r0, rN, dTotal, N, options=None):
    '''Minimum of f_N over radii with endpoints r0, rN and steps summing to
    dTotal

    Return:
        value, FNState
    '''
    return FnSolver(options).minimize(r0, rN, dTotal, N)

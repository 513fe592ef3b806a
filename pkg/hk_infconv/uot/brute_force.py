import numpy as np
from plico.utils.logger import Logger
from hk_infconv.utils.exceptions import InputValidationError
from hk_infconv.utils.solver_options import BruteForceOptions
from hk_infconv.measure.discrete_measure import checkSameSpace


class BruteForceError(InputValidationError):
    """Exception raised for instances the grid oracle cannot handle.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """


class BruteForceResult(object):

    def __init__(self, value, modulusBound, gridStep, cells, refinements,
                 searchBound=None):
        self.value = float(value)
        self.modulusBound = float(modulusBound)
        if searchBound is None:
            searchBound = modulusBound
        self.searchBound = float(searchBound)
        self.gridStep = float(gridStep)
        self.cells = int(cells)
        self.refinements = int(refinements)

    def toDict(self):
        return {'value': self.value,
                'modulus_bound': self.modulusBound,
                'search_bound': self.searchBound,
                'grid_step': self.gridStep,
                'cells': self.cells,
                'refinements': self.refinements}


class BruteForceOracle(object):
    """Exhaustive grid search over semi-couplings of tiny instances.

    With at most two atoms per side every row (column) of the plan has at
    most one free parameter, the fraction of the row (column) mass sent
    to the first counterpart. The parameter box is sampled on a regular
    grid, then the box is repeatedly halved around the best point found.
    """

    MAX_ATOMS = 2
    SMALLEST_STEP = 1e-15

    def __init__(self, options=None):
        if options is None:
            options = BruteForceOptions()
        self._options = options
        self._logger = Logger.of('Brute force oracle')

    def evaluate(self, cost, mu0, mu1):
        checkSameSpace(mu0, mu1)
        for mu in (mu0, mu1):
            if mu.numberOfAtoms() > self.MAX_ATOMS:
                raise BruteForceError(
                    'brute force supports at most %d atoms per side, got %d'
                    % (self.MAX_ATOMS, mu.numberOfAtoms()))
        if mu0.isNull() or mu1.isNull():
            masses = np.concatenate([mu0.masses(), mu1.masses()])
            zeros = np.zeros_like(masses)
            if mu1.isNull():
                value = cost.total(masses, zeros, zeros)
            else:
                value = cost.total(zeros, masses, zeros)
            return BruteForceResult(value, 0., 0., 1, 0)

        m0, m1 = mu0.masses(), mu1.masses()
        d = mu0.space().distances(mu0.indices(), mu1.indices())
        dims = self._numberOfParameters(len(m0), len(m1))
        if dims == 0:
            value = cost.total(m0[:, np.newaxis], m1[np.newaxis, :], d)
            return BruteForceResult(value, 0., 0., 1, 0)

        k = self._options.pointsPerAxis
        if k ** dims > BruteForceOptions.MAX_CELLS:
            raise BruteForceError('%d^%d grid cells exceed %d' % (
                k, dims, BruteForceOptions.MAX_CELLS))
        lower = np.zeros(dims)
        upper = np.ones(dims)
        bestValue = np.inf
        step = 1.
        refinements = 0
        for refinements in range(self._options.refinements + 1):
            axes = [np.linspace(lo, hi, k) for lo, hi in zip(lower, upper)]
            grid = np.stack(np.meshgrid(*axes, indexing='ij'),
                            axis=-1).reshape(-1, dims)
            values = self._gridValues(cost, grid, m0, m1, d)
            idx = int(np.argmin(values))
            if values[idx] < bestValue:
                bestValue = float(values[idx])
                center = grid[idx]
            step = float(np.max(upper - lower)) / (k - 1)
            if refinements == 0:
                coarseStep = step
            self._logger.debug('refinement %d: step %g value %.17g' % (
                refinements, step, bestValue))
            if step < self.SMALLEST_STEP:
                break
            # halve the box around the incumbent, kept inside [0, 1]
            width = (upper - lower) / 2
            lower = np.clip(center - width / 2, 0., 1. - width)
            upper = lower + width
        bound = self.modulusBound(step, m0, m1, d)
        searchBound = self.modulusBound(coarseStep, m0, m1, d)
        self._logger.notice('%s brute force value %.17g (step %g, modulus '
                            'bound %g, search bound %g)' % (
                                cost.kind(), bestValue, step, bound,
                                searchBound))
        return BruteForceResult(bestValue, bound, step, k ** dims,
                                refinements, searchBound)

    @staticmethod
    def _numberOfParameters(n0, n1):
        return (n0 if n1 == 2 else 0) + (n1 if n0 == 2 else 0)

    @staticmethod
    def _gridValues(cost, grid, m0, m1, d):
        n0, n1 = len(m0), len(m1)
        cells = grid.shape[0]
        a = np.empty((cells, n0, n1))
        b = np.empty((cells, n0, n1))
        used = 0
        if n1 == 2:
            t = grid[:, :n0]
            a[:, :, 0] = m0 * t
            a[:, :, 1] = m0 * (1 - t)
            used = n0
        else:
            a[:, :, 0] = m0
        if n0 == 2:
            u = grid[:, used:used + n1]
            b[:, 0, :] = m1 * u
            b[:, 1, :] = m1 * (1 - u)
        else:
            b[:, 0, :] = m1
        return cost.value(a, b, d[np.newaxis]).sum(axis=(1, 2))

    @staticmethod
    def modulusBound(step, m0, m1, d):
        '''Cost change allowed by moving every parameter by one step'''
        mass = max(np.sum(m0), np.sum(m1))
        positive = d[d > 0]
        inverse = 1. / np.min(positive) ** 2 if len(positive) else 0.
        nPairs = d.size
        return float(nPairs * mass * (
            2 * step * (1 + np.max(d) ** 2 + inverse) +
            2 * np.sqrt(2 * step)))


def bruteForceUot(cost, mu0, mu1, options=None):
    return BruteForceOracle(options).evaluate(cost, mu0, mu1).value

import numpy as np
from plico.utils.logger import Logger
from hk_infconv.hilbert.spd_matrix import SPDMatrix, HilbertianError
from hk_infconv.infconv.minplus import minplusInfconv


def _checkSameDimension(A, B):
    if A.dimension() != B.dimension():
        raise HilbertianError("dimension mismatch: %d vs %d" % (
            A.dimension(), B.dimension()))


def parallelSumInverseForm(A, B):
    '''(A^-1 + B^-1)^-1 with explicit inverses, for cross-checks only'''
    _checkSameDimension(A, B)
    inverse = np.linalg.inv(A.matrix()) + np.linalg.inv(B.matrix())
    return np.linalg.inv(inverse)


def parallelSum(A, B, crossCheckTolerance=1e-10):
    '''(A^-1 + B^-1)^-1 computed as B - B (A + B)^-1 B'''
    _checkSameDimension(A, B)
    b = B.matrix()
    p = b - b.dot((A + B).solve(b))
    p = (p + p.T) / 2
    reference = parallelSumInverseForm(A, B)
    disagreement = np.linalg.norm(p - reference) / np.linalg.norm(reference)
    if disagreement > crossCheckTolerance:
        Logger.of('Parallel sum').warn(
            'inverse and Woodbury forms disagree by %g' % disagreement)
    return SPDMatrix(p)


def oneStepQuadratic(A, B, v):
    '''min over z of A(z) + B(v - z)

    Return:
        value, zStar = (A + B)^-1 B v
    '''
    _checkSameDimension(A, B)
    v = np.asarray(v, dtype=float).reshape(-1)
    if len(v) != A.dimension():
        raise HilbertianError("vector of length %d for dimension %d" % (
            len(v), A.dimension()))
    if not np.any(v):
        return 0., np.zeros_like(v)
    zStar = (A + B).solve(B.matrix().dot(v))
    value = A.quadraticForm(zStar) + B.quadraticForm(v - zStar)
    return float(value), zStar


def quadraticCostMatrix(A, points):
    '''(x - y)^T A (x - y) over every pair of candidate points'''
    points = np.asarray(points, dtype=float)
    diff = points[:, np.newaxis, :] - points[np.newaxis, :, :]
    return A.quadraticForm(diff)


class CandidateGrid(object):
    """Lattice of points of R^m (m <= 2) containing 0 and v.

    The spacing along every axis is the largest one not exceeding step
    that divides the corresponding coordinate of v.
    """

    MAX_DIMENSION = 2

    def __init__(self, v, step, padding=None):
        v = np.asarray(v, dtype=float).reshape(-1)
        if not 1 <= len(v) <= self.MAX_DIMENSION:
            raise HilbertianError("grids are built in dimension <= %d, "
                                  "got %d" % (self.MAX_DIMENSION, len(v)))
        if not step > 0:
            raise HilbertianError("grid step must be positive, got %g" %
                                  step)
        if padding is None:
            padding = 5 * step
        axes = []
        spacings = []
        for coordinate in v:
            count = int(np.ceil(abs(coordinate) / step - 1e-12))
            h = abs(coordinate) / count if count > 0 else step
            below = int(np.ceil(padding / h))
            ticks = np.arange(-below, count + below + 1) * h
            if coordinate < 0:
                ticks = -ticks[::-1]
            axes.append(ticks)
            spacings.append(h)
        mesh = np.meshgrid(*axes, indexing='ij')
        self._points = np.stack([each.ravel() for each in mesh], axis=-1)
        self._spacings = np.array(spacings)
        self._originIndex = self._nearest(np.zeros_like(v))
        self._vIndex = self._nearest(v)

    def _nearest(self, point):
        return int(np.argmin(np.sum(np.square(self._points - point),
                                    axis=1)))

    def points(self):
        return self._points

    def spacings(self):
        return self._spacings

    def originIndex(self):
        return self._originIndex

    def vIndex(self):
        return self._vIndex

    def __len__(self):
        return len(self._points)


def buildGrid(v, step, padding=None):
    return CandidateGrid(v, step, padding)


class GridCheckResult(object):

    def __init__(self, metricValue, closedFormValue, slack):
        self.metricValue = float(metricValue)
        self.closedFormValue = float(closedFormValue)
        self.slack = float(slack)

    @property
    def gap(self):
        return self.metricValue - self.closedFormValue

    def relativeGap(self):
        if self.closedFormValue == 0:
            return abs(self.gap)
        return abs(self.gap) / self.closedFormValue

    def toDict(self):
        return {'metric_value': self.metricValue,
                'closed_form_value': self.closedFormValue,
                'gap': self.gap,
                'slack': self.slack}


def gridMetricCheck(A, B, v, step=0.01, padding=None):
    '''One-step metric inf-convolution over a grid vs v^T (A:B) v

    The grid minimizer is at most half a spacing away from the exact one
    along every axis, hence the slack lambda_max(A + B) |h|^2 / 4.
    '''
    grid = buildGrid(v, step, padding)
    if grid.vIndex() == grid.originIndex():
        return GridCheckResult(0., 0., 0.)
    points = grid.points()
    metricValue = minplusInfconv(quadraticCostMatrix(A, points),
                                 quadraticCostMatrix(B, points),
                                 grid.originIndex(), grid.vIndex(), 1)
    closedForm = parallelSum(A, B).quadraticForm(
        np.asarray(v, dtype=float).reshape(-1))
    slack = (A + B).largestEigenvalue() * \
        np.sum(np.square(grid.spacings())) / 4
    result = GridCheckResult(metricValue, closedForm, slack)
    if abs(result.gap) > 10 * slack:
        Logger.of('Grid metric check').warn(
            'grid too coarse: gap %g exceeds 10x the slack %g' % (
                result.gap, slack))
    return result

import math
import numpy as np
from plico.utils.logger import Logger
from hk_infconv.utils.exceptions import InputValidationError


class MinPlusError(InputValidationError):
    """Exception raised for malformed cost matrices or indices.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """


def _asCostMatrix(costsq, name):
    costsq = np.asarray(costsq, dtype=float)
    if costsq.ndim != 2 or costsq.shape[0] != costsq.shape[1]:
        raise MinPlusError("%s must be a square matrix, got shape %s" % (
            name, costsq.shape))
    if np.any(np.isnan(costsq)) or np.any(costsq < 0):
        raise MinPlusError("%s must hold nonnegative squared costs" % name)
    return costsq


def _checkProblem(c1sq, c2sq, z0, z1, N):
    c1sq = _asCostMatrix(c1sq, 'c1sq')
    c2sq = _asCostMatrix(c2sq, 'c2sq')
    if c1sq.shape != c2sq.shape:
        raise MinPlusError("cost matrices differ in shape: %s vs %s" % (
            c1sq.shape, c2sq.shape))
    n = c1sq.shape[0]
    for z in (z0, z1):
        if not 0 <= z < n:
            raise MinPlusError("candidate index %d out of range [0, %d)" %
                               (z, n))
    if N < 1:
        raise MinPlusError("N must be >= 1, got %d" % N)
    return c1sq, c2sq


def minplusStep(v, costsq):
    '''(v (x) costsq) and the smallest index attaining each minimum'''
    candidates = v[:, np.newaxis] + costsq
    arg = np.argmin(candidates, axis=0)
    return candidates[arg, np.arange(costsq.shape[1])], arg


def _startVector(n, z0):
    v = np.full(n, np.inf)
    v[z0] = 0.
    return v


def minplusInfconvPath(c1sq, c2sq, z0, z1, N):
    """ Optimal N-path over a finite candidate set

    Parameters:
        c1sq, c2sq (:obj:ndarray): squared costs, c1sq[x][y] from the
            points x_{i-1} to y_i, c2sq[y][x] from y_i to x_i
        z0, z1 (int): endpoint indices
        N (int): number of steps

    Return:
        value (float): N times the minimal sum of c1sq + c2sq
        path (list): x_0, y_1, x_1, ..., y_N, x_N, or None when the
            value is infinite. Ties go to the smallest index.
    """
    c1sq, c2sq = _checkProblem(c1sq, c2sq, z0, z1, N)
    v = _startVector(c1sq.shape[0], z0)
    backPointers = []
    for _ in range(N):
        w, towardsY = minplusStep(v, c1sq)
        v, towardsX = minplusStep(w, c2sq)
        backPointers.append((towardsY, towardsX))
    total = v[z1]
    if not np.isfinite(total):
        return np.inf, None
    path = [int(z1)]
    x = z1
    for towardsY, towardsX in reversed(backPointers):
        y = towardsX[x]
        x = towardsY[y]
        path.extend([int(y), int(x)])
    path.reverse()
    return N * float(total), path


def minplusInfconv(c1sq, c2sq, z0, z1, N):
    '''N * (M^N)[z0][z1] with M[x][x'] = min_y c1sq[x][y] + c2sq[y][x']'''
    c1sq, c2sq = _checkProblem(c1sq, c2sq, z0, z1, N)
    v = _startVector(c1sq.shape[0], z0)
    for _ in range(N):
        v, _ = minplusStep(minplusStep(v, c1sq)[0], c2sq)
    return N * float(v[z1])


def pathEnergyIndices(c1sq, c2sq, path):
    '''N * sum_i c1sq[x_{i-1}][y_i] + c2sq[y_i][x_i]'''
    c1sq = _asCostMatrix(c1sq, 'c1sq')
    c2sq = _asCostMatrix(c2sq, 'c2sq')
    if len(path) < 3 or len(path) % 2 == 0:
        raise MinPlusError("a path x0, y1, x1, ..., yN, xN has odd length "
                           ">= 3, got %d" % len(path))
    N = (len(path) - 1) // 2
    terms = []
    for i in range(1, N + 1):
        x0, y, x1 = path[2 * i - 2], path[2 * i - 1], path[2 * i]
        terms.extend([c1sq[x0, y], c2sq[y, x1]])
    return N * math.fsum(terms)


class StabilityReport(object):

    def __init__(self, z0, z1, cost, Ns, values, slack):
        self.z0 = z0
        self.z1 = z1
        self.cost = float(cost)
        self.Ns = list(Ns)
        self.values = [float(each) for each in values]
        self.slack = float(slack)

    def deviations(self):
        return [value - self.cost for value in self.values]

    def isStable(self):
        return all(abs(each) <= self.slack for each in self.deviations())

    def toDict(self):
        return {'z0': self.z0,
                'z1': self.z1,
                'cost': self.cost,
                'N': self.Ns,
                'F_N': self.values,
                'slack': self.slack,
                'stable': self.isStable()}


def chainMinimum(costsq, z0, z1, N):
    '''N * min over chains z0 = x_0, ..., x_N = z1 of sum costsq[x_{i-1}][x_i]
    '''
    costsq = _asCostMatrix(costsq, 'costsq')
    _checkProblem(costsq, costsq, z0, z1, N)
    v = _startVector(costsq.shape[0], z0)
    for _ in range(N):
        v, _ = minplusStep(v, costsq)
    return N * float(v[z1])


def stabilityProbe(costsq, z0, z1, Ns, slack=0.):
    costsq = _asCostMatrix(costsq, 'costsq')
    if not np.allclose(costsq, costsq.T, rtol=0, atol=1e-12):
        raise MinPlusError("stability probe needs a symmetric cost")
    if np.any(np.diag(costsq) != 0):
        raise MinPlusError("stability probe needs a null diagonal")
    values = [chainMinimum(costsq, z0, z1, N) for N in Ns]
    report = StabilityReport(z0, z1, costsq[z0, z1], Ns, values, slack)
    Logger.of('Stability probe').debug(
        'F_N from %d to %d: %s' % (z0, z1, report.values))
    return report

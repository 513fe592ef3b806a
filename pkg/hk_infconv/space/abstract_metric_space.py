import abc
import threading
import numpy as np
from plico.utils.decorator import returns, synchronized
from six import with_metaclass
from hk_infconv.utils.constants import Constants
from hk_infconv.utils.exceptions import InputValidationError


class MetricSpaceError(InputValidationError):
    """Exception raised for an invalid finite metric space or query.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """


def checkMetricAxioms(dist, tolerance=Constants.METRIC_TOLERANCE):
    dist = np.asarray(dist, dtype=float)
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        raise MetricSpaceError(
            "distance matrix must be square, got shape %s" % str(dist.shape))
    if not np.all(np.isfinite(dist)):
        raise MetricSpaceError("distance matrix has non finite entries")
    scale = max(1.0, float(np.max(dist)) if dist.size else 1.0)
    slack = tolerance * scale
    if np.any(dist < 0):
        raise MetricSpaceError("negative distances")
    if np.any(np.abs(np.diag(dist)) > 0):
        raise MetricSpaceError("non null diagonal")
    if np.any(np.abs(dist - dist.T) > slack):
        raise MetricSpaceError("distance matrix is not symmetric")
    for k in range(dist.shape[0]):
        excess = dist - (dist[:, k, np.newaxis] + dist[np.newaxis, k, :])
        if np.any(excess > slack):
            i, j = np.unravel_index(np.argmax(excess), excess.shape)
            raise MetricSpaceError(
                "triangle inequality violated: d(%d,%d) > d(%d,%d) + "
                "d(%d,%d)" % (i, j, i, k, k, j))


class AbstractFiniteMetricSpace(with_metaclass(abc.ABCMeta, object)):
    """Finite metric space with a geodesic interpolation backend.

    Points are identified by integer indices. Interpolated points created by
    geodesicPoint() get fresh indices and extend the distance matrix; after
    freeze() the space is read-only and safe for concurrent readers.
    """

    EUCLIDEAN = 'euclidean'
    GRAPH = 'graph'

    def __init__(self, dist, name):
        checkMetricAxioms(dist)
        self._dist = np.array(dist, dtype=float)
        self._name = name
        self._frozen = False
        self._mutex = threading.RLock()

    @abc.abstractmethod
    @returns(str)
    def backend(self):
        assert False

    @abc.abstractmethod
    def geodesicPoint(self, i, j, s):
        """ Point along a geodesic

        Parameters:
            i, j (int): indices of the endpoints
            s (float): fraction of the length in [0, 1]

        Return:
            index (int): index of the point at distance s*d(i,j) from i
            along the geodesic; s=0 gives i and s=1 gives j.
        """
        assert False

    @abc.abstractmethod
    def toDict(self):
        assert False

    def name(self):
        return self._name

    def numberOfPoints(self):
        return self._dist.shape[0]

    def distance(self, i, j):
        return float(self._dist[i, j])

    def distanceMatrix(self):
        return self._dist.copy()

    def distances(self, rows, columns):
        return self._dist[np.ix_(np.asarray(rows, dtype=int),
                                 np.asarray(columns, dtype=int))]

    def isValidIndex(self, i):
        return 0 <= i < self.numberOfPoints()

    @synchronized("_mutex")
    def freeze(self):
        self._frozen = True

    def isFrozen(self):
        return self._frozen

    def _checkFraction(self, s):
        if not 0 <= s <= 1:
            raise MetricSpaceError(
                "geodesic fraction must be in [0, 1], got %g" % s)

    def _checkIndex(self, i):
        if not self.isValidIndex(i):
            raise MetricSpaceError(
                "point %s is not in space '%s' (%d points)" % (
                    str(i), self._name, self.numberOfPoints()))

    def _appendPoint(self, distancesToExisting):
        if self._frozen:
            raise MetricSpaceError(
                "space '%s' is frozen: cannot add interpolated points" %
                self._name)
        n = self.numberOfPoints()
        extended = np.zeros((n + 1, n + 1))
        extended[:n, :n] = self._dist
        extended[n, :n] = distancesToExisting
        extended[:n, n] = distancesToExisting
        self._dist = extended
        return n

import numpy as np
from plico.utils.decorator import override, synchronized
from plico.utils.logger import Logger
from hk_infconv.space.abstract_metric_space import \
    AbstractFiniteMetricSpace, MetricSpaceError


def _asCoordinateArray(coords):
    vectors = [np.atleast_1d(np.asarray(each, dtype=float)) for each in coords]
    if len(vectors) == 0:
        raise MetricSpaceError("a metric space needs at least one point")
    dims = set(each.shape for each in vectors)
    if len(dims) != 1 or vectors[0].ndim != 1:
        raise MetricSpaceError(
            "all points must have the same dimension, got %s" % sorted(dims))
    return np.array(vectors)


class EuclideanMetricSpace(AbstractFiniteMetricSpace):

    def __init__(self, coords, name='euclidean'):
        self._coords = _asCoordinateArray(coords)
        self._logger = Logger.of('Euclidean metric space')
        AbstractFiniteMetricSpace.__init__(
            self, self._pairwiseDistances(self._coords, self._coords), name)

    @staticmethod
    def _pairwiseDistances(p, q):
        return np.linalg.norm(p[:, np.newaxis, :] - q[np.newaxis, :, :],
                              axis=-1)

    @override
    def backend(self):
        return self.EUCLIDEAN

    def dimension(self):
        return self._coords.shape[1]

    def coordinates(self, i):
        self._checkIndex(i)
        return self._coords[i].copy()

    @override
    @synchronized("_mutex")
    def geodesicPoint(self, i, j, s):
        self._checkIndex(i)
        self._checkIndex(j)
        self._checkFraction(s)
        if s == 0 or i == j:
            return i
        if s == 1:
            return j
        point = (1 - s) * self._coords[i] + s * self._coords[j]
        return self._findOrAppend(point)

    def _findOrAppend(self, point):
        same = np.flatnonzero(np.all(self._coords == point, axis=1))
        if len(same) > 0:
            return int(same[0])
        distances = self._pairwiseDistances(point[np.newaxis, :],
                                            self._coords)[0]
        index = self._appendPoint(distances)
        self._coords = np.vstack([self._coords, point])
        self._logger.debug("interpolated point %d at %s" % (index, point))
        return index

    @override
    def toDict(self):
        return {'backend': self.EUCLIDEAN,
                'name': self._name,
                'coords': self._coords.tolist()}

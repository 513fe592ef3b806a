import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from plico.utils.decorator import override, synchronized
from plico.utils.logger import Logger
from hk_infconv.utils.constants import Constants
from hk_infconv.space.abstract_metric_space import \
    AbstractFiniteMetricSpace, MetricSpaceError


def _edgeWeightMatrix(n, edges):
    weights = np.full((n, n), np.inf)
    for each in edges:
        if len(each) != 3:
            raise MetricSpaceError("edge must be (i, j, weight): %s" %
                                   str(each))
        i, j, w = int(each[0]), int(each[1]), float(each[2])
        if not (0 <= i < n and 0 <= j < n):
            raise MetricSpaceError("edge (%d, %d) out of range for %d "
                                   "points" % (i, j, n))
        if i == j:
            raise MetricSpaceError("self loop on point %d" % i)
        if not w > 0 or not np.isfinite(w):
            raise MetricSpaceError("edge (%d, %d) has non positive weight "
                                   "%g" % (i, j, w))
        weights[i, j] = min(weights[i, j], w)
        weights[j, i] = weights[i, j]
    return weights


def floydWarshall(weights):
    dist = np.array(weights, dtype=float)
    np.fill_diagonal(dist, 0.)
    for k in range(dist.shape[0]):
        dist = np.minimum(dist,
                          dist[:, k, np.newaxis] + dist[np.newaxis, k, :])
    return dist


class GraphMetricSpace(AbstractFiniteMetricSpace):
    """Shortest-path length metric of a connected weighted graph.

    Geodesics follow the shortest-path chain between two vertices; among
    equally short chains the one with the smallest predecessor indices is
    used. Interpolated points lie inside edges and are appended lazily.
    """

    def __init__(self, n, edges, name='graph'):
        n = int(n)
        if n < 1:
            raise MetricSpaceError("a metric space needs at least one point")
        self._logger = Logger.of('Graph metric space')
        self._edges = [(int(i), int(j), float(w)) for i, j, w in edges]
        self._weights = _edgeWeightMatrix(n, self._edges)
        self._checkConnected(n)
        self._nVertices = n
        self._virtualPoints = []
        AbstractFiniteMetricSpace.__init__(
            self, floydWarshall(self._weights), name)
        self._vertexDist = self._dist.copy()
        self._pred = self._computePredecessors()

    def _checkConnected(self, n):
        adjacency = csr_matrix(np.isfinite(self._weights).astype(float))
        nComponents, _ = connected_components(adjacency, directed=False)
        if nComponents != 1:
            raise MetricSpaceError("graph is disconnected (%d components)" %
                                   nComponents)

    @override
    def backend(self):
        return self.GRAPH

    def numberOfVertices(self):
        return self._nVertices

    def isVertex(self, i):
        return 0 <= i < self._nVertices

    def _computePredecessors(self):
        n = self._nVertices
        scale = max(1.0, float(np.max(self._vertexDist)))
        edge = np.isfinite(self._weights)
        pred = np.full((n, n), -1, dtype=int)
        for i in range(n):
            through = self._vertexDist[i][:, np.newaxis] + self._weights
            reached = self._vertexDist[i][np.newaxis, :]
            tight = edge & (np.abs(through - reached)
                            <= Constants.METRIC_TOLERANCE * scale)
            tight[:, i] = False
            hasPred = np.any(tight, axis=0)
            pred[i, hasPred] = np.argmax(tight[:, hasPred], axis=0)
        return pred

    def shortestPathChain(self, i, j):
        if not (self.isVertex(i) and self.isVertex(j)):
            raise MetricSpaceError(
                "shortest-path chains are defined between vertices only "
                "(%s, %s)" % (str(i), str(j)))
        pred = self._pred
        chain = [j]
        while chain[-1] != i:
            chain.append(int(pred[i, chain[-1]]))
        return chain[::-1]

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
        chain = self.shortestPathChain(i, j)
        target = s * self._vertexDist[i, j]
        tolerance = Constants.METRIC_TOLERANCE * max(1.0,
                                                     self._vertexDist[i, j])
        walked = 0.
        for u, v in zip(chain[:-1], chain[1:]):
            w = self._weights[u, v]
            if target <= walked + tolerance:
                return u
            if target < walked + w - tolerance:
                return self._findOrAppend(u, v, target - walked)
            walked += w
        return j

    def _canonical(self, u, v, offset):
        if u < v:
            return u, v, offset
        return v, u, self._weights[u, v] - offset

    def _findOrAppend(self, u, v, offset):
        key = self._canonical(u, v, offset)
        for k, each in enumerate(self._virtualPoints):
            if each[0] == key[0] and each[1] == key[1] and \
                    abs(each[2] - key[2]) <= Constants.METRIC_TOLERANCE:
                return self._nVertices + k
        distances = np.array([self._distanceFromEdgePoint(key, k)
                              for k in range(self.numberOfPoints())])
        index = self._appendPoint(distances)
        self._virtualPoints.append(key)
        self._logger.debug("interpolated point %d on edge (%d, %d) at %g" %
                           (index, key[0], key[1], key[2]))
        return index

    def _anchors(self, k):
        if self.isVertex(k):
            return [(k, 0.)]
        u, v, offset = self._virtualPoints[k - self._nVertices]
        return [(u, offset), (v, self._weights[u, v] - offset)]

    def _distanceFromEdgePoint(self, key, k):
        u, v, offset = key
        anchors = [(u, offset), (v, self._weights[u, v] - offset)]
        best = min(a + self._vertexDist[p, q] + b
                   for p, a in anchors for q, b in self._anchors(k))
        if not self.isVertex(k):
            other = self._virtualPoints[k - self._nVertices]
            if other[0] == u and other[1] == v:
                best = min(best, abs(other[2] - offset))
        return best

    @override
    def toDict(self):
        return {'backend': self.GRAPH,
                'name': self._name,
                'n': self._nVertices,
                'edges': [list(each) for each in self._edges]}

import numpy as np
from plico.utils.logger import Logger
from hk_infconv.geometry.cone_point import ConePoint, ConeGeometryError
from hk_infconv.geometry.cone_geodesic import ConeGeodesic
from hk_infconv.geometry.cone_distance import coneDistanceSquared, \
    coneDistanceSquaredSineForm, comparableConeDistanceSquared, \
    hkConeCost, wheConeCost


class MetricCone(object):
    """Geometric cone over a finite metric space.

    ConePoints handed to this class refer to point indices of the
    underlying space.
    """

    def __init__(self, space):
        self._space = space
        self._logger = Logger.of('Metric cone')

    def space(self):
        return self._space

    def spatialDistance(self, y0, y1):
        if y0.isVertex() or y1.isVertex():
            return 0.
        return self._space.distance(y0.x(), y1.x())

    @staticmethod
    def _checkCutoff(cutoff):
        if not 0 < cutoff <= np.pi:
            raise ConeGeometryError("cutoff angle must be in (0, pi], got "
                                    "%g" % cutoff)

    def squaredDistance(self, y0, y1, cutoff=np.pi):
        self._checkCutoff(cutoff)
        return float(coneDistanceSquaredSineForm(y0.r(), y1.r(),
                                         self.spatialDistance(y0, y1),
                                         cutoff))

    def distance(self, y0, y1, cutoff=np.pi):
        return np.sqrt(self.squaredDistance(y0, y1, cutoff))

    def distanceCosineForm(self, y0, y1, cutoff=np.pi):
        self._checkCutoff(cutoff)
        return np.sqrt(float(coneDistanceSquared(
            y0.r(), y1.r(), self.spatialDistance(y0, y1), cutoff)))

    def comparableSquaredDistance(self, y0, y1):
        return float(comparableConeDistanceSquared(
            y0.r(), y1.r(), self.spatialDistance(y0, y1)))

    def hkCost(self, y0, y1):
        return float(hkConeCost(y0.r(), y1.r(),
                                self.spatialDistance(y0, y1)))

    def wheCost(self, y0, y1):
        return float(wheConeCost(y0.r(), y1.r(),
                                 self.spatialDistance(y0, y1)))

    def geodesic(self, y0, y1):
        return ConeGeodesic(self._space, y0, y1)

    def sampleGeodesic(self, y0, y1, N):
        return self.geodesic(y0, y1).sample(N)

    def minRadius(self, y0, y1):
        '''Time and value of the smallest radius along the geodesic

        Return:
            (tMin, rMin): constant geodesics report (0, r0).
        '''
        r0, r1 = y0.r(), y1.r()
        if r0 * r1 == 0:
            raise ConeGeometryError("minimal radius needs two points off the "
                                    "vertex")
        d = self.spatialDistance(y0, y1)
        if d >= np.pi:
            raise ConeGeometryError("minimal radius needs spatial distance "
                                    "< pi, got %g" % d)
        if y0 == y1:
            return 0., r0
        cosd = np.cos(d)
        if cosd >= r0 / r1:
            return 0., r0
        if cosd >= r1 / r0:
            return 1., r1
        squared = self.squaredDistance(y0, y1)
        tMin = (r0 ** 2 - r0 * r1 * cosd) / squared
        rMin = r0 * r1 * np.sin(d) / np.sqrt(squared)
        return float(tMin), float(rMin)

    def discreteAction(self, curve):
        '''N * sum of squared cone distances between consecutive samples'''
        curve = list(curve)
        if len(curve) < 2:
            raise ConeGeometryError("discrete action needs at least two "
                                    "samples, got %d" % len(curve))
        N = len(curve) - 1
        return N * sum(self.squaredDistance(y0, y1)
                       for y0, y1 in zip(curve[:-1], curve[1:]))

    def vertex(self):
        return ConePoint.vertex()

import numpy as np
from hk_infconv.geometry.cone_point import ConePoint, ConeGeometryError


class ConeGeodesic(object):
    """Constant-speed geodesic of the cone (cutoff pi) between two points.

    The case is one of CONSTANT, RADIAL (one endpoint is the vertex),
    TWO_PHASE (spatial distance >= pi: the curve goes through the vertex,
    which it reaches at switchTime()) and ROTATIONAL (the curve stays in
    the planar sector spanned by the endpoints).
    """

    CONSTANT = 'constant'
    RADIAL = 'through-vertex-one-sided'
    TWO_PHASE = 'through-vertex-two-phase'
    ROTATIONAL = 'rotational'

    def __init__(self, space, y0, y1):
        self._space = space
        self._y0 = y0
        self._y1 = y1
        self._d = 0.
        self._switchTime = None
        if y0 == y1:
            self._case = self.CONSTANT
        elif y0.isVertex() or y1.isVertex():
            self._case = self.RADIAL
        else:
            self._d = space.distance(y0.x(), y1.x())
            if self._d >= np.pi:
                self._case = self.TWO_PHASE
                self._switchTime = y0.r() / (y0.r() + y1.r())
            else:
                self._case = self.ROTATIONAL

    def case(self):
        return self._case

    def endpoints(self):
        return self._y0, self._y1

    def switchTime(self):
        return self._switchTime

    def spatialDistance(self):
        return self._d

    def radius(self, t):
        self._checkTime(t)
        r0, r1 = self._y0.r(), self._y1.r()
        if self._case == self.CONSTANT:
            return r0
        elif self._case == self.RADIAL:
            return (1 - t) * r0 + t * r1
        elif self._case == self.TWO_PHASE:
            return abs(r0 - (r0 + r1) * t)
        squared = (1 - t) ** 2 * r0 ** 2 + t ** 2 * r1 ** 2 + \
            2 * t * (1 - t) * r0 * r1 * np.cos(self._d)
        return np.sqrt(max(squared, 0.))

    def angle(self, t):
        '''Angle swept at time t along the spatial geodesic (rotational)'''
        if self._case != self.ROTATIONAL:
            raise ConeGeometryError("angle is defined for rotational "
                                    "geodesics only, this is %s" %
                                    self._case)
        if self._d == 0:
            return 0.
        if t == 1:
            return self._d
        r0, r1 = self._y0.r(), self._y1.r()
        ratio = ((1 - t) * r0 + t * r1 * np.cos(self._d)) / self.radius(t)
        return float(np.arccos(np.clip(ratio, -1., 1.)))

    def evaluate(self, t):
        self._checkTime(t)
        if t == 0:
            return self._y0
        if t == 1:
            return self._y1
        if self._case == self.CONSTANT:
            return self._y0
        elif self._case == self.RADIAL:
            if self._y0.isVertex():
                return ConePoint(self._y1.x(), t * self._y1.r())
            return ConePoint(self._y0.x(), (1 - t) * self._y0.r())
        elif self._case == self.TWO_PHASE:
            if t <= self._switchTime:
                return ConePoint(self._y0.x(), self.radius(t))
            return ConePoint(self._y1.x(), self.radius(t))
        return ConePoint(self._spatialPoint(self.angle(t)), self.radius(t))

    def _spatialPoint(self, theta):
        if self._d == 0:
            return self._y0.x()
        fraction = min(max(theta / self._d, 0.), 1.)
        return self._space.geodesicPoint(self._y0.x(), self._y1.x(),
                                         fraction)

    def sample(self, N):
        if N < 1:
            raise ConeGeometryError("sampling needs N >= 1, got %d" % N)
        return [self.evaluate(i / float(N)) for i in range(N + 1)]

    def _checkTime(self, t):
        if not 0 <= t <= 1:
            raise ConeGeometryError("geodesic time must be in [0, 1], "
                                    "got %g" % t)

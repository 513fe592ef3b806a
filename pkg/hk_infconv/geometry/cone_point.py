import numpy as np
from hk_infconv.utils.constants import Constants
from hk_infconv.utils.exceptions import InputValidationError


class ConeGeometryError(InputValidationError):
    """Exception raised for cone points or queries outside the domain.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """


class ConePoint(object):
    """Point [x, r] of the cone over a finite metric space

    x is the index of a point of the underlying space and r >= 0 the
    radius; the associated Dirac mass is r**2. Radii below
    Constants.VERTEX_RADIUS_THRESHOLD collapse to the vertex, whose x is
    Constants.VERTEX_SENTINEL.
    """

    def __init__(self, x, r):
        r = float(r)
        if not r >= 0 or not np.isfinite(r):
            raise ConeGeometryError("cone radius must be finite and "
                                    "nonnegative, got %s" % r)
        if r < Constants.VERTEX_RADIUS_THRESHOLD:
            x = Constants.VERTEX_SENTINEL
            r = 0.
        self._x = int(x)
        self._r = r

    @staticmethod
    def vertex():
        return ConePoint(Constants.VERTEX_SENTINEL, 0.)

    @staticmethod
    def fromMass(x, mass):
        if mass < 0:
            raise ConeGeometryError("negative mass %g" % mass)
        return ConePoint(x, np.sqrt(mass))

    def x(self):
        return self._x

    def r(self):
        return self._r

    def mass(self):
        return self._r ** 2

    def isVertex(self):
        return self._r == 0

    def __eq__(self, other):
        if not isinstance(other, ConePoint):
            return NotImplemented
        if self.isVertex() or other.isVertex():
            return self.isVertex() and other.isVertex()
        return self._x == other.x() and self._r == other.r()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self._x, self._r))

    def __repr__(self):
        if self.isVertex():
            return "ConePoint(vertex)"
        return "ConePoint(x=%d, r=%r)" % (self._x, self._r)

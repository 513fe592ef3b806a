import numpy as np
from plico.utils.logger import Logger
from hk_infconv.utils.constants import Constants
from hk_infconv.utils.exceptions import InputValidationError
from hk_infconv.measure.discrete_measure import DiscreteMeasure, \
    checkSameSpace
from hk_infconv.geometry.cone_point import ConePoint
from hk_infconv.geometry.cone_geodesic import ConeGeodesic
from hk_infconv.uot.unbalanced_distances import solveHk, wheCost
from hk_infconv.infconv.n_path import NPath, pathEnergy


class UnsupportedEndpointsError(InputValidationError):
    """Exception raised for endpoints without a closed-form HK geodesic.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """


class _PairGeodesic(object):
    '''Mass moved between one row and one column of an HK plan'''

    def __init__(self, space, x, y, a, b):
        self._x, self._y = x, y
        self._a, self._b = a, b
        self._geodesic = None
        if x != Constants.VERTEX_SENTINEL and \
                y != Constants.VERTEX_SENTINEL and a > 0 and b > 0 and \
                space.distance(x, y) <= np.pi / 2:
            self._geodesic = ConeGeodesic(space, ConePoint.fromMass(x, a),
                                          ConePoint.fromMass(y, b))

    def isRotational(self):
        return self._geodesic is not None

    def atoms(self, t):
        if self._geodesic is not None:
            point = self._geodesic.evaluate(t)
            if point.isVertex():
                return []
            return [(point.x(), point.mass())]
        ret = []
        if self._x != Constants.VERTEX_SENTINEL:
            ret.append((self._x, (1 - t) ** 2 * self._a))
        if self._y != Constants.VERTEX_SENTINEL:
            ret.append((self._y, t ** 2 * self._b))
        return ret


class GeodesicEnergyExperiment(object):
    """E_N along the discretized HK geodesic between two endpoints.

    The geodesic is assembled pair by pair from an optimal HK
    semi-coupling: pairs closer than pi/2 with positive masses follow the
    rotational cone geodesic, the others fade out at the source while
    fading in at the target. Endpoints carry at most two atoms each.
    """

    MAX_ATOMS = 2

    def __init__(self, mu0, mu1, uotOptions=None):
        checkSameSpace(mu0, mu1)
        for mu in (mu0, mu1):
            if mu.numberOfAtoms() > self.MAX_ATOMS:
                raise UnsupportedEndpointsError(
                    'geodesic experiment supports endpoints with at most '
                    '%d atoms, got %d' % (self.MAX_ATOMS,
                                          mu.numberOfAtoms()))
        self._mu0 = mu0
        self._mu1 = mu1
        self._space = mu0.space()
        self._uotOptions = uotOptions
        self._logger = Logger.of('Geodesic energy experiment')
        solution = solveHk(mu0, mu1, uotOptions)
        self._reference = solution.value()
        self._pairs = self._pairGeodesics(solution.plan())

    def _pairGeodesics(self, plan):
        pairs = []
        a, b = plan.a(), plan.b()
        for i, x in enumerate(plan.rowIndices()):
            for j, y in enumerate(plan.columnIndices()):
                if a[i, j] < Constants.NEGLIGIBLE_MASS and \
                        b[i, j] < Constants.NEGLIGIBLE_MASS:
                    continue
                pairs.append(_PairGeodesic(self._space, x, y, a[i, j],
                                           b[i, j]))
        return pairs

    def reference(self):
        '''HK^2 between the endpoints'''
        return self._reference

    def intermediateMeasure(self, t):
        if t == 0:
            return self._mu0
        if t == 1:
            return self._mu1
        atoms = {}
        for pair in self._pairs:
            for index, mass in pair.atoms(t):
                atoms[index] = atoms.get(index, 0.) + mass
        return DiscreteMeasure(self._space, sorted(atoms.items()))

    def discretization(self, N):
        return [self.intermediateMeasure(i / float(N))
                for i in range(N + 1)]

    def energy(self, N):
        sigma = self.discretization(N)
        nu = [wheCost(sigma[i - 1], sigma[i], self._uotOptions)[2]
              for i in range(1, N + 1)]
        return pathEnergy(NPath(sigma, nu), reference=self._reference)

    def run(self, Ns):
        reports = []
        for N in Ns:
            report = self.energy(N)
            self._logger.notice('N=%d E_N=%.17g HK2=%.17g gap=%.3g' % (
                N, report.value, report.reference, report.gap))
            if not report.satisfiesLowerBound():
                self._logger.warn('E_%d below HK^2/2: %.17g' % (
                    N, report.value))
            reports.append(report)
        return reports


def geodesicEnergyExperiment(mu0, mu1, Ns, uotOptions=None):
    return GeodesicEnergyExperiment(mu0, mu1, uotOptions).run(Ns)

import math
import numpy as np
from plico.utils.logger import Logger
from hk_infconv.utils.exceptions import InputValidationError
from hk_infconv.measure.discrete_measure import checkSameSpace
from hk_infconv.distances.hellinger import hellingerPower
from hk_infconv.distances.wasserstein import wassersteinPower
from hk_infconv.uot.unbalanced_distances import hkDistanceSquared


class NPathError(InputValidationError):
    """Exception raised for malformed N-paths.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """


class NPath(object):
    """Alternating sequence mu_0, nu_1, mu_1, ..., nu_N, mu_N.

    Hellinger steps go from mu_{i-1} to nu_i, Wasserstein steps from
    nu_i to mu_i.
    """

    def __init__(self, mu, nu):
        mu = list(mu)
        nu = list(nu)
        if len(nu) < 1:
            raise NPathError('an N-path needs N >= 1 steps')
        if len(mu) != len(nu) + 1:
            raise NPathError('%d measures mu for %d measures nu' % (
                len(mu), len(nu)))
        for each in mu[1:] + nu:
            checkSameSpace(mu[0], each)
        self._mu = mu
        self._nu = nu

    @staticmethod
    def oneStep(mu0, nu, mu1):
        return NPath([mu0, mu1], [nu])

    def N(self):
        return len(self._nu)

    def mu(self):
        return self._mu

    def nu(self):
        return self._nu

    def start(self):
        return self._mu[0]

    def end(self):
        return self._mu[-1]

    def hasEndpoints(self, z0, z1, atol=1e-12):
        return self.start().isClose(z0, atol=atol) and \
            self.end().isClose(z1, atol=atol)


class EnergyReport(object):
    '''E_N of an N-path with its per-step breakdown

    reference is HK^2 between the endpoints unless given otherwise.
    '''

    def __init__(self, N, heTerms, wTerms, reference):
        self.N = int(N)
        self.heTerms = [float(each) for each in heTerms]
        self.wTerms = [float(each) for each in wTerms]
        self.value = self.N * math.fsum(self.heTerms + self.wTerms)
        self.reference = float(reference)

    @property
    def gap(self):
        return self.value - self.reference

    @property
    def lowerBound(self):
        return self.reference / 2.

    def breakdownSum(self):
        return self.N * math.fsum(
            [he + w for he, w in zip(self.heTerms, self.wTerms)])

    def satisfiesLowerBound(self, slack=1e-9):
        return self.value >= self.lowerBound - slack

    def isFinite(self):
        return np.isfinite(self.value)

    def toDict(self):
        return {'N': self.N,
                'value': self.value,
                'reference': self.reference,
                'gap': self.gap,
                'lower_bound': self.lowerBound,
                'he_terms': self.heTerms,
                'w_terms': self.wTerms}


def pathEnergy(path, reference=None, options=None):
    '''E_N = N sum_i (He_2^2(mu_{i-1}, nu_i) + W_2^2(nu_i, mu_i))

    W steps between measures of different mass make the energy +inf.
    '''
    mu, nu = path.mu(), path.nu()
    heTerms = []
    wTerms = []
    for i in range(1, path.N() + 1):
        heTerms.append(hellingerPower(2, mu[i - 1], nu[i - 1]))
        wTerms.append(wassersteinPower(2, nu[i - 1], mu[i]))
    if reference is None:
        reference = hkDistanceSquared(path.start(), path.end(), options)
    report = EnergyReport(path.N(), heTerms, wTerms, reference)
    if not report.isFinite():
        Logger.of('N-path energy').warn(
            'infinite energy: a Wasserstein step joins different masses')
    return report

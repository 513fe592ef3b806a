import numpy as np
from hk_infconv.measure.discrete_measure import checkSameSpace
from hk_infconv.utils.exceptions import InputValidationError


class DistanceError(InputValidationError):
    """Exception raised for invalid distance parameters.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """


def checkExponent(p):
    if not p >= 1:
        raise DistanceError("exponent p must be >= 1, got %s" % p)


def commonSupportMasses(mu0, mu1):
    '''Masses of mu0 and mu1 on the union of their supports'''
    checkSameSpace(mu0, mu1)
    support = np.union1d(mu0.indices(), mu1.indices()).astype(int)
    m0 = np.array([mu0.massAt(i) for i in support])
    m1 = np.array([mu1.massAt(i) for i in support])
    return support, m0, m1


def hellingerPower(p, mu0, mu1):
    '''He_p^p: sum of |m0^(1/p) - m1^(1/p)|^p over the common support

    An atom of one measure only contributes its mass.
    '''
    checkExponent(p)
    _, m0, m1 = commonSupportMasses(mu0, mu1)
    if len(m0) == 0:
        return 0.
    return float(np.sum(np.abs(m0 ** (1. / p) - m1 ** (1. / p)) ** p))


def hellinger(p, mu0, mu1):
    return hellingerPower(p, mu0, mu1) ** (1. / p)

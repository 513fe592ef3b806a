import numpy as np
from scipy.optimize import linprog
from scipy.sparse import coo_matrix
from plico.utils.logger import Logger
from hk_infconv.utils.constants import Constants
from hk_infconv.utils.exceptions import NumericalError
from hk_infconv.measure.discrete_measure import checkSameSpace
from hk_infconv.distances.hellinger import checkExponent


class TransportError(NumericalError):
    """Exception raised when the transport linear program fails.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """


class TransportPlan(object):
    """Optimal coupling over supp(mu0) x supp(mu1) with dual potentials.

    phi is indexed like rowIndices, psi like columnIndices; cost holds
    d^p on the same grid.
    """

    def __init__(self, gamma, phi, psi, rowIndices, columnIndices, cost):
        self.gamma = gamma
        self.phi = phi
        self.psi = psi
        self.rowIndices = rowIndices
        self.columnIndices = columnIndices
        self.cost = cost

    def rowSums(self):
        return self.gamma.sum(axis=1)

    def columnSums(self):
        return self.gamma.sum(axis=0)

    def primalValue(self):
        return float(np.sum(self.gamma * self.cost))

    def dualValue(self, m0, m1):
        return float(np.dot(self.phi, m0) + np.dot(self.psi, m1))

    def complementarySlacknessResidual(self, threshold=1e-12):
        if self.gamma.size == 0:
            return 0.
        reduced = self.phi[:, np.newaxis] + self.psi[np.newaxis, :] - \
            self.cost
        active = self.gamma > threshold
        if not np.any(active):
            return 0.
        return float(np.max(np.abs(reduced[active])))


def massesAreBalanced(total0, total1):
    scale = max(total0, total1)
    return abs(total0 - total1) <= Constants.MASS_BALANCE_TOLERANCE * scale


def _emptyPlan(mu0, mu1):
    return TransportPlan(np.zeros((mu0.numberOfAtoms(),
                                   mu1.numberOfAtoms())),
                         np.zeros(mu0.numberOfAtoms()),
                         np.zeros(mu1.numberOfAtoms()),
                         mu0.indices(), mu1.indices(),
                         np.zeros((mu0.numberOfAtoms(),
                                   mu1.numberOfAtoms())))


def _marginalConstraints(n0, n1):
    # one column constraint is redundant and dropped: psi of the last
    # column is pinned to zero
    rows = []
    cols = []
    for i in range(n0):
        rows.extend([i] * n1)
        cols.extend(range(i * n1, (i + 1) * n1))
    for j in range(n1 - 1):
        rows.extend([n0 + j] * n0)
        cols.extend(range(j, n0 * n1, n1))
    data = np.ones(len(rows))
    return coo_matrix((data, (rows, cols)),
                      shape=(n0 + n1 - 1, n0 * n1)).tocsr()


def wassersteinPlan(p, mu0, mu1):
    '''W_p and the optimal plan

    Return:
        (value, plan): value is +inf and plan None when the total masses
        differ by more than Constants.MASS_BALANCE_TOLERANCE (relative).
    '''
    checkExponent(p)
    checkSameSpace(mu0, mu1)
    total0, total1 = mu0.totalMass(), mu1.totalMass()
    if mu0.isNull() and mu1.isNull():
        return 0., _emptyPlan(mu0, mu1)
    if mu0.isNull() or mu1.isNull() or \
            not massesAreBalanced(total0, total1):
        return np.inf, None
    n0, n1 = mu0.numberOfAtoms(), mu1.numberOfAtoms()
    cost = mu0.space().distances(mu0.indices(), mu1.indices()) ** p
    m0 = mu0.masses()
    m1 = mu1.masses() * (total0 / total1)
    res = linprog(cost.ravel(),
                  A_eq=_marginalConstraints(n0, n1),
                  b_eq=np.concatenate([m0, m1[:-1]]),
                  bounds=(0, None),
                  method='highs')
    if res.status != 0:
        raise TransportError("transport linear program failed: %s" %
                             res.message)
    gamma = np.maximum(res.x.reshape(n0, n1), 0.)
    marginals = np.asarray(res.eqlin.marginals)
    phi = marginals[:n0]
    psi = np.concatenate([marginals[n0:], [0.]])
    plan = TransportPlan(gamma, phi, psi, mu0.indices(), mu1.indices(),
                         cost)
    Logger.of('Wasserstein').debug(
        "transport LP %dx%d solved: cost %r, duality gap %g" % (
            n0, n1, res.fun, plan.primalValue() - plan.dualValue(m0, m1)))
    return max(float(res.fun), 0.) ** (1. / p), plan


def wasserstein(p, mu0, mu1):
    value, _ = wassersteinPlan(p, mu0, mu1)
    return value


def wassersteinPower(p, mu0, mu1):
    '''W_p^p, +inf between measures of different total mass'''
    value, plan = wassersteinPlan(p, mu0, mu1)
    if plan is None:
        return value
    return max(plan.primalValue(), 0.)

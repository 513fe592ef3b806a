import numpy as np
from hk_infconv.utils.constants import Constants
from hk_infconv.measure.discrete_measure import DiscreteMeasure
from hk_infconv.uot.pair_cost import HkPairCost, WhePairCost
from hk_infconv.uot.uot_solver import UotSolver


def hkDirac(m0, m1, d):
    '''HK^2 between m0 delta_x and m1 delta_y at distance d'''
    cosine = np.cos(d) if d < np.pi / 2 else 0.
    return max(float(m0 + m1 - 2 * np.sqrt(m0 * m1) * cosine), 0.)


def wheDiracMinimizer(m0, m1, d):
    """ Marginal He-W problem between two Diracs

    The optimal intermediate measure is s0 delta_x + (m1 - s0) delta_y
    with s0 = m1 ^ m0 / d^4.

    Parameters:
        m0 (float): mass of the Dirac at x
        m1 (float): mass of the Dirac at y
        d (float): distance between x and y

    Return:
        value (float), s0 (float)
    """
    if m0 <= 0:
        return float(m1), 0.
    if m1 <= 0:
        return float(m0), 0.
    if d == 0 or m1 * d ** 4 <= m0:
        value = (np.sqrt(m0) - np.sqrt(m1)) ** 2 + m1 * d ** 2
        return float(value), float(m1)
    return float(m0 + m1 - m0 / d ** 2), float(m0 / d ** 4)


def solveHk(mu0, mu1, options=None):
    return UotSolver(options).solve(HkPairCost(), mu0, mu1)


def hkDistanceSquared(mu0, mu1, options=None):
    return solveHk(mu0, mu1, options).value()


def hkDistance(mu0, mu1, options=None):
    return float(np.sqrt(hkDistanceSquared(mu0, mu1, options)))


def reconstructIntermediateMeasure(plan, mu1):
    '''Optimal nu of the marginal He-W problem from an optimal plan

    Every pair (a, b) at distance d contributes
    s0 delta_x + (b - s0) delta_y with s0 from the Dirac minimizer.
    '''
    space = mu1.space()
    atoms = {}
    a, b = plan.a(), plan.b()
    for i, x in enumerate(plan.rowIndices()):
        for j, y in enumerate(plan.columnIndices()):
            if b[i, j] <= 0 or y == Constants.VERTEX_SENTINEL:
                continue
            if x == Constants.VERTEX_SENTINEL:
                s0 = 0.
            else:
                _, s0 = wheDiracMinimizer(a[i, j], b[i, j],
                                          space.distance(x, y))
                atoms[x] = atoms.get(x, 0.) + s0
            atoms[y] = atoms.get(y, 0.) + b[i, j] - s0
    return DiscreteMeasure(space, sorted(atoms.items()))


def solveWhe(mu0, mu1, options=None):
    return UotSolver(options).solve(WhePairCost(), mu0, mu1)


def wheCost(mu0, mu1, options=None):
    '''inf over nu of He_2^2(mu0, nu) + W_2^2(nu, mu1)

    Return:
        value, plan (SemiCoupling), nuStar (DiscreteMeasure)
    '''
    solution = solveWhe(mu0, mu1, options)
    if mu0.isNull():
        return solution.value(), solution.plan(), mu1
    nuStar = reconstructIntermediateMeasure(solution.plan(), mu1)
    return solution.value(), solution.plan(), nuStar


def wHeCost(mu0, mu1, options=None):
    '''inf over nu of W_2^2(mu0, nu) + He_2^2(nu, mu1)'''
    value, plan, nuStar = wheCost(mu1, mu0, options)
    return value, plan.transposed(), nuStar

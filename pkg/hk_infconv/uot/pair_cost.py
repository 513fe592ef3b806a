import abc
import numpy as np
from scipy.optimize import brentq, minimize
from plico.utils.decorator import override, returns
from six import with_metaclass
from hk_infconv.utils.exceptions import InputValidationError


class PairCostError(InputValidationError):
    """Exception raised for an invalid pair cost.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """


# brentq refuses rtol below 4 * machine epsilon
BRENTQ_RTOL = 1e-15


def _uniform(mass, n):
    return np.full(n, mass / float(n))


def _normalized(x, mass):
    total = np.sum(x)
    if total <= 0:
        return x
    return x * (mass / total)


class AbstractPairCost(with_metaclass(abc.ABCMeta, object)):
    """Convex, 1-homogeneous cost of moving mass a at x into mass b at y.

    Costs act on arrays: a, b and d broadcast against each other. The
    block minimizers solve, for a single row (column) of a semi-coupling,
    min sum_j cost(x_j, fixed_j, d_j) subject to sum_j x_j = mass, x >= 0.
    """

    HK = 'HK'
    WHE = 'WHE'
    CUSTOM = 'custom'

    @abc.abstractmethod
    @returns(str)
    def kind(self):
        assert False

    @abc.abstractmethod
    def value(self, a, b, d):
        assert False

    @abc.abstractmethod
    def rowMinimizer(self, mass, b, d):
        """ Exact minimizer over a row

        Parameters:
            mass (float): mass of the row atom of mu0
            b (:obj:ndarray): column masses currently assigned on the row
            d (:obj:ndarray): distances from the row atom to the columns

        Return:
            a (:obj:ndarray): nonnegative row summing to mass
        """
        assert False

    @abc.abstractmethod
    def columnMinimizer(self, mass, a, d):
        assert False

    @abc.abstractmethod
    def smoothedValue(self, a, b, d, epsilon):
        assert False

    @abc.abstractmethod
    def smoothedGradient(self, a, b, d, epsilon):
        assert False

    def rowsMinimizer(self, masses, b, d):
        return np.array([self.rowMinimizer(m, bi, di)
                         for m, bi, di in zip(masses, b, d)])

    def columnsMinimizer(self, masses, a, d):
        return np.array([self.columnMinimizer(m, a[:, j], d[:, j])
                         for j, m in enumerate(masses)]).T

    def hasClosedFormDual(self):
        return False

    def rowPotentialCaps(self, psi, d):
        """ Row potentials compatible with given column potentials

        The potentials (phi, psi) bound the problem from below, by
        sum(phi * m0) + sum(psi * m1), when every pair satisfies
        cost(a, b, d_ij) >= phi_i a + psi_j b for all a, b >= 0.

        Parameters:
            psi (:obj:ndarray): column potentials
            d (:obj:ndarray): distance matrix

        Return:
            caps (:obj:ndarray): matrix of the largest phi_i allowed by
                each pair, -inf when no phi_i is, or None when the cost
                has no closed-form dual
        """
        return None

    def columnPotentialCaps(self, phi, d):
        return None

    def total(self, a, b, d):
        return float(np.sum(self.value(a, b, d)))

    def smoothedTotal(self, a, b, d, epsilon):
        return float(np.sum(self.smoothedValue(a, b, d, epsilon)))


class HkPairCost(AbstractPairCost):
    '''a + b - 2 sqrt(ab) cos(d ^ pi/2)'''

    @override
    def kind(self):
        return self.HK

    @override
    def hasClosedFormDual(self):
        return True

    @staticmethod
    def _cosine(d):
        # exactly zero from pi/2 on: those pairs never exchange mass
        d = np.asarray(d, dtype=float)
        return np.where(d < np.pi / 2, np.cos(np.minimum(d, np.pi / 2)),
                        0.)

    @override
    def value(self, a, b, d):
        cost = np.add(a, b) - 2 * np.sqrt(np.multiply(a, b)) * \
            self._cosine(d)
        return np.maximum(cost, 0.)

    @override
    def rowMinimizer(self, mass, b, d):
        weights = np.square(self._cosine(d)) * b
        if np.sum(weights) <= 0:
            return _uniform(mass, len(b))
        return _normalized(weights, mass)

    @override
    def columnMinimizer(self, mass, a, d):
        return self.rowMinimizer(mass, a, d)

    @override
    def rowsMinimizer(self, masses, b, d):
        weights = np.square(self._cosine(d)) * b
        totals = weights.sum(axis=1, keepdims=True)
        empty = totals[:, 0] <= 0
        weights[empty] = 1.
        totals[empty] = b.shape[1]
        return weights * (np.asarray(masses)[:, None] / totals)

    @override
    def columnsMinimizer(self, masses, a, d):
        return self.rowsMinimizer(masses, a.T, d.T).T

    @classmethod
    def _potentialCaps(cls, other, d):
        # (1 - phi)(1 - psi) >= cos^2 with phi, psi <= 1
        c2 = np.square(cls._cosine(d))
        slack = np.where(other < 1, 1 - other, 1.)
        caps = np.where(c2 > 0, 1 - c2 / slack, 1.)
        infeasible = (other > 1) | ((other >= 1) & (c2 > 0))
        return np.where(infeasible, -np.inf, caps)

    @override
    def rowPotentialCaps(self, psi, d):
        return self._potentialCaps(np.asarray(psi, dtype=float)[None, :], d)

    @override
    def columnPotentialCaps(self, phi, d):
        return self._potentialCaps(np.asarray(phi, dtype=float)[:, None], d)

    @override
    def smoothedValue(self, a, b, d, epsilon):
        return a + b - 2 * np.sqrt(a * b + epsilon) * self._cosine(d)

    @override
    def smoothedGradient(self, a, b, d, epsilon):
        root = np.sqrt(a * b + epsilon)
        c = self._cosine(d)
        return 1 - c * b / root, 1 - c * a / root


class WhePairCost(AbstractPairCost):
    '''Convex envelope of the marginal Hellinger-Wasserstein cost

    (sqrt(a) - sqrt(b))^2 + b d^2 when b d^4 <= a (always at d = 0),
    a + b - a / d^2 otherwise.
    '''

    @override
    def kind(self):
        return self.WHE

    @override
    def hasClosedFormDual(self):
        return True

    @staticmethod
    def _firstBranch(a, b, d):
        d2 = np.square(d)
        return (np.asarray(d) == 0) | (np.multiply(b, np.square(d2)) <= a)

    @staticmethod
    def _inverseSquare(d):
        d = np.asarray(d, dtype=float)
        safe = np.where(d > 0, d, 1.)
        return np.where(d > 0, 1. / np.square(safe), 0.)

    @override
    def value(self, a, b, d):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        first = np.square(np.sqrt(a) - np.sqrt(b)) + b * np.square(d)
        second = a + b - a * self._inverseSquare(d)
        return np.maximum(np.where(self._firstBranch(a, b, d), first,
                                   second), 0.)

    @override
    def rowMinimizer(self, mass, b, d):
        b = np.asarray(b, dtype=float)
        n = len(b)
        if mass <= 0:
            return np.zeros(n)
        if np.sum(b) <= 0:
            return _uniform(mass, n)
        # a_j = b_j s^2 once s exceeds d_j^2, any value in [0, b_j d_j^4]
        # at s = d_j^2
        thresholds = np.square(np.asarray(d, dtype=float))
        candidates = [j for j in np.argsort(thresholds, kind='stable')
                      if b[j] > 0]
        a = np.zeros(n)
        active = []
        activeMass = 0.
        k = 0
        while k < len(candidates):
            tau = thresholds[candidates[k]]
            group = [j for j in candidates[k:] if thresholds[j] == tau]
            if activeMass > 0:
                s2 = mass / activeMass
                if s2 <= tau ** 2:
                    a[active] = b[active] * s2
                    return _normalized(a, mass)
            filled = activeMass * tau ** 2
            capacity = np.sum(b[group]) * tau ** 2
            if filled + capacity >= mass:
                a[active] = b[active] * tau ** 2
                a[group] = (mass - filled) * b[group] / np.sum(b[group])
                return _normalized(a, mass)
            active.extend(group)
            activeMass += np.sum(b[group])
            k += len(group)
        a[active] = b[active] * (mass / activeMass)
        return _normalized(a, mass)

    @override
    def columnMinimizer(self, mass, a, d):
        a = np.asarray(a, dtype=float)
        d2 = np.square(np.asarray(d, dtype=float))
        n = len(a)
        if mass <= 0:
            return np.zeros(n)
        used = a > 0
        if not np.any(used):
            return _uniform(mass, n)
        # b_i = a_i / (d_i^2 + u)^2 for a multiplier u > 0; at u = 0 the
        # pairs saturate at a_i / d_i^4 and the rest is created mass
        if np.all(d2[used] > 0):
            saturation = np.zeros(n)
            saturation[used] = a[used] / np.square(d2[used])
            cap = np.sum(saturation)
            if cap <= mass:
                return saturation + _uniform(mass - cap, n)

        def excess(u):
            return np.sum(a[used] / np.square(d2[used] + u)) - mass

        upper = np.sqrt(np.sum(a) / mass)
        lower = max(0., float(np.max(np.sqrt(a[used] / mass) - d2[used])))
        if upper - lower <= 1e-15 * upper or excess(upper) >= 0:
            u = upper
        elif excess(lower) <= 0:
            u = lower
        else:
            u = brentq(excess, lower, upper, xtol=1e-300, rtol=BRENTQ_RTOL,
                       maxiter=500)
        b = np.zeros(n)
        b[used] = a[used] / np.square(d2[used] + u)
        return _normalized(b, mass)

    @override
    def rowPotentialCaps(self, psi, d):
        # (1 - phi)(1 + d^2 - psi) >= 1 with psi <= 1
        psi = np.asarray(psi, dtype=float)[None, :]
        k = 1 + np.square(d) - psi
        caps = 1 - 1. / np.where(k > 0, k, 1.)
        return np.where((psi > 1) | (k <= 0), -np.inf, caps)

    @override
    def columnPotentialCaps(self, phi, d):
        phi = np.asarray(phi, dtype=float)[:, None]
        slack = np.where(phi < 1, 1 - phi, 1.)
        caps = np.minimum(1., 1 + np.square(d) - 1. / slack)
        return np.where(phi >= 1, -np.inf, caps)

    @override
    def smoothedValue(self, a, b, d, epsilon):
        first = a + b * (1 + np.square(d)) - 2 * np.sqrt(a * b + epsilon)
        second = a + b - a * self._inverseSquare(d)
        return np.where(self._firstBranch(a, b, d), first, second)

    @override
    def smoothedGradient(self, a, b, d, epsilon):
        root = np.sqrt(a * b + epsilon)
        first = self._firstBranch(a, b, d)
        gradA = np.where(first, 1 - b / root, 1 - self._inverseSquare(d))
        gradB = np.where(first, 1 + np.square(d) - a / root, 1.)
        return gradA, gradB


class CustomPairCost(AbstractPairCost):
    """Pair cost given by a user evaluator f(a, b, d) -> cost.

    The evaluator must be jointly convex and 1-homogeneous in (a, b);
    block minimizers and gradients are numerical.
    """

    FINITE_DIFFERENCE_STEP = 1e-7

    def __init__(self, evaluator, name='custom'):
        if not callable(evaluator):
            raise PairCostError("custom pair cost needs a callable "
                                "evaluator")
        self._evaluator = np.vectorize(evaluator, otypes=[float])
        self._name = name

    def name(self):
        return self._name

    @override
    def kind(self):
        return self.CUSTOM

    @override
    def value(self, a, b, d):
        return self._evaluator(a, b, d)

    def _blockMinimizer(self, mass, fixed, d, asRow):
        n = len(fixed)
        if mass <= 0:
            return np.zeros(n)
        if n == 1:
            return np.array([mass])

        def objective(x):
            if asRow:
                return float(np.sum(self._evaluator(x, fixed, d)))
            return float(np.sum(self._evaluator(fixed, x, d)))

        res = minimize(objective, _uniform(mass, n), method='SLSQP',
                       bounds=[(0, mass)] * n,
                       constraints=[{'type': 'eq',
                                     'fun': lambda x: np.sum(x) - mass}],
                       options={'ftol': 1e-14, 'maxiter': 500})
        return _normalized(np.maximum(res.x, 0.), mass)

    @override
    def rowMinimizer(self, mass, b, d):
        return self._blockMinimizer(mass, np.asarray(b, dtype=float), d,
                                    True)

    @override
    def columnMinimizer(self, mass, a, d):
        return self._blockMinimizer(mass, np.asarray(a, dtype=float), d,
                                    False)

    @override
    def smoothedValue(self, a, b, d, epsilon):
        return self.value(a, b, d)

    @override
    def smoothedGradient(self, a, b, d, epsilon):
        h = self.FINITE_DIFFERENCE_STEP
        gradA = (self.value(a + h, b, d) -
                 self.value(np.maximum(a - h, 0.), b, d)) / \
            (a + h - np.maximum(a - h, 0.))
        gradB = (self.value(a, b + h, d) -
                 self.value(a, np.maximum(b - h, 0.), d)) / \
            (b + h - np.maximum(b - h, 0.))
        return gradA, gradB


def pairCostFromKind(kind):
    if kind in (AbstractPairCost.HK, 'hk'):
        return HkPairCost()
    elif kind in (AbstractPairCost.WHE, 'whe'):
        return WhePairCost()
    else:
        raise PairCostError('Unsupported pair cost %s' % kind)

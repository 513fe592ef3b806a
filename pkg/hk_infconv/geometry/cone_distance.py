import numpy as np


def coneDistanceSquared(r, s, d, cutoff=np.pi):
    '''r^2 + s^2 - 2 r s cos(d ^ cutoff), vectorized'''
    angle = np.minimum(d, cutoff)
    value = np.square(r) + np.square(s) - 2 * np.multiply(r, s) * \
        np.cos(angle)
    return np.maximum(value, 0.)


def coneDistanceSquaredSineForm(r, s, d, cutoff=np.pi):
    '''|r - s|^2 + 4 r s sin^2((d ^ cutoff) / 2), vectorized'''
    angle = np.minimum(d, cutoff)
    return np.square(np.subtract(r, s)) + \
        4 * np.multiply(r, s) * np.square(np.sin(angle / 2))


def comparableConeDistanceSquared(r, s, d):
    '''|r - s|^2 + r s (d ^ pi/2)^2

    Equivalent to the squared cone distance truncated at pi/2 and always
    larger than it.
    '''
    return np.square(np.subtract(r, s)) + \
        np.multiply(r, s) * np.square(np.minimum(d, np.pi / 2))


def hkConeCost(r, s, d):
    return coneDistanceSquared(r, s, d, np.pi / 2)


def wheConeCost(r, s, d):
    '''Marginal Hellinger-Wasserstein cost between [x, r] and [y, s]'''
    r = np.asarray(r, dtype=float)
    value = np.square(r - s) + np.square(s) * np.square(d)
    return np.where(r > 0, value, np.square(s))

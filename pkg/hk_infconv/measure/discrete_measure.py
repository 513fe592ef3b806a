import math
import numpy as np
from hk_infconv.utils.constants import Constants
from hk_infconv.utils.exceptions import InputValidationError


class MeasureError(InputValidationError):
    """Exception raised for invalid measures or incompatible operands.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """


class DiscreteMeasure(object):
    """Finite nonnegative atomic measure on a finite metric space.

    Atoms are kept sorted by point index; masses below
    Constants.NEGLIGIBLE_MASS are dropped on construction. Instances are
    immutable.
    """

    def __init__(self, space, atoms=()):
        self._space = space
        if isinstance(atoms, dict):
            atoms = list(atoms.items())
        indices = []
        masses = []
        for each in atoms:
            if len(each) != 2:
                raise MeasureError("atom must be (index, mass): %s" %
                                   str(each))
            index, mass = int(each[0]), float(each[1])
            if not space.isValidIndex(index):
                raise MeasureError("atom on point %d is outside space '%s'"
                                   % (index, space.name()))
            if not np.isfinite(mass) or mass < 0:
                raise MeasureError("atom mass must be finite and "
                                   "nonnegative, got %g on point %d" %
                                   (mass, index))
            if index in indices:
                raise MeasureError("duplicated atom on point %d" % index)
            indices.append(index)
            masses.append(mass)
        order = np.argsort(indices, kind='stable')
        indices = np.array(indices, dtype=int)[order]
        masses = np.array(masses, dtype=float)[order]
        keep = masses >= Constants.NEGLIGIBLE_MASS
        self._indices = indices[keep]
        self._masses = masses[keep]
        self._indices.setflags(write=False)
        self._masses.setflags(write=False)

    @staticmethod
    def dirac(space, index, mass=1.0):
        return DiscreteMeasure(space, [(index, mass)])

    @staticmethod
    def null(space):
        return DiscreteMeasure(space, [])

    def space(self):
        return self._space

    def indices(self):
        return self._indices

    def masses(self):
        return self._masses

    def atoms(self):
        return [(int(i), float(m)) for i, m in zip(self._indices,
                                                   self._masses)]

    def numberOfAtoms(self):
        return len(self._indices)

    def totalMass(self):
        return math.fsum(self._masses)

    def isNull(self):
        return self.numberOfAtoms() == 0

    def massAt(self, index):
        where = np.flatnonzero(self._indices == index)
        if len(where) == 0:
            return 0.
        return float(self._masses[where[0]])

    def scale(self, factor):
        return scale(self, factor)

    def add(self, other):
        checkSameSpace(self, other)
        total = dict(self.atoms())
        for index, mass in other.atoms():
            total[index] = total.get(index, 0.) + mass
        return DiscreteMeasure(self._space, sorted(total.items()))

    def isClose(self, other, atol=1e-12, rtol=0.):
        if self._space is not other.space():
            return False
        support = sorted(set(self._indices) | set(other.indices()))
        return all(np.isclose(self.massAt(i), other.massAt(i), atol=atol,
                              rtol=rtol) for i in support)

    def toDict(self, spaceName=None):
        if spaceName is None:
            spaceName = self._space.name()
        return {'space': spaceName,
                'atoms': [[i, m] for i, m in self.atoms()]}

    def __eq__(self, other):
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return self._space is other.space() and \
            np.array_equal(self._indices, other.indices()) and \
            np.array_equal(self._masses, other.masses())

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((id(self._space), tuple(self.atoms())))

    def __repr__(self):
        return "DiscreteMeasure(%s on '%s')" % (self.atoms(),
                                                self._space.name())


def checkSameSpace(mu0, mu1):
    if mu0.space() is not mu1.space():
        raise MeasureError("measures live on different spaces ('%s', '%s')"
                           % (mu0.space().name(), mu1.space().name()))


def lebesgueDecompose(nu, mu):
    '''Split nu = density * mu + singular

    density maps every point of supp(mu) to the ratio of the masses of nu
    and mu there; singular holds the atoms of nu outside supp(mu).
    '''
    checkSameSpace(nu, mu)
    density = {}
    for index, mass in mu.atoms():
        density[index] = nu.massAt(index) / mass
    supportOfMu = set(mu.indices())
    singular = DiscreteMeasure(nu.space(),
                               [(i, m) for i, m in nu.atoms()
                                if i not in supportOfMu])
    return density, singular


def recompose(density, mu, singular):
    checkSameSpace(mu, singular)
    atoms = dict(singular.atoms())
    for index, mass in mu.atoms():
        value = density.get(index, 0.) * mass
        if value > 0:
            atoms[index] = atoms.get(index, 0.) + value
    return DiscreteMeasure(mu.space(), sorted(atoms.items()))


def pushforward(mu, f, targetSpace=None):
    '''Image measure f#mu

    f is a callable, a dict or a sequence mapping point indices of the
    support of mu to point indices of the target space.
    '''
    if targetSpace is None:
        targetSpace = mu.space()
    images = {}
    for index, mass in mu.atoms():
        try:
            image = f(index) if callable(f) else f[index]
        except (KeyError, IndexError):
            raise MeasureError("atom on point %d is not mapped" % index)
        if image is None:
            raise MeasureError("atom on point %d is not mapped" % index)
        images.setdefault(int(image), []).append(mass)
    atoms = [(image, math.fsum(masses)) for image, masses
             in sorted(images.items())]
    return DiscreteMeasure(targetSpace, atoms)


def scale(mu, factor):
    if factor < 0:
        raise MeasureError("scaling factor must be nonnegative, got %g" %
                           factor)
    if factor == 0:
        return DiscreteMeasure.null(mu.space())
    return DiscreteMeasure(mu.space(),
                           [(i, factor * m) for i, m in mu.atoms()])

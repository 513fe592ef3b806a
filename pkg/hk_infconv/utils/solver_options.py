import configparser
import os
import numpy as np
from plico.utils.logger import Logger
from hk_infconv.utils.constants import Constants
from hk_infconv.utils.exceptions import InputValidationError


def _readValue(configuration, section, name, default, logger, **kwds):
    try:
        return configuration.getValue(section, name, **kwds)
    except (KeyError, configparser.Error) as e:
        logger.warn("%s; using default %s=%s" % (str(e), name, default))
        return default


def _parseSchedule(value):
    if isinstance(value, str):
        value = [each for each in value.replace(';', ',').split(',')
                 if each.strip()]
    schedule = tuple(float(each) for each in np.atleast_1d(value))
    if len(schedule) == 0 or min(schedule) <= 0:
        raise InputValidationError(
            "epsilon schedule must contain positive values, got %s" %
            str(value))
    return schedule


class UotSolverOptions(object):
    """Options record of the semi-coupling solver.

    tol is the relative accuracy target: the solver stops once the
    duality gap certifies it, and a run that exhausts maxIter block sweeps
    is accepted only if it does. epsilonSchedule lists the smoothing
    levels of the projected-gradient polish; the smallest one also reads
    the dual potentials off the plan.
    """

    def __init__(self,
                 tol=1e-7,
                 maxIter=100000,
                 epsilonSchedule=(1e-4, 1e-6, 1e-8, 1e-10, 1e-12),
                 relativeDecrease=1e-12,
                 stallSweeps=10,
                 polishIterations=200):
        if tol <= 0:
            raise InputValidationError("tolerance must be positive: %g" % tol)
        if maxIter < 1:
            raise InputValidationError("max_iter must be >= 1: %d" % maxIter)
        self.tol = float(tol)
        self.maxIter = int(maxIter)
        self.epsilonSchedule = _parseSchedule(epsilonSchedule)
        self.relativeDecrease = float(relativeDecrease)
        self.stallSweeps = int(stallSweeps)
        self.polishIterations = int(polishIterations)

    @staticmethod
    def fromConfiguration(configuration,
                          section=Constants.UOT_SOLVER_CONFIG_SECTION):
        logger = Logger.of('UOT solver options')
        defaults = UotSolverOptions()
        options = UotSolverOptions(
            tol=_readValue(configuration, section, 'tol',
                           defaults.tol, logger, getfloat=True),
            maxIter=_readValue(configuration, section, 'max_iter',
                               defaults.maxIter, logger, getint=True),
            epsilonSchedule=_readValue(configuration, section,
                                       'epsilon_schedule',
                                       defaults.epsilonSchedule, logger),
            relativeDecrease=_readValue(configuration, section,
                                        'relative_decrease',
                                        defaults.relativeDecrease, logger,
                                        getfloat=True),
            stallSweeps=_readValue(configuration, section, 'stall_sweeps',
                                   defaults.stallSweeps, logger,
                                   getint=True),
            polishIterations=_readValue(configuration, section,
                                        'polish_iterations',
                                        defaults.polishIterations, logger,
                                        getint=True))
        return options.withEnvironment()

    def withEnvironment(self, environ=None):
        if environ is None:
            environ = os.environ
        value = environ.get(Constants.UOT_TOLERANCE_ENV_VAR)
        if value is None or value.strip() == '':
            return self
        try:
            tol = float(value)
        except ValueError:
            raise InputValidationError(
                "%s is not a number: '%s'" % (
                    Constants.UOT_TOLERANCE_ENV_VAR, value))
        return self.withTolerance(tol)

    def withTolerance(self, tol):
        return UotSolverOptions(tol=tol,
                                maxIter=self.maxIter,
                                epsilonSchedule=self.epsilonSchedule,
                                relativeDecrease=self.relativeDecrease,
                                stallSweeps=self.stallSweeps,
                                polishIterations=self.polishIterations)

    def toDict(self):
        return {'tol': self.tol,
                'max_iter': self.maxIter,
                'epsilon_schedule': list(self.epsilonSchedule),
                'relative_decrease': self.relativeDecrease,
                'stall_sweeps': self.stallSweeps,
                'polish_iterations': self.polishIterations}


class FnSolverOptions(object):

    def __init__(self, tol=1e-8, maxIter=200000, restarts=5, seed=0):
        if tol <= 0:
            raise InputValidationError("tolerance must be positive: %g" % tol)
        self.tol = float(tol)
        self.maxIter = int(maxIter)
        self.restarts = int(restarts)
        self.seed = int(seed)

    @staticmethod
    def fromConfiguration(configuration,
                          section=Constants.FN_SOLVER_CONFIG_SECTION):
        logger = Logger.of('f_N solver options')
        defaults = FnSolverOptions()
        return FnSolverOptions(
            tol=_readValue(configuration, section, 'tol',
                           defaults.tol, logger, getfloat=True),
            maxIter=_readValue(configuration, section, 'max_iter',
                               defaults.maxIter, logger, getint=True),
            restarts=_readValue(configuration, section, 'restarts',
                                defaults.restarts, logger, getint=True),
            seed=_readValue(configuration, section, 'seed',
                            defaults.seed, logger, getint=True))

    def toDict(self):
        return {'tol': self.tol,
                'max_iter': self.maxIter,
                'restarts': self.restarts,
                'seed': self.seed}


class BruteForceOptions(object):
    """Grid resolution of the brute-force oracle.

    The first grid samples the whole parameter box; each refinement halves
    the box around the incumbent. Halving cannot lose the minimum once the
    first grid resolves its basin, so the first grid is required to have
    at least MIN_POINTS_PER_AXIS points per axis and the reported search
    bound is the modulus bound of that first step.
    """

    MAX_CELLS = 10 ** 6
    MIN_POINTS_PER_AXIS = 21

    def __init__(self, pointsPerAxis=21, refinements=60):
        if pointsPerAxis < self.MIN_POINTS_PER_AXIS:
            raise InputValidationError(
                "grid needs at least %d points per axis, got %d" % (
                    self.MIN_POINTS_PER_AXIS, pointsPerAxis))
        self.pointsPerAxis = int(pointsPerAxis)
        self.refinements = int(refinements)

    @staticmethod
    def fromConfiguration(configuration,
                          section=Constants.BRUTE_FORCE_CONFIG_SECTION):
        logger = Logger.of('Brute force options')
        defaults = BruteForceOptions()
        return BruteForceOptions(
            pointsPerAxis=_readValue(configuration, section,
                                     'points_per_axis',
                                     defaults.pointsPerAxis, logger,
                                     getint=True),
            refinements=_readValue(configuration, section, 'refinements',
                                   defaults.refinements, logger,
                                   getint=True))

    def toDict(self):
        return {'points_per_axis': self.pointsPerAxis,
                'refinements': self.refinements}

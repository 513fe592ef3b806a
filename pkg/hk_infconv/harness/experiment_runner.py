import configparser
import os
import time
import numpy as np
from plico.utils.logger import Logger
from plico.utils.decorator import logFailureAndRaise
from plico.utils.configuration import Configuration
from hk_infconv.utils.constants import Constants
from hk_infconv.utils.solver_options import UotSolverOptions, \
    FnSolverOptions, BruteForceOptions
from hk_infconv.space import metric_space_factory
from hk_infconv.measure import measure_io
from hk_infconv.measure.discrete_measure import DiscreteMeasure
from hk_infconv.geometry.cone_distance import coneDistanceSquared
from hk_infconv.distances.hellinger import hellinger
from hk_infconv.distances.wasserstein import wasserstein
from hk_infconv.uot.pair_cost import HkPairCost, WhePairCost
from hk_infconv.uot.brute_force import BruteForceOracle
from hk_infconv.uot.unbalanced_distances import hkDirac, solveHk, \
    solveWhe, wheDiracMinimizer, reconstructIntermediateMeasure
from hk_infconv.infconv.geodesic_experiment import GeodesicEnergyExperiment
from hk_infconv.infconv.minplus import minplusInfconvPath
from hk_infconv.infconv.fn_solver import FnSolver
from hk_infconv.hilbert.spd_matrix import SPDMatrix
from hk_infconv.hilbert.parallel_sum import parallelSum, \
    parallelSumInverseForm, oneStepQuadratic, gridMetricCheck
from hk_infconv.harness.experiment_spec import ExperimentSpec
from hk_infconv.harness.report_writer import ReportWriter, ReportRow
from hk_infconv.harness.validation_suite import ValidationSuite


class RunResult(object):

    def __init__(self, exitStatus, payload, files=()):
        self.exitStatus = exitStatus
        self.payload = payload
        self.files = list(files)


class ExperimentRunner(object):
    """Dispatches an ExperimentSpec to the solvers and writes its report.

    Numerical options come from the configuration (sections uotSolver,
    fnSolver, bruteForce, harness); the UOT_TOL environment variable and
    the experiment's 'tol' option override the UOT tolerance in this order.
    """

    def __init__(self, configuration=None):
        self._logger = Logger.of('Experiment runner')
        if configuration is None:
            self._uotOptions = UotSolverOptions().withEnvironment()
            self._fnOptions = FnSolverOptions()
            self._bruteForceOptions = BruteForceOptions()
            self._significantDigits = Constants.SIGNIFICANT_DIGITS
        else:
            self._uotOptions = UotSolverOptions.fromConfiguration(
                configuration)
            self._fnOptions = FnSolverOptions.fromConfiguration(
                configuration)
            self._bruteForceOptions = BruteForceOptions.fromConfiguration(
                configuration)
            self._significantDigits = self._readSignificantDigits(
                configuration)
        self._writer = ReportWriter(self._significantDigits)

    @staticmethod
    def loadConfiguration(path):
        configuration = Configuration()
        configuration.load(path)
        return configuration

    def _readSignificantDigits(self, configuration):
        try:
            return configuration.getValue(Constants.HARNESS_CONFIG_SECTION,
                                          'significant_digits',
                                          getint=True)
        except (KeyError, configparser.Error) as e:
            self._logger.warn(str(e))
            return Constants.SIGNIFICANT_DIGITS

    def uotOptions(self):
        return self._uotOptions

    def run(self, spec):
        spec.validate()
        if spec.options.get('tol') is not None:
            self._uotOptions = self._uotOptions.withTolerance(
                float(spec.options['tol']))
        self._logger.notice('running %s experiment' % spec.kind)
        start = time.time()
        exitStatus, payload, rows = self._dispatch(spec)
        payload['wall_time'] = time.time() - start
        payload['spec'] = spec.toDict()
        payload['tolerances'] = {
            'uot_solver': self._uotOptions.toDict(),
            'fn_solver': self._fnOptions.toDict(),
            'brute_force': self._bruteForceOptions.toDict()}
        files = self._writeReport(spec, payload, rows)
        return RunResult(exitStatus, payload, files)

    def _writeReport(self, spec, payload, rows):
        if spec.output is None:
            return []
        files = list(payload.get('files', []))
        if rows is not None:
            csvPath, jsonPath = self._writer.emitReport(rows, spec.output,
                                                        payload)
            return files + [csvPath, jsonPath]
        jsonPath = spec.output
        if not jsonPath.endswith('.json'):
            jsonPath = ReportWriter.sidecarPath(jsonPath)
        self._writer.writeJson(jsonPath, payload)
        return files + [jsonPath]

    @logFailureAndRaise
    def _dispatch(self, spec):
        if spec.kind == ExperimentSpec.DISTANCE:
            return self._runDistance(spec)
        elif spec.kind == ExperimentSpec.CONVERGE:
            return self._runConverge(spec)
        elif spec.kind == ExperimentSpec.INFCONV_DP:
            return self._runInfconvDp(spec)
        elif spec.kind == ExperimentSpec.FN_MIN:
            return self._runFnMin(spec)
        elif spec.kind == ExperimentSpec.PARALLEL_SUM:
            return self._runParallelSum(spec)
        else:
            return self._runValidate(spec)

    def _loadMeasures(self, inputs):
        space = metric_space_factory.load(inputs['space'])
        mu0 = measure_io.load(inputs['mu0'], space)
        mu1 = measure_io.load(inputs['mu1'], space)
        return space, mu0, mu1

    @staticmethod
    def _areTinyInstances(mu0, mu1):
        return max(mu0.numberOfAtoms(), mu1.numberOfAtoms()) <= \
            BruteForceOracle.MAX_ATOMS

    @staticmethod
    def _areDiracs(mu0, mu1):
        return mu0.numberOfAtoms() == 1 and mu1.numberOfAtoms() == 1

    def _runDistance(self, spec):
        inputs = spec.inputs
        space, mu0, mu1 = self._loadMeasures(inputs)
        kind = inputs['distance']
        payload = {'distance': kind}
        if kind in ('hellinger', 'wasserstein'):
            p = float(inputs.get('p') or 2.)
            function = hellinger if kind == 'hellinger' else wasserstein
            payload.update({'p': p, 'value': function(p, mu0, mu1)})
            return 0, payload, None

        if kind == 'hk':
            cost = HkPairCost()
            solution = solveHk(mu0, mu1, self._uotOptions)
            payload.update({'value': np.sqrt(solution.value()),
                            'value_squared': solution.value()})
        else:
            cost = WhePairCost()
            solution = solveWhe(mu0, mu1, self._uotOptions)
            if mu0.isNull():
                nuStar = mu1
            else:
                nuStar = reconstructIntermediateMeasure(solution.plan(),
                                                        mu1)
            payload['value'] = solution.value()
            payload['nu_star'] = nuStar.toDict()
            if spec.output is not None:
                nuPath = os.path.splitext(spec.output)[0] + '_nu_star.json'
                measure_io.save(nuStar, nuPath, space.name())
                payload['files'] = [nuPath]
        payload['solver'] = {'sweeps': solution.sweeps(),
                             'converged': solution.converged(),
                             'polished': solution.polished(),
                             'duality_gap': solution.dualityGap(),
                             'plan': solution.plan().toDict()}
        if self._areTinyInstances(mu0, mu1):
            oracle = BruteForceOracle(self._bruteForceOptions).evaluate(
                cost, mu0, mu1)
            payload['oracle'] = oracle.toDict()
            payload['oracle']['difference'] = solution.value() - oracle.value
        if self._areDiracs(mu0, mu1):
            m0, m1 = mu0.totalMass(), mu1.totalMass()
            d = space.distance(mu0.indices()[0], mu1.indices()[0])
            if kind == 'hk':
                closedForm = hkDirac(m0, m1, d)
            else:
                closedForm = wheDiracMinimizer(m0, m1, d)[0]
            payload['closed_form'] = {
                'value': closedForm,
                'difference': solution.value() - closedForm}
        return 0, payload, None

    def _convergeEndpoints(self, inputs):
        if inputs['endpoints'] == 'files':
            _, mu0, mu1 = self._loadMeasures(inputs)
            return mu0, mu1
        d = float(inputs['d'])
        space = metric_space_factory.buildEuclidean([[0.], [d]], 'line')
        m0 = float(inputs.get('m0') or 1.)
        m1 = float(inputs.get('m1') or 1.)
        return (DiscreteMeasure.dirac(space, 0, m0),
                DiscreteMeasure.dirac(space, 1, m1))

    def _runConverge(self, spec):
        mu0, mu1 = self._convergeEndpoints(spec.inputs)
        experiment = GeodesicEnergyExperiment(mu0, mu1, self._uotOptions)
        reports = experiment.run(spec.inputs['N'])
        payload = {'reference': experiment.reference(),
                   'values': [each.value for each in reports]}
        return 0, payload, reports

    @staticmethod
    def _dpCost(inputs):
        n = int(inputs['n'])
        if inputs['cost'] == 'path':
            rho = metric_space_factory.buildPathGraph(n).distanceMatrix()
            return np.square(rho)
        return 1. - np.eye(n)

    def _runInfconvDp(self, spec):
        inputs = spec.inputs
        costsq = self._dpCost(inputs)
        z0, z1 = int(inputs['z0']), int(inputs['z1'])
        reference = costsq[z0, z1] / 2
        rows = []
        paths = []
        for N in inputs['N']:
            value, path = minplusInfconvPath(costsq, costsq, z0, z1, N)
            rows.append(ReportRow(N, value, reference))
            paths.append(path)
        payload = {'values': [each.value for each in rows],
                   'reference': reference,
                   'paths': paths}
        return 0, payload, rows

    def _runFnMin(self, spec):
        inputs = spec.inputs
        r0, rN = float(inputs['r0']), float(inputs['rN'])
        d = float(inputs['d'])
        reference = float(coneDistanceSquared(r0, rN, d))
        solver = FnSolver(self._fnOptions)
        rows = []
        states = []
        for N in inputs['N']:
            value, state = solver.minimize(r0, rN, d, N)
            rows.append(ReportRow(N, value, reference))
            states.append(state.toDict())
        payload = {'values': [each.value for each in rows],
                   'reference': reference,
                   'states': states}
        return 0, payload, rows

    def _runParallelSum(self, spec):
        inputs = spec.inputs
        A, B = SPDMatrix(inputs['A']), SPDMatrix(inputs['B'])
        P = parallelSum(A, B)
        inverseForm = parallelSumInverseForm(A, B)
        payload = {
            'value': P.matrix(),
            'forms_disagreement': float(
                np.linalg.norm(P.matrix() - inverseForm) /
                np.linalg.norm(inverseForm))}
        v = inputs.get('v')
        if v is not None:
            value, zStar = oneStepQuadratic(A, B, v)
            payload['one_step'] = {'value': value, 'z_star': zStar}
            if len(v) <= 2:
                payload['grid_check'] = gridMetricCheck(
                    A, B, v, float(inputs.get('step') or 0.01)).toDict()
        return 0, payload, None

    def _runValidate(self, spec):
        seed = int(spec.options.get('seed') or 0)
        report = ValidationSuite(seed, self._uotOptions,
                                 self._fnOptions).run()
        payload = report.toDict()
        payload['seed'] = seed
        return (0 if report.allPassed() else 1), payload, None

#!/usr/bin/env python
import argparse
import json
import logging
import sys
import hk_infconv
from plico.utils.config_file_manager import ConfigFileManager
from hk_infconv.utils.constants import Constants
from hk_infconv.utils.exceptions import HkInfconvError, ErrorCodes
from hk_infconv.harness.experiment_spec import ExperimentSpec
from hk_infconv.harness.experiment_runner import ExperimentRunner
from hk_infconv.harness.report_writer import ReportWriter


def _addCommonArguments(parser):
    parser.add_argument('--out', help='report path (CSV or JSON)')
    parser.add_argument('--tol', type=float,
                        help='UOT relative tolerance, overrides UOT_TOL')
    parser.add_argument('--seed', type=int, default=0,
                        help='seed of randomized invariant sampling')
    parser.add_argument('--conf', help='configuration file')
    parser.add_argument('--quiet', action='store_true',
                        help='log warnings and errors only')


def _addMeasureArguments(parser, required):
    parser.add_argument('--space', required=required, help='space JSON file')
    parser.add_argument('--mu0', required=required,
                        help='source measure JSON file')
    parser.add_argument('--mu1', required=required,
                        help='target measure JSON file')


def buildParser():
    parser = argparse.ArgumentParser(
        prog=Constants.CLI_PROCESS_NAME,
        description='Hellinger-Kantorovich inf-convolution experiments')
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    distance = commands.add_parser(ExperimentSpec.DISTANCE,
                                   help='distance between two measures')
    _addMeasureArguments(distance, True)
    distance.add_argument('--kind', required=True,
                          choices=ExperimentSpec.DISTANCE_KINDS)
    distance.add_argument('--p', type=float,
                          help='exponent of hellinger and wasserstein')
    _addCommonArguments(distance)

    converge = commands.add_parser(ExperimentSpec.CONVERGE,
                                   help='E_N along the discretized geodesic')
    converge.add_argument('--endpoints', default='dirac',
                          choices=ExperimentSpec.ENDPOINT_KINDS)
    converge.add_argument('--d', type=float,
                          help='distance of the dirac endpoints')
    converge.add_argument('--m0', type=float, default=1.)
    converge.add_argument('--m1', type=float, default=1.)
    _addMeasureArguments(converge, False)
    converge.add_argument('--N', required=True, help='comma separated list')
    _addCommonArguments(converge)

    dp = commands.add_parser(ExperimentSpec.INFCONV_DP,
                             help='min-plus inf-convolution on a candidate '
                             'set')
    dp.add_argument('--cost', default='path', choices=ExperimentSpec.DP_COSTS)
    dp.add_argument('--n', type=int, default=101)
    dp.add_argument('--z0', type=int, default=0)
    dp.add_argument('--z1', type=int, required=True)
    dp.add_argument('--N', required=True, help='comma separated list')
    _addCommonArguments(dp)

    fn = commands.add_parser(ExperimentSpec.FN_MIN,
                             help='minimum of f_N for dirac paths')
    fn.add_argument('--r0', type=float, required=True)
    fn.add_argument('--rN', type=float, required=True)
    fn.add_argument('--d', type=float, required=True)
    fn.add_argument('--N', required=True, help='comma separated list')
    _addCommonArguments(fn)

    ps = commands.add_parser(ExperimentSpec.PARALLEL_SUM,
                             help='parallel sum of two SPD matrices')
    ps.add_argument('--A', required=True, type=json.loads,
                    help='JSON matrix, e.g. [[1,0],[0,2]]')
    ps.add_argument('--B', required=True, type=json.loads)
    ps.add_argument('--v', type=json.loads, help='JSON vector')
    ps.add_argument('--step', type=float, default=0.01,
                    help='grid step of the metric check')
    _addCommonArguments(ps)

    validate = commands.add_parser(ExperimentSpec.VALIDATE,
                                   help='run the invariant suite')
    _addCommonArguments(validate)
    return parser


_NOT_INPUTS = ('command', 'out', 'tol', 'seed', 'conf', 'quiet')


def specFromArguments(args):
    inputs = {key: value for key, value in vars(args).items()
              if key not in _NOT_INPUTS}
    if 'kind' in inputs:
        inputs['distance'] = inputs.pop('kind')
    options = {'tol': args.tol, 'seed': args.seed, 'conf': args.conf}
    return ExperimentSpec(args.command, inputs, args.out, options)


def _configuration(confPath):
    if confPath is None:
        configFileManager = ConfigFileManager(Constants.APP_NAME,
                                              Constants.APP_AUTHOR,
                                              Constants.THIS_PACKAGE)
        configFileManager.installConfigFileFromPackage()
        confPath = hk_infconv.defaultConfigFilePath
    return ExperimentRunner.loadConfiguration(confPath)


def _print(payload):
    writer = ReportWriter()
    sys.stdout.write(json.dumps(writer.jsonable(payload), indent=2,
                                sort_keys=True) + '\n')


def main(argv=None):
    args = buildParser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet
                        else logging.INFO)
    try:
        runner = ExperimentRunner(_configuration(args.conf))
        result = runner.run(specFromArguments(args))
    except HkInfconvError as e:
        _print(e.toDict())
        return e.errorCode
    except (IOError, OSError) as e:
        _print({'error': e.__class__.__name__,
                'errorCode': ErrorCodes.VALIDATION_FAILURE,
                'message': str(e)})
        return ErrorCodes.VALIDATION_FAILURE
    except Exception as e:
        _print({'error': e.__class__.__name__,
                'errorCode': ErrorCodes.SOLVER_FAILURE,
                'message': str(e)})
        return ErrorCodes.SOLVER_FAILURE
    _print(result.payload)
    return result.exitStatus


if __name__ == '__main__':
    sys.exit(main())

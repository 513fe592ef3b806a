import numpy as np
from hk_infconv.utils.exceptions import InputValidationError


class ExperimentSpecError(InputValidationError):
    """Exception raised for incomplete or inconsistent experiment specs.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """


def parseNList(value):
    '''"4,16,64" -> [4, 16, 64]'''
    if isinstance(value, str):
        value = [each for each in value.split(',') if each.strip()]
    try:
        ret = [int(each) for each in np.atleast_1d(value)]
    except ValueError:
        raise ExperimentSpecError("N list must hold integers, got '%s'" %
                                  str(value))
    if len(ret) == 0 or min(ret) < 1:
        raise ExperimentSpecError("N list must hold integers >= 1, got %s"
                                  % ret)
    return ret


class ExperimentSpec(object):
    """Kind, inputs, output path and options of one harness run.

    inputs holds file paths (space, mu0, mu1) or inline parameters,
    options the numerical overrides (tol, seed, conf).
    """

    DISTANCE = 'distance'
    INFCONV_DP = 'infconv-dp'
    CONVERGE = 'converge'
    FN_MIN = 'fn-min'
    PARALLEL_SUM = 'parallel-sum'
    VALIDATE = 'validate'
    KINDS = (DISTANCE, INFCONV_DP, CONVERGE, FN_MIN, PARALLEL_SUM, VALIDATE)

    DISTANCE_KINDS = ('hellinger', 'wasserstein', 'hk', 'whe')
    ENDPOINT_KINDS = ('dirac', 'files')
    DP_COSTS = ('path', 'discrete')

    REQUIRED = {
        DISTANCE: ('space', 'mu0', 'mu1', 'distance'),
        INFCONV_DP: ('cost', 'n', 'z0', 'z1', 'N'),
        CONVERGE: ('endpoints', 'N'),
        FN_MIN: ('r0', 'rN', 'd', 'N'),
        PARALLEL_SUM: ('A', 'B'),
        VALIDATE: (),
    }

    def __init__(self, kind, inputs=None, output=None, options=None):
        self.kind = kind
        self.inputs = dict(inputs or {})
        self.output = output
        self.options = dict(options or {})

    def validate(self):
        if self.kind not in self.KINDS:
            raise ExperimentSpecError("unknown experiment kind '%s'" %
                                      self.kind)
        missing = [each for each in self.REQUIRED[self.kind]
                   if self.inputs.get(each) is None]
        if missing:
            raise ExperimentSpecError("%s needs %s" % (
                self.kind, ', '.join(missing)))
        getattr(self, '_validate%s' % self._suffix())()
        return self

    def _suffix(self):
        return ''.join(each.capitalize() for each in self.kind.split('-'))

    def _validateDistance(self):
        if self.inputs['distance'] not in self.DISTANCE_KINDS:
            raise ExperimentSpecError("distance kind must be one of %s" %
                                      str(self.DISTANCE_KINDS))
        p = self.inputs.get('p')
        if p is not None:
            if self.inputs['distance'] not in ('hellinger', 'wasserstein'):
                raise ExperimentSpecError("--p applies to hellinger and "
                                          "wasserstein only")
            if not float(p) >= 1:
                raise ExperimentSpecError("p must be >= 1, got %s" % p)

    def _validateInfconvDp(self):
        if self.inputs['cost'] not in self.DP_COSTS:
            raise ExperimentSpecError("min-plus cost must be one of %s" %
                                      str(self.DP_COSTS))
        n = int(self.inputs['n'])
        if n < 2:
            raise ExperimentSpecError("candidate set needs >= 2 points")
        for name in ('z0', 'z1'):
            if not 0 <= int(self.inputs[name]) < n:
                raise ExperimentSpecError("%s out of range [0, %d)" % (
                    name, n))
        self.inputs['N'] = parseNList(self.inputs['N'])

    def _validateConverge(self):
        endpoints = self.inputs['endpoints']
        if endpoints not in self.ENDPOINT_KINDS:
            raise ExperimentSpecError("endpoints must be one of %s" %
                                      str(self.ENDPOINT_KINDS))
        if endpoints == 'dirac':
            if self.inputs.get('d') is None:
                raise ExperimentSpecError("dirac endpoints need --d")
            if float(self.inputs['d']) < 0:
                raise ExperimentSpecError("d must be nonnegative")
        else:
            for name in ('space', 'mu0', 'mu1'):
                if self.inputs.get(name) is None:
                    raise ExperimentSpecError("file endpoints need --%s" %
                                              name)
        self.inputs['N'] = parseNList(self.inputs['N'])

    def _validateFnMin(self):
        if not (float(self.inputs['r0']) > 0 and
                float(self.inputs['rN']) > 0):
            raise ExperimentSpecError("r0 and rN must be positive")
        if float(self.inputs['d']) < 0:
            raise ExperimentSpecError("d must be nonnegative")
        self.inputs['N'] = parseNList(self.inputs['N'])

    def _validateParallelSum(self):
        for name in ('A', 'B'):
            matrix = np.array(self.inputs[name], dtype=float, ndmin=2)
            if matrix.ndim != 2:
                raise ExperimentSpecError("%s must be a matrix" % name)
            self.inputs[name] = matrix
        if self.inputs.get('v') is not None:
            self.inputs['v'] = np.array(self.inputs['v'],
                                        dtype=float).reshape(-1)

    def _validateValidate(self):
        pass

    def toDict(self):
        inputs = {}
        for key, value in self.inputs.items():
            inputs[key] = value.tolist() if isinstance(value, np.ndarray) \
                else value
        return {'kind': self.kind,
                'inputs': inputs,
                'output': self.output,
                'options': self.options}

import csv
import json
import os
import numpy as np
from hk_infconv.utils.constants import Constants
from hk_infconv.utils.exceptions import HkInfconvError


class ReportError(HkInfconvError):
    """Exception raised when a report cannot be written.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """


class ReportRow(object):

    def __init__(self, N, value, reference):
        self.N = int(N)
        self.value = float(value)
        self.reference = float(reference)

    @property
    def gap(self):
        return self.value - self.reference


class ReportWriter(object):
    """Plot-ready CSV with a JSON provenance sidecar.

    Rows are anything exposing N, value, reference and gap (EnergyReport,
    ReportRow). The monotone_gap column flags rows whose |gap| does not
    exceed the one of the previous row.
    """

    HEADER = ('N', 'value', 'reference', 'gap', 'monotone_gap')

    def __init__(self, significantDigits=Constants.SIGNIFICANT_DIGITS):
        self._format = '%%.%dg' % significantDigits

    def formatNumber(self, x):
        if np.isnan(x):
            return 'nan'
        if np.isinf(x):
            return 'inf' if x > 0 else '-inf'
        return self._format % x

    def rows(self, results):
        ret = []
        previousGap = None
        for each in results:
            gap = abs(each.gap)
            monotone = previousGap is None or gap <= previousGap
            ret.append([str(each.N),
                        self.formatNumber(each.value),
                        self.formatNumber(each.reference),
                        self.formatNumber(each.gap),
                        'true' if monotone else 'false'])
            previousGap = gap
        return ret

    def writeCsv(self, path, results):
        try:
            with open(path, 'w', newline='') as f:
                writer = csv.writer(f, lineterminator='\n')
                writer.writerow(self.HEADER)
                writer.writerows(self.rows(results))
        except (IOError, OSError) as e:
            raise ReportError("cannot write %s: %s" % (path, str(e)))

    def jsonable(self, value):
        if isinstance(value, dict):
            return {str(k): self.jsonable(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [self.jsonable(each) for each in value]
        if isinstance(value, np.ndarray):
            return self.jsonable(value.tolist())
        if isinstance(value, (np.integer,)):
            return int(value)
        if isinstance(value, (float, np.floating)):
            value = float(value)
            if not np.isfinite(value):
                return self.formatNumber(value)
            return float(self.formatNumber(value))
        return value

    def writeJson(self, path, payload):
        try:
            with open(path, 'w') as f:
                json.dump(self.jsonable(payload), f, indent=2,
                          sort_keys=True)
                f.write('\n')
        except (IOError, OSError) as e:
            raise ReportError("cannot write %s: %s" % (path, str(e)))

    @staticmethod
    def sidecarPath(csvPath):
        return os.path.splitext(csvPath)[0] + '.json'

    def emitReport(self, results, csvPath, provenance=None):
        '''CSV rows of results plus the JSON sidecar

        Return:
            (csvPath, jsonPath)
        '''
        results = list(results)
        self.writeCsv(csvPath, results)
        payload = dict(provenance or {})
        payload['rows'] = [self._rowDict(each) for each in results]
        jsonPath = self.sidecarPath(csvPath)
        self.writeJson(jsonPath, payload)
        return csvPath, jsonPath

    @staticmethod
    def _rowDict(result):
        if hasattr(result, 'toDict'):
            return result.toDict()
        return {'N': result.N, 'value': result.value,
                'reference': result.reference, 'gap': result.gap}


def emitReport(results, csvPath, provenance=None,
               significantDigits=Constants.SIGNIFICANT_DIGITS):
    return ReportWriter(significantDigits).emitReport(results, csvPath,
                                                      provenance)

import numpy as np
from hk_infconv.utils.constants import Constants
from hk_infconv.utils.exceptions import InputValidationError


class SemiCouplingError(InputValidationError):
    """Exception raised for malformed semi-couplings.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """


class SemiCoupling(object):
    """Pair of nonnegative matrices splitting the two marginals.

    a[i, j] is the mass of the i-th atom of mu0 sent towards the j-th
    atom of mu1, b[i, j] the mass of the j-th atom of mu1 received from
    the i-th atom of mu0. Rows and columns are labelled by point indices;
    a null marginal is represented by a single row (column) labelled
    Constants.VERTEX_SENTINEL standing for the cone vertex.
    """

    def __init__(self, a, b, rowIndices, columnIndices):
        a = np.array(a, dtype=float, ndmin=2)
        b = np.array(b, dtype=float, ndmin=2)
        rowIndices = np.array(rowIndices, dtype=int, ndmin=1)
        columnIndices = np.array(columnIndices, dtype=int, ndmin=1)
        if a.size == 0 and b.size == 0:
            shape = (len(rowIndices), len(columnIndices))
            a = np.zeros(shape)
            b = np.zeros(shape)
        if a.shape != b.shape:
            raise SemiCouplingError("a and b shapes differ: %s vs %s" %
                                    (a.shape, b.shape))
        if a.shape != (len(rowIndices), len(columnIndices)):
            raise SemiCouplingError(
                "plan shape %s does not match %d rows and %d columns" % (
                    a.shape, len(rowIndices), len(columnIndices)))
        if np.any(a < 0) or np.any(b < 0):
            raise SemiCouplingError("semi-coupling entries must be "
                                    "nonnegative")
        self._a = a
        self._b = b
        self._rowIndices = rowIndices
        self._columnIndices = columnIndices

    @staticmethod
    def empty():
        return SemiCoupling(np.zeros((0, 0)), np.zeros((0, 0)), [], [])

    def a(self):
        return self._a

    def b(self):
        return self._b

    def rowIndices(self):
        return self._rowIndices

    def columnIndices(self):
        return self._columnIndices

    def shape(self):
        return self._a.shape

    def rowMarginal(self):
        return self._a.sum(axis=1)

    def columnMarginal(self):
        return self._b.sum(axis=0)

    def hasVertexRow(self):
        return np.any(self._rowIndices == Constants.VERTEX_SENTINEL)

    def hasVertexColumn(self):
        return np.any(self._columnIndices == Constants.VERTEX_SENTINEL)

    def _expectedMasses(self, measure, labels):
        return np.array([0. if each == Constants.VERTEX_SENTINEL
                         else measure.massAt(each) for each in labels])

    def marginalResidual(self, mu0, mu1):
        rows = self._expectedMasses(mu0, self._rowIndices)
        columns = self._expectedMasses(mu1, self._columnIndices)
        residual = 0.
        if len(rows):
            residual = max(residual,
                           np.max(np.abs(self.rowMarginal() - rows)))
        if len(columns):
            residual = max(residual,
                           np.max(np.abs(self.columnMarginal() - columns)))
        return float(residual)

    def isFeasible(self, mu0, mu1, tolerance=1e-9):
        if set(mu0.indices()) - set(self._rowIndices):
            return False
        if set(mu1.indices()) - set(self._columnIndices):
            return False
        return self.marginalResidual(mu0, mu1) <= tolerance

    def scaled(self, factor):
        return SemiCoupling(self._a * factor, self._b * factor,
                            self._rowIndices, self._columnIndices)

    def transposed(self):
        '''Plan of the problem with the marginals swapped'''
        return SemiCoupling(self._b.T, self._a.T, self._columnIndices,
                            self._rowIndices)

    def toDict(self):
        return {'rows': self._rowIndices.tolist(),
                'columns': self._columnIndices.tolist(),
                'a': self._a.tolist(),
                'b': self._b.tolist()}

    def __repr__(self):
        return "SemiCoupling(rows=%s, columns=%s)" % (
            self._rowIndices.tolist(), self._columnIndices.tolist())

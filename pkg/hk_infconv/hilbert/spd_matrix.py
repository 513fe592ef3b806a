import numpy as np
from scipy.linalg import cho_factor, cho_solve, LinAlgError
from hk_infconv.utils.exceptions import InputValidationError


class HilbertianError(InputValidationError):
    """Exception raised for invalid quadratic forms.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """


class SPDMatrix(object):
    """Symmetric positive definite matrix of dimension <= MAX_DIMENSION.

    Positive definiteness is checked by a Cholesky factorization, kept
    for the linear solves.
    """

    MAX_DIMENSION = 16
    SYMMETRY_TOLERANCE = 1e-12

    def __init__(self, matrix):
        matrix = np.array(matrix, dtype=float, ndmin=2)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise HilbertianError("matrix must be square, got shape %s" %
                                  str(matrix.shape))
        m = matrix.shape[0]
        if not 1 <= m <= self.MAX_DIMENSION:
            raise HilbertianError("dimension must be in [1, %d], got %d" %
                                  (self.MAX_DIMENSION, m))
        if not np.all(np.isfinite(matrix)):
            raise HilbertianError("matrix has non finite entries")
        scale = max(1., np.max(np.abs(matrix)))
        if np.max(np.abs(matrix - matrix.T)) > \
                self.SYMMETRY_TOLERANCE * scale:
            raise HilbertianError("matrix is not symmetric")
        try:
            self._factor = cho_factor(matrix)
        except LinAlgError:
            raise HilbertianError("matrix is not positive definite")
        self._matrix = matrix
        self._matrix.setflags(write=False)

    @staticmethod
    def identity(m):
        return SPDMatrix(np.eye(m))

    @staticmethod
    def random(m, rnd, conditioning=10.):
        '''Random SPD matrix with eigenvalues in [1, conditioning]'''
        q, _ = np.linalg.qr(rnd.normal(size=(m, m)))
        eigenvalues = rnd.uniform(1., conditioning, m)
        matrix = q.dot(np.diag(eigenvalues)).dot(q.T)
        return SPDMatrix((matrix + matrix.T) / 2)

    def matrix(self):
        return self._matrix

    def dimension(self):
        return self._matrix.shape[0]

    def solve(self, rhs):
        return cho_solve(self._factor, rhs)

    def quadraticForm(self, v):
        '''v^T M v, row-wise when v is a matrix of points'''
        v = np.asarray(v, dtype=float)
        return np.einsum('...i,ij,...j->...', v, self._matrix, v)

    def largestEigenvalue(self):
        return float(np.linalg.eigvalsh(self._matrix)[-1])

    def __add__(self, other):
        return SPDMatrix(self._matrix + other.matrix())

    def __repr__(self):
        return "SPDMatrix(%s)" % self._matrix.tolist()



class ErrorCodes:
    SOLVER_FAILURE = 1
    VALIDATION_FAILURE = 2


class HkInfconvError(Exception):
    """Base exception of the package.

    Attributes:
        errorCode -- exit status reported by the command line interface
        message -- explanation of the error
    """

    ERROR_CODE = ErrorCodes.SOLVER_FAILURE

    def __init__(self, message, errorCode=None):
        Exception.__init__(self, message)
        self.message = message
        if errorCode is None:
            errorCode = self.ERROR_CODE
        self.errorCode = errorCode

    def toDict(self):
        return {'error': self.__class__.__name__,
                'errorCode': self.errorCode,
                'message': self.message}


class InputValidationError(HkInfconvError):

    ERROR_CODE = ErrorCodes.VALIDATION_FAILURE


class NumericalError(HkInfconvError):

    ERROR_CODE = ErrorCodes.SOLVER_FAILURE

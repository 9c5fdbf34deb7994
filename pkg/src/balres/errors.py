"""Exception hierarchy.

Everything raised on bad *input* derives from :class:`InputError`; the CLI maps
those to exit status 2.  :class:`InternalConsistencyError` means two
independent constructions of the same object disagreed, which is a bug.
"""


class BalresError(Exception):
    pass


class InputError(BalresError, ValueError):
    pass


class InternalConsistencyError(BalresError, AssertionError):
    pass


class SingularMatrixError(BalresError, ArithmeticError):
    def __init__(self, message="matrix is singular", column=None):
        super().__init__(message)
        self.column = column


class NullSpaceMismatch(InputError):
    """A @ U != 0 or U' @ A != 0 for a would-be Laplacian."""


class GraphValidationError(InputError):
    pass


class SelfLoop(GraphValidationError):
    pass


class DuplicateEdge(GraphValidationError):
    pass


class IndexOutOfRange(GraphValidationError):
    pass


class BadWeight(GraphValidationError):
    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


class NotBalanced(InputError):
    def __init__(self, message, vertices=()):
        super().__init__(message)
        self.vertices = tuple(vertices)


class NotStronglyConnected(InputError):
    pass


class NotATree(InputError):
    pass


class NotScalar(InputError):
    pass


class HypothesisViolation(InputError):
    def __init__(self, message, which=None):
        super().__init__(message)
        self.which = which


class DegenerateQuadratic(BalresError, ArithmeticError):
    """tau' R tau is singular or not positive definite."""


class ParseError(InputError):
    def __init__(self, message, field=None):
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
        self.field = field

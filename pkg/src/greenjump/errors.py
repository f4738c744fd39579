"""Exception types raised on invalid input, with machine-readable CLI codes."""


class InputError(ValueError):
    """Base class for rejected input; `code` is the CLI error string."""

    code = "invalid_input"


class GraphError(InputError):
    code = "invalid_graph"


class DisconnectedError(GraphError):
    code = "disconnected_graph"


class SupportError(InputError):
    code = "unknown_vertex"


class DegreeError(InputError):
    code = "degree_nonzero"


class ConstraintError(InputError):
    code = "constraint_violation"


class UnstableError(InputError):
    code = "unstable_graph"


class NotLaplacianError(InputError):
    code = "not_laplacian"


class ThetaDomainError(InputError):
    code = "theta_domain"


class ThetaPoleError(InputError):
    code = "theta_pole"


class TruncationError(InputError):
    code = "truncation_overflow"


class BadJsonError(InputError):
    code = "bad_json"

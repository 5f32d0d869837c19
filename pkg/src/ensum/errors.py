"""Exception hierarchy.

Every error carries a stable ``code`` string; the CLI maps it to an exit
status and a one-line error record.
"""


class EnsumError(Exception):
    code = "E_GENERIC"
    exit_status = 2


class DomainError(EnsumError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""

    code = "E_DOMAIN"


class ValidationError(EnsumError, ValueError):
    """Input data failed validation.

    ``offending`` holds the indices (or points) that caused the failure.
    """

    code = "E_VALIDATION"

    def __init__(self, message, offending=()):
        super().__init__(message)
        self.offending = list(offending)


class OracleContractError(ValidationError):
    """The sampled function returned a value outside [0, 1]."""

    code = "E_ORACLE_CONTRACT"


class ParameterError(EnsumError, ValueError):
    code = "E_PARAMETER"


class ModelValidityError(EnsumError, ValueError):
    """Thermal parameters would produce negative mixture weights."""

    code = "E_MODEL_VALIDITY"


class CapacityError(EnsumError):
    """Register sizes exceed the simulator limits."""

    code = "E_CAPACITY"
    exit_status = 3


class UsageError(EnsumError):
    code = "E_USAGE"


ERROR_CODES = {
    cls.code: cls.exit_status
    for cls in (
        EnsumError,
        DomainError,
        ValidationError,
        OracleContractError,
        ParameterError,
        ModelValidityError,
        CapacityError,
        UsageError,
    )
}

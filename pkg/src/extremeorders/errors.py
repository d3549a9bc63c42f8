"""Exception hierarchy shared by every module."""


class ExtremeOrdersError(Exception):
    pass


class InvalidParameterError(ExtremeOrdersError, ValueError):
    """A distribution or helper received a parameter outside its domain."""


class ConfigurationError(ExtremeOrdersError, ValueError):
    """Systems, pmfs, grids or run configs that do not fit together."""


class DegenerateInputError(ExtremeOrdersError, ValueError):
    """Inputs are valid but carry no strict structure to demonstrate."""


class NotClassifiableError(ExtremeOrdersError):
    """A (kernel, f) pair matches none of the eight hypothesis combinations."""


class InconclusiveCaseError(ExtremeOrdersError):
    """The hypothesis combination is one of Cases I-IV; no sign prediction exists."""

    def __init__(self, case, message=None):
        self.case = case
        super().__init__(message or f"inconclusive case: {case.value}")


class RedAlertError(ExtremeOrdersError):
    """All hypotheses of a preservation theorem hold but its conclusion fails."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"red alert: {report.theorem_id.value} hypotheses hold but conclusion fails")

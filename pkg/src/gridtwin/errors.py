"""Exception hierarchy shared by all gridtwin modules."""


class GridTwinError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GridTwinError):
    """Invalid specification, parameter, or input file.

    Raised before any computation starts; maps to CLI exit code 2.
    """


class SimulationError(GridTwinError):
    """Runtime failure inside the solver or analysis chain.

    Maps to CLI exit code 3.
    """

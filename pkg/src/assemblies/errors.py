"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""


class AssemblyError(Exception):
    exit_code = 1


class ValidationError(AssemblyError):
    exit_code = 2


class NotAssociative(ValidationError):
    def __init__(self, table, witness):
        self.table = table
        self.witness = witness
        x, y, z = (table.names[i] for i in witness)
        super().__init__(f"not associative: ({x}·{y})·{z} != {x}·({y}·{z}) at ({x},{y},{z})")


class PreconditionError(ValidationError):
    """An operation was called on input outside its domain."""


class CapExceeded(AssemblyError):
    exit_code = 3


class InconsistencyError(AssemblyError):
    """A computed result contradicts a proven structural fact.

    Either the claim is false for this input or there is a bug.
    """

    exit_code = 4

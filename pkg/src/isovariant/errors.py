"""Exception types raised across the package."""


class IsovariantError(Exception):
    """Base class for every error raised by this package."""


class AxiomViolation(IsovariantError):
    """A multiplication table fails the group axioms."""


class InvalidChain(IsovariantError):
    """A subgroup chain is not strictly increasing."""


class NotRigid(IsovariantError):
    """An operation needs a rigid G-complex and got one without the flag."""


class NotIsovariant(IsovariantError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotEquivariant(IsovariantError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotSimplicial(IsovariantError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedRepresentation(IsovariantError):
    pass


class IntermediateStrataWarning(UserWarning):
    """Some barycenters sit in neither of the two strata of a pair model."""


class ModeMismatch(IsovariantError):
    pass


class WrongArity(IsovariantError):
    pass


class NotAStrictPair(IsovariantError):
    pass


class ContractViolation(IsovariantError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonCommuting(IsovariantError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(IsovariantError):
    def __init__(self, message, location=None):
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class ValidationError(IsovariantError):
    def __init__(self, message, entity=None, witness=None):
        if entity is not None:
            message = f"{entity}: {message}"
        super().__init__(message)
        self.entity = entity
        self.witness = witness

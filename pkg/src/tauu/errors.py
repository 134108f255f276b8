"""Exception hierarchy shared by every module."""


class TauError(Exception):
    """Base class for all errors raised by :mod:`tauu`."""


class InvalidSpec(TauError, ValueError):
    """A ring, relation or command description could not be understood."""


class RingAxiomViolation(TauError, ValueError):
    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(f"table violates {axiom} at {self.witness}")


class ElementError(TauError, ValueError):
    """A value does not belong to the carrier of the ring it was used with."""


class InvalidCoordinate(TauError, IndexError):
    pass


class InvalidPair(TauError, ValueError):
    pass


class NotFactorable(TauError, ValueError):
    """Factorizations are only defined for non-units."""


class NotClassifiable(TauError, ValueError):
    pass


class InvalidRefinement(TauError, ValueError):
    pass


class InvalidTarget(TauError, ValueError):
    pass


class InvalidInput(TauError, ValueError):
    pass


class NotProjectable(TauError, ValueError):
    pass


class FixpointFailure(TauError, RuntimeError):
    """The U-rearrangement scan ended without a valid essential part (engine bug)."""


class UnknownTheorem(TauError, KeyError):
    pass

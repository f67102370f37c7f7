"""Exception hierarchy shared by all setlink modules."""


class SetLinkError(Exception):
    """Base class for every error raised by setlink."""


class ParseError(SetLinkError, ValueError):
    pass


class CapacityExceeded(SetLinkError):
    pass


class InternalError(SetLinkError):
    """Two routes that must agree did not. Indicates a bug."""


class DomainMismatch(SetLinkError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class GroundMismatch(SetLinkError, ValueError):
    pass


class EmptyDomain(SetLinkError, ValueError):
    pass


class ElementNotInSet(SetLinkError, ValueError):
    pass


class MissingTableEntry(DomainMismatch):
    pass


class UnknownFixture(SetLinkError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class HypothesisFailure(SetLinkError):
    """A precondition of a derivation or theorem check does not hold."""


class NotFeasible(HypothesisFailure):
    pass


class EmptyFamily(HypothesisFailure):
    pass


class NotClosureSpace(HypothesisFailure):
    pass


class NotAccessible(HypothesisFailure):
    pass


class NotQuasiConcave(HypothesisFailure):
    pass


class NotMonotone(HypothesisFailure):
    pass


class NoHeritage(HypothesisFailure):
    pass


class LinkagesDisagree(HypothesisFailure):
    pass


class ChainHolds(HypothesisFailure):
    pass


class HeritageHolds(HypothesisFailure):
    pass

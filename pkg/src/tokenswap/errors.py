"""Exception hierarchy shared by every module."""


class TokenSwapError(Exception):
    """Base class for all errors raised by the package."""


class ValidationError(TokenSwapError):
    """Input data violates a structural invariant."""


class ParseError(ValidationError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DisconnectedGraph(ValidationError):
    pass


class InvalidPermutation(ValidationError):
    pass


class ColorMultisetMismatch(ValidationError):
    pass


class NonEdgeSwap(ValidationError):
    def __init__(self, index, pair):
        self.index = index
        self.pair = pair
        super().__init__(f"swap #{index} {pair} is not an edge")


class NotAPath(ValidationError):
    pass


class NotComplete(ValidationError):
    pass


class BudgetExceeded(TokenSwapError):
    def __init__(self, nodes):
        self.nodes = nodes
        super().__init__(f"node budget exhausted after {nodes} configurations")


class OracleBudgetExceeded(BudgetExceeded):
    pass


class NoStepFound(TokenSwapError):
    """Raised when neither a happy chain nor an unhappy swap exists (a bug)."""


class ProgressStall(TokenSwapError):
    """Raised when the happy-swap solver exceeds its proven 2L bound (a bug)."""


class UnsupportedClauseArity(ValidationError):
    pass


class RepeatedVariableInClause(ValidationError):
    pass


class OddPermutation(ValidationError):
    pass


class LayerTooLarge(ValidationError):
    pass


class UnbalancedLayers(ValidationError):
    """A layer's non-sink count differs from the number of vertices fed by it; no path cover can exist."""

"""Exception hierarchy shared by every module."""


class QdefError(Exception):
    """Base class for all errors raised by :mod:`qdef`."""


class ZeroInput(QdefError, ValueError):
    pass


class FactorizationBudgetExceeded(QdefError, RuntimeError):
    pass


class HypothesisViolated(QdefError, ValueError):
    pass


class PreconditionViolated(QdefError, ValueError):
    pass


class RealRamified(PreconditionViolated):
    pass


class OddCardinality(PreconditionViolated):
    pass


class DegenerateInput(PreconditionViolated):
    pass


class DegenerateDenominator(PreconditionViolated):
    pass


class BudgetExceeded(QdefError, RuntimeError):
    """A bounded search ran out of budget. This is a report, not a refutation."""


class SearchBudgetExceeded(BudgetExceeded):
    pass


class InvariantViolated(QdefError, AssertionError):
    """A proven invariant failed; this always indicates a bug."""


class CounterexampleFound(InvariantViolated):
    pass


class UnboundVariable(QdefError, KeyError):
    pass


class NegationPresent(QdefError, ValueError):
    pass


class UnknownSuite(QdefError, KeyError):
    pass

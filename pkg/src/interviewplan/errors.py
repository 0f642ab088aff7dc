"""Exception hierarchy for the interviewplan package."""


class InterviewPlanError(Exception):
    """Base class for all package errors."""


class ParseError(InterviewPlanError):
    """A text file could not be parsed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidInstance(InterviewPlanError):
    """An instance violates a structural invariant; carries the report."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class UnacceptableCandidate(InterviewPlanError):
    """A comparison was requested against a candidate outside the owner's list."""


class UnacceptablePair(InterviewPlanError):
    """An interview pairs two agents that are not mutually acceptable."""


class ShapeMismatch(InterviewPlanError):
    """Two instances do not share agent sets and acceptability."""


class NotARefinement(InterviewPlanError):
    """The candidate instance drops a comparison present in the base."""


class NotInterviewCompatible(InterviewPlanError):
    """The refinement cannot be produced by any set of interviews."""


class TruthInconsistent(InterviewPlanError):
    """A strict profile does not refine the instance it is paired with."""


class InvalidMatching(InterviewPlanError):
    """A matching is not one-to-one or pairs unacceptable agents."""


class MatchingNotWeaklyStable(InterviewPlanError):
    """The target matching is not weakly stable under the true preferences."""


class SizeLimitExceeded(InterviewPlanError):
    """An exhaustive operation was asked to exceed its configured cap."""


class DegreeTooHigh(InterviewPlanError):
    """A graph vertex exceeds the degree bound required by an operation."""


class BadParams(InterviewPlanError):
    """Generator parameters are inconsistent or out of range."""


class InternalAssumptionViolated(InterviewPlanError):
    """A structural assertion failed; the input is outside the solver's
    assumptions and the result would not be trustworthy."""

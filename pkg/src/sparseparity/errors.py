"""Exception types shared across the package."""


class LengthMismatchError(ValueError):
    """Two bit vectors of different lengths were combined."""


class NotSingletonError(Exception):
    """An affine space was asked for its unique point but has rank < dimension."""


class BudgetExceededError(Exception):
    """An exhaustive enumeration would exceed its configured budget."""


class InconsistentStreamError(Exception):
    """The labeled stream admits no hypothesis the learner tracks."""


class AllChartsEmptyError(InconsistentStreamError):
    """Every subspace chart died: labels are noisy or the target is not a
    sparse parity."""


class SourceExhaustedError(Exception):
    """A replay source has no more examples."""


class BudgetExhaustedError(Exception):
    """The sample budget ran out before a hypothesis could be certified.

    Carries the best uncertified hypothesis seen so far.
    """

    def __init__(self, hypothesis, samples_used: int):
        super().__init__(
            f"sample budget exhausted after {samples_used} examples"
        )
        self.hypothesis = hypothesis
        self.samples_used = samples_used
        self.certified = False


class NoCandidatesError(Exception):
    """Every flip set led the inner learner to fail: the noise rate is too
    high for the flip budget, or the inner learner violates its contract."""

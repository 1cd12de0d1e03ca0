"""Exception types shared across the package.

Invalid arguments raise plain ValueError; the two classes below cover the
remaining failure modes the command line distinguishes by exit code.
"""


class SplitlabError(Exception):
    """Base class for splitlab-specific failures."""


class ResourceBudgetError(SplitlabError):
    """A configured budget (sieve ceiling, scan budget, modulus bits) was exhausted.

    Budget exhaustion never proves nonexistence; it signals that the requested
    computation exceeds the configured desk-scale limits.
    """


class VerificationError(SplitlabError):
    """An internal post-hoc verification failed: a construction bug, never user error."""

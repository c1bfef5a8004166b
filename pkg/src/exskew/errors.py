"""Exception types shared across the package.

Plain ValueError covers ordinary domain violations (bad alpha, bad
parameters).  The subclasses below exist where callers need to react
differently: the command line maps DegenerateInputError to its own exit
code, and order diagnostics refuse discrete families explicitly.
"""


class DegenerateInputError(ValueError):
    """Input carries no dispersion, so a scale-normalized quantity is 0/0.

    Raised for constant samples and for family/level combinations whose
    inter-quantile or inter-expectile distance collapses to zero.
    """


class UnsupportedFamilyError(ValueError):
    """Operation requires a continuous strictly increasing cdf."""


class NumericalError(RuntimeError):
    """A numerical routine failed to bracket or converge.

    Should not occur for constructible distribution specs; it signals a
    genuine defect rather than bad user input.
    """

"""Exception types raised by instance validation, solvers, and engines."""


class NorejError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(NorejError):
    """Base class for instance validation failures."""


class CapacityMismatch(ValidationError):
    """Sum of offline capacities does not equal the online vertex count."""


class UnsupportedCapacity(ValidationError):
    """Offline capacity outside {1, 2}."""


class NegativeWeight(ValidationError):
    pass


class AsymmetricWeights(ValidationError):
    pass


class OddN(ValidationError):
    """Odd vertex count for general matching without odd-mode."""


class DimensionMismatch(ValidationError):
    pass


class SubsetTooLarge(NorejError):
    """Online subset exceeds total offline capacity."""


class OddSubset(NorejError):
    """Perfect matching requested on an odd vertex subset."""


class SizeLimitExceeded(NorejError):
    """Brute-force oracle called above its hard size cap."""


class InstanceKindMismatch(NorejError):
    """Instance kind incompatible with the requested algorithm."""


# analysis-facing alias; same condition seen from the harness side
KindMismatch = InstanceKindMismatch


class OutOfPhaseRange(NorejError):
    """Step index outside the phase a lemma bound applies to."""


class PhaseEmpty(NorejError):
    """No step falls inside the requested phase at this n."""


class UnknownAlg(NorejError):
    pass


class BadParams(NorejError):
    """Generator family parameters outside their documented range."""


class SchemaError(NorejError):
    """Instance or report file does not match the documented schema."""

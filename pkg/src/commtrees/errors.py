"""Exception types shared across the package.

Every error raised deliberately by this package derives from CommTreesError,
so callers can distinguish our diagnostics from genuine bugs.
"""


class CommTreesError(Exception):
    """Base class for all deliberate errors raised by this package."""


# ---------------------------------------------------------------- fields

class NonPrimeCharacteristic(CommTreesError):
    """Field characteristic must be prime."""


class UnsupportedSize(CommTreesError):
    """Field size outside the supported range (p <= 251 prime, or 2^n with n <= 16)."""


# ---------------------------------------------------------------- carriers

class CarrierMismatch(CommTreesError):
    """Elements live on different carriers (degree, field, or kind differs)."""


class InvalidGenerator(CommTreesError):
    """A generator is not a valid group element (e.g. a singular matrix)."""


# ---------------------------------------------------------------- groups

class OrderCapExceeded(CommTreesError):
    """Closure or construction grew past the configured order cap."""


class BadParams(CommTreesError):
    """Family parameters fail their arithmetic preconditions."""


class OrderMismatch(CommTreesError):
    """Generated group has the wrong order for the requested family."""


class NotNormal(CommTreesError):
    """Quotient requested by a subgroup that is not normal."""


class TargetTooLarge(CommTreesError):
    """Isomorphism test requested against a target outside the small catalog."""


class PDoesNotDivideOrder(CommTreesError):
    """Sylow subgroups requested for a prime not dividing the group order."""


# ---------------------------------------------------------------- commuting graphs

class NotMaximumWitness(CommTreesError):
    """Claimed maximum independent set fails verification."""


class NotACGroup(CommTreesError):
    """Operation defined only for groups with abelian noncentral centralizers."""


# ---------------------------------------------------------------- spectra

class NonIntegerResult(CommTreesError):
    """An integrality guarantee failed; signals inconsistent input."""


# ---------------------------------------------------------------- tree counts

class ExactCapExceeded(CommTreesError):
    """Exact computation requested beyond its configured size cap."""


# ---------------------------------------------------------------- formulas

class ParamsOutOfRange(CommTreesError):
    """Formula parameters outside the validity range of the closed form."""


# ---------------------------------------------------------------- partitions

class CenterTooSmall(CommTreesError):
    """Central coset construction needs a center of size at least 2."""


class IndexTooSmall(CommTreesError):
    """Central coset construction needs central index at least 4."""


class AbelianInput(CommTreesError):
    """Classification defined only for nonabelian groups."""

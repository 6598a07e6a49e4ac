"""Exception hierarchy shared by every module."""


class SubsetCertError(ValueError):
    """Base class for all library errors."""


class ModulusError(SubsetCertError):
    """A modulus was zero or negative."""


class InputError(SubsetCertError):
    """Malformed arguments (duplicate exponents, bad tamper target, ...)."""


class PreconditionError(SubsetCertError):
    """An operation was called outside its documented domain."""


class EmptyIntervalError(SubsetCertError):
    """No prime lies strictly inside the requested interval."""


class ResourceLimitError(SubsetCertError):
    """The request would exceed a fixed memory or enumeration guard."""


class CertificateFormatError(SubsetCertError):
    """A certificate is malformed for the instance it is checked against.

    This is different from a verifier rejection: a malformed certificate is
    never run through the fingerprint test at all.
    """


class PropertyViolation(SubsetCertError):
    """A checked mathematical inequality or identity failed."""

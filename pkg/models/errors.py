"""
Error hierarchy for the classification library.

Validation failures subclass ValueError as well, so callers that only know
about the built-in type keep working.
"""


class TropRepError(Exception):
    """Base class for every error raised by this package"""


class ConfigurationError(TropRepError, ValueError):
    """An environment setting could not be parsed or is out of range"""


class GroupValidationError(TropRepError, ValueError):
    """A multiplication table does not describe a group"""


class NotLatinSquare(GroupValidationError):
    pass


class NoIdentity(GroupValidationError):
    pass


class NotAssociative(GroupValidationError):
    pass


class NoInverse(GroupValidationError):
    pass


class OrderCapExceeded(TropRepError, ValueError):
    """A group would be larger than the configured order cap"""


class CapExceeded(TropRepError, ValueError):
    """A subset universe or orbit count is larger than the configured cap"""


class WrongCardinality(TropRepError, ValueError):
    """A subset has the wrong number of elements for the requested operation"""


class UnsupportedDimension(TropRepError, ValueError):
    pass


class NotAMatroid(TropRepError, ValueError):
    """A matroid-only operation was called on a family that fails exchange"""


class NotASubgroup(TropRepError, ValueError):
    pass


class ContradictoryOptions(TropRepError, ValueError):
    pass


class UnknownCheckId(TropRepError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown check id"


class GroupSpecError(TropRepError, ValueError):
    """A group spec string such as 'Z:0' or 'Q9' could not be parsed"""


class DocumentError(TropRepError, ValueError):
    """A JSON document or Cayley-table file is malformed"""

"""Exception hierarchy shared by all modules.

The distinction that matters downstream (and for CLI exit codes):

* ``CharpkError``          -- any library-level failure (exit code 2);
* ``UnsupportedInstance``  -- the input is outside the supported instance
  class; never a silent guess;
* ``ResourceExhausted``    -- a hard cap (basis size, degree, height bound)
  was hit before a verdict; distinct from a negative answer.
"""


class CharpkError(Exception):
    """Base class for all library errors."""


class FieldError(CharpkError):
    """Invalid field specification or mixed-field arithmetic."""


class RingError(CharpkError):
    """Ambient-ring mismatch or malformed polynomial construction."""


class UnsupportedInstance(CharpkError):
    """The instance lies outside the supported class; no guess is made."""


class ResourceExhausted(CharpkError):
    """A configured resource cap was reached before completion."""


class FormulaError(CharpkError):
    """Parse error or language-tag violation in the formula DSL."""


class InstanceFileError(CharpkError):
    """Malformed instance file."""


class PreconditionError(CharpkError):
    """A documented operation precondition is violated (e.g. an empty
    variety where a nonempty one is required)."""

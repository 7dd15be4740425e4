"""Error types shared across the package.

Two failure families are distinguished because the command line maps them to
different exit codes:

* ``ValidationError`` — the input data is malformed or mathematically
  inconsistent (non-symmetric matrix, basis that does not span a unimodular
  lattice, ...).  CLI exit code 1.
* ``InternalInvariantError`` — an internal consistency guard failed.  This
  never happens on well-formed input and indicates a bug or a silently
  corrupted dataset.  CLI exit code 2.
"""


class ValidationError(ValueError):
    """Raised when user-supplied data fails a validation check."""


class InternalInvariantError(RuntimeError):
    """Raised when an internal consistency guard is violated."""

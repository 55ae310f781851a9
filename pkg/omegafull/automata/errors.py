# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.


class AutomatonError(ValueError):
    """Malformed automaton, letter or word."""


class UnknownLetterError(AutomatonError, KeyError):
    """A letter that is not part of an explicit alphabet."""

    def __str__(self):
        return ValueError.__str__(self)


class AcceptanceTypeError(AutomatonError):
    """An operation got an acceptance condition it does not support."""


class DimensionMismatchError(AutomatonError):
    """Objects built over different state spaces or tracked sets were combined."""


class AlphabetMismatchError(AutomatonError):
    """Two automata do not share the same letter keys."""


class NotDeterministicError(AutomatonError):
    """A deterministic complete automaton was required."""

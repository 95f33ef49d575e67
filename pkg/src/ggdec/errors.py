"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input (bad word, space mismatch, bad file)."""


class SpaceMismatchError(InputError):
    """Two vectors or sets over different coordinate spaces were combined."""


class NotTransitiveForestError(ValueError):
    """The independence alphabet is outside the decidable class.

    Carries an ordered 4-tuple of vertices inducing a square or a path.
    """

    def __init__(self, witness, kind):
        self.witness = tuple(witness)
        self.kind = kind  # "C4" or "P4"
        super().__init__(f"induced {kind}: {','.join(self.witness)}")


class ResourceLimitError(RuntimeError):
    """A configured size or search cap was exceeded before an answer."""

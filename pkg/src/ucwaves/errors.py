"""Exception types shared across the package."""


class UCWavesError(Exception):
    """Base class for all ucwaves errors."""


class DomainError(UCWavesError):
    """A parameter lies outside the validity range of an operation."""


class NoLocusError(UCWavesError):
    """No undercompressive connection exists for the requested parameters."""


class PoleError(UCWavesError):
    """A formula was evaluated at a pole of its defining expression."""


class DegenerateSpeedError(UCWavesError):
    """The traveling-wave reduction degenerates (wave speed s <= 0)."""


class NoSaddleError(UCWavesError):
    """The outside equilibria are not saddle points (p-system: s*A > 0)."""

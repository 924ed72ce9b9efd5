"""Exception types shared across the pipeline stages."""


class FormatError(ValueError):
    """An image file is not in a supported or well-formed format."""


class BoundsError(ValueError):
    """A rectangle or coordinate falls outside its image."""


class SizeError(ValueError):
    """An image is too small for the requested operation."""


class ConfigError(ValueError):
    """A configuration value violates its invariants or names an unknown key."""


class EmptyImageError(ValueError):
    """A histogram with zero total pixels cannot be equalized."""


class NoCandidatesError(ValueError):
    """Scoring was asked to rank an empty candidate list."""


class ConsistencyError(ValueError):
    """A label raster does not agree with the blob list describing it."""

"""Exception types shared across the package."""


class GraphError(ValueError):
    """Malformed graph input: bad ids, self-loops, duplicate edges, invalid parameters."""


class CodecError(ValueError):
    """Bit-codec failure: value out of range, malformed or truncated bit stream."""


class LabelError(ValueError):
    """Labels are incompatible (built by different encodings) or corrupt."""


class EncodingFailure(RuntimeError):
    """An encoder gave up, e.g. the landmark resampling cap was exhausted."""

"""Numerical failures raised by the library.

Invalid arguments raise ``ValueError``; the classes below cover the cases
where the inputs were valid but a numerical procedure could not finish.
"""


class QuadratureError(RuntimeError):
    """Composite Simpson refinement hit its panel cap before settling."""


class BracketError(RuntimeError):
    """No sign change was found for a one-dimensional root search."""

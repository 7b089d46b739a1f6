"""Tolerance bundle threaded through every numerical decision.

All values are relative; each operation documents the quantity they are
scaled by. Nothing in the package reads global state: callers either pass
a ``Tolerances`` instance or accept :data:`DEFAULT`.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Relative tolerances for spectral and rank decisions.

    Attributes
    ----------
    axis : float
        Half-width of the imaginary-axis band, relative to ||A0||.
        Eigenvalues with |Re| inside the band are classified AXIS.
    rank : float
        Singular-value cutoff relative to the largest singular value.
    definiteness : float
        Eigenvalue cutoff for sign classification, relative to
        max(1, ||S||_max).
    base : float
        Residual bound for accepting a base ARE solution, relative to
        max(1, ||A||_max, ||Q||_max).
    sym : float
        Allowed symmetry deviation |S - S^T|_max relative to
        max(1, ||S||_max).
    """

    axis: float = 1e-8
    rank: float = 1e-10
    definiteness: float = 1e-8
    base: float = 1e-7
    sym: float = 1e-8

    def with_overrides(self, **kwargs):
        """Return a copy with the given fields replaced (None values ignored)."""
        updates = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **updates) if updates else self


DEFAULT = Tolerances()

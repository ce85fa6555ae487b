"""Exception hierarchy for the pairemit package."""


class PairEmitError(Exception):
    """Base class for all pairemit errors."""


class InvalidTable(PairEmitError):
    """Overlap table is structurally malformed (non-Hermitian, bad diagonal, out-of-bound entry)."""


class ZeroNormState(PairEmitError):
    """A normalization radicand vanished; the requested state is degenerate (fermionic identical states)."""


class DimensionMismatch(PairEmitError):
    """Vector or packet dimensions do not agree."""


class UnequalWidths(PairEmitError):
    """Gaussian packets with different position spreads are not supported."""


class InvalidScene(PairEmitError):
    """Scene fields violate their invariants (non-unit axis, bad mass, inconsistent dims)."""


class GridTooCoarse(PairEmitError):
    """Quadrature grid does not meet the minimum span/spacing requirements."""


class InvalidTimeGrid(PairEmitError):
    """Time samples are not ascending nonnegative reals."""


class GridMismatch(PairEmitError):
    """Curves to compare do not share the same time grid."""


class OutOfRange(PairEmitError):
    """A scalar parameter lies outside its documented domain."""


class NoExcitedComponent(PairEmitError):
    """Dipole action requested on a state with no excited-atom component."""


class ExcitedLabelError(PairEmitError):
    """Dipole action on an excited atom whose CM label has no recoil image; modeling error."""

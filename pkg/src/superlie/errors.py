"""Exception types shared across the package.

These all signal mathematically meaningful conditions (a degenerate form, a
weight with no vectors, ...), as opposed to plain usage errors, which raise
the usual ValueError/TypeError.
"""


class SuperLieError(Exception):
    """Base class for the package's mathematical failure modes."""


class DegenerateForm(SuperLieError):
    """The invariant bilinear form is degenerate (has a radical)."""


class FormParityMismatch(SuperLieError):
    """An operation required a form of the other parity (even vs odd)."""


class NonScalarA(SuperLieError):
    """The map x -> sum b^{ij} [[x, e_i], e_j] is not a scalar on this algebra."""


class GradingIncompatible(SuperLieError):
    """A twist grading does not respect the bracket or the bilinear form."""


class UnsupportedDegree(SuperLieError):
    """Casimir elements are only constructed in degrees 2 and 3."""


class NonDiagonalAction(SuperLieError):
    """A torus generator fails to act diagonally on the chosen basis."""


class ZeroOnRoot(SuperLieError):
    """The splitting element vanishes on a root, so it defines no polarization."""


class OddCartan(SuperLieError):
    """The Cartan subalgebra has a nonzero odd part, so this routine does not apply."""


class NotAWeight(SuperLieError):
    """The requested weight supports no vectors in the module slice."""


class InfinitePartitions(SuperLieError):
    """A weight-slice enumeration is infinite or exceeds the configured cap."""


class OutOfCone(SuperLieError):
    """The weight is not a nonnegative integer combination of positive roots."""

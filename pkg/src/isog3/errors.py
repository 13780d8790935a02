"""Exception hierarchy.

Every error carries an ``exit_code`` so the command-line front end can map
failures without a lookup table: 3 for rejected input, 2 for a degenerate
configuration met during a computation.
"""


class Isog3Error(Exception):
    exit_code = 1

    @property
    def kind(self):
        return type(self).__name__


class InvalidInput(Isog3Error):
    exit_code = 3


class Degeneracy(Isog3Error):
    exit_code = 2


# field kernel
class ModulusNotIrreducible(InvalidInput):
    pass


class UnsupportedCharacteristic(InvalidInput):
    pass


class UnsupportedField(InvalidInput):
    pass


class FieldMismatch(InvalidInput):
    pass


class ZeroPolynomial(InvalidInput):
    pass


class DegreeTooSmall(InvalidInput):
    pass


# curves and torsion
class SingularCurve(InvalidInput):
    pass


class NotOrdinary(InvalidInput):
    pass


class NotAQuarticRoot(InvalidInput):
    pass


# projective geometry and the secant pipeline
class DegeneratePointSet(Degeneracy):
    pass


class LineInHyperplane(Degeneracy):
    pass


class ProjectionCenter(Degeneracy):
    pass


class NoConic(Degeneracy):
    pass


class DegenerateBundle(Degeneracy):
    pass


class NotSmoothConic(Degeneracy):
    pass


class CoplanarityViolated(Degeneracy):
    pass


class DegenerateConic(Degeneracy):
    pass


class DegenerateConfiguration(Degeneracy):
    pass


# Burkhardt / Coble
class IntegrabilityFailure(Degeneracy):
    pass


class KernelDegenerate(Degeneracy):
    pass


class OnArrangement(Degeneracy):
    """A Maschke point on a reflection hyperplane (Phi_40 = 0)."""


# complex pipeline
class TranslateDegenerate(Degeneracy):
    pass


class RootIsolationFailure(Degeneracy):
    pass


class BranchLocusFailure(Degeneracy):
    pass


class CoordinateFailure(Degeneracy):
    pass

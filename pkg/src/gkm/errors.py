"""Exception hierarchy.

Every error carries a short ``code`` (the class name) and an optional
``witness``: vertex ids, edge ids or other small JSON-friendly data that
pins down where the failure happened.  The CLI prints both on one line.
"""


class GKMError(Exception):
    exit_code = 1

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.message = message
        self.witness = witness

    @property
    def code(self):
        return type(self).__name__


class MalformedInput(GKMError):
    """Input that cannot be parsed or is structurally inconsistent."""

    exit_code = 2


class MalformedSkeleton(MalformedInput):
    pass


# exact algebra
class ZeroCovector(GKMError):
    pass


class NotDivisible(GKMError):
    pass


class DependentPair(GKMError):
    pass


# skeleta
class NotPolarizing(GKMError):
    pass


class CyclicOrientation(GKMError):
    pass


class NotTotallyGeodesic(GKMError):
    pass


class NotThreeIndependent(GKMError):
    pass


# builders
class DegenerateTaus(GKMError):
    pass


class BadParameters(GKMError):
    pass


class NotEdgeReflecting(GKMError):
    pass


# cohomology
class InhomogeneousInput(GKMError):
    pass


class NotComplete(GKMError):
    pass


class NotAClass(GKMError):
    pass


class HypothesesViolated(GKMError):
    pass


class DecompositionFailure(GKMError):
    pass


# surgery
class Condition2Violated(GKMError):
    pass


class BadWeights(GKMError):
    pass


class BadCenter(GKMError):
    pass


# reduction
class CriticalValue(GKMError):
    pass


class ComponentBettiViolation(GKMError):
    pass


class NotGeneric(GKMError):
    pass


class MultipleCriticalPoints(GKMError):
    pass


class DegreeMismatch(GKMError):
    pass

"""Exception hierarchy shared by all doctrina modules."""


class DoctrinaError(Exception):
    """Base class for all errors raised by this package."""


class CodMismatch(DoctrinaError):
    """Composition or pullback attempted on maps with incompatible codomains."""


class DomMismatch(DoctrinaError):
    """Pushout attempted on maps with different domains."""


class ShapeMismatch(DoctrinaError):
    """Monotone maps compared or composed across different posets."""


class ObjMismatch(DoctrinaError):
    """Loose composition of spans whose boundary objects disagree."""


class ClassViolation(DoctrinaError):
    """A morphism fell outside the L/R class required for the operation."""


class BoundaryMismatch(DoctrinaError):
    """Cells or diagrams pasted along non-matching boundaries."""


class LabelClash(DoctrinaError):
    """Identified ports or junctions carry different type labels."""


class ContextMismatch(DoctrinaError):
    """A system was evaluated in a diagram with a different inner boundary."""


class NotAPullback(DoctrinaError):
    """A square handed to a Beck-Chevalley check is not a designated pullback."""


class CellAbsent(DoctrinaError):
    """The mandatory direction of a constructed square failed to hold."""


class CoherenceFailure(DoctrinaError):
    """A coherence equality (compositor, unitor, unit, symmetry) failed."""


class CommuterFailure(DoctrinaError):
    """A laxator component failed to be invertible on its guaranteed domain."""


class NonFunctorial(DoctrinaError):
    """Substitution data refused at construction: not strictly functorial."""

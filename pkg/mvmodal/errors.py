"""
Exceptions raised by ``mvmodal``.

Every exception derives from :class:`MvModalError` and from the closest builtin
exception, so callers may catch either.
"""


class MvModalError(Exception):
    """
    Base class for all errors raised by the package
    """

    ...


# Algebra construction


class BadParam(MvModalError, ValueError):
    """
    Raised when a preset or a search budget receives an invalid parameter
    """

    ...


class AlgebraFormatError(MvModalError, ValueError):
    """
    Raised when an algebra file or an algebra reference can not be parsed
    """

    ...


class NotALattice(MvModalError, ValueError):
    """
    Raised when the order of a candidate algebra is not a bounded lattice

    Parameters
    ----------
    message: str
        Error message
    pair: tuple or None
        Labels of a pair of elements without meet or join (if any)
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.__pair = pair

    @property
    def pair(self):
        return self.__pair


class NotAMonoid(MvModalError, ValueError):
    """
    Raised when the fusion table is not a commutative monoid with unit ``1``
    """

    ...


class ResiduationFails(MvModalError, ValueError):
    """
    Raised when the fusion table admits no residuum

    Parameters
    ----------
    message: str
        Error message
    triple: tuple
        Labels ``(a, b, c)`` for which ``a * b <= c`` and ``b <= a -> c`` disagree
    """

    def __init__(self, message, triple):
        super().__init__(message)
        self.__triple = tuple(triple)

    @property
    def triple(self):
        return self.__triple


class NotMVChain(MvModalError, ValueError):
    """
    Raised when an operation restricted to finite MV chains receives another algebra
    """

    ...


class NotFound(MvModalError, LookupError):
    """
    Raised when a term with the requested function table does not exist
    """

    ...


class NoUniqueCoatom(MvModalError, ValueError):
    """
    Raised when an operation needs the unique coatom of an algebra that has none
    """

    ...


class DecompositionFails(MvModalError, RuntimeError):
    """
    Raised when the projections of a decomposition are not an isomorphism onto the product of the
    factors (always a bug)
    """

    ...


# Formulas


class FormulaSyntaxError(MvModalError, SyntaxError):
    """
    Raised when a formula can not be parsed

    Parameters
    ----------
    message: str
        Error message
    text: str
        The text that was parsed
    position: int
        Zero-based offset of the offending character
    """

    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} (at position {position})")
        self.__text = text
        self.__position = position

    @property
    def position(self):
        return self.__position

    @property
    def source(self):
        return self.__text


class UnknownConstant(MvModalError, KeyError):
    """
    Raised when a canonical constant is disabled or does not name an element
    """

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class UnknownVariable(MvModalError, KeyError):
    """
    Raised when a variable has no value at a world and the model has no default
    """

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class DiamondUnsupported(MvModalError, ValueError):
    """
    Raised by translations that are defined for the box only
    """

    ...


# Models


class ModelFormatError(MvModalError, ValueError):
    """
    Raised when a model file can not be parsed
    """

    ...


class NotBooleanFrame(MvModalError, ValueError):
    """
    Raised when an accessibility value is not a Boolean element of the algebra
    """

    ...


# Search


class BudgetExceeded(MvModalError, RuntimeError):
    """
    Raised when a search would enumerate more models than the model cap allows

    Parameters
    ----------
    message: str
        Error message
    models: int
        Number of models the search would have had to visit
    cap: int
        The model cap in force
    """

    def __init__(self, message, models, cap):
        super().__init__(message)
        self.__models = models
        self.__cap = cap

    @property
    def models(self):
        return self.__models

    @property
    def cap(self):
        return self.__cap


class NonModalExpected(MvModalError, ValueError):
    """
    Raised when a modal formula is passed where box abstraction is disabled
    """

    ...


class PremiseFails(MvModalError, ValueError):
    """
    Raised when the premise of a lifting step is not a non-modal consequence
    """

    ...


class PropertyFails(MvModalError, ValueError):
    """
    Raised when a term lacks a required monotonicity property
    """

    ...


class SearchInconsistency(MvModalError, RuntimeError):
    """
    Raised when an emitted countermodel fails re-verification (always a bug)
    """

    ...


# Calculus


class PrerequisiteFails(MvModalError, ValueError):
    """
    Raised when a preset calculus or a rewrite is requested for an unsuitable algebra
    """

    ...


class ConstantsDisabled(MvModalError, ValueError):
    """
    Raised when an operation producing canonical constants runs without them
    """

    ...


class UnknownSchema(MvModalError, KeyError):
    """
    Raised when a derivation cites an axiom or rule the calculus does not have
    """

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class DerivationFormatError(MvModalError, ValueError):
    """
    Raised when a derivation file can not be parsed
    """

    ...


class InvalidStep(MvModalError, ValueError):
    """
    Raised by strict derivation checking at the first step that does not follow

    Parameters
    ----------
    step: int
        Line number of the step
    reason: str
        Why the justification does not produce the formula
    """

    def __init__(self, step, reason):
        super().__init__(f"step {step}: {reason}")
        self.__step = step
        self.__reason = reason

    @property
    def step(self):
        return self.__step

    @property
    def reason(self):
        return self.__reason

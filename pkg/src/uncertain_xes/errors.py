"""Exception hierarchy.

Every model-level error carries a ``code`` matching the violation codes used
by :func:`uncertain_xes.validate.validate_log`, so a construction failure and a
report entry for the same problem share one name.
"""


class UncertainXesError(Exception):
    code = "Error"


# core model

class ModelError(UncertainXesError, ValueError):
    code = "ModelError"


class EmptyActivitySet(ModelError):
    code = "EmptyActivitySet"


class EmptyLabel(ModelError):
    code = "EmptyLabel"


class DuplicateLabel(ModelError):
    code = "DuplicateLabel"


class ProbabilityOutOfRange(ModelError):
    code = "ProbabilityOutOfRange"


class ProbabilityMassExceeded(ModelError):
    code = "ProbabilityMassExceeded"


class InvertedInterval(ModelError):
    code = "InvertedInterval"


class BadDensityParams(ModelError):
    code = "BadDensityParams"


class UnknownDensityFunction(ModelError):
    code = "UnknownDensityFunction"


class EmptyEventId(ModelError):
    code = "EmptyEventId"


class DuplicateEventId(ModelError):
    code = "DuplicateEventId"


class DuplicateCaseId(ModelError):
    code = "DuplicateCaseId"


class CaseIdMismatch(ModelError):
    code = "CaseIdMismatch"


# xes-io

class XesFormatError(UncertainXesError):
    """Raised for documents that cannot be turned into a model.

    ``path`` locates the offending element, e.g. ``trace[0](ID192)/event[2]``.
    """

    code = "XesFormatError"

    def __init__(self, message, path=None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class MalformedXml(XesFormatError):
    code = "MalformedXml"


class MissingTimestamp(XesFormatError):
    code = "MissingTimestamp"


class MissingActivity(XesFormatError):
    code = "MissingActivity"


class BadUncertaintyStructure(XesFormatError):
    code = "BadUncertaintyStructure"


class BadAttributeValue(XesFormatError):
    code = "BadAttributeValue"


# realization

class RealizationError(UncertainXesError):
    code = "RealizationError"


class TooManyEvents(RealizationError):
    code = "TooManyEvents"


class ContinuousDensityPresent(RealizationError):
    code = "ContinuousDensityPresent"


class ModeRequired(RealizationError):
    code = "ModeRequired"


class SubStochasticMass(RealizationError):
    code = "SubStochasticMass"


# inject

class InjectionError(UncertainXesError):
    code = "InjectionError"


class InputNotCertain(InjectionError):
    code = "InputNotCertain"


class AlphabetTooSmall(InjectionError):
    code = "AlphabetTooSmall"


class IdMismatch(InjectionError):
    code = "IdMismatch"


class DirectiveError(InjectionError):
    code = "DirectiveError"

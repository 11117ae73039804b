"""Exception hierarchy shared by all modules."""


class FrodError(Exception):
    """Base class for every error raised by this package."""


class LoadError(FrodError):
    """Input file is missing or unreadable."""


class SchemaError(FrodError):
    """Column schema conflicts with the observed values (or a cell is empty)."""


class LabelError(FrodError):
    """Label column contains a value outside the configured encoding."""


class SplitError(FrodError):
    """Stratified split cannot produce at least one labeled object per class."""


class ParamError(FrodError):
    """Invalid algorithm parameter or precondition violation."""


class SubsetMismatch(FrodError):
    """Relations to be combined were built over different object subsets."""


class UniverseMismatch(FrodError):
    """Fuzzy set universe does not match the relation's object subset."""


class DegenerateSet(FrodError):
    """Approximation accuracy requested for a set with empty upper approximation."""


class DegenerateLabels(FrodError):
    """Labeled subset does not contain both a normal and an outlier object."""


class ZeroEntropy(FrodError):
    """Relative entropy is undefined when the base entropy is zero."""


class AttributeMismatch(FrodError):
    """Weight map and factor map cover different attribute sets."""


class EmptyNormals(FrodError):
    """Adaptive threshold requested without any scored labeled-normal object."""


class DegenerateTruth(FrodError):
    """Ranking metric needs at least one positive (and for AUC one negative)."""

"""Exception types shared across the package."""


class TreePairFanError(Exception):
    """Base class for all package errors."""


class NotLaminar(TreePairFanError):
    """Two clades cross: they intersect but neither contains the other."""


class BadLeaf(TreePairFanError):
    """A set references a leaf outside the ground set."""


class TooSmall(TreePairFanError):
    """A set or leaf set is below the minimum admissible size."""


class UnknownClade(TreePairFanError):
    """The referenced clade is neither stored nor a singleton leaf."""


class WeightOrderViolated(TreePairFanError):
    """Internal-vertex weights fail to increase toward the root."""


class NotUltrametric(TreePairFanError):
    """The pair vector violates the three-point condition."""


class LeafMismatch(TreePairFanError):
    """Two objects disagree on their underlying leaf/vertex set."""


class SearchBoundExceeded(TreePairFanError):
    """An exhaustive search was requested above its configured bound."""


class NotHenneberg(TreePairFanError):
    """The graph admits no Henneberg decomposition."""


class MissingEdge(TreePairFanError):
    """A move refers to an edge absent from the graph."""


class DuplicateVertex(TreePairFanError):
    """A move adds a vertex that is already present."""


class NotSubgraph(TreePairFanError):
    """The claimed subgraph relation does not hold."""


class NotBinary(TreePairFanError):
    """A binary tree was required."""


class DependentGenerators(TreePairFanError):
    """Generators expected to be independent are not."""


class BoundExceeded(TreePairFanError):
    """A catalog or enumeration bound was exceeded."""

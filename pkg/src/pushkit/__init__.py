"""Exact Gysin pushforwards for projectivized vector bundles.

The pushforward along P(V) -> M is evaluated by summing restrictions over
the torus fixed points of the fiber, dividing by equivariant Euler classes,
and rewriting the resulting symmetric polynomial in the Chern classes of V.
All arithmetic is exact over the rationals, and every result can be
cross-checked against two independent classical descriptions of the map.
"""

from .errors import (
    ArityError,
    ExponentError,
    GradingError,
    LocalizationIntegralityError,
    NotDivisibleError,
    NotInvertibleError,
    ParseError,
    PushkitError,
    SymmetryError,
    TableMismatchError,
    UnboundVariableError,
    UnsupportedVariableError,
)
from .polyring import (
    Monomial,
    Polynomial,
    VariableTable,
    divide_exact_linear,
    series_inverse,
)
from .symfun import (
    Permutation,
    apply_permutation,
    complete_homogeneous,
    elementary_symmetric,
    expand_elementary,
    is_symmetric,
    reduce_to_elementary,
    root_generators,
)
from .localization import (
    FixedPointChart,
    LocalizationResult,
    bundle_ring,
    fixed_point_charts,
    localize,
    localize_pairwise,
    relation_check,
)
from .gysin import (
    ClassExpr,
    PushforwardResult,
    VerificationCheck,
    VerificationReport,
    presentation_oracle,
    pushforward,
    segre_oracle,
    verify_classical,
)
from .expressions import ExprAst, elaborate, parse_expression
from .cli import OutputRecord, run

__version__ = "0.1.0"

__all__ = [
    "ArityError",
    "ClassExpr",
    "ExponentError",
    "ExprAst",
    "FixedPointChart",
    "GradingError",
    "LocalizationIntegralityError",
    "LocalizationResult",
    "Monomial",
    "NotDivisibleError",
    "NotInvertibleError",
    "OutputRecord",
    "ParseError",
    "Permutation",
    "Polynomial",
    "PushforwardResult",
    "PushkitError",
    "SymmetryError",
    "TableMismatchError",
    "UnboundVariableError",
    "UnsupportedVariableError",
    "VariableTable",
    "VerificationCheck",
    "VerificationReport",
    "apply_permutation",
    "bundle_ring",
    "complete_homogeneous",
    "divide_exact_linear",
    "elaborate",
    "elementary_symmetric",
    "expand_elementary",
    "fixed_point_charts",
    "is_symmetric",
    "localize",
    "localize_pairwise",
    "parse_expression",
    "presentation_oracle",
    "pushforward",
    "reduce_to_elementary",
    "relation_check",
    "root_generators",
    "run",
    "segre_oracle",
    "series_inverse",
    "verify_classical",
]

"""Exact computations for quivers and deformed preprojective algebras.

Decides whether a dimension vector is a minimal element of Sigma_lambda
(equivalently: the quotient is a coadjoint orbit for the necklace Lie
algebra, is smooth, the trace algebra is Azumaya, and the algebra is
alpha-smooth), with supporting root, necklace and moment-map machinery.
"""
from .kernels import BACKEND
from .necklace import (
    LieElement,
    NecklaceWord,
    Path,
    PathElement,
    bracket,
    bracket_elements,
    canonicalize,
    moment_element,
    multiply,
    parse_necklace,
)
from .quiver import (
    DoubleQuiver,
    Quiver,
    QuiverDocument,
    double,
    parse_document,
    parse_quiver,
    serialize,
)
from .roots import FormsContext, chi, enumerate_roots, is_indivisible, p, reflect, tits
from .sigma import (
    DecisionReport,
    RepType,
    SigmaQuery,
    decide,
    enumerate_sigma,
    enumerate_types,
    in_sigma,
    is_componentwise_minimal,
    is_minimal,
    local_quiver,
)

__version__ = "0.1.0"

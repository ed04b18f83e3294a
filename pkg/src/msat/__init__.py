"""msat: a workbench for multi-sorted equational theories.

Construct theory categories from sorted presentations, evaluate finite
models, build free algebras, and strictify set-valued diagrams, with
every law checked by exhaustive enumeration at small bounds.
"""

__version__ = "0.1.0"

from .builtins import builtin_doctrine, resolve_builtin
from .errors import MsatError
from .signature import (
    App,
    Context,
    Doctrine,
    Equation,
    EqResult,
    OpSymbol,
    Sort,
    Var,
    enumerate_terms,
    normalize,
    print_term,
    substitute,
    terms_equal,
    typecheck,
)
from .theory_cat import (
    TERMINAL,
    TheoryMorphism,
    TheoryObject,
    compose,
    hom_enumerate,
    identity,
    product,
    projection,
    tuple_,
)

__all__ = [
    "App",
    "Context",
    "Doctrine",
    "EqResult",
    "Equation",
    "MsatError",
    "OpSymbol",
    "Sort",
    "TERMINAL",
    "TheoryMorphism",
    "TheoryObject",
    "Var",
    "builtin_doctrine",
    "compose",
    "enumerate_terms",
    "hom_enumerate",
    "identity",
    "normalize",
    "print_term",
    "product",
    "projection",
    "resolve_builtin",
    "substitute",
    "terms_equal",
    "tuple_",
    "typecheck",
    "__version__",
]

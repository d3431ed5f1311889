"""Exception hierarchy shared across the library.

Three broad classes matter to callers: malformed input (ParseError),
semantically invalid input for an operation (SemanticError subclasses), and
configured resource bounds being exceeded (TooLarge).  The CLI maps these to
exit codes 2, 3 and 4 respectively.
"""


class RedgroupsError(Exception):
    """Base class for all library errors."""


class ParseError(RedgroupsError):
    """Input document or type string could not be parsed."""


class SemanticError(RedgroupsError):
    """Well-formed input that violates an operation's precondition."""


class TooLarge(RedgroupsError):
    """A configured enumeration bound was exceeded."""


class NotSaturated(SemanticError):
    """Sublattice has a torsion quotient, so no direct complement exists."""


class NotSubgroup(SemanticError):
    """Alleged subgroup does not sit inside the stated parent group."""


class NotAutomorphism(SemanticError):
    """Endomorphism matrix fails to be invertible on the group."""


class NotDiagramAutomorphism(SemanticError):
    """Node permutation does not preserve the Dynkin diagram."""


class CriterionMismatch(RedgroupsError):
    """Numeric classification criteria disagree with structural flags.

    Unreachable unless the implementation itself is wrong; never raised for
    bad user input.
    """


class NotSolvable(SemanticError):
    """Operation defined only for solvable groups."""


class NotUnimodular(SemanticError):
    """Integer matrix is not invertible over the integers."""


class BaseMismatch(SemanticError):
    """Power quotients live over different bases and cannot be compared."""


class BadModulus(SemanticError):
    """Torsion coordinates are inconsistent with the declared modulus."""
